use proptest::prelude::*;
use qtchar::bae::{bethe_fold_limit, rational, sigma_commute};
use qtchar::charalg::{fm_closure, membership, screening_apply};
use qtchar::crystal::{anchor, crystal_e, crystal_f, crystal_stats, CrystalMonomial};
use qtchar::fold::sigma_act;
use qtchar::ring::{
    parse_monomial, specialize, AlphaPoly, Character, MonoKey, Monomial, RingFlavor, Specialization, SpectralParam,
};
use qtchar::{build_algebra, folding_data};

const NON_SIMPLY_LACED: [&str; 5] = ["B2", "B3", "C2", "C3", "G2"];

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 32,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn sigma_has_order_d(
        which in 0..NON_SIMPLY_LACED.len(),
        vars in prop::collection::vec((0usize..8, -6i32..6, -2i32..3), 1..6),
    ) {
        let f = folding_data(&build_algebra(NON_SIMPLY_LACED[which]).unwrap()).unwrap();
        let n = f.gp.rank();
        let key = vars
            .iter()
            .filter(|v| v.2 != 0)
            .fold(MonoKey::one(), |k, &(j, m, e)| k.mul(&MonoKey::var(1 + j % n, SpectralParam::t(m), e)));
        let mut moved = key.clone();
        for _ in 0..f.order() {
            moved = sigma_act(&f, &moved);
        }
        prop_assert_eq!(moved, key);
    }

    #[test]
    fn classical_specializations_are_multiplicative(
        which in 0..2usize,
        i in 1usize..4,
        j in 1usize..4,
        a in 0i32..4,
        b in 0i32..4,
    ) {
        let g = build_algebra(["C2", "B2"][which]).unwrap();
        let fl = RingFlavor::interp(&g);
        let fund = |node: usize, m: i32| {
            let node = 1 + (node - 1) % g.rank();
            fm_closure(&fl, &parse_monomial(&format!("Y[{node};q^{m}]"), g.lacing()).unwrap())
        };
        let (x, y) = (fund(i, a), fund(j, b));
        prop_assume!(x.is_ok() && y.is_ok());
        let (x, y) = (x.unwrap(), y.unwrap());
        let xy = x.mul(&y).unwrap();
        for s in [Specialization::PiQ, Specialization::PiBarT] {
            let lhs = specialize(&g, &xy, s).unwrap();
            let rhs = specialize(&g, &x, s).unwrap().mul(&specialize(&g, &y, s).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn paired_bethe_roots_have_no_pole(
        which in 0..NON_SIMPLY_LACED.len(),
        roots in prop::collection::vec((1i64..40, 1i64..9, 1i64..5), 1..3),
    ) {
        let f = folding_data(&build_algebra(NON_SIMPLY_LACED[which]).unwrap()).unwrap();
        let moving: Vec<usize> = f.gp.nodes().filter(|&j| f.sigma(j) != j).collect();
        let mut labels = Vec::new();
        let mut base = Vec::new();
        let mut offsets = Vec::new();
        for (k, &(num, den, off)) in roots.iter().enumerate() {
            let orbit = f.fibre(f.orbit_of(moving[k % moving.len()]));
            // distinct base points per orbit
            let w = rational(num * 100 + k as i64, den);
            for (s, &node) in orbit.iter().enumerate() {
                labels.push(node);
                base.push(w.clone());
                offsets.push(s as i64 * off);
            }
        }
        prop_assert!(bethe_fold_limit(&labels, &base, &offsets, &sigma_commute(&f)).is_ok());
    }

    #[test]
    fn crystal_operators_are_inverse(
        which in 0..7usize,
        start in 1usize..5,
        walk in prop::collection::vec((1usize..5, any::<bool>()), 0..12),
    ) {
        let g = build_algebra(["A2", "A3", "B2", "B3", "C2", "C3", "G2"][which]).unwrap();
        let r = g.rank();
        let mut m = anchor(&g, &CrystalMonomial::var(1 + (start - 1) % r, 0)).unwrap();
        for (i, down) in walk {
            let i = 1 + (i - 1) % r;
            let s = crystal_stats(&g, &m, i);
            prop_assert_eq!(s.phi - s.eps, m.weight(r)[i - 1]);
            if let Some(n) = crystal_f(&g, &m, i) {
                prop_assert_eq!(crystal_e(&g, &n, i), Some(m.clone()));
            }
            if let Some(n) = crystal_e(&g, &m, i) {
                prop_assert_eq!(crystal_f(&g, &n, i), Some(m.clone()));
            }
            let next = if down { crystal_f(&g, &m, i) } else { crystal_e(&g, &m, i) };
            if let Some(n) = next {
                m = n;
            }
        }
    }

    #[test]
    fn membership_agrees_with_screenings(
        which in 0..4usize,
        node in 1usize..4,
        perturb in prop::option::of((1usize..4, -3i32..8, any::<bool>())),
    ) {
        let g = build_algebra(["A2", "B2", "C2", "G2"][which]).unwrap();
        let fl = RingFlavor::folded_t(&g);
        let node = 1 + (node - 1) % g.rank();
        let mut x: Character =
            fm_closure(&fl, &Monomial::unit(fl.var_kind(), MonoKey::var(node, SpectralParam::ONE, 1))).unwrap();
        if let Some((i, m, up)) = perturb {
            let i = 1 + (i - 1) % g.rank();
            x.add_term(MonoKey::var(i, SpectralParam::t(m), if up { 1 } else { -1 }), AlphaPoly::constant(1));
        }
        for i in g.nodes() {
            prop_assert_eq!(membership(&fl, &x, i), screening_apply(&fl, &x, i).unwrap().is_empty());
        }
    }
}
