//! Acceptance report: one pass/FAIL line per criterion.
//!
//! A failing criterion listed in `KNOWN_DEVIATIONS` is reported as FAIL but
//! does not fail the run; any other failure exits with status 1.

use qtchar::bae::{
    bethe_fold_limit, c2_qq_instance, certify_fold_gaudin, certify_fold_multiplicative, gq_int, gq_ratio,
    lemma_numeric_check, qq_check, qq_solve_tilde, rational, sigma_commute, typical_identities, DrinfeldData, GPoly,
    GaudinData,
};
use qtchar::charalg::{finite_character, fm_closure, membership, screening_apply};
use qtchar::corpus::{default_corpus_dir, load_corpus, run_fixture, run_query, Fixture, Query, Value};
use qtchar::crystal::{
    anchor, conjcrys_test, crystal_closure, crystal_e, crystal_f, crystal_stats, weyl_module_dimension, CrystalMonomial,
};
use qtchar::fold::{b_series_t1, check_fold_lemma};
use qtchar::interp::{check_part3, sigma_fundamental_of};
use qtchar::liealg::f_ell;
use qtchar::poly::{Laurent2, RatFn};
use qtchar::ring::{parse_monomial, AlphaPoly, Character, MonoKey, RingFlavor, SpectralParam};
use qtchar::{build_algebra, folding_data, AlgebraDatum, Error};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

/// Wall-clock limit per basis-element fixture.
const FUNDAMENTAL_BUDGET: Duration = Duration::from_secs(1);
/// Wall-clock limit per interpolating-character fixture.
const INTERP_BUDGET: Duration = Duration::from_secs(10);
/// Residual bound for numerically solved Bethe roots.
const RESIDUAL_TOL: f64 = 1e-10;
/// Random instances for the numeric folding check.
const LEMMA_INSTANCES: usize = 20;
/// Random σ-paired Bethe configurations.
const BETHE_CASES: usize = 200;
/// Random reachable crystal monomials.
const CRYSTAL_SAMPLES: usize = 10_000;
/// Elements and non-elements per flavor in the oracle comparison.
const ORACLE_SAMPLES: usize = 1_000;

/// Criteria whose literal statement contradicts the computation, with the reason.
const KNOWN_DEVIATIONS: &[(usize, &str)] = &[(
    7,
    "the stated 27 monomials / dimension 28 for L(Y_1,1) over D4 contradicts the stated 5-dimensional \
     zero weight space; 24 one-dimensional root spaces plus 5 give dimension 29 over 28 distinct monomials",
)];

struct Line {
    n: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

struct Ctx {
    corpus: Vec<Fixture>,
}

impl Ctx {
    /// Run a fixture by id, returning pass and elapsed time.
    fn fixture(&self, id: &str) -> (bool, Duration, String) {
        let fx = self
            .corpus
            .iter()
            .find(|f| f.id == id)
            .unwrap_or_else(|| panic!("no fixture {id}"));
        let start = Instant::now();
        let r = run_fixture(fx);
        (r.pass, start.elapsed(), r.detail)
    }

    /// Run fixtures; all must pass within `budget`.
    fn fixtures(&self, ids: &[&str], budget: Duration) -> (bool, Vec<String>) {
        let mut ok = true;
        let mut notes = Vec::new();
        for id in ids {
            let (pass, t, detail) = self.fixture(id);
            let in_time = t <= budget;
            ok &= pass && in_time;
            if !pass {
                notes.push(format!("{id} failed: {}", detail.lines().next().unwrap_or("")));
            } else if !in_time {
                notes.push(format!("{id} took {t:?}"));
            }
        }
        (ok, notes)
    }
}

fn character(q: &str) -> (Character, AlgebraDatum) {
    match run_query(&Query::parse(q).unwrap()).unwrap() {
        Value::Char { ch, g } => (ch, g),
        _ => panic!("{q} is not a character query"),
    }
}

fn key(text: &str, d: i64) -> MonoKey {
    parse_monomial(text, d).unwrap().key
}

fn int(ch: &Character, k: &MonoKey) -> i64 {
    ch.coeff(k).eval(1).try_into().unwrap()
}

fn summary(notes: &[String], ok_text: String) -> String {
    if notes.is_empty() {
        ok_text
    } else {
        notes.join("; ")
    }
}

fn c1(cx: &Ctx) -> Line {
    let ids = [
        "b2.fundamental.1",
        "b2.fundamental.2",
        "g2.fundamental.1",
        "g2.fundamental.2",
    ];
    let (mut ok, mut notes) = cx.fixtures(&ids, FUNDAMENTAL_BUDGET);
    let distinct: Vec<usize> = [("B2", 1), ("B2", 2), ("G2", 1), ("G2", 2)]
        .iter()
        .map(|(g, i)| character(&format!("closure folded-t {g} Y[{i};1]")).0.len())
        .collect();
    if distinct != [5, 4, 14, 7] {
        ok = false;
        notes.push(format!("distinct counts {distinct:?}"));
    }
    Line {
        n: 1,
        title: "basis elements F(Y_1), F(Y_2) for B2 and G2",
        pass: ok,
        detail: summary(
            &notes,
            format!("4 displays match, distinct {distinct:?}, each < {FUNDAMENTAL_BUDGET:?}"),
        ),
    }
}

fn c2(cx: &Ctx) -> Line {
    let (mut ok, mut notes) = cx.fixtures(&["c2.fun", "c2.fdeux", "c2.ftrois"], INTERP_BUDGET);
    let split = |q: &str| {
        let start = Instant::now();
        let (ch, _) = character(q);
        (ch.len(), ch.alpha_terms(), start.elapsed())
    };
    let fun = split("interp C2 Y[2;1]");
    let fdeux = split("interp C2 Y[1;q^-1]*Y[1;q]");
    let ftrois = split("interp C2 a*Y[1;1]");
    let c3 = split("interp C3 Y[3;1]");
    let g2 = split("interp G2 Y[1;1]");
    let counts = [fun, fdeux, ftrois, c3, g2].map(|(n, a, _)| (n, a));
    let want = [(5, 1), (11, 5), (4, 4), (14, 6), (15, 7)];
    if counts != want {
        ok = false;
        notes.push(format!("term/alpha counts {counts:?}, expected {want:?}"));
    }
    for (name, t) in [("C3", c3.2), ("G2", g2.2)] {
        if t > INTERP_BUDGET {
            ok = false;
            notes.push(format!("{name} took {t:?}"));
        }
    }
    Line {
        n: 2,
        title: "interpolating characters fun, fdeux, ftrois, C3, G2",
        pass: ok,
        detail: summary(
            &notes,
            "3 displays match in the quotient; C3 14 = 8 + 6 alpha, G2 15 = 8 + 7 alpha".to_string(),
        ),
    }
}

fn c3(cx: &Ctx) -> Line {
    let mut ids = Vec::new();
    for base in ["c2.fun", "c2.fdeux", "c2.ftrois"] {
        for s in ["pi_q", "pi_t", "pibar_t", "pi_t_prime", "pibar_q"] {
            ids.push(format!("{base}.{s}"));
        }
    }
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let (ok, notes) = cx.fixtures(&refs, INTERP_BUDGET);
    Line {
        n: 3,
        title: "five specializations of fun, fdeux, ftrois",
        pass: ok,
        detail: summary(
            &notes,
            "15 images match, including the three zero images of ftrois".to_string(),
        ),
    }
}

fn twisted_finite(label: &str, z: &str) -> std::collections::BTreeMap<Vec<i64>, num_bigint::BigInt> {
    let fl = RingFlavor::twisted_from_label(label).unwrap();
    let x = fm_closure(&fl, &parse_monomial(z, fl.d()).unwrap()).unwrap();
    finite_character(&x, fl.g.rank())
}

fn c4(cx: &Ctx) -> Line {
    let (mut ok, mut notes) = cx.fixtures(&["a3.fundamental.2", "a3.fundamental.2.invariant"], INTERP_BUDGET);
    let (inv, _) = character("invariant C2 Y[2;1]");
    let same = finite_character(&inv, 2) == twisted_finite("D3^(2)", "Z[2;1]");
    if !same {
        ok = false;
        notes.push("finite character differs from the D3^(2) fundamental".into());
    }
    Line {
        n: 4,
        title: "A3 middle fundamental and its 4-term invariant part",
        pass: ok,
        detail: summary(
            &notes,
            "6 terms, 4 invariant, finite character equals the D3^(2) fundamental".to_string(),
        ),
    }
}

fn c5(cx: &Ctx) -> Line {
    let (mut ok, mut notes) = cx.fixtures(&["a3.pair.invariant", "a3.pair.counts"], INTERP_BUDGET);
    let (inv, _) = character("invariant C2 Y[1;1] Y[3;1]");
    let two = key("Y[2;q]*Y[2;q^3]^-1", 2);
    let zero_weight = two.factors().iter().all(|_| true) && {
        let w = finite_character(&Character::from_terms(inv.kind(), [(two.clone(), AlphaPoly::one())]), 2);
        w.keys().all(|k| k.iter().all(|&c| c == 0))
    };
    if int(&inv, &two) != 2 || !zero_weight {
        ok = false;
        notes.push("coefficient-2 term missing at weight 0".into());
    }
    let fin = finite_character(&inv, 2);
    if fin != twisted_finite("D3^(2)", "Z[1;1]") {
        ok = false;
        notes.push("finite character differs from the 6-dimensional D3^(2) fundamental".into());
    }
    Line {
        n: 5,
        title: "A3 end pair: 5 invariant monomials, multiplicity 6",
        pass: ok,
        detail: summary(
            &notes,
            "5 distinct, total 6, 2 at weight 0, finite character of dimension 6".to_string(),
        ),
    }
}

fn c6(cx: &Ctx) -> Line {
    let (mut ok, mut notes) = cx.fixtures(
        &["a5.fundamental.3", "c3.invariant", "c3.pibar_t", "c3.pi_t"],
        INTERP_BUDGET,
    );
    let g = build_algebra("C3").unwrap();
    let w = sigma_fundamental_of(&g, 3, SpectralParam::ONE).unwrap();
    let v = check_part3(&g, &w).unwrap();
    let leg = v.legs.iter().find(|l| l.name == "pibar_t").unwrap();
    if !leg.pass() {
        ok = false;
        notes.push("pibar_t image differs from the folded t-character".into());
    }
    Line {
        n: 6,
        title: "A5 middle fundamental and the C3 interpolating character",
        pass: ok,
        detail: summary(
            &notes,
            "20 monomials, 8 invariant, pibar_t = folded t-character (20), pi_t = 8 displayed terms".to_string(),
        ),
    }
}

fn c7(cx: &Ctx) -> Line {
    let (d4, _) = character("closure standard-q D4t Y[1;1]");
    let distinct = d4.len();
    let dim = d4.dimension_at(1);
    let literal = distinct == 27 && dim == 28.into();
    let (rest, notes) = cx.fixtures(
        &["g2.invariant", "g2.pibar_t", "g2.pi_t", "g2.pi_t.counts"],
        INTERP_BUDGET,
    );
    let (inv, _) = character("invariant G2 Y[1;1]");
    let inv_ok = inv.len() == 7 && inv.dimension_at(1) == 8.into();
    let others = if rest && inv_ok {
        "invariant part 7 distinct / 8 total, pibar_t 29 terms, pi_t 8 displayed terms all pass".to_string()
    } else {
        format!("other checks: {}", notes.join("; "))
    };
    Line {
        n: 7,
        title: "D4 trivalent fundamental and the G2 interpolating character",
        pass: literal && rest && inv_ok,
        detail: format!("D4 q-character: {distinct} distinct, dimension {dim} (stated 27 / 28); {others}"),
    }
}

fn c8(cx: &Ctx) -> Line {
    let (mut ok, mut notes) = cx.fixtures(&["a3.square.invariant", "a3.pair.square"], INTERP_BUDGET);
    let (big, _) = character("invariant C2 Y[1;1] Y[1;1] Y[3;1] Y[3;1]");
    let (sq, _) = character("invariant-pow C2 2 Y[1;1] Y[3;1]");
    let dims = (big.dimension_at(1), sq.dimension_at(1));
    if dims != (54.into(), 36.into()) || big.len() != 14 {
        ok = false;
        notes.push(format!("dimensions {dims:?}, {} monomials", big.len()));
    }
    let probe = key("Y[1;1]*Y[1;q^2]^-1*Y[2;q]^2", 2);
    let pair = (int(&big, &probe), int(&sq, &probe));
    if pair != (4, 2) {
        ok = false;
        notes.push(format!("probe coefficients {pair:?}"));
    }
    Line {
        n: 8,
        title: "square of the A3 end pair: 54 against 36",
        pass: ok,
        detail: summary(
            &notes,
            "14-monomial profile of dimension 54, square of dimension 36, probe 4 vs 2".to_string(),
        ),
    }
}

fn c9(cx: &Ctx) -> Line {
    let (mut ok, mut notes) = cx.fixtures(
        &["b2.fold-lemma", "b3.fold-lemma", "c2.fold-lemma", "c3.fold-lemma"],
        INTERP_BUDGET,
    );
    for l in [2usize, 3] {
        let r = check_fold_lemma(&build_algebra(&format!("B{l}")).unwrap()).unwrap();
        let list = b_series_t1(l);
        let lam0 = list.terms().any(|(_, c)| c == &AlphaPoly::constant(2));
        if r.folded != list || !lam0 || list.dimension_at(1) != (2 * l + 2).into() {
            ok = false;
            notes.push(format!("B{l} folded T_1 differs from the q→1 list"));
        }
    }
    let f = f_ell();
    let limits = (f.at_t1(), f.at_q1());
    if limits
        != (
            Some(RatFn::poly(Laurent2::one())),
            Some(RatFn::poly(Laurent2::constant(2))),
        )
    {
        ok = false;
        notes.push("f_l limits differ from 1 and 2".into());
    }
    Line {
        n: 9,
        title: "folding lemmas, the B-series list and the limits of f_l",
        pass: ok,
        detail: summary(
            &notes,
            "4 folding checks, B2/B3 lists with 2 on Lambda_0, f_l -> 1 and 2".to_string(),
        ),
    }
}

fn c10() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    for g in ["C2", "C3", "B2", "B3", "G2"] {
        let f = folding_data(&build_algebra(g).unwrap()).unwrap();
        let counts: Vec<usize> = f.g.nodes().map(|i| 1 + i % 2).collect();
        let d = DrinfeldData {
            shifts: vec![f.g.nodes().map(|i| if i == 1 { vec![0] } else { vec![] }).collect()],
        };
        let m = certify_fold_multiplicative(&f, &counts, &d).unwrap();
        let gd = GaudinData {
            coweights: vec![f.g.nodes().map(|i| i as i64).collect()],
            ..Default::default()
        };
        let a = certify_fold_gaudin(&f, &counts, &gd).unwrap();
        if !(m.equal && m.numeric_equal && a.equal && a.numeric_equal) {
            ok = false;
            notes.push(format!("{g} certificate fails"));
        }
    }
    let table = typical_identities().unwrap();
    for (name, pass) in &table {
        if !pass {
            ok = false;
            notes.push(format!("identity fails: {name}"));
        }
    }
    let f = folding_data(&build_algebra("C2").unwrap()).unwrap();
    let rep = lemma_numeric_check(&f, &[1, 1], &[1, 1], LEMMA_INSTANCES, 11).unwrap();
    if rep.instances < LEMMA_INSTANCES || rep.worst_lifted >= RESIDUAL_TOL || rep.worst_exact >= RESIDUAL_TOL {
        ok = false;
        notes.push(format!("numeric check {rep:?}"));
    }
    Line {
        n: 10,
        title: "BAE folding certificates, typical factors, Gaudin lemma",
        pass: ok,
        detail: summary(
            &notes,
            format!(
                "5 algebras certified, {} identities, A3->B2 on {} instances ({} solutions), worst residual {:.1e} < {RESIDUAL_TOL:.0e}",
                table.len(),
                rep.instances,
                rep.solutions,
                rep.worst_lifted.max(rep.worst_exact)
            ),
        ),
    }
}

fn c11() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    let a1 = build_algebra("A1").unwrap();
    let c2 = build_algebra("C2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut cases = 0;
    for _ in 0..5 {
        // rank one, one root: the Bethe equation forces u = q^-1
        let (qn, qd) = (rng.gen_range(2..9), rng.gen_range(1..7));
        if qn == qd {
            continue;
        }
        let q = gq_ratio(qn, qd);
        let qs = vec![GPoly::from_roots(&[gq_ratio(
            rng.gen_range(1..20),
            rng.gen_range(1..20),
        )])];
        let u = vec![gq_ratio(qd, qn)];
        match qq_solve_tilde(&a1, &q, &qs, &u, &[1]) {
            Ok(qt) if qq_check(&a1, &q, &qs, &qt, &u, &[gq_int(2)]).holds => cases += 1,
            _ => {
                ok = false;
                notes.push("rank-one instance fails".into());
            }
        }
        // C2 with one root per node
        let u1 = gq_ratio(rng.gen_range(2..9), rng.gen_range(1..5));
        let w2 = gq_ratio(rng.gen_range(1..9), rng.gen_range(1..9));
        let (qs, u) = c2_qq_instance(&q, &w2, &u1);
        match qq_solve_tilde(&c2, &q, &qs, &u, &[1, 1]) {
            Ok(qt) if qq_check(&c2, &q, &qs, &qt, &u, &[gq_int(1)]).holds => cases += 1,
            Ok(_) => {
                ok = false;
                notes.push("C2 identity fails".into());
            }
            Err(e) => {
                ok = false;
                notes.push(format!("C2 instance: {e}"));
            }
        }
    }
    let q = gq_ratio(3, 2);
    let ones = vec![GPoly::one(), GPoly::one()];
    let u = vec![gq_int(2), gq_int(3)];
    match qq_solve_tilde(&c2, &q, &ones, &u, &[0, 0]) {
        Ok(qt) if qq_check(&c2, &q, &ones, &qt, &u, &[]).holds => cases += 1,
        _ => {
            ok = false;
            notes.push("trivial C2 instance fails".into());
        }
    }
    Line {
        n: 11,
        title: "QQ relations from solved Bethe data",
        pass: ok && cases >= 3,
        detail: summary(
            &notes,
            format!("{cases} rank-one, C2 and trivial instances solved and checked exactly"),
        ),
    }
}

/// A random σ-paired configuration: orbit mates share a base root and differ in offset.
fn paired_case(
    rng: &mut ChaCha8Rng,
    f: &qtchar::FoldingDatum,
) -> (Vec<usize>, Vec<num_rational::BigRational>, Vec<i64>) {
    let m = rng.gen_range(2..=6);
    let moving: Vec<usize> = f.gp.nodes().filter(|&j| f.fibre(f.orbit_of(j)).len() > 1).collect();
    let mut labels = Vec::new();
    let mut base = Vec::new();
    let mut offsets = Vec::new();
    let mut used = BTreeSet::new();
    let mut fresh = |rng: &mut ChaCha8Rng| loop {
        let v = (rng.gen_range(1..60i64), rng.gen_range(1..13i64));
        if used.insert(v.0 * 1000 / v.1) {
            return rational(if rng.gen_bool(0.5) { v.0 } else { -v.0 }, v.1);
        }
    };
    while labels.len() < m {
        let room = m - labels.len();
        let j = *moving.choose(rng).unwrap();
        let orbit = f.fibre(f.orbit_of(j));
        if room >= 2 && rng.gen_bool(0.7) {
            let w = fresh(rng);
            let take = orbit.len().min(room);
            let mut offs: Vec<i64> = (1..=6).collect();
            offs.shuffle(rng);
            for (k, &node) in orbit.iter().take(take).enumerate() {
                labels.push(node);
                base.push(w.clone());
                offsets.push(if k == 0 { 0 } else { offs[k] });
            }
        } else {
            let node = rng.gen_range(1..=f.gp.rank());
            labels.push(node);
            base.push(fresh(rng));
            offsets.push(0);
        }
    }
    (labels, base, offsets)
}

fn c12() -> Line {
    let algebras = ["C2", "C3", "B2", "B3", "G2"];
    let folds: Vec<_> = algebras
        .iter()
        .map(|g| folding_data(&build_algebra(g).unwrap()).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let cases: Vec<(usize, Vec<usize>, Vec<num_rational::BigRational>, Vec<i64>)> = (0..BETHE_CASES)
        .map(|k| {
            let a = k % folds.len();
            let (l, b, o) = paired_case(&mut rng, &folds[a]);
            (a, l, b, o)
        })
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(a, l, b, o)| {
            let comm = sigma_commute(&folds[*a]);
            match bethe_fold_limit(l, b, o, &comm) {
                Ok(_) => None,
                Err(e) => Some(format!("{} {l:?}: {e}", algebras[*a])),
            }
        })
        .collect();
    let mut controls = 0;
    let mut control_ok = true;
    for f in &folds {
        let comm = sigma_commute(f);
        for j in f.gp.nodes() {
            for k in f.gp.neighbors(j) {
                controls += 1;
                let w = rational(3, 5);
                let r = bethe_fold_limit(&[j, k], &[w.clone(), w], &[0, 1], &comm);
                control_ok &= matches!(r, Err(Error::PoleDetected(_)));
            }
        }
    }
    let ok = failures.is_empty() && control_ok;
    let mut notes = failures.into_iter().take(3).collect::<Vec<_>>();
    if !control_ok {
        notes.push("a non-commuting control case has no pole".into());
    }
    Line {
        n: 12,
        title: "Bethe vector limits for σ-paired roots",
        pass: ok,
        detail: summary(
            &notes,
            format!("{BETHE_CASES} random paired configurations with m <= 6 pole-free, {controls} adjacent controls detect the pole"),
        ),
    }
}

fn crystal_axioms(g: &AlgebraDatum, m: &CrystalMonomial) -> Result<(), String> {
    let r = g.rank();
    let wt = m.weight(r);
    for i in g.nodes() {
        let s = crystal_stats(g, m, i);
        if s.phi - s.eps != wt[i - 1] {
            return Err(format!("phi - eps at node {i} of {}", m.to_text()));
        }
        if let Some(fm) = crystal_f(g, m, i) {
            let w2 = fm.weight(r);
            if (1..=r).any(|k| w2[k - 1] != wt[k - 1] - g.cartan(k, i)) {
                return Err(format!("wt(f_{i} {}) is not wt - alpha_{i}", m.to_text()));
            }
            if crystal_e(g, &fm, i).as_ref() != Some(m) {
                return Err(format!("e_{i} f_{i} {} differs", m.to_text()));
            }
        }
        if let Some(em) = crystal_e(g, m, i) {
            if crystal_f(g, &em, i).as_ref() != Some(m) {
                return Err(format!("f_{i} e_{i} {} differs", m.to_text()));
            }
        }
    }
    Ok(())
}

fn c13() -> Line {
    let mut ok = true;
    let mut notes = Vec::new();
    let size = |g: &str, m: &str| {
        let g = build_algebra(g).unwrap();
        crystal_closure(&g, &CrystalMonomial::new(key(m, 1)).unwrap())
            .unwrap()
            .len()
    };
    let sizes = (size("A2", "Y[1;1]"), size("C2", "Y[2;1]"));
    if sizes != (3, 5) {
        ok = false;
        notes.push(format!("closure sizes {sizes:?}"));
    }
    let v = conjcrys_test(&build_algebra("C2").unwrap(), 2, 0).unwrap();
    if !v.pass() {
        ok = false;
        notes.push("conjcrys C2 i=2 fails".into());
    }
    // random walks from products of fundamentals
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let types = ["A2", "A3", "B2", "B3", "C2", "C3", "G2"];
    let mut checked = 0;
    let mut axiom_fail = None;
    while checked < CRYSTAL_SAMPLES && axiom_fail.is_none() {
        let g = build_algebra(types.choose(&mut rng).unwrap()).unwrap();
        let mut top = MonoKey::one();
        for _ in 0..rng.gen_range(1..=2) {
            let i = rng.gen_range(1..=g.rank());
            top = top.mul(&MonoKey::var(i, SpectralParam::t(2 * rng.gen_range(0..3)), 1));
        }
        let Ok(mut m) = anchor(&g, &CrystalMonomial::new(top).unwrap()) else {
            continue;
        };
        for _ in 0..20 {
            if let Err(e) = crystal_axioms(&g, &m) {
                axiom_fail = Some(format!("{}: {e}", g.label()));
                break;
            }
            checked += 1;
            let i = rng.gen_range(1..=g.rank());
            let next = if rng.gen_bool(0.7) {
                crystal_f(&g, &m, i)
            } else {
                crystal_e(&g, &m, i)
            };
            if let Some(n) = next {
                m = n;
            }
        }
    }
    if let Some(e) = axiom_fail {
        ok = false;
        notes.push(e);
    }
    let mut oracle = 0;
    for label in ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"] {
        let g = build_algebra(label).unwrap();
        for i in g.nodes() {
            let m = anchor(&g, &CrystalMonomial::var(i, 0)).unwrap();
            let n = crystal_closure(&g, &m).unwrap().len() as i64;
            let mut w = vec![0; g.rank()];
            w[i - 1] = 1;
            let dim = weyl_module_dimension(&g, &w);
            oracle += 1;
            if n != dim {
                ok = false;
                notes.push(format!("{label} omega_{i}: crystal {n}, oracle {dim}"));
            }
        }
    }
    Line {
        n: 13,
        title: "monomial crystals",
        pass: ok,
        detail: summary(
            &notes,
            format!(
                "sizes 3 and 5, conjcrys C2 i=2, axioms on {checked} reachable monomials, {oracle} fundamentals match the Freudenthal oracle"
            ),
        ),
    }
}

/// Random elements of the kernel and perturbations of them.
fn oracle_suite(fl: &RingFlavor, seed: u64, n: usize) -> (usize, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = &fl.g;
    let mut pool: Vec<Character> = Vec::new();
    while pool.len() < 12 {
        // factors far apart keep the top monomial the only dominant one
        let mut top = MonoKey::one();
        for f in 0..rng.gen_range(1..=2) {
            let i = rng.gen_range(1..=g.rank());
            top = top.mul(&MonoKey::var(i, SpectralParam::t(40 * f + rng.gen_range(0..4)), 1));
        }
        if let Ok(x) = fm_closure(fl, &qtchar::ring::Monomial::unit(fl.var_kind(), top)) {
            pool.push(x);
        }
    }
    let (mut agree, mut members, mut others) = (0, 0, 0);
    for k in 0..n {
        let base = pool.choose(&mut rng).unwrap().clone();
        let x = match k % 4 {
            0 => {
                let other = pool.choose(&mut rng).unwrap();
                let c = AlphaPoly::constant(rng.gen_range(1..4));
                base.add(&other.scale(&c)).unwrap()
            }
            1 => {
                let terms: Vec<(MonoKey, AlphaPoly)> = base.terms().map(|(k, c)| (k.clone(), c.clone())).collect();
                let drop = rng.gen_range(0..terms.len());
                Character::from_terms(
                    base.kind(),
                    terms
                        .into_iter()
                        .enumerate()
                        .filter(|(i, _)| *i != drop)
                        .map(|(_, t)| t),
                )
            }
            2 => {
                let (k0, _) = base.terms().nth(rng.gen_range(0..base.len())).unwrap();
                let mut y = base.clone();
                y.add_term(k0.clone(), AlphaPoly::constant(1));
                y
            }
            _ => {
                let i = rng.gen_range(1..=g.rank());
                let extra = MonoKey::var(
                    i,
                    SpectralParam::t(rng.gen_range(-3..8)),
                    if rng.gen_bool(0.5) { 1 } else { -1 },
                );
                let mut y = base.clone();
                y.add_term(extra, AlphaPoly::constant(1));
                y
            }
        };
        let by_membership = g.nodes().all(|i| membership(fl, &x, i));
        let by_screening = g.nodes().all(|i| screening_apply(fl, &x, i).unwrap().is_empty());
        if by_membership == by_screening {
            agree += 1;
        }
        if by_membership {
            members += 1;
        } else {
            others += 1;
        }
    }
    (agree, members, others)
}

fn c14() -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, label) in ["A2", "B2", "C2", "G2"].iter().enumerate() {
        let fl = RingFlavor::folded_t(&build_algebra(label).unwrap());
        let (agree, members, others) = oracle_suite(&fl, 14 + k as u64, ORACLE_SAMPLES);
        ok &= agree == ORACLE_SAMPLES && members > 0 && others > 0;
        parts.push(format!("{label} {agree}/{ORACLE_SAMPLES} ({members} in, {others} out)"));
    }
    Line {
        n: 14,
        title: "membership against the screening oracle",
        pass: ok,
        detail: parts.join(", "),
    }
}

fn main() {
    let cx = Ctx {
        corpus: load_corpus(default_corpus_dir()).expect("corpus"),
    };
    let checks: [&dyn Fn(&Ctx) -> Line; 14] = [
        &c1,
        &c2,
        &c3,
        &c4,
        &c5,
        &c6,
        &c7,
        &c8,
        &c9,
        &|_| c10(),
        &|_| c11(),
        &|_| c12(),
        &|_| c13(),
        &|_| c14(),
    ];
    let mut unexpected = 0;
    let mut lines = Vec::new();
    for check in checks {
        let start = Instant::now();
        let l = check(&cx);
        let known = KNOWN_DEVIATIONS.iter().find(|(n, _)| *n == l.n);
        println!(
            "criterion {:>2} {} {}: {} [{} ms]",
            l.n,
            if l.pass { "pass" } else { "FAIL" },
            l.title,
            l.detail,
            start.elapsed().as_millis()
        );
        if !l.pass {
            match known {
                Some((_, why)) => println!("             known deviation: {why}"),
                None => unexpected += 1,
            }
        }
        lines.push(l);
    }
    let passed = lines.iter().filter(|l| l.pass).count();
    println!(
        "{passed}/{} criteria pass, {unexpected} unexpected failures",
        lines.len()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
