//! Monomial crystals: statistics, Kashiwara operators, closures, the
//! subcrystal test and a Freudenthal multiplicity oracle.

use crate::charalg::{fm_closure, fundamental};
use crate::error::{Error, Result};
use crate::liealg::AlgebraDatum;
use crate::ring::{format_key, Character, MonoKey, RingFlavor, SpectralParam, VarKind};
use num_rational::Rational64;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Default budget for crystal closures.
pub const CRYSTAL_BUDGET: usize = 200_000;

/// A Laurent monomial in the variables Y_{i,t^r}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrystalMonomial(MonoKey);

impl CrystalMonomial {
    /// Accept keys whose parameters are pure powers of t.
    pub fn new(key: MonoKey) -> Result<Self> {
        if key.factors().iter().any(|&(_, p, _)| p.e != 0 || p.m != 0) {
            return Err(Error::Invalid(format!(
                "crystal monomials use parameters t^r only: {}",
                format_key(VarKind::Y, &key, 1)
            )));
        }
        Ok(Self(key))
    }

    pub fn var(i: usize, r: i32) -> Self {
        Self(MonoKey::var(i, SpectralParam::t(r), 1))
    }

    pub fn key(&self) -> &MonoKey {
        &self.0
    }

    pub fn into_key(self) -> MonoKey {
        self.0
    }

    /// Exponents u_{i,l} at node i, increasing in l.
    fn row(&self, i: usize) -> Vec<(i32, i32)> {
        self.0.node_content(i).into_iter().map(|(p, e)| (p.n, e)).collect()
    }

    pub fn weight(&self, rank: usize) -> Vec<i64> {
        let mut w = vec![0i64; rank];
        for &(i, _, e) in self.0.factors() {
            w[i - 1] += e as i64;
        }
        w
    }

    pub fn to_text(&self) -> String {
        format_key(VarKind::Y, &self.0, 1)
    }
}

/// The statistics of a monomial at one node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalStats {
    /// Weight in the basis of fundamental weights.
    pub wt: Vec<i64>,
    pub eps: i64,
    pub phi: i64,
    /// Largest L realizing ε_i; absent when ε_i = 0.
    pub p: Option<i32>,
    /// Smallest L realizing φ_i; absent when φ_i = 0.
    pub q: Option<i32>,
}

/// Parity s_i: a bipartition of the diagram with s = 0 on node 1.
pub fn parity(g: &AlgebraDatum) -> Vec<i32> {
    let n = g.rank();
    let mut s = vec![-1i32; n];
    for start in g.nodes() {
        if s[start - 1] >= 0 {
            continue;
        }
        s[start - 1] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in g.nodes().filter(|&j| j != i && g.cartan(i, j) != 0) {
                if s[j - 1] < 0 {
                    s[j - 1] = 1 - s[i - 1];
                    queue.push_back(j);
                }
            }
        }
    }
    s
}

fn respects_parity(s: &[i32], m: &CrystalMonomial) -> bool {
    m.0.factors()
        .iter()
        .all(|&(i, p, _)| (p.n - s[i - 1]).rem_euclid(2) == 0)
}

/// Shift a monomial globally so that it lies in the parity class of g.
pub fn anchor(g: &AlgebraDatum, m: &CrystalMonomial) -> Result<CrystalMonomial> {
    let s = parity(g);
    if respects_parity(&s, m) {
        return Ok(m.clone());
    }
    let shifted = CrystalMonomial(m.0.map_vars(|i, p| (i, SpectralParam::t(p.n + 1))));
    if respects_parity(&s, &shifted) {
        Ok(shifted)
    } else {
        Err(Error::Invalid(format!(
            "{} has no parity-consistent shift",
            m.to_text()
        )))
    }
}

pub fn crystal_stats(g: &AlgebraDatum, m: &CrystalMonomial, i: usize) -> CrystalStats {
    let row = m.row(i);
    let (mut phi, mut q, mut acc) = (0i64, None, 0i64);
    for &(l, u) in &row {
        acc += u as i64;
        if acc > phi {
            phi = acc;
            q = Some(l);
        }
    }
    let (mut eps, mut p, mut acc) = (0i64, None, 0i64);
    for &(l, u) in row.iter().rev() {
        acc -= u as i64;
        if acc > eps {
            eps = acc;
            p = Some(l);
        }
    }
    CrystalStats {
        wt: m.weight(g.rank()),
        eps,
        phi,
        p,
        q,
    }
}

fn a_key(g: &AlgebraDatum, i: usize, r: i32) -> MonoKey {
    RingFlavor::folded_t(g)
        .a_monomial(i, SpectralParam::t(r))
        .expect("folded A-monomials exist for every node")
}

/// ẽ_i: multiply by A_{i,t^{p_i−1}}, or None when ε_i = 0.
pub fn crystal_e(g: &AlgebraDatum, m: &CrystalMonomial, i: usize) -> Option<CrystalMonomial> {
    let st = crystal_stats(g, m, i);
    st.p.map(|p| CrystalMonomial(m.0.mul(&a_key(g, i, p - 1))))
}

/// f̃_i: multiply by A_{i,t^{q_i+1}}^{-1}, or None when φ_i = 0.
pub fn crystal_f(g: &AlgebraDatum, m: &CrystalMonomial, i: usize) -> Option<CrystalMonomial> {
    let st = crystal_stats(g, m, i);
    st.q.map(|q| CrystalMonomial(m.0.mul(&a_key(g, i, q + 1).inv())))
}

/// Closure of m under all ẽ_i and f̃_i.
pub fn crystal_closure(g: &AlgebraDatum, m: &CrystalMonomial) -> Result<BTreeSet<CrystalMonomial>> {
    crystal_closure_capped(g, m, CRYSTAL_BUDGET)
}

pub fn crystal_closure_capped(
    g: &AlgebraDatum,
    m: &CrystalMonomial,
    budget: usize,
) -> Result<BTreeSet<CrystalMonomial>> {
    let mut seen = BTreeSet::from([m.clone()]);
    let mut queue = VecDeque::from([m.clone()]);
    while let Some(x) = queue.pop_front() {
        for i in g.nodes() {
            for y in [crystal_e(g, &x, i), crystal_f(g, &x, i)].into_iter().flatten() {
                if seen.insert(y.clone()) {
                    if seen.len() > budget {
                        return Err(Error::CapExceeded {
                            cap: budget,
                            frontier: queue.len(),
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen)
}

/// First element of S with an operator image outside S ∪ {∅}.
pub fn subcrystal_witness(
    g: &AlgebraDatum,
    s: &BTreeSet<CrystalMonomial>,
) -> Option<(CrystalMonomial, usize, char, CrystalMonomial)> {
    for x in s {
        for i in g.nodes() {
            if let Some(y) = crystal_e(g, x, i).filter(|y| !s.contains(y)) {
                return Some((x.clone(), i, 'e', y));
            }
            if let Some(y) = crystal_f(g, x, i).filter(|y| !s.contains(y)) {
                return Some((x.clone(), i, 'f', y));
            }
        }
    }
    None
}

pub fn subcrystal_check(g: &AlgebraDatum, s: &BTreeSet<CrystalMonomial>) -> bool {
    subcrystal_witness(g, s).is_none()
}

/// Monomial set of a folded character, multiplicities dropped.
pub fn monomial_set(x: &Character) -> Result<BTreeSet<CrystalMonomial>> {
    x.terms().map(|(k, _)| CrystalMonomial::new(k.clone())).collect()
}

/// Outcome of comparing F(Y_{i,t^r}) with the crystal generated by its top monomial.
#[derive(Clone, Debug)]
pub struct ConjCrysVerdict {
    pub character_set: BTreeSet<CrystalMonomial>,
    pub closure: BTreeSet<CrystalMonomial>,
    pub equal: bool,
    pub subcrystal: bool,
    /// An operator image escaping the set, when there is one.
    pub witness: Option<String>,
}

impl ConjCrysVerdict {
    pub fn pass(&self) -> bool {
        self.equal && self.subcrystal
    }
}

/// Compare the monomials of F(Y_{i,t^r}) with the crystal closure of Y_{i,t^r}.
pub fn conjcrys_test(g: &AlgebraDatum, i: usize, r: i32) -> Result<ConjCrysVerdict> {
    conjcrys_product(g, &[(i, r)])
}

/// As [`conjcrys_test`] for a product of fundamental elements.
pub fn conjcrys_product(g: &AlgebraDatum, factors: &[(usize, i32)]) -> Result<ConjCrysVerdict> {
    let fl = RingFlavor::folded_t(g);
    let mut x = Character::one(VarKind::Y);
    let mut top = MonoKey::one();
    for &(i, r) in factors {
        g.check_node(i)?;
        let m = CrystalMonomial::var(i, r);
        let a = anchor(g, &m)?;
        let p = a.key().factors()[0].1;
        x = x.mul(&fm_closure(&fl, &fundamental(&fl, i, p))?)?;
        top = top.mul(a.key());
    }
    let character_set = monomial_set(&x)?;
    let closure = crystal_closure(g, &CrystalMonomial(top))?;
    let witness = subcrystal_witness(g, &character_set)
        .map(|(m, i, op, y)| format!("{op}_{i}({}) = {}", m.to_text(), y.to_text()));
    Ok(ConjCrysVerdict {
        equal: character_set == closure,
        subcrystal: witness.is_none(),
        character_set,
        closure,
        witness,
    })
}

// ---------------------------------------------------------------------------
// Freudenthal oracle
// ---------------------------------------------------------------------------

type Q = Rational64;

fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        let inv = Q::one() / a[c][c];
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                for k in 0..2 * n {
                    let v = a[c][k];
                    a[r][k] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Positive roots in the simple-root basis.
pub fn positive_roots(g: &AlgebraDatum) -> Vec<Vec<i64>> {
    let n = g.rank();
    let simple: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut seen: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut queue: VecDeque<Vec<i64>> = simple.into_iter().collect();
    while let Some(b) = queue.pop_front() {
        for i in 1..=n {
            // ⟨β, α_i^∨⟩ = Σ_j β_j C_ij
            let pair: i64 = (1..=n).map(|j| b[j - 1] * g.cartan(i, j)).sum();
            let mut r = b.clone();
            r[i - 1] -= pair;
            if seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    seen.into_iter().filter(|r| r.iter().all(|&x| x >= 0)).collect()
}

/// Weight multiplicities of V(λ), λ in the fundamental-weight basis.
pub fn freudenthal(g: &AlgebraDatum, lambda: &[i64]) -> BTreeMap<Vec<i64>, i64> {
    let n = g.rank();
    // Gram matrix of fundamental weights: G C = D
    let c: Vec<Vec<Q>> = (1..=n)
        .map(|i| (1..=n).map(|j| Q::from(g.cartan(i, j))).collect())
        .collect();
    let cinv = invert(&c).expect("Cartan matrices are invertible");
    let gram: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| Q::from(g.d(i + 1)) * cinv[i][j]).collect())
        .collect();
    let dot = |x: &[Q], y: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                s += x[i] * gram[i][j] * y[j];
            }
        }
        s
    };
    // α in ω-coordinates: (α)_k = Σ_j a_j C_kj
    let to_omega = |a: &[i64]| -> Vec<i64> {
        (1..=n)
            .map(|k| (1..=n).map(|j| a[j - 1] * g.cartan(k, j)).sum())
            .collect()
    };
    let roots: Vec<(Vec<i64>, i64)> = positive_roots(g)
        .iter()
        .map(|r| (to_omega(r), r.iter().sum()))
        .collect();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| to_omega(&(0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>()))
        .collect();
    let q = |v: &[i64]| -> Vec<Q> { v.iter().map(|&x| Q::from(x)).collect() };
    let shift = |v: &[i64]| -> Vec<Q> { v.iter().map(|&x| Q::from(x + 1)).collect() };
    let top_norm = dot(&shift(lambda), &shift(lambda));

    let mut mult: BTreeMap<Vec<i64>, i64> = BTreeMap::from([(lambda.to_vec(), 1)]);
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::from([lambda.to_vec()]);
    let mut depth = 0i64;
    loop {
        depth += 1;
        let next: BTreeSet<Vec<i64>> = level
            .iter()
            .flat_map(|mu| {
                simple
                    .iter()
                    .map(move |a| mu.iter().zip(a).map(|(x, y)| x - y).collect::<Vec<i64>>())
            })
            .collect();
        let mut found = BTreeSet::new();
        for mu in next {
            let denom = top_norm - dot(&shift(&mu), &shift(&mu));
            if denom.is_zero() {
                continue;
            }
            let mut sum = Q::zero();
            for (a, h) in &roots {
                for k in 1..=depth / h {
                    let up: Vec<i64> = mu.iter().zip(a).map(|(x, y)| x + k * y).collect();
                    if let Some(&m) = mult.get(&up) {
                        sum += Q::from(m) * dot(&q(&up), &q(a));
                    }
                }
            }
            let m = Q::from(2) * sum / denom;
            if !m.is_zero() {
                mult.insert(mu.clone(), m.to_integer());
                found.insert(mu);
            }
        }
        if found.is_empty() {
            break;
        }
        level = found;
    }
    mult
}

pub fn weyl_module_dimension(g: &AlgebraDatum, lambda: &[i64]) -> i64 {
    freudenthal(g, lambda).values().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_algebra;
    use crate::ring::parse_monomial;

    fn cm(s: &str) -> CrystalMonomial {
        CrystalMonomial::new(parse_monomial(s, 1).unwrap().key).unwrap()
    }

    #[test]
    fn stats_small_cases() {
        let a2 = build_algebra("A2").unwrap();
        let st = crystal_stats(&a2, &CrystalMonomial::var(1, 0), 1);
        assert_eq!((st.phi, st.eps), (1, 0));
        let st = crystal_stats(&a2, &cm("Y[2;t]*Y[1;t^2]^-1"), 1);
        assert_eq!((st.eps, st.phi), (1, 0));
        assert_eq!(CrystalMonomial::var(2, 0).weight(2), vec![0, 1]);
    }

    #[test]
    fn operators_and_closures() {
        let a2 = build_algebra("A2").unwrap();
        assert_eq!(
            crystal_f(&a2, &CrystalMonomial::var(1, 0), 1),
            Some(cm("Y[2;t]*Y[1;t^2]^-1"))
        );
        assert_eq!(crystal_closure(&a2, &CrystalMonomial::var(1, 0)).unwrap().len(), 3);
        let c2 = build_algebra("C2").unwrap();
        assert_eq!(
            crystal_f(&c2, &CrystalMonomial::var(2, 0), 2),
            Some(cm("Y[2;t^2]^-1*Y[1;t]^2"))
        );
        let set = crystal_closure(&c2, &CrystalMonomial::var(2, 0)).unwrap();
        let want: BTreeSet<_> = [
            "Y[2;1]",
            "Y[2;t^2]^-1*Y[1;t]^2",
            "Y[1;t]*Y[1;t^3]^-1",
            "Y[1;t^3]^-2*Y[2;t^2]",
            "Y[2;t^4]^-1",
        ]
        .into_iter()
        .map(cm)
        .collect();
        assert_eq!(set, want);
        let one = CrystalMonomial::new(MonoKey::one()).unwrap();
        assert_eq!(crystal_closure(&c2, &one).unwrap().len(), 1);
    }

    #[test]
    fn conjcrys_c2() {
        let c2 = build_algebra("C2").unwrap();
        assert!(conjcrys_test(&c2, 2, 0).unwrap().pass());
        let b2 = build_algebra("B2").unwrap();
        for i in 1..=2 {
            assert!(conjcrys_test(&b2, i, 0).unwrap().subcrystal);
        }
    }

    #[test]
    fn freudenthal_dimensions() {
        let cases = [
            ("A2", vec![1, 0], 3),
            ("B2", vec![0, 1], 4),
            ("B2", vec![1, 0], 5),
            ("G2", vec![1, 0], 14),
            ("G2", vec![0, 1], 7),
            ("B3", vec![0, 0, 1], 8),
            ("C3", vec![0, 1, 0], 14),
            ("A3", vec![1, 1, 0], 20),
        ];
        for (g, w, dim) in cases {
            assert_eq!(weyl_module_dimension(&build_algebra(g).unwrap(), &w), dim, "{g} {w:?}");
        }
    }

    #[test]
    fn parity_and_anchor() {
        let g = build_algebra("A3").unwrap();
        assert_eq!(parity(&g), vec![0, 1, 0]);
        let m = CrystalMonomial::var(2, 0);
        assert_eq!(anchor(&g, &m).unwrap(), CrystalMonomial::var(2, 1));
    }
}
