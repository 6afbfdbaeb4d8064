//! Closure algorithm for the elements F(m), kernel membership oracles,
//! the screening derivation and finite characters.

use crate::error::{Error, Result};
use crate::liealg::{weyl_reflect, AlgebraDatum, Weight};
use crate::ring::{
    format_key, key_at_q1, key_at_q_eps, key_at_t1, specialize, AlphaPoly, Character, FlavorKind, MonoKey, Monomial,
    RingFlavor, Specialization, SpectralParam,
};
use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};

/// Environment variable overriding the default step budget.
pub const CAP_ENV: &str = "QTCHAR_CAP";

/// Default number of node expansions before giving up.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Tuning knobs for [`fm_closure_with`].
#[derive(Clone, Debug)]
pub struct ClosureOptions {
    pub cap: usize,
    /// Process equal-height monomials in reverse canonical order.
    pub reverse_ties: bool,
    /// Run the membership checks on the result.
    pub verify: bool,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        let cap = std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(DEFAULT_CAP);
        Self {
            cap,
            reverse_ties: false,
            verify: true,
        }
    }
}

/// A term produced by a node expansion: multiplier, coefficient, number of A^{-1} factors.
pub type ExpTerm = (MonoKey, AlphaPoly, usize);

fn mul_expansions(x: &[ExpTerm], y: &[ExpTerm]) -> Vec<ExpTerm> {
    let mut acc: BTreeMap<MonoKey, (AlphaPoly, usize)> = BTreeMap::new();
    for (k1, c1, h1) in x {
        for (k2, c2, h2) in y {
            let e = acc.entry(k1.mul(k2)).or_insert((AlphaPoly::zero(), h1 + h2));
            e.0 = e.0.add(&c1.mul(c2));
        }
    }
    acc.into_iter()
        .filter(|(_, (c, _))| !c.is_zero())
        .map(|(k, (c, h))| (k, c, h))
        .collect()
}

fn unit_expansion() -> Vec<ExpTerm> {
    vec![(MonoKey::one(), AlphaPoly::one(), 0)]
}

/// Class and position of p along the lattice generated by s².
fn class_pos(p: SpectralParam, s: SpectralParam) -> ((i32, i32, i32), i32) {
    if s.n != 0 {
        let step = 2 * s.n;
        let n0 = p.n.rem_euclid(step);
        let k = (p.n - n0) / step;
        ((p.e, p.m - 2 * k * s.m, n0), k)
    } else {
        let step = 2 * s.m;
        let m0 = p.m.rem_euclid(step);
        let k = (p.m - m0) / step;
        ((p.e, m0, p.n), k)
    }
}

/// Decompose a multiset of parameters into strings b, bs², bs⁴, … in general position.
pub fn strings(content: &[(SpectralParam, i32)], s: SpectralParam) -> Vec<Vec<SpectralParam>> {
    let mut by_class: BTreeMap<(i32, i32, i32), BTreeMap<i32, (SpectralParam, i32)>> = BTreeMap::new();
    for &(p, e) in content {
        let (c, k) = class_pos(p, s);
        by_class.entry(c).or_default().entry(k).or_insert((p, 0)).1 += e;
    }
    let mut out = Vec::new();
    for (_, mut line) in by_class {
        line.retain(|_, v| v.1 > 0);
        while let Some((&k0, _)) = line.iter().next() {
            let mut run = Vec::new();
            let mut k = k0;
            while let Some(v) = line.get_mut(&k) {
                run.push(v.0);
                v.1 -= 1;
                if v.1 == 0 {
                    line.remove(&k);
                }
                k += 1;
            }
            out.push(run);
        }
    }
    out
}

/// Expansion of one KR string: Σ_j ∏ of A^{-1} at the top j elements.
fn string_expansion(flavor: &RingFlavor, i: usize, run: &[SpectralParam]) -> Result<Vec<ExpTerm>> {
    let d = flavor.d();
    let s = flavor.block_shift(i);
    let mut out = unit_expansion();
    let mut acc = MonoKey::one();
    for (j, x) in run.iter().rev().enumerate() {
        acc = acc.mul(&flavor.a_monomial(i, x.mul(s, d))?.inv());
        out.push((acc.clone(), AlphaPoly::one(), j + 1));
    }
    Ok(out)
}

/// The W-block polynomial for a node with d_i < d, anchored at W_{i,a}.
fn w_block(flavor: &RingFlavor, i: usize, a: SpectralParam) -> Result<Vec<ExpTerm>> {
    let d = flavor.d();
    let g = &flavor.g;
    let ainv = |m: i32| -> Result<MonoKey> { Ok(flavor.a_monomial(i, a.mul(SpectralParam::qt(m, 1), d))?.inv()) };
    let alpha = AlphaPoly::alpha();
    let one = AlphaPoly::one();
    match d - g.d(i) {
        1 => {
            let a1 = ainv(2)?;
            let a2 = a1.mul(&ainv(0)?);
            Ok(vec![(MonoKey::one(), one.clone(), 0), (a1, alpha, 1), (a2, one, 2)])
        }
        2 => {
            let a1 = ainv(3)?;
            let a2 = a1.mul(&ainv(1)?);
            let a3 = a2.mul(&ainv(-1)?);
            Ok(vec![
                (MonoKey::one(), one.clone(), 0),
                (a1, alpha.clone(), 1),
                (a2, alpha, 2),
                (a3, one, 3),
            ])
        }
        _ => Err(Error::Invalid("W-block requested at a node with d_i = d".into())),
    }
}

/// Greedy W-matching: returns W anchors and the leftover single parameters.
pub fn match_w_blocks(
    g: &AlgebraDatum,
    i: usize,
    content: &[(SpectralParam, i32)],
) -> (Vec<SpectralParam>, Vec<(SpectralParam, i32)>) {
    let d = g.lacing();
    let k = (d - g.d(i) + 1) as i32;
    let mut counts: BTreeMap<SpectralParam, i32> = content.iter().copied().collect();
    let mut anchors = Vec::new();
    if k > 1 {
        let keys: Vec<SpectralParam> = counts.keys().copied().collect();
        for p in keys {
            loop {
                let members: Vec<SpectralParam> = (0..k).map(|s| SpectralParam { m: p.m + 2 * s, ..p }).collect();
                if members.iter().all(|x| counts.get(x).copied().unwrap_or(0) > 0) {
                    for x in &members {
                        *counts.get_mut(x).unwrap() -= 1;
                    }
                    anchors.push(SpectralParam { m: p.m + (k - 1), ..p });
                } else {
                    break;
                }
            }
        }
    }
    let singles = counts.into_iter().filter(|(_, c)| *c > 0).collect();
    (anchors, singles)
}

/// Full expansion at node i of an i-dominant monomial (leading term included).
pub fn node_expand_terms(flavor: &RingFlavor, key: &MonoKey, i: usize) -> Result<Vec<ExpTerm>> {
    let content = key.node_content(i);
    if content.iter().any(|&(_, e)| e < 0) {
        return Err(Error::BlockFactorizationFailed {
            node: i,
            monomial: format_key(flavor.var_kind(), key, flavor.d()),
        });
    }
    let s = flavor.block_shift(i);
    let mut out = unit_expansion();
    let singles = if flavor.kind == FlavorKind::InterpQT && flavor.g.d(i) < flavor.d() {
        let (anchors, singles) = match_w_blocks(&flavor.g, i, &content);
        for a in anchors {
            out = mul_expansions(&out, &w_block(flavor, i, a)?);
        }
        singles
    } else {
        content
    };
    for run in strings(&singles, s) {
        out = mul_expansions(&out, &string_expansion(flavor, i, &run)?);
    }
    Ok(out)
}

/// node_expand as a character: M times the product of its node-i blocks.
pub fn node_expand(flavor: &RingFlavor, m: &Monomial, i: usize) -> Result<Character> {
    flavor.g.check_node(i)?;
    let terms = node_expand_terms(flavor, &m.key, i)?;
    Ok(Character::from_terms(
        m.kind,
        terms.into_iter().map(|(k, c, _)| (m.key.mul(&k), c.mul(&m.coeff))),
    ))
}

fn spec_points(d: i64) -> Vec<i64> {
    let mut v = vec![0, 1, d];
    v.dedup();
    v
}

/// Key seen at the specialization point α = p of the interpolating ring.
fn key_at_point(key: &MonoKey, p: i64, d: i64) -> MonoKey {
    match p {
        0 => key_at_q_eps(key, d),
        1 => key_at_t1(key),
        _ => key_at_q1(key),
    }
}

/// i-dominance; for the interpolating flavor through the three specializations.
pub fn is_i_dominant(flavor: &RingFlavor, key: &MonoKey, i: usize) -> bool {
    if flavor.kind == FlavorKind::InterpQT {
        let d = flavor.d();
        spec_points(d)
            .into_iter()
            .all(|p| key_at_point(key, p, d).is_node_dominant(i))
    } else {
        key.is_node_dominant(i)
    }
}

pub fn is_dominant(flavor: &RingFlavor, key: &MonoKey) -> bool {
    flavor.g.nodes().all(|i| is_i_dominant(flavor, key, i))
}

struct Pending {
    height: usize,
    demand: Vec<AlphaPoly>,
}

/// Integer coefficient rule at one point: demands at non-dominant nodes must agree.
fn point_coefficient(
    dominant_at: &[bool],
    demand: &[BigInt],
    head: Option<&BigInt>,
    key_text: &dyn Fn() -> String,
) -> Result<BigInt> {
    if let Some(h) = head {
        return Ok(h.clone());
    }
    let mut forced: Option<&BigInt> = None;
    for (j, dom) in dominant_at.iter().enumerate() {
        if !dom {
            match forced {
                None => forced = Some(&demand[j]),
                Some(f) if *f != demand[j] => {
                    return Err(Error::VerificationFailed(format!(
                        "inconsistent multiplicities {f} and {} at {}",
                        demand[j],
                        key_text()
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(match forced {
        Some(f) => f.clone(),
        None => demand.iter().max().cloned().unwrap_or_default(),
    })
}

/// Compute F(m) with default options.
pub fn fm_closure(flavor: &RingFlavor, m: &Monomial) -> Result<Character> {
    fm_closure_with(flavor, m, &ClosureOptions::default())
}

/// The closure algorithm: expand every i-dominant monomial by the missing
/// multiplicity of its node-i blocks, top-down by height.
pub fn fm_closure_with(flavor: &RingFlavor, m: &Monomial, opts: &ClosureOptions) -> Result<Character> {
    let g = &flavor.g;
    let d = flavor.d();
    let n = g.rank();
    let kind = flavor.var_kind();
    if m.kind != kind && !(flavor.kind == FlavorKind::InterpQT && m.kind == crate::ring::VarKind::W) {
        return Err(Error::Mismatch(format!(
            "{} monomial for {}",
            m.kind.symbol(),
            flavor.name()
        )));
    }
    let m = if flavor.kind == FlavorKind::InterpQT {
        crate::ring::interp_monomial(g, m)?
    } else {
        m.clone()
    };
    if !is_dominant(flavor, &m.key) {
        return Err(Error::Invalid(format!(
            "{} is not dominant",
            format_key(kind, &m.key, d)
        )));
    }
    let interp = flavor.kind == FlavorKind::InterpQT;
    let points = if interp { spec_points(d) } else { vec![1] };

    let mut pending: BTreeMap<MonoKey, Pending> = BTreeMap::new();
    let mut queue: BTreeSet<(usize, MonoKey)> = BTreeSet::new();
    pending.insert(
        m.key.clone(),
        Pending {
            height: 0,
            demand: vec![AlphaPoly::zero(); n],
        },
    );
    queue.insert((0, m.key.clone()));
    let mut result = Character::zero(kind);
    let mut steps = 0usize;

    while let Some(entry) = if opts.reverse_ties {
        let first_h = queue.iter().next().map(|x| x.0);
        first_h
            .and_then(|h| {
                queue
                    .range((h, MonoKey::one())..(h + 1, MonoKey::one()))
                    .next_back()
                    .cloned()
            })
            .or_else(|| queue.iter().next().cloned())
    } else {
        queue.iter().next().cloned()
    } {
        queue.remove(&entry);
        let (height, key) = entry;
        let st = pending.remove(&key).expect("pending entry");
        let key_text = || format_key(kind, &key, d);
        let is_head = key == m.key;

        // coefficient, pointwise then interpolated
        let mut values = Vec::new();
        for &p in &points {
            let kp = if interp { key_at_point(&key, p, d) } else { key.clone() };
            let dom: Vec<bool> = g.nodes().map(|j| kp.is_node_dominant(j)).collect();
            let dem: Vec<BigInt> = st.demand.iter().map(|c| c.eval(p)).collect();
            let head = if is_head { Some(m.coeff.eval(p)) } else { None };
            values.push((p, point_coefficient(&dom, &dem, head.as_ref(), &key_text)?));
        }
        let coeff = if interp {
            AlphaPoly::interpolate(&values)
                .ok_or_else(|| Error::VerificationFailed(format!("non-integral multiplicity at {}", key_text())))?
        } else {
            AlphaPoly::constant(values[0].1.clone())
        };
        if coeff.is_zero() {
            continue;
        }
        result.add_term(key.clone(), coeff.clone());

        for j in g.nodes() {
            let r = coeff.sub(&st.demand[j - 1]);
            if r.is_zero() {
                continue;
            }
            let content = key.node_content(j);
            if content.is_empty() {
                continue;
            }
            if content.iter().any(|&(_, e)| e < 0) {
                // only allowed where the node-j content cancels after specialization
                let ok = points
                    .iter()
                    .all(|&p| r.eval(p).is_zero() || (interp && key_at_point(&key, p, d).node_content(j).is_empty()));
                if !ok {
                    return Err(Error::BlockFactorizationFailed {
                        node: j,
                        monomial: key_text(),
                    });
                }
                continue;
            }
            steps += 1;
            if steps > opts.cap {
                return Err(Error::CapExceeded {
                    cap: opts.cap,
                    frontier: queue.len() + 1,
                });
            }
            for (mult, c, h) in node_expand_terms(flavor, &key, j)? {
                if h == 0 {
                    continue;
                }
                let child = key.mul(&mult);
                let ch = height + h;
                let e = pending.entry(child.clone()).or_insert_with(|| {
                    queue.insert((ch, child.clone()));
                    Pending {
                        height: ch,
                        demand: vec![AlphaPoly::zero(); n],
                    }
                });
                debug_assert_eq!(e.height, ch);
                e.demand[j - 1] = e.demand[j - 1].add(&r.mul(&c));
            }
        }
    }

    if opts.verify {
        verify_closure(flavor, &m, &result)?;
    }
    Ok(result)
}

/// Post-run checks: unique dominant monomial and kernel membership at every node.
pub fn verify_closure(flavor: &RingFlavor, m: &Monomial, x: &Character) -> Result<()> {
    let g = &flavor.g;
    let d = flavor.d();
    for (k, _) in x.terms() {
        if k != &m.key && is_dominant(flavor, k) && flavor.kind != FlavorKind::InterpQT {
            return Err(Error::VerificationFailed(format!(
                "second dominant monomial {}",
                format_key(flavor.var_kind(), k, d)
            )));
        }
    }
    match flavor.kind {
        FlavorKind::InterpQT => {
            let checks = [
                (Specialization::PiQ, RingFlavor::standard_q(g)),
                (Specialization::PiBarT, RingFlavor::folded_t(g)),
                (Specialization::PiT, RingFlavor::twisted_t(g)),
            ];
            for (s, fl) in checks {
                let img = specialize(g, x, s)?;
                for i in g.nodes() {
                    if !membership(&fl, &img, i) {
                        return Err(Error::VerificationFailed(format!(
                            "{} image fails membership at node {i}",
                            s.name()
                        )));
                    }
                }
            }
        }
        _ => {
            for i in g.nodes() {
                if !membership(flavor, x, i) {
                    return Err(Error::VerificationFailed(format!("membership fails at node {i}")));
                }
            }
        }
    }
    Ok(())
}

/// Greedy kernel-membership test at node i.
pub fn membership(flavor: &RingFlavor, x: &Character, i: usize) -> bool {
    membership_remainder(flavor, x, i).is_ok()
}

/// As [`membership`], returning the offending remainder on failure.
pub fn membership_remainder(flavor: &RingFlavor, x: &Character, i: usize) -> std::result::Result<(), Character> {
    let mut rest = x.clone();
    let mut guard = 0usize;
    loop {
        // monomials with node-i content, highest node-i weight first
        let top = rest
            .terms()
            .filter(|(k, _)| k.has_node(i))
            .map(|(k, _)| k.node_weight(i))
            .max();
        let Some(w) = top else { return Ok(()) };
        let cand = rest
            .terms()
            .find(|(k, _)| k.has_node(i) && k.node_weight(i) == w && k.is_node_dominant(i))
            .map(|(k, c)| (k.clone(), c.clone()));
        let Some((k, c)) = cand else { return Err(rest) };
        let m = Monomial::new(rest.kind(), c, k);
        let Ok(exp) = node_expand(flavor, &m, i) else {
            return Err(rest);
        };
        let Ok(next) = rest.sub(&exp) else { return Err(rest) };
        rest = next;
        guard += 1;
        if guard > 100_000 {
            return Err(rest);
        }
    }
}

/// Normal form of the screening derivation S_i^- applied to a folded character.
///
/// Each S_i(b) is reduced to a representative with t-exponent 0 or 1 through
/// S_i(bt²) = A_{i,bt} S_i(b); the result maps each representative to its
/// coefficient. It is empty exactly when x lies in the kernel.
pub fn screening_apply(flavor: &RingFlavor, x: &Character, i: usize) -> Result<BTreeMap<SpectralParam, Character>> {
    let mut out: BTreeMap<SpectralParam, Character> = BTreeMap::new();
    for (k, c) in x.terms() {
        for (b, e) in k.node_content(i) {
            let n0 = b.n.rem_euclid(2);
            let rep = SpectralParam { n: n0, ..b };
            let steps = (b.n - n0) / 2;
            let mut factor = MonoKey::one();
            for s in 1..=steps.abs() {
                let a = if steps > 0 {
                    flavor.a_monomial(i, SpectralParam { n: n0 + 2 * s - 1, ..b })?
                } else {
                    flavor.a_monomial(i, SpectralParam { n: n0 - 2 * s + 1, ..b })?.inv()
                };
                factor = factor.mul(&a);
            }
            let entry = out.entry(rep).or_insert_with(|| Character::zero(x.kind()));
            entry.add_term(k.mul(&factor), c.mul(&AlphaPoly::constant(e)));
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Collapse spectral parameters: weight (fundamental basis) → multiplicity at α = 1.
pub fn finite_character(x: &Character, rank: usize) -> BTreeMap<Vec<i64>, BigInt> {
    finite_character_at(x, rank, 1)
}

pub fn finite_character_at(x: &Character, rank: usize, alpha: i64) -> BTreeMap<Vec<i64>, BigInt> {
    let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for (k, c) in x.terms() {
        let mut w = vec![0i64; rank];
        for &(i, _, e) in k.factors() {
            w[i - 1] += e as i64;
        }
        let v = c.eval(alpha);
        let slot = out.entry(w.clone()).or_insert_with(BigInt::zero);
        *slot += v;
        if slot.is_zero() {
            out.remove(&w);
        }
    }
    out
}

pub fn dimension(ch: &BTreeMap<Vec<i64>, BigInt>) -> BigInt {
    ch.values().sum()
}

/// Invariance under all simple reflections.
pub fn weyl_invariant(ch: &BTreeMap<Vec<i64>, BigInt>, g: &AlgebraDatum) -> bool {
    for (w, c) in ch {
        let lam: Weight = w.iter().map(|&x| Rational64::from_integer(x)).collect();
        for i in g.nodes() {
            let r = weyl_reflect(g, &lam, i);
            if r.iter().any(|x| !x.is_integer()) {
                return false;
            }
            let rw: Vec<i64> = r.iter().map(|x| x.to_integer()).collect();
            if ch.get(&rw) != Some(c) {
                return false;
            }
        }
    }
    true
}

/// Monomial with the single variable of the flavor's kind, exponent one.
pub fn fundamental(flavor: &RingFlavor, i: usize, a: SpectralParam) -> Monomial {
    Monomial::new(flavor.var_kind(), AlphaPoly::one(), MonoKey::var(i, a, 1))
}

/// Integer coefficients of a character, failing if any coefficient involves α.
pub fn integer_terms(x: &Character) -> Result<BTreeMap<MonoKey, BigInt>> {
    x.terms()
        .map(|(k, c)| {
            if c.is_constant() {
                Ok((k.clone(), c.constant_term()))
            } else {
                Err(Error::Mismatch("coefficient depends on α".into()))
            }
        })
        .collect()
}

#[allow(dead_code)]
fn is_one(c: &AlphaPoly) -> bool {
    c.is_constant() && c.constant_term().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::build_algebra;
    use crate::ring::{parse_monomial, Character};

    fn closure(flavor: &RingFlavor, m: &str) -> Character {
        let mono = parse_monomial(m, flavor.d()).unwrap();
        fm_closure(flavor, &mono).unwrap()
    }

    #[test]
    fn string_decomposition() {
        let s = SpectralParam::q(1);
        let c = [
            (SpectralParam::ONE, 1),
            (SpectralParam::q(2), 1),
            (SpectralParam::q(1), 1),
        ];
        let st = strings(&c, s);
        assert_eq!(st.len(), 2);
        assert_eq!(st[0].len() + st[1].len(), 3);
        let st = strings(&[(SpectralParam::t(1), 2)], SpectralParam::t(1));
        assert_eq!(st, vec![vec![SpectralParam::t(1)], vec![SpectralParam::t(1)]]);
    }

    #[test]
    fn standard_a1_kr() {
        let g = build_algebra("A1").unwrap();
        let f = RingFlavor::standard_q(&g);
        assert_eq!(closure(&f, "Y[1;1]").len(), 2);
        assert_eq!(closure(&f, "Y[1;1]*Y[1;q^2]").len(), 3);
        // general position: tensor product of two fundamentals
        assert_eq!(closure(&f, "Y[1;1]*Y[1;q^4]").len(), 4);
    }

    #[test]
    fn folded_b2_and_standard_a3() {
        let b2 = build_algebra("B2").unwrap();
        let x = closure(&RingFlavor::folded_t(&b2), "Y[1;1]");
        assert_eq!(x.len(), 5);
        assert_eq!(x.dimension_at(1), BigInt::from(6));
        let a3 = build_algebra("A3").unwrap();
        assert_eq!(closure(&RingFlavor::standard_q(&a3), "Y[2;1]").len(), 6);
    }

    #[test]
    fn node_expand_folded_c2() {
        let c2 = build_algebra("C2").unwrap();
        let f = RingFlavor::folded_t(&c2);
        let m = parse_monomial("Y[2;t^2]^-1*Y[1;t]^2", 1).unwrap();
        let e = node_expand(&f, &m, 1).unwrap();
        let mid = parse_monomial("Y[1;t]*Y[1;t^3]^-1", 1).unwrap().key;
        assert_eq!(e.coeff(&mid), AlphaPoly::constant(2));
        let free = parse_monomial("Y[2;1]", 1).unwrap();
        assert_eq!(node_expand(&f, &free, 1).unwrap().len(), 1);
    }

    #[test]
    fn twisted_d3() {
        let f = RingFlavor::twisted_from_label("D3^(2)").unwrap();
        let x = closure(&f, "Z[2;1]");
        let want = Character::parse_sum(
            "Z[2;1] + Z[2;t^2]^-1*Z[1;-t^2] + Z[1;-t^6]^-1*Z[2;-t^2] + Z[2;-t^4]^-1",
            2,
        )
        .unwrap();
        assert_eq!(x, want);
    }

    #[test]
    fn membership_and_screening() {
        let b2 = build_algebra("B2").unwrap();
        let f = RingFlavor::folded_t(&b2);
        let x = closure(&f, "Y[2;1]");
        for i in 1..=2 {
            assert!(membership(&f, &x, i));
            assert!(screening_apply(&f, &x, i).unwrap().is_empty());
        }
        let y = Character::parse_sum("Y[1;1]^-1", 1).unwrap();
        assert!(!membership(&f, &y, 1));
        assert!(!screening_apply(&f, &y, 1).unwrap().is_empty());
        let single = Character::parse_sum("Y[1;1]", 1).unwrap();
        assert!(!screening_apply(&f, &single, 1).unwrap().is_empty());
    }

    #[test]
    fn dominance_in_quotient() {
        let c2 = build_algebra("C2").unwrap();
        let f = RingFlavor::interp(&c2);
        let m = parse_monomial("Y[1;1]*Y[1;t]^-1*Y[1;q^4 t]", 2).unwrap();
        assert!(is_i_dominant(&f, &m.key, 1));
        let lit = parse_monomial("Y[1;1]*Y[1;t]^-1*Y[1;q^2 t]", 2).unwrap();
        assert!(!is_i_dominant(&f, &lit.key, 1));
        let neg = parse_monomial("Y[1;1]*Y[1;t^3]^-1", 2).unwrap();
        assert!(!is_i_dominant(&RingFlavor::folded_t(&c2), &neg.key, 1));
    }

    #[test]
    fn finite_characters() {
        let a3 = build_algebra("A3").unwrap();
        let x = closure(&RingFlavor::standard_q(&a3), "Y[2;1]");
        let ch = finite_character(&x, 3);
        assert_eq!(dimension(&ch), BigInt::from(6));
        assert!(weyl_invariant(&ch, &a3));
        let a1 = build_algebra("A1").unwrap();
        let lone: BTreeMap<Vec<i64>, BigInt> = [(vec![1], BigInt::from(1))].into_iter().collect();
        assert!(!weyl_invariant(&lone, &a1));
        assert_eq!(dimension(&BTreeMap::new()), BigInt::from(0));
    }
}
