//! The σ-action on monomials, σ-invariant parts, folded t-characters and
//! the folding cross-checks.

use crate::charalg::{fm_closure, fundamental};
use crate::error::{Error, Result};
use crate::liealg::{folding_data, AlgebraDatum, FoldingDatum};
use crate::ring::{Character, MonoKey, RingFlavor, SpectralParam, VarKind};
use std::collections::BTreeMap;

/// Node relabelling j ↦ σ(j), parameters fixed.
pub fn sigma_act(f: &FoldingDatum, key: &MonoKey) -> MonoKey {
    key.map_vars(|j, p| (f.sigma(j), p))
}

pub fn sigma_act_char(f: &FoldingDatum, x: &Character) -> Character {
    Character::from_terms(x.kind(), x.terms().map(|(k, c)| (sigma_act(f, k), c.clone())))
}

/// Rewrite a σ-invariant g′ monomial in the variables Ỹ_{i,a}, indexed by nodes of g.
pub fn regroup_tilde(f: &FoldingDatum, key: &MonoKey) -> Result<MonoKey> {
    let mut out = Vec::new();
    for i in f.g.nodes() {
        let fibre = f.fibre(i);
        let rep = fibre[0];
        let base: BTreeMap<SpectralParam, i32> = key.node_content(rep).into_iter().collect();
        for &j in &fibre[1..] {
            let other: BTreeMap<SpectralParam, i32> = key.node_content(j).into_iter().collect();
            if other != base {
                return Err(Error::RegroupFailed(format!(
                    "orbit of node {rep} is not balanced in {}",
                    crate::ring::format_key(VarKind::Y, key, 1)
                )));
            }
        }
        out.extend(base.into_iter().map(|(p, e)| (i, p, e)));
    }
    Ok(MonoKey::from_factors(out))
}

/// The σ-invariant monomials of a g′ character, rewritten in Ỹ-variables.
pub fn invariant_part(f: &FoldingDatum, x: &Character) -> Result<Character> {
    let mut out = Character::zero(VarKind::Y);
    for (k, c) in x.terms() {
        if sigma_act(f, k) == *k {
            out.add_term(regroup_tilde(f, k)?, c.clone());
        }
    }
    Ok(out)
}

/// Identify Y_{j,a} with Y_{orbit(j),a}.
pub fn fold_identify(f: &FoldingDatum, x: &Character) -> Character {
    Character::from_terms(
        x.kind(),
        x.terms()
            .map(|(k, c)| (k.map_vars(|j, p| (f.orbit_of(j), p)), c.clone())),
    )
}

/// Replace every parameter q^m by t^m.
pub fn q_to_t(x: &Character) -> Character {
    Character::from_terms(
        x.kind(),
        x.terms().map(|(k, c)| {
            (
                k.map_vars(|j, p| {
                    (
                        j,
                        SpectralParam {
                            e: p.e,
                            m: 0,
                            n: p.m + p.n,
                        },
                    )
                }),
                c.clone(),
            )
        }),
    )
}

/// Folded t-character of a g′ q-character: q ↦ t, then fold the nodes.
pub fn folded_tchar(f: &FoldingDatum, x: &Character) -> Character {
    fold_identify(f, &q_to_t(x))
}

/// Outcome of a folding cross-check.
#[derive(Clone, Debug)]
pub struct FoldLemmaReport {
    pub direct: Character,
    pub folded: Character,
    pub equal: bool,
}

/// F(Y_{1,1}) in the folded ring of g against the folded t-character of the
/// first fundamental representation of g′.
pub fn check_fold_lemma(g: &AlgebraDatum) -> Result<FoldLemmaReport> {
    let f = folding_data(g)?;
    let direct_flavor = RingFlavor::folded_t(g);
    let direct = fm_closure(&direct_flavor, &fundamental(&direct_flavor, 1, SpectralParam::ONE))?;
    let gp_flavor = RingFlavor::standard_q(&f.gp);
    let rep = f.representative(1);
    let up = fm_closure(&gp_flavor, &fundamental(&gp_flavor, rep, SpectralParam::ONE))?;
    let folded = folded_tchar(&f, &up);
    let equal = folded == direct;
    Ok(FoldLemmaReport { direct, folded, equal })
}

/// The σ-fundamental monomial Ỹ_{i,a} over g′.
pub fn sigma_fundamental(f: &FoldingDatum, i: usize, a: SpectralParam) -> MonoKey {
    MonoKey::from_factors(f.fibre(i).into_iter().map(|j| (j, a, 1)))
}

/// The q → 1 list of T_1(z) for B_ℓ, with its coefficient-2 term.
pub fn b_series_t1(l: usize) -> Character {
    let y = |i: usize, n: i32, e: i32| (i, SpectralParam::t(n), e);
    let li = l as i32;
    let mut terms: Vec<(Vec<(usize, SpectralParam, i32)>, i64)> = Vec::new();
    for i in 1..l {
        let ii = i as i32;
        let mut v = vec![y(i, ii - 1, 1)];
        if i > 1 {
            v.push(y(i - 1, ii, -1));
        }
        terms.push((v, 1));
        let mut w = vec![y(i, 2 * li - ii + 1, -1)];
        if i > 1 {
            w.push(y(i - 1, 2 * li - ii, 1));
        }
        terms.push((w, 1));
    }
    let mut top = vec![y(l, li - 1, 2)];
    let mut bottom = vec![y(l, li + 1, -2)];
    if l > 1 {
        top.push(y(l - 1, li, -1));
        bottom.push(y(l - 1, li, 1));
    }
    terms.push((top, 1));
    terms.push((bottom, 1));
    terms.push((vec![y(l, li - 1, 1), y(l, li + 1, -1)], 2));
    Character::from_terms(
        VarKind::Y,
        terms
            .into_iter()
            .map(|(v, c)| (MonoKey::from_factors(v), crate::ring::AlphaPoly::constant(c))),
    )
}
