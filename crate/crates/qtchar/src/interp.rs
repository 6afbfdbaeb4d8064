//! Interpolating (q,t)-characters: the closure in the refined ring, the five
//! specializations and the four-leg comparison against the target rings.

use crate::charalg::{fm_closure, fm_closure_with, ClosureOptions};
use crate::error::{Error, Result};
use crate::fold::{folded_tchar, regroup_tilde, sigma_fundamental};
use crate::liealg::{build_algebra, folding_data, AlgebraDatum, FoldingDatum};
use crate::ring::{
    format_key, specialize, AlphaPoly, Character, MonoKey, Monomial, RingFlavor, Specialization, SpectralParam, VarKind,
};

/// F̄_{q,t}(m) with default options.
pub fn interp_f(g: &AlgebraDatum, m: &Monomial) -> Result<Character> {
    fm_closure(&RingFlavor::interp(g), m)
}

/// F̄_{q,t}(m) with an explicit step budget.
pub fn interp_f_capped(g: &AlgebraDatum, m: &Monomial, cap: usize) -> Result<Character> {
    let opts = ClosureOptions {
        cap,
        ..ClosureOptions::default()
    };
    fm_closure_with(&RingFlavor::interp(g), m, &opts)
}

/// The five images of an interpolating character.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializationRecord {
    pub source: Character,
    pub pi_q: Character,
    pub pi_t: Character,
    pub pibar_t: Character,
    pub pi_t_prime: Character,
    pub pibar_q: Character,
    /// Node permutation taking ^Lg labels to the standard numbering of its type.
    pub pi_t_prime_relabel: Vec<usize>,
}

impl SpecializationRecord {
    pub fn get(&self, s: Specialization) -> &Character {
        match s {
            Specialization::PiQ => &self.pi_q,
            Specialization::PiT => &self.pi_t,
            Specialization::PiBarT => &self.pibar_t,
            Specialization::PiTPrime => &self.pi_t_prime,
            Specialization::PiBarQ => &self.pibar_q,
        }
    }
}

pub fn five_specializations(g: &AlgebraDatum, x: &Character) -> Result<SpecializationRecord> {
    let (_, relabel) = g.langlands_dual().standard_relabel()?;
    Ok(SpecializationRecord {
        source: x.clone(),
        pi_q: specialize(g, x, Specialization::PiQ)?,
        pi_t: specialize(g, x, Specialization::PiT)?,
        pibar_t: specialize(g, x, Specialization::PiBarT)?,
        pi_t_prime: specialize(g, x, Specialization::PiTPrime)?,
        pibar_q: specialize(g, x, Specialization::PiBarQ)?,
        pi_t_prime_relabel: relabel,
    })
}

/// One comparison of the four-leg check.
#[derive(Clone, Debug)]
pub struct Leg {
    pub name: &'static str,
    pub got: Result<Character>,
    pub expected: Result<Character>,
}

impl Leg {
    pub fn pass(&self) -> bool {
        matches!((&self.got, &self.expected), (Ok(a), Ok(b)) if a == b)
    }

    /// Terms present on one side only, with signed coefficient difference.
    pub fn diff(&self) -> Option<Character> {
        match (&self.got, &self.expected) {
            (Ok(a), Ok(b)) => a.sub(b).ok(),
            _ => None,
        }
    }
}

/// Verdict of the four-leg check for one σ-invariant g′ monomial.
#[derive(Clone, Debug)]
pub struct Part3Verdict {
    pub g: AlgebraDatum,
    /// The interpolating input monomial, in Y/W spelling.
    pub input: Monomial,
    pub x: Result<Character>,
    pub legs: Vec<Leg>,
}

impl Part3Verdict {
    pub fn pass(&self) -> bool {
        self.x.is_ok() && self.legs.iter().all(Leg::pass)
    }
}

/// Interpolating monomial for a σ-invariant g′ monomial: Ỹ_{i,a} becomes Y_{i,a}
/// on σ-fixed fibres and W_{i,a} otherwise.
pub fn part3_input(f: &FoldingDatum, w: &MonoKey) -> Result<Monomial> {
    let tilde = regroup_tilde(f, w)?;
    let mut ys = Vec::new();
    let mut ws = Vec::new();
    for &(i, p, e) in tilde.factors() {
        if f.fibre(i).len() == 1 {
            ys.push((i, p, e));
        } else {
            ws.push((i, p, e));
        }
    }
    let key = crate::ring::expand_w(&f.g, &MonoKey::from_factors(ws)).mul(&MonoKey::from_factors(ys));
    Ok(Monomial::new(VarKind::Y, AlphaPoly::one(), key))
}

fn image_key(g: &AlgebraDatum, m: &Monomial, s: Specialization) -> Result<MonoKey> {
    let img = specialize(g, &Character::from_monomial(m), s)?;
    let mut it = img.terms();
    match (it.next(), it.next()) {
        (Some((k, _)), None) => Ok(k.clone()),
        _ => Err(Error::Invalid(format!(
            "{} of the input is not a single monomial",
            s.name()
        ))),
    }
}

/// Folded t-character over (^Lg)′ of the Ȳ-monomial, relabelled back to ^Lg nodes.
/// Each Ȳ_{i,a} lifts to Y_{j,a} for one node j of the fibre over i.
pub fn dual_folded(g: &AlgebraDatum, ybar: &MonoKey) -> Result<Character> {
    let dual = g.langlands_dual();
    let (std, p) = dual.standard_relabel()?;
    let fd = folding_data(&std)?;
    let mut top = MonoKey::one();
    for &(i, a, e) in ybar.factors() {
        top = top.mul(&MonoKey::var(fd.representative(p[i - 1]), a, e));
    }
    let fl = RingFlavor::standard_q(&fd.gp);
    let x = fm_closure(&fl, &Monomial::unit(VarKind::Y, top))?;
    let folded = folded_tchar(&fd, &x);
    let inv = |j: usize| p.iter().position(|&v| v == j).map(|k| k + 1).unwrap_or(j);
    Ok(Character::from_terms(
        VarKind::Yb,
        folded.terms().map(|(k, c)| (k.map_vars(|j, a| (inv(j), a)), c.clone())),
    ))
}

/// Run the four comparisons for a σ-invariant dominant g′ monomial.
pub fn check_part3(g: &AlgebraDatum, w: &MonoKey) -> Result<Part3Verdict> {
    let f = folding_data(g)?;
    let input = part3_input(&f, w)?;
    let x = interp_f(g, &input);
    let spec = |s: Specialization| -> Result<Character> {
        match &x {
            Ok(x) => specialize(g, x, s),
            Err(e) => Err(e.clone()),
        }
    };
    let mut legs = Vec::new();

    let gp_flavor = RingFlavor::standard_q(&f.gp);
    let expected = fm_closure(&gp_flavor, &Monomial::unit(VarKind::Y, w.clone())).map(|up| folded_tchar(&f, &up));
    legs.push(Leg {
        name: "pibar_t",
        got: spec(Specialization::PiBarT),
        expected,
    });

    let expected = image_key(g, &input, Specialization::PiT)
        .and_then(|z| fm_closure(&RingFlavor::twisted_t(g), &Monomial::unit(VarKind::Z, z)));
    legs.push(Leg {
        name: "pi_t",
        got: spec(Specialization::PiT),
        expected,
    });

    let expected = image_key(g, &input, Specialization::PiTPrime).and_then(|yb| dual_folded(g, &yb));
    legs.push(Leg {
        name: "pi_t_prime",
        got: spec(Specialization::PiTPrime),
        expected,
    });

    let expected = image_key(g, &input, Specialization::PiQ)
        .and_then(|y| fm_closure(&RingFlavor::standard_q(g), &Monomial::unit(VarKind::Y, y)));
    legs.push(Leg {
        name: "pi_q",
        got: spec(Specialization::PiQ),
        expected,
    });

    Ok(Part3Verdict {
        g: g.clone(),
        input,
        x,
        legs,
    })
}

/// σ-fundamental g′ monomial over node i of g at parameter a.
pub fn sigma_fundamental_of(g: &AlgebraDatum, i: usize, a: SpectralParam) -> Result<MonoKey> {
    g.check_node(i)?;
    Ok(sigma_fundamental(&folding_data(g)?, i, a))
}

/// Human-readable verdict summary, one line per leg.
pub fn verdict_summary(v: &Part3Verdict) -> String {
    let d = v.g.lacing();
    let mut s = format!(
        "input {} over {}\n",
        format_key(VarKind::Y, &v.input.key, d),
        v.g.label()
    );
    if let Err(e) = &v.x {
        s.push_str(&format!("closure: error: {e}\n"));
    }
    for leg in &v.legs {
        let status = if leg.pass() { "pass" } else { "FAIL" };
        let count = leg.got.as_ref().map(|c| c.len()).unwrap_or(0);
        s.push_str(&format!("{}: {status} ({count} terms)\n", leg.name));
        if !leg.pass() {
            if let Some(dx) = leg.diff() {
                s.push_str(&format!("  diff: {}\n", dx.to_text(d).trim_end().replace('\n', " + ")));
            }
            if let Err(e) = &leg.expected {
                s.push_str(&format!("  expected: error: {e}\n"));
            }
            if let Err(e) = &leg.got {
                s.push_str(&format!("  got: error: {e}\n"));
            }
        }
    }
    s
}

/// Convenience: algebra by label.
pub fn algebra(label: &str) -> Result<AlgebraDatum> {
    build_algebra(label)
}
