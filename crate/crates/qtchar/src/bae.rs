//! Bethe Ansatz systems: symbolic factor lists for the multiplicative and
//! additive kinds, syntactic folding with a normal-form certificate, a damped
//! Newton solver for the additive kind, the folded QQ-system over the
//! Gaussian rationals, and the Bethe-vector cancellation check.

use crate::error::{Error, Result};
use crate::liealg::{AlgebraDatum, FoldingDatum};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt;

// ---------------------------------------------------------------------------
// Symbols and rational expressions
// ---------------------------------------------------------------------------

/// A root w^{(node)}_r or an inhomogeneity point z_k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Root { node: usize, r: usize },
    Point(usize),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Root { node, r } => write!(f, "w{node}_{r}"),
            Sym::Point(k) => write!(f, "z{k}"),
        }
    }
}

/// A unit ζ·p^k: ζ = exp(2πi·phase), p the deformation parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coef {
    pub phase: Rational64,
    pub pow: i64,
}

impl Coef {
    pub const ONE: Coef = Coef {
        phase: Rational64::new_raw(0, 1),
        pow: 0,
    };

    pub fn new(phase: Rational64, pow: i64) -> Self {
        let mut ph = phase - phase.floor();
        if ph < Rational64::zero() {
            ph += Rational64::one();
        }
        Coef { phase: ph, pow }
    }

    pub fn p(pow: i64) -> Self {
        Coef::new(Rational64::zero(), pow)
    }

    pub fn minus_one() -> Self {
        Coef::new(Rational64::new(1, 2), 0)
    }

    pub fn mul(self, o: Coef) -> Coef {
        Coef::new(self.phase + o.phase, self.pow + o.pow)
    }

    pub fn inv(self) -> Coef {
        Coef::new(-self.phase, -self.pow)
    }

    pub fn powi(self, k: i64) -> Coef {
        Coef::new(self.phase * Rational64::from(k), self.pow * k)
    }

    pub fn eval(self, p: Complex<f64>) -> Complex<f64> {
        let ph = *self.phase.numer() as f64 / *self.phase.denom() as f64;
        Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * ph) * p.powi(self.pow as i32)
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.phase == Rational64::new(1, 2) {
            parts.push("-".to_string());
        } else if !self.phase.is_zero() {
            parts.push(format!("e({})", self.phase));
        }
        if self.pow != 0 {
            parts.push(format!("p^{}", self.pow));
        }
        if parts.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", parts.join(""))
    }
}

/// The linear binomial x − c·y, stored with x < y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Binomial {
    pub x: Sym,
    pub c: Coef,
    pub y: Sym,
}

/// A product of binomial powers times a unit, kept in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RatExpr {
    pub unit: Option<Coef>,
    pub factors: BTreeMap<Binomial, i64>,
}

impl RatExpr {
    pub fn one() -> Self {
        RatExpr {
            unit: Some(Coef::ONE),
            factors: BTreeMap::new(),
        }
    }

    pub fn unit(&self) -> Coef {
        self.unit.unwrap_or(Coef::ONE)
    }

    pub fn scale(&mut self, c: Coef) {
        self.unit = Some(self.unit().mul(c));
    }

    /// Multiply by (x − c·y)^e.
    pub fn push(&mut self, x: Sym, c: Coef, y: Sym, e: i64) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        if x == y {
            return Err(Error::Invalid(format!("degenerate factor in {x}")));
        }
        let b = if x < y {
            Binomial { x, c, y }
        } else {
            // x − c y = (−c)(y − c⁻¹x)
            self.scale(Coef::minus_one().mul(c).powi(e));
            Binomial { x: y, c: c.inv(), y: x }
        };
        let v = self.factors.entry(b).or_insert(0);
        *v += e;
        if *v == 0 {
            self.factors.remove(&b);
        }
        Ok(())
    }

    pub fn mul(&self, o: &RatExpr) -> RatExpr {
        let mut out = self.clone();
        out.scale(o.unit());
        for (b, e) in &o.factors {
            let v = out.factors.entry(*b).or_insert(0);
            *v += e;
            if *v == 0 {
                out.factors.remove(b);
            }
        }
        out
    }

    pub fn inv(&self) -> RatExpr {
        RatExpr {
            unit: Some(self.unit().inv()),
            factors: self.factors.iter().map(|(b, e)| (*b, -e)).collect(),
        }
    }

    /// Rename symbols; fails if a binomial degenerates.
    pub fn substitute(&self, f: impl Fn(Sym) -> Sym) -> Result<RatExpr> {
        let mut out = RatExpr {
            unit: Some(self.unit()),
            factors: BTreeMap::new(),
        };
        for (b, e) in &self.factors {
            out.push(f(b.x), b.c, f(b.y), *e)?;
        }
        Ok(out)
    }

    pub fn eval(&self, p: Complex<f64>, val: &dyn Fn(Sym) -> Complex<f64>) -> Complex<f64> {
        let mut acc = self.unit().eval(p);
        for (b, e) in &self.factors {
            let v = val(b.x) - b.c.eval(p) * val(b.y);
            acc *= v.powi(*e as i32);
        }
        acc
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit())?;
        for (b, e) in &self.factors {
            write!(f, " * ({} - {}*{})^{}", b.x, b.c, b.y, e)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Systems
// ---------------------------------------------------------------------------

/// Which family of equations a system belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaeKind {
    /// XXZ-type equations of U_q(ĝ), symmetrized Cartan exponents.
    StandardQ,
    /// Folded equations, exponents −C_ji, parameter t.
    Folded,
    /// Equations of the twisted algebra ^Lĝ: cross factors in powers of w.
    Twisted,
    /// Additive Gaudin equations with twist χ.
    GaudinAdditive,
}

/// Inhomogeneity of a multiplicative system: for each point z_k and node i,
/// the q-shifts e of the Drinfeld roots z_k q^e.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrinfeldData {
    pub shifts: Vec<Vec<Vec<i32>>>,
}

impl DrinfeldData {
    pub fn degree(&self, i: usize) -> usize {
        self.shifts.iter().map(|per| per.get(i - 1).map_or(0, Vec::len)).sum()
    }
}

/// Inhomogeneity of an additive system: coweight coordinates ⟨α_i, λ̌_k⟩.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GaudinData {
    pub coweights: Vec<Vec<i64>>,
    /// Numeric points z_k.
    pub points: Vec<Complex<f64>>,
    /// Numeric twist values ⟨α_i, χ⟩.
    pub twist: Vec<Complex<f64>>,
}

/// One additive equation: Σ coeff/(root − sym) = ⟨α_{node}, χ⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddEquation {
    pub root: Sym,
    pub terms: BTreeMap<Sym, Rational64>,
    pub twist_node: usize,
}

/// One multiplicative equation, written as expr = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultEquation {
    pub root: Sym,
    pub expr: RatExpr,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Equations {
    Multiplicative(Vec<MultEquation>),
    Additive(Vec<AddEquation>),
}

#[derive(Clone, Debug)]
pub struct BaeSystem {
    pub kind: BaeKind,
    pub g: AlgebraDatum,
    pub counts: Vec<usize>,
    /// Name of the deformation parameter, q or t.
    pub symbol: char,
    pub drinfeld: DrinfeldData,
    pub gaudin: GaudinData,
    pub equations: Equations,
}

impl BaeSystem {
    pub fn equation_count(&self) -> usize {
        match &self.equations {
            Equations::Multiplicative(v) => v.len(),
            Equations::Additive(v) => v.len(),
        }
    }

    pub fn to_text(&self) -> String {
        let head = format!(
            "kind: {:?}\nalgebra: {}\ncounts: {:?}\n",
            self.kind,
            self.g.label(),
            self.counts
        );
        let mut body = String::new();
        match &self.equations {
            Equations::Multiplicative(v) => {
                for e in v {
                    body.push_str(&format!("[{}] {} = 1\n", e.root, e.expr));
                }
                // the deformation parameter is printed as p
                body = format!(
                    "parameter: {}\n{}",
                    self.symbol,
                    body.replace('p', &self.symbol.to_string())
                );
            }
            Equations::Additive(v) => {
                for e in v {
                    let lhs: Vec<String> = e.terms.iter().map(|(y, c)| format!("{c}/({} - {y})", e.root)).collect();
                    body.push_str(&format!("[{}] {} = chi{}\n", e.root, lhs.join(" + "), e.twist_node));
                }
            }
        }
        head + &body
    }
}

fn roots_of(counts: &[usize]) -> Vec<Sym> {
    counts
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| (1..=m).map(move |r| Sym::Root { node: i + 1, r }))
        .collect()
}

fn node_of(s: Sym) -> usize {
    match s {
        Sym::Root { node, .. } => node,
        Sym::Point(_) => 0,
    }
}

fn check_counts(g: &AlgebraDatum, counts: &[usize]) -> Result<()> {
    if counts.len() != g.rank() {
        return Err(Error::Invalid(format!(
            "{} root counts for rank {} ({})",
            counts.len(),
            g.rank(),
            g.label()
        )));
    }
    Ok(())
}

/// Multiplicative system of the given kind.
pub fn build_multiplicative(
    kind: BaeKind,
    g: &AlgebraDatum,
    counts: &[usize],
    drinfeld: &DrinfeldData,
) -> Result<BaeSystem> {
    check_counts(g, counts)?;
    if kind == BaeKind::GaudinAdditive {
        return Err(Error::Invalid("additive kind needs Gaudin data".into()));
    }
    let roots = roots_of(counts);
    let mut eqs = Vec::new();
    for &w in &roots {
        let i = node_of(w);
        let di = if kind == BaeKind::StandardQ { g.d(i) } else { 1 };
        let mut lhs = RatExpr::one();
        lhs.scale(Coef::p(di * drinfeld.degree(i) as i64));
        for (k, per) in drinfeld.shifts.iter().enumerate() {
            for &e in per.get(i - 1).map(Vec::as_slice).unwrap_or(&[]) {
                lhs.push(w, Coef::p(e as i64 - di), Sym::Point(k), 1)?;
                lhs.push(w, Coef::p(e as i64 + di), Sym::Point(k), -1)?;
            }
        }
        let mut rhs = RatExpr::one();
        rhs.scale(Coef::minus_one());
        for &v in &roots {
            if v == w {
                continue;
            }
            let j = node_of(v);
            if j == i {
                rhs.push(w, Coef::p(-2 * di), v, 1)?;
                rhs.push(w, Coef::p(2 * di), v, -1)?;
                continue;
            }
            let cji = g.cartan(j, i);
            if cji == 0 {
                continue;
            }
            match kind {
                BaeKind::StandardQ => {
                    let b = g.d(i) * g.cartan(i, j);
                    rhs.push(w, Coef::p(-b), v, 1)?;
                    rhs.push(w, Coef::p(b), v, -1)?;
                }
                BaeKind::Folded => {
                    rhs.push(w, Coef::p(1), v, -cji)?;
                    rhs.push(w, Coef::p(-1), v, cji)?;
                }
                BaeKind::Twisted => {
                    // x^c − (y p^{±1})^c = ∏_ζ (x − ζ p^{±1} y)
                    let c = -cji;
                    for a in 0..c {
                        let z = Rational64::new(a, c);
                        rhs.push(w, Coef::new(z, 1), v, 1)?;
                        rhs.push(w, Coef::new(z, -1), v, -1)?;
                    }
                }
                BaeKind::GaudinAdditive => unreachable!(),
            }
        }
        eqs.push(MultEquation {
            root: w,
            expr: lhs.mul(&rhs.inv()),
        });
    }
    Ok(BaeSystem {
        kind,
        g: g.clone(),
        counts: counts.to_vec(),
        symbol: if kind == BaeKind::StandardQ { 'q' } else { 't' },
        drinfeld: drinfeld.clone(),
        gaudin: GaudinData::default(),
        equations: Equations::Multiplicative(eqs),
    })
}

/// Additive Gaudin system whose Miura opers live in h; ⟨α_i, α̌_j⟩ = C_ji(h).
pub fn build_gaudin(h: &AlgebraDatum, counts: &[usize], data: &GaudinData) -> Result<BaeSystem> {
    check_counts(h, counts)?;
    for c in &data.coweights {
        if c.len() != h.rank() {
            return Err(Error::Invalid("coweight length differs from rank".into()));
        }
    }
    let roots = roots_of(counts);
    let mut eqs = Vec::new();
    for &w in &roots {
        let i = node_of(w);
        let mut terms = BTreeMap::new();
        for (k, c) in data.coweights.iter().enumerate() {
            if c[i - 1] != 0 {
                terms.insert(Sym::Point(k), Rational64::from(c[i - 1]));
            }
        }
        for &v in &roots {
            let j = node_of(v);
            if v != w && h.cartan(j, i) != 0 {
                terms.insert(v, Rational64::from(-h.cartan(j, i)));
            }
        }
        eqs.push(AddEquation {
            root: w,
            terms,
            twist_node: i,
        });
    }
    Ok(BaeSystem {
        kind: BaeKind::GaudinAdditive,
        g: h.clone(),
        counts: counts.to_vec(),
        symbol: '1',
        drinfeld: DrinfeldData::default(),
        gaudin: data.clone(),
        equations: Equations::Additive(eqs),
    })
}

/// Gaudin system of the model over lg: its Bethe equations pair roots and
/// coroots of the Langlands dual of lg.
pub fn build_gaudin_langlands(lg: &AlgebraDatum, counts: &[usize], data: &GaudinData) -> Result<BaeSystem> {
    build_gaudin(&lg.langlands_dual(), counts, data)
}

/// Identify w^{(j)}_r with w^{(σ(j))}_r and return the system over the folded nodes.
///
/// Multiplicative input yields the folded kind over g; additive input yields the
/// Gaudin system over ^Lg.
pub fn fold_bae(sys: &BaeSystem, f: &FoldingDatum) -> Result<BaeSystem> {
    if sys.g.cartan_matrix() != f.gp.cartan_matrix() {
        return Err(Error::Invalid(format!(
            "system is over {}, folding expects {}",
            sys.g.label(),
            f.gp.label()
        )));
    }
    for j in f.gp.nodes() {
        if sys.counts[j - 1] != sys.counts[f.sigma(j) - 1] {
            return Err(Error::Invalid(format!("root counts differ on the orbit of node {j}")));
        }
    }
    let rename = |s: Sym| match s {
        Sym::Root { node, r } => Sym::Root {
            node: f.orbit_of(node),
            r,
        },
        p => p,
    };
    let counts: Vec<usize> = f.g.nodes().map(|i| sys.counts[f.representative(i) - 1]).collect();
    let mut out = sys.clone();
    out.counts = counts;
    match &sys.equations {
        Equations::Multiplicative(eqs) => {
            if sys.kind != BaeKind::StandardQ {
                return Err(Error::Invalid("only standard systems fold".into()));
            }
            for k in 0..sys.drinfeld.shifts.len() {
                for j in f.gp.nodes() {
                    let a = sys.drinfeld.shifts[k].get(j - 1);
                    let b = sys.drinfeld.shifts[k].get(f.sigma(j) - 1);
                    if a != b {
                        return Err(Error::Invalid(format!("Drinfeld data not σ-invariant at node {j}")));
                    }
                }
            }
            let mut folded: BTreeMap<Sym, RatExpr> = BTreeMap::new();
            for e in eqs {
                let root = rename(e.root);
                let expr = e.expr.substitute(rename)?;
                if let Some(prev) = folded.get(&root) {
                    if *prev != expr {
                        return Err(Error::Invalid(format!(
                            "orbit equations of {root} disagree after folding"
                        )));
                    }
                } else {
                    folded.insert(root, expr);
                }
            }
            out.kind = BaeKind::Folded;
            out.g = f.g.clone();
            out.symbol = 't';
            out.drinfeld = DrinfeldData {
                shifts: sys
                    .drinfeld
                    .shifts
                    .iter()
                    .map(|per| {
                        f.g.nodes()
                            .map(|i| per.get(f.representative(i) - 1).cloned().unwrap_or_default())
                            .collect()
                    })
                    .collect(),
            };
            out.equations = Equations::Multiplicative(
                folded
                    .into_iter()
                    .map(|(root, expr)| MultEquation { root, expr })
                    .collect(),
            );
        }
        Equations::Additive(eqs) => {
            for c in &sys.gaudin.coweights {
                if f.gp.nodes().any(|j| c[j - 1] != c[f.sigma(j) - 1]) {
                    return Err(Error::Invalid("coweights not σ-invariant".into()));
                }
            }
            let mut folded: BTreeMap<Sym, AddEquation> = BTreeMap::new();
            for e in eqs {
                let root = rename(e.root);
                let mut terms: BTreeMap<Sym, Rational64> = BTreeMap::new();
                for (y, c) in &e.terms {
                    *terms.entry(rename(*y)).or_default() += c;
                }
                if let Some(c) = terms.remove(&root) {
                    if !c.is_zero() {
                        return Err(Error::Invalid(format!("singular self term at {root}")));
                    }
                }
                terms.retain(|_, c| !c.is_zero());
                let eq = AddEquation {
                    root,
                    terms,
                    twist_node: f.orbit_of(e.twist_node),
                };
                if let Some(prev) = folded.get(&root) {
                    if *prev != eq {
                        return Err(Error::Invalid(format!(
                            "orbit equations of {root} disagree after folding"
                        )));
                    }
                } else {
                    folded.insert(root, eq);
                }
            }
            out.g = f.g.clone();
            out.gaudin = GaudinData {
                coweights: sys
                    .gaudin
                    .coweights
                    .iter()
                    .map(|c| f.g.nodes().map(|i| c[f.representative(i) - 1]).collect())
                    .collect(),
                points: sys.gaudin.points.clone(),
                twist: if sys.gaudin.twist.is_empty() {
                    Vec::new()
                } else {
                    f.g.nodes().map(|i| sys.gaudin.twist[f.representative(i) - 1]).collect()
                },
            };
            out.equations = Equations::Additive(folded.into_values().collect());
        }
    }
    Ok(out)
}

/// Lift folded data to g′: counts and Drinfeld shifts copied along each fibre.
pub fn lift_counts(f: &FoldingDatum, counts: &[usize]) -> Vec<usize> {
    f.gp.nodes().map(|j| counts[f.orbit_of(j) - 1]).collect()
}

pub fn lift_drinfeld(f: &FoldingDatum, d: &DrinfeldData) -> DrinfeldData {
    DrinfeldData {
        shifts: d
            .shifts
            .iter()
            .map(|per| {
                f.gp.nodes()
                    .map(|j| per.get(f.orbit_of(j) - 1).cloned().unwrap_or_default())
                    .collect()
            })
            .collect(),
    }
}

pub fn lift_gaudin(f: &FoldingDatum, d: &GaudinData) -> GaudinData {
    GaudinData {
        coweights: d
            .coweights
            .iter()
            .map(|c| f.gp.nodes().map(|j| c[f.orbit_of(j) - 1]).collect())
            .collect(),
        points: d.points.clone(),
        twist: if d.twist.is_empty() {
            Vec::new()
        } else {
            f.gp.nodes().map(|j| d.twist[f.orbit_of(j) - 1]).collect()
        },
    }
}

/// Result of comparing a folded system with the directly built one.
#[derive(Clone, Debug)]
pub struct FoldCertificate {
    pub folded: BaeSystem,
    pub direct: BaeSystem,
    pub equal: bool,
    /// Agreement of both sides at random complex points (independent check).
    pub numeric_equal: bool,
}

/// Fold the standard system of g′ and compare with the folded system of g.
pub fn certify_fold_multiplicative(f: &FoldingDatum, counts: &[usize], d: &DrinfeldData) -> Result<FoldCertificate> {
    let up = build_multiplicative(BaeKind::StandardQ, &f.gp, &lift_counts(f, counts), &lift_drinfeld(f, d))?;
    let folded = fold_bae(&up, f)?;
    let direct = build_multiplicative(BaeKind::Folded, &f.g, counts, d)?;
    let equal = folded.equations == direct.equations;
    let numeric_equal = numeric_agree(&folded, &direct, 7);
    Ok(FoldCertificate {
        folded,
        direct,
        equal,
        numeric_equal,
    })
}

/// Fold the Gaudin system of g′ and compare with the Gaudin system of ^Lg.
pub fn certify_fold_gaudin(f: &FoldingDatum, counts: &[usize], d: &GaudinData) -> Result<FoldCertificate> {
    let up = build_gaudin(&f.gp, &lift_counts(f, counts), &lift_gaudin(f, d))?;
    let folded = fold_bae(&up, f)?;
    let direct = build_gaudin_langlands(&f.dual, counts, d)?;
    let equal = folded.equations == direct.equations;
    let numeric_equal = numeric_agree(&folded, &direct, 7);
    Ok(FoldCertificate {
        folded,
        direct,
        equal,
        numeric_equal,
    })
}

fn random_values(seed: u64) -> impl Fn(Sym) -> Complex<f64> {
    move |s: Sym| {
        let tag = match s {
            Sym::Root { node, r } => (node * 131 + r) as u64,
            Sym::Point(k) => 10_007 + k as u64,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15));
        Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    }
}

/// Evaluate both systems at the same random point and compare per equation.
pub fn numeric_agree(a: &BaeSystem, b: &BaeSystem, seed: u64) -> bool {
    let val = random_values(seed);
    let p = Complex::new(0.83, 0.41);
    match (&a.equations, &b.equations) {
        (Equations::Multiplicative(x), Equations::Multiplicative(y)) => {
            x.len() == y.len()
                && x.iter().zip(y).all(|(e, f)| {
                    e.root == f.root
                        && (e.expr.eval(p, &val) - f.expr.eval(p, &val)).norm()
                            < 1e-9 * (1.0 + e.expr.eval(p, &val).norm())
                })
        }
        (Equations::Additive(x), Equations::Additive(y)) => {
            x.len() == y.len()
                && x.iter().zip(y).all(|(e, f)| {
                    let l = |q: &AddEquation| -> Complex<f64> {
                        q.terms
                            .iter()
                            .map(|(s, c)| Complex::from(c.to_f64().unwrap()) / (val(q.root) - val(*s)))
                            .sum()
                    };
                    e.root == f.root && e.twist_node == f.twist_node && (l(e) - l(f)).norm() < 1e-9
                })
        }
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// Typical factors
// ---------------------------------------------------------------------------

/// The cross factor between nodes i and j of each kind, for one pair of roots.
pub fn typical_factor(kind: BaeKind, g: &AlgebraDatum, i: usize, j: usize) -> Result<RatExpr> {
    let counts: Vec<usize> = g.nodes().map(|k| usize::from(k == i || k == j)).collect();
    let sys = build_multiplicative(kind, g, &counts, &DrinfeldData::default())?;
    let Equations::Multiplicative(eqs) = sys.equations else {
        unreachable!()
    };
    let eq = eqs
        .into_iter()
        .find(|e| e.root == Sym::Root { node: i, r: 1 })
        .ok_or_else(|| Error::NodeOutOfRange {
            node: i,
            rank: g.rank(),
        })?;
    // strip the leading −1 of the right-hand side
    let mut expr = eq.expr.inv();
    expr.scale(Coef::minus_one());
    Ok(expr)
}

/// Named identities between typical factors, each with its verdict.
pub fn typical_identities() -> Result<Vec<(String, bool)>> {
    use crate::liealg::build_algebra;
    let w = Sym::Root { node: 2, r: 1 };
    let v = Sym::Root { node: 1, r: 1 };
    let u = Sym::Root { node: 3, r: 1 };
    let mk = |fs: &[(Sym, Coef, Sym, i64)]| -> Result<RatExpr> {
        let mut e = RatExpr::one();
        for &(x, c, y, k) in fs {
            e.push(x, c, y, k)?;
        }
        Ok(e)
    };
    let mut out = Vec::new();
    let c2 = build_algebra("C2")?;
    // standard C2 cross factor at the long node, split through (w − v)
    let std = typical_factor(BaeKind::StandardQ, &c2, 2, 1)?;
    let split = mk(&[
        (w, Coef::p(2), v, 1),
        (w, Coef::ONE, v, -1),
        (w, Coef::ONE, v, 1),
        (w, Coef::p(-2), v, -1),
    ])?;
    out.push((
        "standard long-node factor equals its split form".to_string(),
        std == split,
    ));
    let folded = typical_factor(BaeKind::Folded, &c2, 2, 1)?;
    let sq = mk(&[(w, Coef::p(1), v, 2), (w, Coef::p(-1), v, -2)])?;
    out.push(("folded factor is the square f(w)^2".to_string(), folded == sq));
    // A3 factor at the middle node with both neighbours, then identify them
    let a3 = build_algebra("A3")?;
    let mid = mk(&[
        (w, Coef::p(1), v, 1),
        (w, Coef::p(-1), v, -1),
        (w, Coef::p(1), u, 1),
        (w, Coef::p(-1), u, -1),
    ])?;
    let a3_std = {
        let mut e = typical_factor(BaeKind::StandardQ, &a3, 2, 1)?;
        e = e.mul(&typical_factor(BaeKind::StandardQ, &a3, 2, 3)?.substitute(|s| match s {
            Sym::Root { node: 1, r } => Sym::Root { node: 3, r },
            s => s,
        })?);
        e
    };
    out.push((
        "simply-laced factor pair matches its display".to_string(),
        a3_std == mid,
    ));
    let identified = mid.substitute(|s| if s == u { v } else { s })?;
    out.push((
        "identifying the outer neighbours gives the folded factor".to_string(),
        identified == folded,
    ));
    let twisted = typical_factor(BaeKind::Twisted, &c2, 2, 1)?;
    let ff = mk(&[
        (w, Coef::p(1), v, 1),
        (w, Coef::p(-1), v, -1),
        (w, Coef::minus_one().mul(Coef::p(1)), v, 1),
        (w, Coef::minus_one().mul(Coef::p(-1)), v, -1),
    ])?;
    out.push(("twisted factor is f(w)f(-w)".to_string(), twisted == ff));
    let neg = mid.substitute(|s| if s == u { v } else { s })?;
    let neg_twist = mk(&[(w, Coef::p(1), v, 1), (w, Coef::p(-1), v, -1)])?.mul(&mk(&[
        (w, Coef::minus_one().mul(Coef::p(1)), v, 1),
        (w, Coef::minus_one().mul(Coef::p(-1)), v, -1),
    ])?);
    out.push((
        "identifying with a sign flip gives the twisted factor".to_string(),
        neg_twist == twisted && neg != twisted,
    ));
    out.push(("standard and folded factors differ".to_string(), std != folded));
    out.push(("folded and twisted factors differ".to_string(), folded != twisted));
    let g2 = build_algebra("G2")?;
    let (fg, tg) = (
        typical_factor(BaeKind::Folded, &g2, 1, 2)?,
        typical_factor(BaeKind::Twisted, &g2, 1, 2)?,
    );
    let cube = mk(&[
        (Sym::Root { node: 1, r: 1 }, Coef::p(1), Sym::Root { node: 2, r: 1 }, 3),
        (
            Sym::Root { node: 1, r: 1 },
            Coef::p(-1),
            Sym::Root { node: 2, r: 1 },
            -3,
        ),
    ])?;
    out.push(("G2 folded factor is f(w)^3".to_string(), fg == cube));
    out.push((
        "G2 twisted factor differs from f(w)^3".to_string(),
        tg != fg && tg.factors.len() == 6,
    ));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Numeric Gaudin solver
// ---------------------------------------------------------------------------

/// Newton settings.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub seeds: usize,
    pub rng_seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: 1e-10,
            max_iter: 60,
            seeds: 64,
            rng_seed: 1,
        }
    }
}

/// An accepted root assignment, ordered like the system's roots.
#[derive(Clone, Debug)]
pub struct GaudinSolution {
    pub roots: Vec<(Sym, Complex<f64>)>,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub solutions: Vec<GaudinSolution>,
    /// Per-seed failures (not fatal).
    pub failures: Vec<Error>,
}

fn additive(sys: &BaeSystem) -> Result<&[AddEquation]> {
    match &sys.equations {
        Equations::Additive(e) => Ok(e),
        _ => Err(Error::Invalid("expected an additive system".into())),
    }
}

fn sym_value(sys: &BaeSystem, index: &BTreeMap<Sym, usize>, x: &[Complex<f64>], s: Sym) -> Complex<f64> {
    match s {
        Sym::Point(k) => sys.gaudin.points.get(k).copied().unwrap_or_default(),
        r => x[index[&r]],
    }
}

/// Residuals of an additive system at root values x.
pub fn gaudin_residual(sys: &BaeSystem, x: &[Complex<f64>]) -> Result<Vec<Complex<f64>>> {
    let eqs = additive(sys)?;
    let index: BTreeMap<Sym, usize> = eqs.iter().enumerate().map(|(k, e)| (e.root, k)).collect();
    Ok(eqs
        .iter()
        .map(|e| {
            let w = x[index[&e.root]];
            let lhs: Complex<f64> = e
                .terms
                .iter()
                .map(|(s, c)| Complex::from(c.to_f64().unwrap()) / (w - sym_value(sys, &index, x, *s)))
                .sum();
            lhs - sys.gaudin.twist[e.twist_node - 1]
        })
        .collect())
}

/// Exact residual at the given floating-point values, in rational arithmetic.
pub fn gaudin_residual_exact(sys: &BaeSystem, x: &[Complex<f64>]) -> Result<f64> {
    type Gq = Complex<BigRational>;
    let conv = |z: Complex<f64>| -> Result<Gq> {
        let f = |v: f64| BigRational::from_float(v).ok_or_else(|| Error::Invalid("non-finite value".into()));
        Ok(Complex::new(f(z.re)?, f(z.im)?))
    };
    let eqs = additive(sys)?;
    let index: BTreeMap<Sym, usize> = eqs.iter().enumerate().map(|(k, e)| (e.root, k)).collect();
    let mut worst = 0f64;
    for e in eqs {
        let w = conv(x[index[&e.root]])?;
        let mut acc = Gq::new(BigRational::zero(), BigRational::zero());
        for (s, c) in &e.terms {
            let y = conv(sym_value(sys, &index, x, *s))?;
            let c = BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
            let den = w.clone() - y;
            if den.is_zero() {
                return Err(Error::PoleDetected(format!("{} coincides with {s}", e.root)));
            }
            acc = acc + Gq::new(c, BigRational::zero()) / den;
        }
        acc = acc - conv(sys.gaudin.twist[e.twist_node - 1])?;
        let n = (acc.re.clone() * acc.re + acc.im.clone() * acc.im)
            .to_f64()
            .unwrap_or(f64::INFINITY)
            .sqrt();
        worst = worst.max(n);
    }
    Ok(worst)
}

fn jacobian(sys: &BaeSystem, eqs: &[AddEquation], x: &[Complex<f64>]) -> DMatrix<Complex<f64>> {
    let n = eqs.len();
    let index: BTreeMap<Sym, usize> = eqs.iter().enumerate().map(|(k, e)| (e.root, k)).collect();
    let mut j = DMatrix::from_element(n, n, Complex::zero());
    for (a, e) in eqs.iter().enumerate() {
        let w = x[a];
        for (s, c) in &e.terms {
            let c = Complex::from(c.to_f64().unwrap());
            let y = sym_value(sys, &index, x, *s);
            let d = (w - y) * (w - y);
            j[(a, a)] -= c / d;
            if let Some(&b) = index.get(s) {
                j[(a, b)] += c / d;
            }
        }
    }
    j
}

fn max_norm(v: &[Complex<f64>]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn newton(
    sys: &BaeSystem,
    eqs: &[AddEquation],
    mut x: Vec<Complex<f64>>,
    opts: &SolveOptions,
) -> Result<Vec<Complex<f64>>> {
    let mut r = gaudin_residual(sys, &x)?;
    for _ in 0..opts.max_iter {
        let res = max_norm(&r);
        if res < opts.tol {
            return Ok(x);
        }
        let jm = jacobian(sys, eqs, &x);
        let rhs = DVector::from_iterator(r.len(), r.iter().map(|z| -z));
        let Some(step) = jm.lu().solve(&rhs) else {
            return Err(Error::NoConvergence("singular Jacobian".into()));
        };
        let mut lambda = 1.0;
        loop {
            let cand: Vec<Complex<f64>> = x.iter().zip(step.iter()).map(|(a, b)| a + b * lambda).collect();
            let rc = gaudin_residual(sys, &cand)?;
            let ok = rc.iter().all(|z| z.is_finite());
            if ok && max_norm(&rc) < res {
                x = cand;
                r = rc;
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-12 {
                return Err(Error::NoConvergence(format!(
                    "line search stalled at residual {res:.3e}"
                )));
            }
        }
    }
    if max_norm(&r) < opts.tol {
        Ok(x)
    } else {
        Err(Error::NoConvergence(format!(
            "residual {:.3e} after {} iterations",
            max_norm(&r),
            opts.max_iter
        )))
    }
}

/// Damped Newton from random seeds in a disk scaled by the data.
pub fn solve_gaudin(sys: &BaeSystem, opts: &SolveOptions) -> Result<SolveReport> {
    let eqs = additive(sys)?;
    if sys.gaudin.twist.len() != sys.g.rank() {
        return Err(Error::Invalid("twist must have one value per node".into()));
    }
    let n = eqs.len();
    let weight: f64 = eqs
        .iter()
        .flat_map(|e| e.terms.values())
        .map(|c| c.to_f64().unwrap().abs())
        .sum::<f64>()
        .max(1.0);
    let tmin = sys
        .gaudin
        .twist
        .iter()
        .map(|z| z.norm())
        .fold(f64::INFINITY, f64::min)
        .max(1e-3);
    let zmax = sys.gaudin.points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = zmax + weight / tmin;
    let attempts: Vec<Result<Vec<Complex<f64>>>> = (0..opts.seeds)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed.wrapping_mul(1_000_003) + k as u64);
            let x0: Vec<Complex<f64>> = (0..n)
                .map(|_| {
                    Complex::from_polar(
                        scale * rng.gen_range(0.05f64..1.0).sqrt(),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    )
                })
                .collect();
            newton(sys, eqs, x0, opts)
        })
        .collect();
    let mut found: BTreeMap<Vec<(usize, i64, i64)>, GaudinSolution> = BTreeMap::new();
    let mut failures = Vec::new();
    for a in attempts {
        match a {
            Err(e) => failures.push(e),
            Ok(x) => {
                let guard = 1e-6 * scale;
                let mut pts: Vec<Complex<f64>> = x.clone();
                pts.extend(sys.gaudin.points.iter().copied());
                let degenerate = (0..pts.len()).any(|a| (a + 1..pts.len()).any(|b| (pts[a] - pts[b]).norm() < guard));
                if degenerate {
                    failures.push(Error::NoConvergence("degenerate root collision".into()));
                    continue;
                }
                let residual = max_norm(&gaudin_residual(sys, &x)?);
                // key: per-node sorted, rounded roots
                let mut key: Vec<(usize, i64, i64)> = eqs
                    .iter()
                    .zip(&x)
                    .map(|(e, z)| {
                        (
                            node_of(e.root),
                            (z.re * 1e6).round() as i64,
                            (z.im * 1e6).round() as i64,
                        )
                    })
                    .collect();
                key.sort();
                found.entry(key).or_insert_with(|| GaudinSolution {
                    roots: eqs.iter().map(|e| e.root).zip(x.iter().copied()).collect(),
                    residual,
                });
            }
        }
    }
    Ok(SolveReport {
        solutions: found.into_values().collect(),
        failures,
    })
}

/// Duplicate a solution of the ^Lg system along σ-orbits and return the
/// residual of the g′ system there.
pub fn lifted_residual(f: &FoldingDatum, lg: &BaeSystem, sol: &GaudinSolution) -> Result<f64> {
    let up = build_gaudin(&f.gp, &lift_counts(f, &lg.counts), &lift_gaudin(f, &lg.gaudin))?;
    let eqs = additive(&up)?;
    let vals: BTreeMap<Sym, Complex<f64>> = sol.roots.iter().copied().collect();
    let x: Vec<Complex<f64>> = eqs
        .iter()
        .map(|e| match e.root {
            Sym::Root { node, r } => {
                vals[&Sym::Root {
                    node: f.orbit_of(node),
                    r,
                }]
            }
            p => vals[&p],
        })
        .collect();
    // fibre mates share a value; their mutual terms have coefficient zero
    let index: BTreeMap<Sym, usize> = eqs.iter().enumerate().map(|(k, e)| (e.root, k)).collect();
    let mut worst = 0f64;
    for e in eqs {
        let w = x[index[&e.root]];
        let mut acc: Complex<f64> = Complex::zero();
        for (s, c) in &e.terms {
            let y = sym_value(&up, &index, &x, *s);
            if (w - y).norm() == 0.0 {
                return Err(Error::PoleDetected(format!("{} meets {s}", e.root)));
            }
            acc += Complex::from(c.to_f64().unwrap()) / (w - y);
        }
        worst = worst.max((acc - up.gaudin.twist[e.twist_node - 1]).norm());
    }
    Ok(worst)
}

/// Outcome of the numeric folding check on random instances.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub instances: usize,
    pub solutions: usize,
    /// Largest lifted residual over all solutions.
    pub worst_lifted: f64,
    /// Largest exact residual of the ^Lg solutions.
    pub worst_exact: f64,
}

/// Solve the ^Lg system at N = 1, z = 0 for random twists and lift each
/// solution to g′.
pub fn lemma_numeric_check(
    f: &FoldingDatum,
    counts: &[usize],
    coweight: &[i64],
    instances: usize,
    seed: u64,
) -> Result<LemmaReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = LemmaReport {
        instances: 0,
        solutions: 0,
        worst_lifted: 0.0,
        worst_exact: 0.0,
    };
    let opts = SolveOptions {
        seeds: 24,
        ..Default::default()
    };
    while rep.instances < instances {
        let twist: Vec<Complex<f64>> =
            f.g.nodes()
                .map(|_| Complex::new(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)))
                .collect();
        let data = GaudinData {
            coweights: vec![coweight.to_vec()],
            points: vec![Complex::zero()],
            twist,
        };
        let lg = build_gaudin_langlands(&f.dual, counts, &data)?;
        let sols = solve_gaudin(
            &lg,
            &SolveOptions {
                rng_seed: rng.gen(),
                ..opts.clone()
            },
        )?
        .solutions;
        if sols.is_empty() {
            continue;
        }
        rep.instances += 1;
        for s in &sols {
            let x: Vec<Complex<f64>> = s.roots.iter().map(|r| r.1).collect();
            rep.worst_exact = rep.worst_exact.max(gaudin_residual_exact(&lg, &x)?);
            rep.worst_lifted = rep.worst_lifted.max(lifted_residual(f, &lg, s)?);
            rep.solutions += 1;
        }
    }
    Ok(rep)
}

// ---------------------------------------------------------------------------
// QQ-system over the Gaussian rationals
// ---------------------------------------------------------------------------

/// Gaussian rational number.
pub type Gq = Complex<BigRational>;

pub fn gq(re: BigRational, im: BigRational) -> Gq {
    Complex::new(re, im)
}

pub fn gq_int(n: i64) -> Gq {
    Complex::new(BigRational::from_integer(n.into()), BigRational::zero())
}

pub fn gq_ratio(a: i64, b: i64) -> Gq {
    Complex::new(BigRational::new(a.into(), b.into()), BigRational::zero())
}

/// Dense polynomial with Gaussian rational coefficients, low degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GPoly(pub Vec<Gq>);

impl GPoly {
    pub fn new(mut c: Vec<Gq>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        GPoly(c)
    }

    pub fn one() -> Self {
        GPoly(vec![gq_int(1)])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Gq]) -> Self {
        roots
            .iter()
            .fold(GPoly::one(), |acc, r| acc.mul(&GPoly::new(vec![-r.clone(), gq_int(1)])))
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Gq {
        self.0.get(k).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn add(&self, o: &GPoly) -> GPoly {
        let n = self.0.len().max(o.0.len());
        GPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Gq) -> GPoly {
        GPoly::new(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn mul(&self, o: &GPoly) -> GPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return GPoly(Vec::new());
        }
        let mut out = vec![Gq::zero(); self.0.len() + o.0.len() - 1];
        for (a, x) in self.0.iter().enumerate() {
            for (b, y) in o.0.iter().enumerate() {
                out[a + b] = out[a + b].clone() + x.clone() * y.clone();
            }
        }
        GPoly::new(out)
    }

    pub fn powi(&self, k: u32) -> GPoly {
        (0..k).fold(GPoly::one(), |acc, _| acc.mul(self))
    }

    /// P(a·s) as a polynomial in a.
    pub fn dilate(&self, s: &Gq) -> GPoly {
        let mut f = gq_int(1);
        let mut out = Vec::with_capacity(self.0.len());
        for c in &self.0 {
            out.push(c.clone() * f.clone());
            f = f * s.clone();
        }
        GPoly::new(out)
    }

    pub fn eval(&self, a: &Gq) -> Gq {
        self.0
            .iter()
            .rev()
            .fold(Gq::zero(), |acc, c| acc * a.clone() + c.clone())
    }
}

fn gq_inv(x: &Gq) -> Gq {
    gq_int(1) / x.clone()
}

/// Left and right sides of the QQ relation at node i.
pub fn qq_sides(g: &AlgebraDatum, q: &Gq, qs: &[GPoly], qt: &GPoly, u: &Gq, i: usize) -> (GPoly, GPoly) {
    let qi = gq_inv(q);
    let lhs = qs[i - 1]
        .dilate(&qi)
        .mul(&qt.dilate(q))
        .scale(&gq_inv(u))
        .add(&qs[i - 1].dilate(q).mul(&qt.dilate(&qi)).scale(&(-u.clone())));
    let mut rhs = GPoly::one();
    for j in g.nodes().filter(|&j| j != i) {
        let c = -g.cartan(j, i);
        if c > 0 {
            rhs = rhs.mul(&qs[j - 1].powi(c as u32));
        }
    }
    (lhs, rhs)
}

/// Verdict of the QQ identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QqVerdict {
    pub holds: bool,
    /// First failing (node, degree) with its two coefficients.
    pub first_failure: Option<(usize, usize, String, String)>,
}

/// Check the QQ relations exactly; sample points act as a fast pre-filter.
pub fn qq_check(g: &AlgebraDatum, q: &Gq, qs: &[GPoly], qts: &[GPoly], u: &[Gq], samples: &[Gq]) -> QqVerdict {
    for i in g.nodes() {
        let (l, r) = qq_sides(g, q, qs, &qts[i - 1], &u[i - 1], i);
        let sampled_ok = samples.iter().all(|a| l.eval(a) == r.eval(a));
        if !sampled_ok || l != r {
            let n = l.0.len().max(r.0.len());
            let k = (0..n).find(|&k| l.coeff(k) != r.coeff(k)).unwrap_or(0);
            return QqVerdict {
                holds: false,
                first_failure: Some((i, k, l.coeff(k).to_string(), r.coeff(k).to_string())),
            };
        }
    }
    QqVerdict {
        holds: true,
        first_failure: None,
    }
}

/// Solve the linear system M·c = b exactly; None if inconsistent.
fn solve_exact(m: Vec<Vec<Gq>>, b: Vec<Gq>) -> Option<Vec<Gq>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Gq>> = m
        .into_iter()
        .zip(b)
        .map(|(mut r, x)| {
            r.push(x);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = gq_inv(&a[row][c]);
        for x in a[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..rows {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..=cols {
                    let v = a[row][k].clone() * f.clone();
                    a[r][k] = a[r][k].clone() - v;
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    if a[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Gq::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}

/// Solve the QQ relations for Q̃ given Q, with a degree bound per node.
pub fn qq_solve_tilde(g: &AlgebraDatum, q: &Gq, qs: &[GPoly], u: &[Gq], bounds: &[usize]) -> Result<Vec<GPoly>> {
    let qi = gq_inv(q);
    let mut out = Vec::new();
    for i in g.nodes() {
        let dq = qs[i - 1].degree().unwrap_or(0);
        let bound = bounds[i - 1];
        let (_, rhs) = qq_sides(g, q, qs, &GPoly::one(), &u[i - 1], i);
        // column k: u⁻¹ q^k a^k Q(a/q) − u q^{-k} a^k Q(aq)
        let cols: Vec<GPoly> = (0..=bound)
            .map(|k| {
                let mono = |s: &Gq| {
                    let mut v = vec![Gq::zero(); k];
                    v.push(s.clone());
                    GPoly::new(v)
                };
                let qk = (0..k).fold(gq_int(1), |acc, _| acc * q.clone());
                let qmk = (0..k).fold(gq_int(1), |acc, _| acc * qi.clone());
                qs[i - 1]
                    .dilate(&qi)
                    .mul(&mono(&(qk * gq_inv(&u[i - 1]))))
                    .add(&qs[i - 1].dilate(q).mul(&mono(&(-(qmk * u[i - 1].clone())))))
            })
            .collect();
        let n = (dq + bound + 1).max(rhs.0.len());
        let m: Vec<Vec<Gq>> = (0..n).map(|r| cols.iter().map(|c| c.coeff(r)).collect()).collect();
        let b: Vec<Gq> = (0..n).map(|r| rhs.coeff(r)).collect();
        match solve_exact(m, b) {
            Some(x) => out.push(GPoly::new(x)),
            None => {
                return Err(Error::Infeasible(format!(
                    "no Q~ of degree <= {bound} at node {i} (right side degree {:?})",
                    rhs.degree()
                )))
            }
        }
    }
    Ok(out)
}

/// An exact C2 folded instance with one root per node: given w_2 and u_1,
/// solve the Bethe equations implied by the QQ relations for w_1 and u_2.
///
/// Returns (Q_1, Q_2) and the twists (u_1, u_2).
pub fn c2_qq_instance(q: &Gq, w2: &Gq, u1: &Gq) -> (Vec<GPoly>, Vec<Gq>) {
    let qi = gq_inv(q);
    // with one root, Q_i(wq²)/Q_i(wq⁻²) = −q², so the node-i equation reads
    // u_i² q² = ∏_j (Q_j(wq)/Q_j(wq⁻¹))^{−C_ji}
    let r = u1.clone() * u1.clone() * q.clone() * q.clone();
    // node 1: (w_1q − w_2)/(w_1q⁻¹ − w_2) = r
    let w1 = w2.clone() * (gq_int(1) - r.clone()) / (q.clone() - r * qi.clone());
    // node 2: u_2 q = (w_2q − w_1)/(w_2q⁻¹ − w_1), squared on the right
    let r1 = (w2.clone() * q.clone() - w1.clone()) / (w2.clone() * qi.clone() - w1.clone());
    let u2 = r1 * qi;
    (
        vec![GPoly::from_roots(&[w1]), GPoly::from_roots(&[w2.clone()])],
        vec![u1.clone(), u2],
    )
}

// ---------------------------------------------------------------------------
// Bethe vectors
// ---------------------------------------------------------------------------

/// A word f_{i_1}…f_{i_m} applied to the highest vector.
pub type Word = Vec<usize>;

/// Truncated Laurent series in ε: coefficients from ε^{low}.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    pub low: i32,
    pub coeffs: Vec<BigRational>,
}

impl Laurent {
    /// 1/(c + kε) to order ε^top.
    fn inv_linear(c: &BigRational, k: i64, top: i32) -> Result<Laurent> {
        if c.is_zero() {
            if k == 0 {
                return Err(Error::PoleDetected("coincident roots without an offset".into()));
            }
            let coeffs = vec![BigRational::from_integer(1.into()) / BigRational::from_integer(k.into())];
            return Ok(Laurent { low: -1, coeffs });
        }
        let ratio = -BigRational::from_integer(k.into()) / c.clone();
        let mut coeffs = Vec::new();
        let mut term = BigRational::from_integer(1.into()) / c.clone();
        for _ in 0..=top {
            coeffs.push(term.clone());
            term *= ratio.clone();
        }
        Ok(Laurent { low: 0, coeffs })
    }

    fn mul(&self, o: &Laurent, top: i32) -> Laurent {
        let low = self.low + o.low;
        let len = (top - low + 1).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in o.coeffs.iter().enumerate() {
                let k = a + b;
                if k < len {
                    coeffs[k] += x.clone() * y.clone();
                }
            }
        }
        Laurent { low, coeffs }
    }

    fn add_into(acc: &mut BTreeMap<i32, BigRational>, x: &Laurent) {
        for (k, c) in x.coeffs.iter().enumerate() {
            if !c.is_zero() {
                *acc.entry(x.low + k as i32).or_insert_with(BigRational::zero) += c.clone();
            }
        }
    }
}

/// Lexicographic normal form in the trace monoid where `commute(a, b)` holds.
pub fn word_normal_form(w: &[usize], commute: &dyn Fn(usize, usize) -> bool) -> Word {
    let mut rest: Vec<usize> = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        // letters that can be moved to the front
        let mut best: Option<usize> = None;
        for k in 0..rest.len() {
            if rest[..k].iter().all(|&b| b != rest[k] && commute(b, rest[k])) || k == 0 {
                if best.map_or(true, |bk| rest[k] < rest[bk]) {
                    best = Some(k);
                }
            }
        }
        let k = best.expect("first letter is always movable");
        out.push(rest.remove(k));
    }
    out
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..m).collect();
    fn rec(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for j in k..p.len() {
            p.swap(k, j);
            rec(k + 1, p, out);
            p.swap(k, j);
        }
    }
    rec(0, &mut p, &mut out);
    out
}

/// The Bethe vector as a combination of normal-form words with exact coefficients.
pub fn bethe_vector(
    labels: &[usize],
    roots: &[BigRational],
    commute: &dyn Fn(usize, usize) -> bool,
) -> Result<BTreeMap<Word, BigRational>> {
    let m = labels.len();
    if m != roots.len() || m == 0 || m > 8 {
        return Err(Error::Invalid("need 1..=8 labels with matching roots".into()));
    }
    let mut out: BTreeMap<Word, BigRational> = BTreeMap::new();
    for tau in permutations(m) {
        let mut den = roots[tau[m - 1]].clone();
        for k in 0..m - 1 {
            den *= roots[tau[k]].clone() - roots[tau[k + 1]].clone();
        }
        if den.is_zero() {
            return Err(Error::PoleDetected("coincident roots; use bethe_fold_limit".into()));
        }
        let word: Word = tau.iter().map(|&k| labels[k]).collect();
        *out.entry(word_normal_form(&word, commute))
            .or_insert_with(BigRational::zero) += BigRational::from_integer(1.into()) / den;
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Expand the Bethe vector at roots base_k + offset_k·ε and return the ε⁰ part.
///
/// Fails with PoleDetected when a negative power of ε survives.
pub fn bethe_fold_limit(
    labels: &[usize],
    base: &[BigRational],
    offsets: &[i64],
    commute: &dyn Fn(usize, usize) -> bool,
) -> Result<BTreeMap<Word, BigRational>> {
    let m = labels.len();
    if m != base.len() || m != offsets.len() || m == 0 || m > 8 {
        return Err(Error::Invalid(
            "need 1..=8 labels with matching roots and offsets".into(),
        ));
    }
    // each factor has order ≥ −1, so keeping ε^m in every partial product is exact at ε^0
    let top = m as i32;
    let mut acc: BTreeMap<Word, BTreeMap<i32, BigRational>> = BTreeMap::new();
    for tau in permutations(m) {
        let last = tau[m - 1];
        let mut series = Laurent::inv_linear(&base[last], offsets[last], top)?;
        for k in 0..m - 1 {
            let (a, b) = (tau[k], tau[k + 1]);
            let c = base[a].clone() - base[b].clone();
            series = series.mul(&Laurent::inv_linear(&c, offsets[a] - offsets[b], top)?, top);
        }
        let word: Word = tau.iter().map(|&k| labels[k]).collect();
        Laurent::add_into(acc.entry(word_normal_form(&word, commute)).or_default(), &series);
    }
    let mut out = BTreeMap::new();
    for (w, series) in acc {
        for (k, c) in &series {
            if *k < 0 && !c.is_zero() {
                return Err(Error::PoleDetected(format!("ε^{k} coefficient {c} on word {w:?}")));
            }
        }
        if let Some(c) = series.get(&0).filter(|c| !c.is_zero()) {
            out.insert(w, c.clone());
        }
    }
    Ok(out)
}

/// Commutation rule [f_i, f_σ(i)] = 0 of a folding, on nodes of g′.
pub fn sigma_commute(f: &FoldingDatum) -> impl Fn(usize, usize) -> bool + '_ {
    move |a, b| a != b && f.orbit_of(a) == f.orbit_of(b)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn is_abs_small(x: &BigRational, tol: f64) -> bool {
    x.abs().to_f64().is_some_and(|v| v < tol)
}
