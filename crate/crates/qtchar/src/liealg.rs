//! Root data, folding data, weight-lattice maps, Weyl reflections and the
//! one- and two-parameter Cartan matrices.

use crate::error::{Error, Result};
use crate::poly::{adjugate, det, Laurent2, RatFn};
use num_rational::Rational64;
use num_traits::Zero;
use std::fmt;

/// Cartan type family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// Immutable root data of a simple Lie algebra. Nodes are numbered from 1.
///
/// The Cartan matrix follows C_ij = 2(α_i, α_j)/(α_i, α_i), so that D·C is
/// symmetric with D = diag(d_i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraDatum {
    label: String,
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    sym: Vec<i64>,
    lacing: i64,
}

fn chain(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

fn link(c: &mut [Vec<i64>], i: usize, j: usize) {
    c[i - 1][j - 1] = -1;
    c[j - 1][i - 1] = -1;
}

fn exceptional_e(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    link(&mut c, 1, 3);
    link(&mut c, 2, 4);
    for i in 3..n {
        link(&mut c, i, i + 1);
    }
    c
}

/// Symmetrizer with gcd 1 such that d_i C_ij = d_j C_ji.
fn symmetrizer(c: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = c.len();
    let mut d: Vec<Option<Rational64>> = vec![None; n];
    d[0] = Some(Rational64::from_integer(1));
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && c[i][j] != 0 {
                if c[j][i] == 0 {
                    return Err(Error::Invalid("Cartan matrix not symmetrizable".into()));
                }
                let dj = d[i].unwrap() * Rational64::new(c[i][j], c[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(x) if x != dj => return Err(Error::Invalid("Cartan matrix not symmetrizable".into())),
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Rational64> = d
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::Invalid("Dynkin diagram disconnected".into())))
        .collect::<Result<_>>()?;
    let lcm = d.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * lcm).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

impl AlgebraDatum {
    /// Build from a Cartan matrix; validates the invariants.
    pub fn from_cartan(label: &str, family: Family, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 || cartan.iter().any(|r| r.len() != rank) {
            return Err(Error::Invalid("Cartan matrix must be square and non-empty".into()));
        }
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return Err(Error::Invalid("diagonal entries must be 2".into()));
            }
            for j in 0..rank {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::Invalid("off-diagonal entries inconsistent".into()));
                }
            }
        }
        let sym = symmetrizer(&cartan)?;
        let lacing = *sym.iter().max().unwrap();
        Ok(Self {
            label: label.to_string(),
            family,
            rank,
            cartan,
            sym,
            lacing,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::NodeOutOfRange {
                node: i,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    /// C_ij, 1-based.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// I_ij = 2δ_ij − C_ij.
    pub fn incidence(&self, i: usize, j: usize) -> i64 {
        if i == j {
            0
        } else {
            -self.cartan(i, j)
        }
    }

    /// Symmetrizer d_i.
    pub fn d(&self, i: usize) -> i64 {
        self.sym[i - 1]
    }

    /// Lacing number d.
    pub fn lacing(&self) -> i64 {
        self.lacing
    }

    /// d_i^∨ = d + 1 − d_i.
    pub fn dual_exp(&self, i: usize) -> i64 {
        self.lacing + 1 - self.d(i)
    }

    pub fn is_simply_laced(&self) -> bool {
        self.lacing == 1
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.nodes().filter(move |&j| j != i && self.cartan(i, j) != 0)
    }

    /// Langlands dual: transposed Cartan matrix with unchanged node labels.
    pub fn langlands_dual(&self) -> AlgebraDatum {
        let n = self.rank;
        let t: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| self.cartan[j][i]).collect()).collect();
        let (family, label) = match self.family {
            Family::B => (Family::C, format!("C{}", self.rank)),
            Family::C => (Family::B, format!("B{}", self.rank)),
            f => (f, self.label.clone()),
        };
        AlgebraDatum::from_cartan(&label, family, t).expect("transpose of a Cartan matrix")
    }

    /// A permutation p with C_std[p(i)][p(j)] = C[i][j], together with the
    /// standard datum of the same type.
    pub fn standard_relabel(&self) -> Result<(AlgebraDatum, Vec<usize>)> {
        let std = build_algebra(&format!("{}{}", self.family.letter(), self.rank))?;
        let n = self.rank;
        let matches =
            |p: &[usize]| (1..=n).all(|i| (1..=n).all(|j| std.cartan(p[i - 1], p[j - 1]) == self.cartan(i, j)));
        let ident: Vec<usize> = (1..=n).collect();
        let rev: Vec<usize> = (1..=n).rev().collect();
        for cand in [ident.clone(), rev] {
            if matches(&cand) {
                return Ok((std, cand));
            }
        }
        if n <= 6 {
            let mut perm = ident;
            while next_permutation(&mut perm) {
                if matches(&perm) {
                    return Ok((std, perm));
                }
            }
        }
        Err(Error::Invalid(format!(
            "cannot relabel {} to standard numbering",
            self.label
        )))
    }

    /// Simple root α_i in the fundamental-weight basis: coordinates C_ji.
    pub fn simple_root(&self, i: usize) -> Vec<Rational64> {
        self.nodes()
            .map(|j| Rational64::from_integer(self.cartan(j, i)))
            .collect()
    }

    /// Emit the datum as structured text.
    pub fn describe(&self) -> String {
        let mut s = format!("type {}\nrank {}\nlacing {}\n", self.label, self.rank, self.lacing);
        s += &format!(
            "d {}\n",
            self.sym.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
        );
        s += &format!(
            "dual_exp {}\n",
            self.nodes()
                .map(|i| self.dual_exp(i).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        );
        for row in &self.cartan {
            s += &format!(
                "cartan {}\n",
                row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
            );
        }
        s
    }
}

impl fmt::Display for AlgebraDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Parse a type label such as `C2` or `E6` and build its datum in Bourbaki numbering.
pub fn build_algebra(spec: &str) -> Result<AlgebraDatum> {
    let spec = spec.trim();
    let mut chars = spec.chars();
    let letter = chars.next().ok_or_else(|| Error::UnknownType(spec.into()))?;
    let rank: usize = chars.as_str().parse().map_err(|_| Error::UnknownType(spec.into()))?;
    let family = match letter.to_ascii_uppercase() {
        'A' => Family::A,
        'B' => Family::B,
        'C' => Family::C,
        'D' => Family::D,
        'E' => Family::E,
        'F' => Family::F,
        'G' => Family::G,
        _ => return Err(Error::UnknownType(spec.into())),
    };
    let ok = match family {
        Family::A => rank >= 1,
        Family::B | Family::C => rank >= 2,
        Family::D => rank >= 3,
        Family::E => (6..=8).contains(&rank),
        Family::F => rank == 4,
        Family::G => rank == 2,
    };
    if !ok {
        return Err(Error::RankOutOfRange {
            family: family.letter(),
            rank,
        });
    }
    let n = rank;
    let cartan = match family {
        Family::A => chain(n),
        Family::B => {
            let mut c = chain(n);
            c[n - 1][n - 2] = -2;
            c
        }
        Family::C => {
            let mut c = chain(n);
            c[n - 2][n - 1] = -2;
            c
        }
        Family::D => {
            let mut c = chain(n - 1);
            for row in c.iter_mut() {
                row.push(0);
            }
            c.push(vec![0; n]);
            c[n - 1][n - 1] = 2;
            link(&mut c, n - 2, n);
            c
        }
        Family::E => exceptional_e(n),
        Family::F => {
            let mut c = chain(4);
            c[2][1] = -2;
            c
        }
        Family::G => vec![vec![2, -1], vec![-3, 2]],
    };
    AlgebraDatum::from_cartan(&format!("{}{}", family.letter(), rank), family, cartan)
}

/// D4 numbered with the trivalent node first, as needed for the G2 folding.
pub fn d4_trivalent_first() -> AlgebraDatum {
    let c = vec![
        vec![2, -1, -1, -1],
        vec![-1, 2, 0, 0],
        vec![-1, 0, 2, 0],
        vec![-1, 0, 0, 2],
    ];
    AlgebraDatum::from_cartan("D4", Family::D, c).expect("valid D4")
}

/// Like [`build_algebra`], also accepting `D4t` for the trivalent-first D4.
pub fn parse_algebra(label: &str) -> Result<AlgebraDatum> {
    match label.trim() {
        "D4t" => Ok(d4_trivalent_first()),
        other => build_algebra(other),
    }
}

/// Folding record relating g to its simply-laced cover g′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingDatum {
    pub g: AlgebraDatum,
    pub gp: AlgebraDatum,
    /// σ on the nodes of g′, 1-based (`sigma[j-1]`).
    pub sigma: Vec<usize>,
    /// Orbit map from nodes of g′ to nodes of g (`orbit[j-1]`).
    pub orbit: Vec<usize>,
    pub dual: AlgebraDatum,
    /// Relabeling of ^Lg nodes into the standard numbering of its type.
    pub dual_relabel: Vec<usize>,
    /// Label of the twisted affine algebra ^Lĝ.
    pub twisted: String,
    /// Label of ĝ^∨.
    pub dual_affine: String,
}

impl FoldingDatum {
    pub fn sigma(&self, j: usize) -> usize {
        self.sigma[j - 1]
    }

    pub fn orbit_of(&self, j: usize) -> usize {
        self.orbit[j - 1]
    }

    /// Nodes of g′ lying over the node i of g, in increasing order.
    pub fn fibre(&self, i: usize) -> Vec<usize> {
        self.gp.nodes().filter(|&j| self.orbit_of(j) == i).collect()
    }

    pub fn representative(&self, i: usize) -> usize {
        self.fibre(i)[0]
    }

    pub fn order(&self) -> i64 {
        self.g.lacing()
    }

    pub fn is_trivial(&self) -> bool {
        self.g.is_simply_laced()
    }
}

/// Folding data for g; the identity folding for simply-laced input.
pub fn folding_data(g: &AlgebraDatum) -> Result<FoldingDatum> {
    let n = g.rank();
    let std = build_algebra(&format!("{}{}", g.family().letter(), n))?;
    if std.cartan_matrix() != g.cartan_matrix() {
        return Err(Error::Invalid(format!(
            "folding data requires the standard numbering of {}",
            g.label()
        )));
    }
    let (gp, sigma, orbit, twisted, dual_affine): (AlgebraDatum, Vec<usize>, Vec<usize>, String, String) =
        match g.family() {
            Family::C => {
                let m = 2 * n - 1;
                (
                    build_algebra(&format!("A{m}"))?,
                    (1..=m).map(|j| 2 * n - j).collect(),
                    (1..=m).map(|j| j.min(2 * n - j)).collect(),
                    format!("D{}^(2)", n + 1),
                    format!("A{}^(2)", 2 * n - 1),
                )
            }
            Family::B => {
                let m = n + 1;
                let sigma = (1..=m)
                    .map(|j| {
                        if j == n {
                            n + 1
                        } else if j == n + 1 {
                            n
                        } else {
                            j
                        }
                    })
                    .collect();
                (
                    build_algebra(&format!("D{m}"))?,
                    sigma,
                    (1..=m).map(|j| j.min(n)).collect(),
                    format!("A{}^(2)", 2 * n - 1),
                    format!("D{}^(2)", n + 1),
                )
            }
            Family::G => (
                d4_trivalent_first(),
                vec![1, 3, 4, 2],
                vec![1, 2, 2, 2],
                "D4^(3)".into(),
                "D4^(3)".into(),
            ),
            Family::F => (
                build_algebra("E6")?,
                vec![6, 2, 5, 4, 3, 1],
                vec![4, 1, 3, 2, 3, 4],
                "E6^(2)".into(),
                "E6^(2)".into(),
            ),
            _ => (
                g.clone(),
                (1..=n).collect(),
                (1..=n).collect(),
                format!("{}^(1)", g.label()),
                format!("{}^(1)", g.label()),
            ),
        };
    let dual = g.langlands_dual();
    let (_, dual_relabel) = dual.standard_relabel()?;
    let f = FoldingDatum {
        g: g.clone(),
        gp,
        sigma,
        orbit,
        dual,
        dual_relabel,
        twisted,
        dual_affine,
    };
    validate_folding(&f)?;
    Ok(f)
}

fn validate_folding(f: &FoldingDatum) -> Result<()> {
    let d = f.order() as usize;
    for j in f.gp.nodes() {
        let mut k = j;
        for _ in 0..d {
            k = f.sigma(k);
        }
        if k != j {
            return Err(Error::Invalid("sigma has wrong order".into()));
        }
        if f.orbit_of(f.sigma(j)) != f.orbit_of(j) {
            return Err(Error::Invalid("orbit map not sigma-invariant".into()));
        }
        for k in f.gp.nodes() {
            if f.gp.cartan(f.sigma(j), f.sigma(k)) != f.gp.cartan(j, k) {
                return Err(Error::Invalid("sigma is not a diagram automorphism".into()));
            }
        }
    }
    // quotient diagram: C_ij of g equals the sum over the fibre of i of C'_{i', rep(j)}
    for i in f.g.nodes() {
        if f.fibre(i).len() as i64 * f.g.d(i) != f.order() && !f.is_trivial() {
            return Err(Error::Invalid("orbit sizes inconsistent with symmetrizer".into()));
        }
        for j in f.g.nodes() {
            if i == j {
                continue;
            }
            let rj = f.representative(j);
            let s: i64 = f.fibre(i).iter().map(|&ip| f.gp.cartan(ip, rj)).sum();
            if s != f.g.cartan(i, j) {
                return Err(Error::Invalid(format!("quotient diagram mismatch at ({i},{j})")));
            }
        }
    }
    Ok(())
}

/// Modes for the one- and two-parameter Cartan matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QtMode {
    Cqt,
    Dqt,
    Bqt,
    Cq,
    CqInverse,
    Mqt,
}

/// Matrix of rational functions in (q, t).
#[derive(Clone, Debug, PartialEq)]
pub struct QtMatrix {
    pub entries: Vec<Vec<RatFn>>,
}

impl QtMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFn {
        &self.entries[i - 1][j - 1]
    }

    pub fn mul(&self, o: &QtMatrix) -> QtMatrix {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(RatFn::zero(), |acc, k| {
                            acc.add(&self.entries[i][k].mul(&o.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        QtMatrix { entries }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let want = RatFn::poly(if i == j { Laurent2::one() } else { Laurent2::zero() });
                self.entries[i][j] == want
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

fn cqt_poly(g: &AlgebraDatum, with_t: bool) -> Vec<Vec<Laurent2>> {
    g.nodes()
        .map(|i| {
            g.nodes()
                .map(|j| {
                    if i == j {
                        let di = g.d(i) as i32;
                        let (tp, tm) = if with_t { (1, -1) } else { (0, 0) };
                        &Laurent2::monomial(1, di, tp) + &Laurent2::monomial(1, -di, tm)
                    } else {
                        -&Laurent2::qnum(g.incidence(i, j))
                    }
                })
                .collect()
        })
        .collect()
}

fn dqt_poly(g: &AlgebraDatum) -> Vec<Vec<Laurent2>> {
    g.nodes()
        .map(|i| {
            g.nodes()
                .map(|j| {
                    if i == j {
                        Laurent2::qnum(g.d(i))
                    } else {
                        Laurent2::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn poly_matrix(m: Vec<Vec<Laurent2>>) -> QtMatrix {
    QtMatrix {
        entries: m
            .into_iter()
            .map(|r| r.into_iter().map(RatFn::poly).collect())
            .collect(),
    }
}

fn inverse_matrix(m: &[Vec<Laurent2>]) -> QtMatrix {
    let d = det(m);
    let adj = adjugate(m);
    QtMatrix {
        entries: adj
            .into_iter()
            .map(|r| r.into_iter().map(|x| RatFn::new(x, d.clone())).collect())
            .collect(),
    }
}

/// One- and two-parameter Cartan matrices and their inverses, exactly.
pub fn qt_cartan(g: &AlgebraDatum, mode: QtMode) -> QtMatrix {
    match mode {
        QtMode::Cqt => poly_matrix(cqt_poly(g, true)),
        QtMode::Dqt => poly_matrix(dqt_poly(g)),
        QtMode::Bqt => poly_matrix(dqt_poly(g)).mul(&poly_matrix(cqt_poly(g, true))),
        QtMode::Cq => poly_matrix(cqt_poly(g, false)),
        QtMode::CqInverse => inverse_matrix(&cqt_poly(g, false)),
        QtMode::Mqt => poly_matrix(dqt_poly(g)).mul(&inverse_matrix(&cqt_poly(g, true))),
    }
}

/// Determinant of C(q,t) as a Laurent polynomial.
pub fn cqt_determinant(g: &AlgebraDatum) -> Laurent2 {
    det(&cqt_poly(g, true))
}

/// The rational function f_ℓ(q,t) = (q+q⁻¹)(qt⁻¹ − q⁻¹t)/(q²t⁻¹ − q⁻²t).
pub fn f_ell() -> RatFn {
    let a = &Laurent2::monomial(1, 1, 0) + &Laurent2::monomial(1, -1, 0);
    let b = &Laurent2::monomial(1, 1, -1) - &Laurent2::monomial(1, -1, 1);
    let c = &Laurent2::monomial(1, 2, -1) - &Laurent2::monomial(1, -2, 1);
    RatFn::new(&a * &b, c)
}

/// A weight in the fundamental-weight basis.
pub type Weight = Vec<Rational64>;

pub fn weight_from_ints(v: &[i64]) -> Weight {
    v.iter().map(|&x| Rational64::from_integer(x)).collect()
}

pub fn is_integral(w: &Weight) -> bool {
    w.iter().all(|x| x.is_integer())
}

/// Simple reflection s_i(λ) = λ − ⟨λ, α_i^∨⟩ α_i.
pub fn weyl_reflect(g: &AlgebraDatum, lambda: &Weight, i: usize) -> Weight {
    let li = lambda[i - 1];
    lambda.iter().zip(g.simple_root(i)).map(|(x, a)| *x - li * a).collect()
}

/// Maps between ^Lg-weights, σ-invariant g′-weights and g-weights.
#[derive(Clone, Debug)]
pub struct LatticeMaps {
    fold: FoldingDatum,
}

impl LatticeMaps {
    pub fn new(fold: &FoldingDatum) -> Self {
        Self { fold: fold.clone() }
    }

    /// ^Lg weight to g′ weight: ω_i ↦ Σ over the fibre of i.
    pub fn dual_to_prime(&self, lambda: &Weight) -> Weight {
        self.fold
            .gp
            .nodes()
            .map(|j| lambda[self.fold.orbit_of(j) - 1])
            .collect()
    }

    /// Inverse of [`dual_to_prime`]; fails unless the input is σ-invariant.
    pub fn prime_to_dual(&self, lambda: &Weight) -> Result<Weight> {
        for j in self.fold.gp.nodes() {
            if lambda[j - 1] != lambda[self.fold.sigma(j) - 1] {
                return Err(Error::Invalid("weight is not sigma-invariant".into()));
            }
        }
        Ok(self
            .fold
            .g
            .nodes()
            .map(|i| lambda[self.fold.representative(i) - 1])
            .collect())
    }

    /// g weight to g′ weight: ω_i ↦ (1/|fibre|) Σ over the fibre; may be non-integral.
    pub fn g_to_prime(&self, lambda: &Weight) -> Weight {
        self.fold
            .gp
            .nodes()
            .map(|j| {
                let i = self.fold.orbit_of(j);
                lambda[i - 1] / Rational64::from_integer(self.fold.fibre(i).len() as i64)
            })
            .collect()
    }

    /// Image of the coroot α̌_i of g in the coroot basis of g′.
    pub fn coroot_image(&self, i: usize) -> Vec<i64> {
        self.fold
            .gp
            .nodes()
            .map(|j| i64::from(self.fold.orbit_of(j) == i))
            .collect()
    }

    /// Image of the simple root α_i of ^Lg as a g′ weight.
    pub fn dual_root_image(&self, i: usize) -> Weight {
        self.dual_to_prime(&self.fold.dual.simple_root(i))
    }

    pub fn is_sigma_invariant(&self, lambda: &Weight) -> bool {
        self.fold
            .gp
            .nodes()
            .all(|j| lambda[j - 1] == lambda[self.fold.sigma(j) - 1])
    }
}

/// Pairing of a weight with a coroot given in the coroot basis.
pub fn pair_coroot(lambda: &Weight, coroot: &[i64]) -> Rational64 {
    lambda.iter().zip(coroot).fold(Rational64::zero(), |acc, (x, &c)| {
        acc + *x * Rational64::from_integer(c)
    })
}
