//! JSON input files for the `bae` subcommands.

use crate::CliError;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use qtchar::bae::{gq, BaeKind, DrinfeldData, GPoly, GaudinData, Gq};
use serde::Deserialize;
use std::path::Path;

pub fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// A system description: kind, algebra, root counts and inhomogeneity data.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    /// standard-q, folded, twisted, gaudin or gaudin-dual.
    pub kind: String,
    pub algebra: String,
    pub counts: Vec<usize>,
    /// Per point, per node: the q-shifts of the Drinfeld roots.
    #[serde(default)]
    pub drinfeld: Vec<Vec<Vec<i32>>>,
    /// Per point: coweight coordinates.
    #[serde(default)]
    pub coweights: Vec<Vec<i64>>,
    /// Points z_k as [re, im].
    #[serde(default)]
    pub points: Vec<[f64; 2]>,
    /// Twist per node as [re, im].
    #[serde(default)]
    pub twist: Vec<[f64; 2]>,
    /// For `bae fold`: the folded algebra g; `algebra` is then g′.
    #[serde(default)]
    pub target: Option<String>,
    #[serde(default)]
    pub solver: Option<SolverFile>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct SolverFile {
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub seeds: Option<usize>,
    pub rng_seed: Option<u64>,
}

pub enum Kind {
    Mult(BaeKind),
    Gaudin { dual: bool },
}

impl SystemFile {
    pub fn kind(&self) -> Result<Kind, CliError> {
        Ok(match self.kind.as_str() {
            "standard-q" => Kind::Mult(BaeKind::StandardQ),
            "folded" => Kind::Mult(BaeKind::Folded),
            "twisted" => Kind::Mult(BaeKind::Twisted),
            "gaudin" => Kind::Gaudin { dual: false },
            "gaudin-dual" => Kind::Gaudin { dual: true },
            k => return Err(CliError::Usage(format!("unknown system kind `{k}`"))),
        })
    }

    pub fn drinfeld(&self) -> DrinfeldData {
        DrinfeldData {
            shifts: self.drinfeld.clone(),
        }
    }

    pub fn gaudin(&self) -> GaudinData {
        let c = |v: &[f64; 2]| Complex::new(v[0], v[1]);
        GaudinData {
            coweights: self.coweights.clone(),
            points: self.points.iter().map(c).collect(),
            twist: self.twist.iter().map(c).collect(),
        }
    }
}

/// A Gaussian rational: `"3/2"` or `["3/2", "-1/5"]`.
#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
pub enum GqText {
    Real(String),
    Pair([String; 2]),
}

fn rat(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad rational `{s}`")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad rational `{s}`")))?;
            if d == BigInt::from(0) {
                return Err(CliError::Usage(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(n, d))
        }
        None => s
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| CliError::Usage(format!("bad rational `{s}`"))),
    }
}

impl GqText {
    pub fn value(&self) -> Result<Gq, CliError> {
        Ok(match self {
            GqText::Real(r) => gq(rat(r)?, rat("0")?),
            GqText::Pair([r, i]) => gq(rat(r)?, rat(i)?),
        })
    }
}

/// A polynomial by roots (monic) or by coefficients, lowest degree first.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct PolyText {
    #[serde(default)]
    pub roots: Option<Vec<GqText>>,
    #[serde(default)]
    pub coeffs: Option<Vec<GqText>>,
}

impl PolyText {
    pub fn value(&self) -> Result<GPoly, CliError> {
        match (&self.roots, &self.coeffs) {
            (Some(r), None) => Ok(GPoly::from_roots(&values(r)?)),
            (None, Some(c)) => Ok(GPoly::new(values(c)?)),
            _ => Err(CliError::Usage(
                "a polynomial needs exactly one of `roots` or `coeffs`".into(),
            )),
        }
    }
}

pub fn values(v: &[GqText]) -> Result<Vec<Gq>, CliError> {
    v.iter().map(GqText::value).collect()
}

pub fn polys(v: &[PolyText]) -> Result<Vec<GPoly>, CliError> {
    v.iter().map(PolyText::value).collect()
}

/// Input of `bae qq-check` and `bae qq-solve`.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct QqFile {
    pub algebra: String,
    pub q: GqText,
    #[serde(rename = "Q")]
    pub qs: Vec<PolyText>,
    #[serde(rename = "Qtilde", default)]
    pub qts: Vec<PolyText>,
    pub u: Vec<GqText>,
    #[serde(default)]
    pub samples: Vec<GqText>,
    #[serde(default)]
    pub bounds: Vec<usize>,
}

/// Input of `bae bethe-limit`: roots base_k + offset_k·ε labelled by g′ nodes.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct BetheFile {
    /// The folded algebra g; labels are nodes of g′.
    pub algebra: String,
    pub labels: Vec<usize>,
    pub base: Vec<String>,
    pub offsets: Vec<i64>,
}

impl BetheFile {
    pub fn base(&self) -> Result<Vec<BigRational>, CliError> {
        self.base.iter().map(|s| rat(s)).collect()
    }
}

pub fn fmt_gq(z: &Gq) -> String {
    use num_traits::Zero;
    if z.im.is_zero() {
        z.re.to_string()
    } else {
        format!("{} + {}i", z.re, z.im)
    }
}
