//! Regression corpus: plain-text fixtures holding a query and its expected
//! result, with a loader and a concurrent runner.
//!
//! A fixture file has `key: value` header lines, a `---` separator and a body:
//!
//! ```text
//! id: b2.fundamental.1
//! source: F(Y_1) for B2 in the t-kernel basis
//! query: closure folded-t B2 Y[1;1]
//! expect: exact
//! ---
//! Y[1;1] + Y[1;t^2]^-1*Y[2;t]^2 + ...
//! ```

use crate::charalg::fm_closure;
use crate::crystal::{crystal_closure, CrystalMonomial};
use crate::error::{Error, Result};
use crate::fold::{check_fold_lemma, invariant_part};
use crate::interp::{check_part3, interp_f, verdict_summary};
use crate::liealg::{folding_data, parse_algebra, AlgebraDatum};
use crate::ring::{parse_monomial, quotient_equal, specialize, Character, RingFlavor, Specialization};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

/// What a fixture asks for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    /// Closure of a monomial in a ring flavor.
    Closure { flavor: String, alg: String, mono: String },
    /// Interpolating character of a monomial.
    Interp { alg: String, mono: String },
    /// One specialization of an interpolating character.
    Spec {
        image: Specialization,
        alg: String,
        mono: String,
    },
    /// σ-invariant part of a product of g′ q-characters; `alg` is g.
    Invariant { alg: String, monos: Vec<String> },
    /// k-th power of the σ-invariant part of a product of g′ q-characters.
    InvariantPow { alg: String, k: u32, monos: Vec<String> },
    /// Closure of a monomial under the crystal operators.
    Crystal { alg: String, mono: String },
    /// Folded first fundamental against its g′ source.
    FoldLemma { alg: String },
    /// Four-leg check for a σ-invariant g′ monomial.
    Part3 { alg: String, mono: String },
}

impl Query {
    pub fn parse(text: &str) -> Result<Query> {
        let words: Vec<&str> = text.split_whitespace().collect();
        let bad = || Error::Invalid(format!("malformed query `{text}`"));
        let word = |k: usize| words.get(k).map(|s| s.to_string()).ok_or_else(bad);
        let rest = |k: usize| -> Result<Vec<String>> {
            let v: Vec<String> = words.iter().skip(k).map(|s| s.to_string()).collect();
            if v.is_empty() {
                Err(bad())
            } else {
                Ok(v)
            }
        };
        let q = match words.first().copied() {
            Some("closure") => Query::Closure {
                flavor: word(1)?,
                alg: word(2)?,
                mono: word(3)?,
            },
            Some("interp") => Query::Interp {
                alg: word(1)?,
                mono: word(2)?,
            },
            Some("spec") => Query::Spec {
                image: parse_image(&word(1)?)?,
                alg: word(2)?,
                mono: word(3)?,
            },
            Some("invariant") => Query::Invariant {
                alg: word(1)?,
                monos: rest(2)?,
            },
            Some("invariant-pow") => Query::InvariantPow {
                alg: word(1)?,
                k: word(2)?.parse().map_err(|_| bad())?,
                monos: rest(3)?,
            },
            Some("crystal") => Query::Crystal {
                alg: word(1)?,
                mono: word(2)?,
            },
            Some("fold-lemma") => Query::FoldLemma { alg: word(1)? },
            Some("part3") => Query::Part3 {
                alg: word(1)?,
                mono: word(2)?,
            },
            _ => return Err(bad()),
        };
        Ok(q)
    }
}

pub fn parse_image(name: &str) -> Result<Specialization> {
    Specialization::ALL
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| Error::Invalid(format!("unknown specialization `{name}`")))
}

/// How the result is judged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    /// Body is a character; equality of canonical forms.
    Exact,
    /// Body is an interpolating character; equality in the quotient ring.
    Quotient,
    /// Body lists `key=value` counts.
    Counts,
    /// The query is a verdict that must pass.
    Pass,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub id: String,
    pub source: String,
    pub query: Query,
    pub expect: Expect,
    pub body: String,
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Fixture> {
        let (head, body) = match text.split_once("\n---") {
            Some((h, b)) => (h, b.trim_start_matches('-').trim().to_string()),
            None => (text, String::new()),
        };
        let mut fields: BTreeMap<&str, String> = BTreeMap::new();
        for line in head
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Invalid(format!("bad header line `{line}`")))?;
            fields.insert(k.trim(), v.trim().to_string());
        }
        let get = |k: &str| {
            fields
                .get(k)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("fixture lacks `{k}:`")))
        };
        let id = get("id")?;
        let source = get("source").map_err(|_| Error::Invalid(format!("fixture {id} has no source citation")))?;
        if source.is_empty() {
            return Err(Error::Invalid(format!("fixture {id} has an empty source citation")));
        }
        let expect = match get("expect")?.as_str() {
            "exact" => Expect::Exact,
            "quotient" => Expect::Quotient,
            "counts" => Expect::Counts,
            "pass" => Expect::Pass,
            e => return Err(Error::Invalid(format!("unknown expectation `{e}` in {id}"))),
        };
        Ok(Fixture {
            id,
            source,
            query: Query::parse(&get("query")?)?,
            expect,
            body,
        })
    }
}

/// A computed value.
#[derive(Clone, Debug)]
pub enum Value {
    Char { ch: Character, g: AlgebraDatum },
    Set(usize),
    Verdict { pass: bool, detail: String },
}

impl Value {
    pub fn counts(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        match self {
            Value::Char { ch, .. } => {
                m.insert("distinct".into(), ch.len().to_string());
                m.insert("alpha".into(), ch.alpha_terms().to_string());
                m.insert("total".into(), ch.dimension_at(1).to_string());
            }
            Value::Set(n) => {
                m.insert("size".into(), n.to_string());
            }
            Value::Verdict { pass, .. } => {
                m.insert("pass".into(), pass.to_string());
            }
        }
        m
    }
}

fn alg(label: &str) -> Result<AlgebraDatum> {
    parse_algebra(label)
}

/// Parse a body: a sum of monomials, optionally written as `(sum)^k`.
pub fn parse_body(body: &str, d: i64) -> Result<Character> {
    let text = body.split_whitespace().collect::<Vec<_>>().join(" ");
    if let Some(inner) = text.strip_prefix('(') {
        if let Some((sum, pow)) = inner.rsplit_once(")^") {
            let k: u32 = pow
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad power `{pow}`")))?;
            let x = Character::parse_sum(sum, d)?;
            let mut out = Character::one(x.kind());
            for _ in 0..k {
                out = out.mul(&x)?;
            }
            return Ok(out);
        }
    }
    Character::parse_sum(&text, d)
}

/// Ring flavor by name; `twisted-t` also accepts labels such as `D3^(2)`.
pub fn ring_flavor(name: &str, label: &str) -> Result<RingFlavor> {
    Ok(match name {
        "standard-q" => RingFlavor::standard_q(&alg(label)?),
        "folded-t" => RingFlavor::folded_t(&alg(label)?),
        "interp" => RingFlavor::interp(&alg(label)?),
        "twisted-t" => {
            if label.contains("^(") {
                RingFlavor::twisted_from_label(label)?
            } else {
                RingFlavor::twisted_t(&alg(label)?)
            }
        }
        _ => return Err(Error::Invalid(format!("unknown flavor `{name}`"))),
    })
}

fn invariant_of(g: &AlgebraDatum, monos: &[String]) -> Result<Character> {
    let f = folding_data(g)?;
    let fl = RingFlavor::standard_q(&f.gp);
    let mut prod: Option<Character> = None;
    for m in monos {
        let x = fm_closure(&fl, &parse_monomial(m, 1)?)?;
        prod = Some(match prod {
            None => x,
            Some(p) => p.mul(&x)?,
        });
    }
    invariant_part(&f, &prod.expect("at least one monomial"))
}

/// Evaluate a query.
pub fn run_query(q: &Query) -> Result<Value> {
    Ok(match q {
        Query::Closure {
            flavor: name,
            alg: label,
            mono,
        } => {
            let fl = ring_flavor(name, label)?;
            let ch = fm_closure(&fl, &parse_monomial(mono, fl.d())?)?;
            Value::Char { ch, g: fl.g }
        }
        Query::Interp { alg: label, mono } => {
            let g = alg(label)?;
            let ch = interp_f(&g, &parse_monomial(mono, g.lacing())?)?;
            Value::Char { ch, g }
        }
        Query::Spec {
            image,
            alg: label,
            mono,
        } => {
            let g = alg(label)?;
            let x = interp_f(&g, &parse_monomial(mono, g.lacing())?)?;
            Value::Char {
                ch: specialize(&g, &x, *image)?,
                g,
            }
        }
        Query::Invariant { alg: label, monos } => {
            let g = alg(label)?;
            Value::Char {
                ch: invariant_of(&g, monos)?,
                g,
            }
        }
        Query::InvariantPow { alg: label, k, monos } => {
            let g = alg(label)?;
            let x = invariant_of(&g, monos)?;
            let mut ch = Character::one(x.kind());
            for _ in 0..*k {
                ch = ch.mul(&x)?;
            }
            Value::Char { ch, g }
        }
        Query::Crystal { alg: label, mono } => {
            let g = alg(label)?;
            let m = CrystalMonomial::new(parse_monomial(mono, 1)?.key)?;
            Value::Set(crystal_closure(&g, &m)?.len())
        }
        Query::FoldLemma { alg: label } => {
            let r = check_fold_lemma(&alg(label)?)?;
            let detail = format!("{} terms folded, {} direct", r.folded.len(), r.direct.len());
            Value::Verdict { pass: r.equal, detail }
        }
        Query::Part3 { alg: label, mono } => {
            let g = alg(label)?;
            let v = check_part3(&g, &parse_monomial(mono, 1)?.key)?;
            Value::Verdict {
                pass: v.pass(),
                detail: verdict_summary(&v),
            }
        }
    })
}

/// Outcome of one fixture.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub id: String,
    pub source: String,
    pub pass: bool,
    pub detail: String,
    pub millis: u128,
}

fn judge(fx: &Fixture, v: &Value) -> Result<(bool, String)> {
    match (&fx.expect, v) {
        (Expect::Exact | Expect::Quotient, Value::Char { ch, g }) => {
            let want = parse_body(&fx.body, g.lacing())?;
            let same = if fx.expect == Expect::Exact {
                *ch == want
            } else {
                quotient_equal(g, ch, &want)?
            };
            if same {
                Ok((true, format!("{} terms match", ch.len())))
            } else {
                let diff = ch.sub(&want)?;
                Ok((
                    false,
                    format!("difference (got - expected):\n{}", diff.to_text(g.lacing())),
                ))
            }
        }
        (Expect::Counts, _) => {
            let got = v.counts();
            let mut bad = Vec::new();
            for pair in fx.body.split_whitespace() {
                let (k, want) = pair
                    .split_once('=')
                    .ok_or_else(|| Error::Invalid(format!("bad count `{pair}`")))?;
                match got.get(k) {
                    Some(g) if g == want => {}
                    Some(g) => bad.push(format!("{k}: got {g}, expected {want}")),
                    None => bad.push(format!("{k}: not available")),
                }
            }
            let summary: Vec<String> = got.iter().map(|(k, v)| format!("{k}={v}")).collect();
            Ok((
                bad.is_empty(),
                if bad.is_empty() {
                    summary.join(" ")
                } else {
                    bad.join("; ")
                },
            ))
        }
        (Expect::Pass, Value::Verdict { pass, detail }) => Ok((*pass, detail.clone())),
        _ => Err(Error::Invalid(format!(
            "expectation does not fit the query of {}",
            fx.id
        ))),
    }
}

pub fn run_fixture(fx: &Fixture) -> CaseResult {
    let start = Instant::now();
    let (pass, detail) = match run_query(&fx.query).and_then(|v| judge(fx, &v)) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    CaseResult {
        id: fx.id.clone(),
        source: fx.source.clone(),
        pass,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

/// Load every `*.txt` fixture under `dir`, sorted by id.
pub fn load_corpus(dir: &Path) -> Result<Vec<Fixture>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    let mut out = Vec::new();
    for e in entries {
        let path = e.map_err(|e| Error::Invalid(e.to_string()))?.path();
        if path.extension().is_some_and(|x| x == "txt") {
            let text =
                std::fs::read_to_string(&path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            let fx = Fixture::parse(&text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            out.push(fx);
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = out.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(Error::Invalid(format!("duplicate fixture id {}", w[0].id)));
    }
    Ok(out)
}

/// Directory of the shipped corpus.
pub fn default_corpus_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/corpus"))
}

/// Run the fixtures whose id contains `filter`, concurrently; results are ordered by id.
pub fn verify_corpus(fixtures: &[Fixture], filter: &str) -> Vec<CaseResult> {
    let selected: Vec<&Fixture> = fixtures.iter().filter(|f| f.id.contains(filter)).collect();
    let mut out: Vec<CaseResult> = selected.par_iter().map(|f| run_fixture(f)).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

/// Plain-text report; the timing column is omitted so output is reproducible.
pub fn format_report(results: &[CaseResult]) -> String {
    let mut s = String::new();
    for r in results {
        s.push_str(&format!("{} {}\n", if r.pass { "pass" } else { "FAIL" }, r.id));
        if !r.pass {
            for line in r.detail.lines() {
                s.push_str(&format!("    {line}\n"));
            }
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    s.push_str(&format!(
        "{} selected, {passed} passed, {} failed\n",
        results.len(),
        results.len() - passed
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_header_rules() {
        let ok = "id: x\nsource: somewhere\nquery: crystal A2 Y[1;1]\nexpect: counts\n---\nsize=3\n";
        let fx = Fixture::parse(ok).unwrap();
        assert_eq!(fx.body, "size=3");
        assert!(run_fixture(&fx).pass);
        let missing = "id: x\nquery: crystal A2 Y[1;1]\nexpect: counts\n---\nsize=3\n";
        assert!(Fixture::parse(missing).is_err());
        assert!(Query::parse("closure folded-t").is_err());
    }

    #[test]
    fn empty_filter_selects_nothing() {
        let fx = load_corpus(default_corpus_dir()).unwrap();
        assert!(!fx.is_empty());
        let r = verify_corpus(&fx, "no-such-fixture");
        assert!(format_report(&r).starts_with("0 selected"));
    }
}
