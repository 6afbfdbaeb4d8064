//! `qtchar`: command-line front end for the character engine.
//!
//! Exit codes: 0 on success, 1 when a verdict fails or a computation errors,
//! 2 on usage or input errors.

mod bae_io;
mod output;

use bae_io::{fmt_gq, polys, values, BetheFile, Kind, QqFile, SystemFile};
use clap::{Args, Parser, Subcommand};
use output::Out;
use qtchar::bae::{
    bethe_fold_limit, build_gaudin, build_gaudin_langlands, build_multiplicative, fold_bae, gaudin_residual_exact,
    numeric_agree, qq_check, qq_solve_tilde, sigma_commute, solve_gaudin, typical_identities, BaeKind, BaeSystem,
    SolveOptions,
};
use qtchar::charalg::{fm_closure, membership_remainder};
use qtchar::corpus::{default_corpus_dir, format_report, load_corpus, ring_flavor, verify_corpus};
use qtchar::crystal::{conjcrys_test, crystal_closure, subcrystal_check, CrystalMonomial};
use qtchar::fold::{check_fold_lemma, folded_tchar, invariant_part};
use qtchar::interp::{check_part3, five_specializations, interp_f, verdict_summary};
use qtchar::liealg::{folding_data, parse_algebra, AlgebraDatum};
use qtchar::ring::{parse_monomial, Character, RingFlavor, Specialization};
use qtchar::Error;
use serde_json::json;
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Compute(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::UnknownType(_)
            | Error::RankOutOfRange { .. }
            | Error::NodeOutOfRange { .. }
            | Error::Invalid(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "qtchar",
    version,
    about = "q-, t- and (q,t)-characters, monomial crystals and Bethe Ansatz systems"
)]
struct Cli {
    /// Emit the structured JSON mirror instead of canonical text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cartan, folding and Langlands data of a simple Lie algebra.
    Algebra(AlgebraArgs),
    /// Characters in a ring flavor.
    #[command(subcommand)]
    Char(CharCmd),
    /// σ-invariants and folded t-characters.
    #[command(subcommand)]
    Fold(FoldCmd),
    /// Interpolating (q,t)-characters.
    #[command(subcommand)]
    Interp(InterpCmd),
    /// Monomial crystals.
    #[command(subcommand)]
    Crystal(CrystalCmd),
    /// Bethe Ansatz and QQ systems.
    #[command(subcommand)]
    Bae(BaeCmd),
    /// Run the fixture corpus.
    VerifyCorpus(CorpusArgs),
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[arg(long)]
    algebra: String,
}

#[derive(Args, Debug)]
struct MonoArgs {
    /// Algebra label such as C2, B3, G2 or D4t (trivalent node first).
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    monomial: String,
}

#[derive(Subcommand, Debug)]
enum CharCmd {
    /// Closure F(m) of a dominant monomial.
    #[command(name = "F", alias = "f")]
    F {
        /// standard-q, folded-t, twisted-t or interp.
        #[arg(long, default_value = "standard-q")]
        flavor: String,
        #[command(flatten)]
        m: MonoArgs,
    },
    /// Membership of a character file in the screening kernel at every node.
    Check {
        #[arg(long, default_value = "standard-q")]
        flavor: String,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum FoldCmd {
    /// σ-invariant part of a product of g′ q-characters; --algebra is g.
    Invariants {
        #[arg(long)]
        algebra: String,
        /// g′ monomials; their q-characters are multiplied.
        #[arg(long, required = true, num_args = 1..)]
        monomial: Vec<String>,
    },
    /// Folded t-character of the g′ q-character of a monomial; --algebra is g.
    Tchar(MonoArgs),
    /// Folded first fundamental of g′ against the direct closure over g.
    CheckIdenti(AlgebraArgs),
}

#[derive(Subcommand, Debug)]
enum InterpCmd {
    /// Interpolating character of a monomial in Y/W variables.
    #[command(name = "F", alias = "f")]
    F(MonoArgs),
    /// The five specializations; with --out, one canonical file each.
    Spec5 {
        #[command(flatten)]
        m: MonoArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-leg check for a σ-invariant dominant g′ monomial.
    CheckPart3(MonoArgs),
}

#[derive(Subcommand, Debug)]
enum CrystalCmd {
    /// Crystal generated by a dominant monomial (parameter kind t).
    Closure(MonoArgs),
    /// Whether a set of monomials is a subcrystal.
    Check {
        #[arg(long)]
        algebra: String,
        #[arg(long, required = true, num_args = 1..)]
        monomial: Vec<String>,
    },
    /// Compare F(Y_{i,t^r}) with the crystal of its top monomial.
    Conjcrys {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        node: usize,
        #[arg(long, default_value_t = 0)]
        shift: i32,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// JSON input file.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum BaeCmd {
    /// Build a system.
    Build(InputArgs),
    /// Fold a g′ system onto `target` and compare with the direct system.
    Fold(InputArgs),
    /// Solve a Gaudin system numerically.
    Solve(InputArgs),
    /// Check QQ relations exactly.
    QqCheck(InputArgs),
    /// Solve the QQ relations for Q̃ within degree bounds.
    QqSolve(InputArgs),
    /// ε → 0 limit of a Bethe vector with σ-paired roots.
    BetheLimit(InputArgs),
    /// The table of typical-factor identities.
    Identities,
}

#[derive(Args, Debug)]
struct CorpusArgs {
    /// Select fixtures whose id contains this string.
    #[arg(long, default_value = "")]
    filter: String,
    /// Corpus directory (defaults to the shipped corpus).
    #[arg(long)]
    dir: Option<PathBuf>,
}

/// Output and whether every verdict passed.
struct Outcome {
    out: Out,
    pass: bool,
}

impl Outcome {
    fn ok(out: Out) -> Self {
        Outcome { out, pass: true }
    }
}

fn alg(label: &str) -> CliResult<AlgebraDatum> {
    Ok(parse_algebra(label)?)
}

fn algebra_cmd(a: &AlgebraArgs, json: bool) -> CliResult<Outcome> {
    let g = alg(&a.algebra)?;
    let mut out = Out::new(json, "algebra");
    out.field("label", g.label());
    out.field("rank", g.rank());
    out.field("cartan", json!(g.cartan_matrix()));
    out.field("d", json!(g.nodes().map(|i| g.d(i)).collect::<Vec<_>>()));
    out.field("langlands_dual", g.langlands_dual().label());
    if let Ok(f) = folding_data(&g) {
        out.field("cover", f.gp.label());
        out.field("sigma", json!(f.gp.nodes().map(|j| f.sigma(j)).collect::<Vec<_>>()));
        out.field("orbit", json!(f.gp.nodes().map(|j| f.orbit_of(j)).collect::<Vec<_>>()));
    }
    Ok(Outcome::ok(out))
}

fn char_cmd(c: &CharCmd, json: bool) -> CliResult<Outcome> {
    match c {
        CharCmd::F { flavor, m } => {
            let fl = ring_flavor(flavor, &m.algebra)?;
            let ch = fm_closure(&fl, &parse_monomial(&m.monomial, fl.d())?)?;
            let mut out = Out::new(json, "character");
            out.field("flavor", fl.name());
            out.character("character", &ch, fl.d());
            Ok(Outcome::ok(out))
        }
        CharCmd::Check { flavor, algebra, file } => {
            let fl = ring_flavor(flavor, algebra)?;
            let text =
                std::fs::read_to_string(file).map_err(|e| CliError::Usage(format!("{}: {e}", file.display())))?;
            let x = Character::from_text(&text, fl.d())?;
            let mut out = Out::new(json, "membership");
            let mut pass = true;
            let mut nodes = Vec::new();
            for i in fl.g.nodes() {
                let ok = membership_remainder(&fl, &x, i);
                if let Err(rem) = &ok {
                    out.line(&format!("node {i}: remainder\n{}", rem.to_text(fl.d())));
                }
                pass &= ok.is_ok();
                nodes.push(json!({ "node": i, "member": ok.is_ok() }));
            }
            out.field("nodes", json!(nodes));
            out.field("pass", pass);
            Ok(Outcome { out, pass })
        }
    }
}

fn fold_cmd(c: &FoldCmd, json: bool) -> CliResult<Outcome> {
    match c {
        FoldCmd::Invariants { algebra, monomial } => {
            let g = alg(algebra)?;
            let f = folding_data(&g)?;
            let fl = RingFlavor::standard_q(&f.gp);
            let mut prod = Character::one(fl.var_kind());
            for m in monomial {
                prod = prod.mul(&fm_closure(&fl, &parse_monomial(m, 1)?)?)?;
            }
            let inv = invariant_part(&f, &prod)?;
            let mut out = Out::new(json, "invariants");
            out.field("cover", f.gp.label());
            out.character("character", &inv, g.lacing());
            Ok(Outcome::ok(out))
        }
        FoldCmd::Tchar(m) => {
            let g = alg(&m.algebra)?;
            let f = folding_data(&g)?;
            let fl = RingFlavor::standard_q(&f.gp);
            let up = fm_closure(&fl, &parse_monomial(&m.monomial, 1)?)?;
            let mut out = Out::new(json, "folded-tchar");
            out.field("cover", f.gp.label());
            out.character("character", &folded_tchar(&f, &up), g.lacing());
            Ok(Outcome::ok(out))
        }
        FoldCmd::CheckIdenti(a) => {
            let g = alg(&a.algebra)?;
            let r = check_fold_lemma(&g)?;
            let mut out = Out::new(json, "fold-lemma");
            out.field("algebra", g.label());
            out.field("equal", r.equal);
            out.character("folded", &r.folded, g.lacing());
            if !r.equal {
                out.character("direct", &r.direct, g.lacing());
            }
            Ok(Outcome { out, pass: r.equal })
        }
    }
}

fn interp_cmd(c: &InterpCmd, json: bool) -> CliResult<Outcome> {
    match c {
        InterpCmd::F(m) => {
            let g = alg(&m.algebra)?;
            let x = interp_f(&g, &parse_monomial(&m.monomial, g.lacing())?)?;
            let mut out = Out::new(json, "interp");
            out.character("character", &x, g.lacing());
            Ok(Outcome::ok(out))
        }
        InterpCmd::Spec5 { m, out: dir } => {
            let g = alg(&m.algebra)?;
            let x = interp_f(&g, &parse_monomial(&m.monomial, g.lacing())?)?;
            let r = five_specializations(&g, &x)?;
            let mut out = Out::new(json, "spec5");
            out.field("pi_t_prime_relabel", json!(r.pi_t_prime_relabel));
            for s in Specialization::ALL {
                let ch = r.get(s);
                if let Some(dir) = dir {
                    std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
                    let path = dir.join(format!("{}.txt", s.name()));
                    std::fs::write(&path, ch.to_text(g.lacing()))
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                }
                out.character(s.name(), ch, g.lacing());
            }
            Ok(Outcome::ok(out))
        }
        InterpCmd::CheckPart3(m) => {
            let g = alg(&m.algebra)?;
            let v = check_part3(&g, &parse_monomial(&m.monomial, 1)?.key)?;
            let mut out = Out::new(json, "part3");
            out.line(&verdict_summary(&v));
            let legs: Vec<_> = v
                .legs
                .iter()
                .map(|l| json!({ "leg": l.name, "pass": l.pass() }))
                .collect();
            if json {
                out.field("legs", json!(legs));
            }
            out.field("pass", v.pass());
            Ok(Outcome { out, pass: v.pass() })
        }
    }
}

fn crystal_monomial(text: &str) -> CliResult<CrystalMonomial> {
    Ok(CrystalMonomial::new(parse_monomial(text, 1)?.key)?)
}

fn crystal_cmd(c: &CrystalCmd, json: bool) -> CliResult<Outcome> {
    match c {
        CrystalCmd::Closure(m) => {
            let g = alg(&m.algebra)?;
            let set = crystal_closure(&g, &crystal_monomial(&m.monomial)?)?;
            let mut out = Out::new(json, "crystal");
            let items: Vec<String> = set.iter().map(CrystalMonomial::to_text).collect();
            for s in &items {
                out.line(s);
            }
            out.field("size", items.len());
            if json {
                out.field("monomials", json!(items));
            }
            Ok(Outcome::ok(out))
        }
        CrystalCmd::Check { algebra, monomial } => {
            let g = alg(algebra)?;
            let set: BTreeSet<CrystalMonomial> =
                monomial.iter().map(|m| crystal_monomial(m)).collect::<CliResult<_>>()?;
            let pass = subcrystal_check(&g, &set);
            let mut out = Out::new(json, "subcrystal");
            out.field("size", set.len());
            out.field("pass", pass);
            Ok(Outcome { out, pass })
        }
        CrystalCmd::Conjcrys { algebra, node, shift } => {
            let g = alg(algebra)?;
            let v = conjcrys_test(&g, *node, *shift)?;
            let mut out = Out::new(json, "conjcrys");
            out.field("character_monomials", v.character_set.len());
            out.field("closure", v.closure.len());
            out.field("equal", v.equal);
            out.field("subcrystal", v.subcrystal);
            if let Some(w) = &v.witness {
                out.field("witness", w.as_str());
            }
            out.field("pass", v.pass());
            Ok(Outcome { out, pass: v.pass() })
        }
    }
}

fn build_system(s: &SystemFile, g: &AlgebraDatum) -> CliResult<BaeSystem> {
    Ok(match s.kind()? {
        Kind::Mult(k) => build_multiplicative(k, g, &s.counts, &s.drinfeld())?,
        Kind::Gaudin { dual: false } => build_gaudin(g, &s.counts, &s.gaudin())?,
        Kind::Gaudin { dual: true } => build_gaudin_langlands(g, &s.counts, &s.gaudin())?,
    })
}

fn system_fields(out: &mut Out, sys: &BaeSystem) {
    out.field("system_kind", format!("{:?}", sys.kind));
    out.field("algebra", sys.g.label());
    out.field("equations", sys.equation_count());
    out.line(&sys.to_text());
}

fn bae_cmd(c: &BaeCmd, json: bool) -> CliResult<Outcome> {
    match c {
        BaeCmd::Build(i) => {
            let s: SystemFile = bae_io::read(&i.input)?;
            let sys = build_system(&s, &alg(&s.algebra)?)?;
            let mut out = Out::new(json, "bae-system");
            system_fields(&mut out, &sys);
            if json {
                out.field("text", sys.to_text());
            }
            Ok(Outcome::ok(out))
        }
        BaeCmd::Fold(i) => {
            let s: SystemFile = bae_io::read(&i.input)?;
            let target = s
                .target
                .as_deref()
                .ok_or_else(|| CliError::Usage("fold input needs `target`".into()))?;
            let f = folding_data(&alg(target)?)?;
            let up = build_system(&s, &alg(&s.algebra)?)?;
            let folded = fold_bae(&up, &f)?;
            let counts: Vec<usize> = f.g.nodes().map(|k| s.counts[f.representative(k) - 1]).collect();
            let direct = match s.kind()? {
                Kind::Mult(BaeKind::StandardQ) => {
                    let d = qtchar::bae::DrinfeldData {
                        shifts: s
                            .drinfeld()
                            .shifts
                            .iter()
                            .map(|per| f.g.nodes().map(|k| per[f.representative(k) - 1].clone()).collect())
                            .collect(),
                    };
                    build_multiplicative(BaeKind::Folded, &f.g, &counts, &d)?
                }
                Kind::Gaudin { dual: false } => {
                    let gd = s.gaudin();
                    let data = qtchar::bae::GaudinData {
                        coweights: gd
                            .coweights
                            .iter()
                            .map(|c| f.g.nodes().map(|k| c[f.representative(k) - 1]).collect())
                            .collect(),
                        points: gd.points.clone(),
                        twist: if gd.twist.is_empty() {
                            Vec::new()
                        } else {
                            f.g.nodes().map(|k| gd.twist[f.representative(k) - 1]).collect()
                        },
                    };
                    build_gaudin_langlands(&f.dual, &counts, &data)?
                }
                _ => {
                    return Err(CliError::Usage(
                        "fold takes a standard-q or gaudin system over g′".into(),
                    ))
                }
            };
            let equal = folded.equations == direct.equations;
            let numeric = numeric_agree(&folded, &direct, 7);
            let mut out = Out::new(json, "bae-fold");
            system_fields(&mut out, &folded);
            out.field("symbolic_equal", equal);
            out.field("numeric_equal", numeric);
            Ok(Outcome {
                out,
                pass: equal && numeric,
            })
        }
        BaeCmd::Solve(i) => {
            let s: SystemFile = bae_io::read(&i.input)?;
            let sys = build_system(&s, &alg(&s.algebra)?)?;
            let d = SolveOptions::default();
            let o = s.solver.unwrap_or_default();
            let opts = SolveOptions {
                tol: o.tol.unwrap_or(d.tol),
                max_iter: o.max_iter.unwrap_or(d.max_iter),
                seeds: o.seeds.unwrap_or(d.seeds),
                rng_seed: o.rng_seed.unwrap_or(d.rng_seed),
            };
            let rep = solve_gaudin(&sys, &opts)?;
            let mut out = Out::new(json, "bae-solutions");
            out.field("precision", opts.tol);
            out.field("solutions", rep.solutions.len());
            out.field("failed_seeds", rep.failures.len());
            let mut sols = Vec::new();
            for (k, sol) in rep.solutions.iter().enumerate() {
                let x: Vec<_> = sol.roots.iter().map(|r| r.1).collect();
                let exact = gaudin_residual_exact(&sys, &x)?;
                out.line(&format!(
                    "solution {k}: residual {:.3e} exact {:.3e}",
                    sol.residual, exact
                ));
                for (r, z) in &sol.roots {
                    out.line(&format!("  {r} = {:.12} {:+.12}i", z.re, z.im));
                }
                let roots: Vec<_> = sol
                    .roots
                    .iter()
                    .map(|(r, z)| json!({ "root": r.to_string(), "re": z.re, "im": z.im }))
                    .collect();
                sols.push(json!({ "residual": sol.residual, "exact_residual": exact, "roots": roots }));
            }
            if json {
                out.field("roots", json!(sols));
            }
            let pass = !rep.solutions.is_empty();
            Ok(Outcome { out, pass })
        }
        BaeCmd::QqCheck(i) => {
            let f: QqFile = bae_io::read(&i.input)?;
            let g = alg(&f.algebra)?;
            let qs = polys(&f.qs)?;
            let qts = polys(&f.qts)?;
            check_lengths(&g, &[qs.len(), qts.len(), f.u.len()])?;
            let v = qq_check(&g, &f.q.value()?, &qs, &qts, &values(&f.u)?, &values(&f.samples)?);
            let mut out = Out::new(json, "qq-check");
            out.field("pass", v.holds);
            if let Some((node, deg, a, b)) = &v.first_failure {
                out.field(
                    "first_failure",
                    json!({ "node": node, "degree": deg, "left": a, "right": b }),
                );
            }
            Ok(Outcome { out, pass: v.holds })
        }
        BaeCmd::QqSolve(i) => {
            let f: QqFile = bae_io::read(&i.input)?;
            let g = alg(&f.algebra)?;
            let qs = polys(&f.qs)?;
            check_lengths(&g, &[qs.len(), f.u.len(), f.bounds.len()])?;
            let u = values(&f.u)?;
            let q = f.q.value()?;
            let mut out = Out::new(json, "qq-solve");
            match qq_solve_tilde(&g, &q, &qs, &u, &f.bounds) {
                Ok(qts) => {
                    let mut list = Vec::new();
                    for (k, p) in qts.iter().enumerate() {
                        let coeffs: Vec<String> = p.0.iter().map(fmt_gq).collect();
                        out.line(&format!("Qtilde_{}: [{}]", k + 1, coeffs.join(", ")));
                        list.push(json!(coeffs));
                    }
                    let holds = qq_check(&g, &q, &qs, &qts, &u, &[]).holds;
                    out.field("qq_check", holds);
                    if json {
                        out.field("Qtilde", json!(list));
                    }
                    Ok(Outcome { out, pass: holds })
                }
                Err(e @ Error::Infeasible(_)) => {
                    out.field("infeasible", e.to_string());
                    Ok(Outcome { out, pass: false })
                }
                Err(e) => Err(e.into()),
            }
        }
        BaeCmd::BetheLimit(i) => {
            let b: BetheFile = bae_io::read(&i.input)?;
            let f = folding_data(&alg(&b.algebra)?)?;
            if let Some(&bad) = b.labels.iter().find(|&&j| j == 0 || j > f.gp.rank()) {
                return Err(CliError::Usage(format!(
                    "label {bad} is not a node of {}",
                    f.gp.label()
                )));
            }
            let comm = sigma_commute(&f);
            let mut out = Out::new(json, "bethe-limit");
            match bethe_fold_limit(&b.labels, &b.base()?, &b.offsets, &comm) {
                Ok(v) => {
                    let mut words = Vec::new();
                    for (w, c) in &v {
                        let word: Vec<String> = w.iter().map(|j| format!("f{j}")).collect();
                        out.line(&format!("{c}\t{}", word.join(" ")));
                        words.push(json!({ "word": w, "coeff": c.to_string() }));
                    }
                    out.field("pole", false);
                    out.field("words", if json { json!(words) } else { json!(v.len()) });
                    Ok(Outcome::ok(out))
                }
                Err(e @ Error::PoleDetected(_)) => {
                    out.field("pole", true);
                    out.field("detail", e.to_string());
                    Ok(Outcome { out, pass: false })
                }
                Err(e) => Err(e.into()),
            }
        }
        BaeCmd::Identities => {
            let table = typical_identities()?;
            let mut out = Out::new(json, "identities");
            let mut rows = Vec::new();
            for (name, ok) in &table {
                out.line(&format!("{} {name}", if *ok { "pass" } else { "FAIL" }));
                rows.push(json!({ "identity": name, "pass": ok }));
            }
            let pass = table.iter().all(|r| r.1);
            if json {
                out.field("identities", json!(rows));
            }
            out.field("pass", pass);
            Ok(Outcome { out, pass })
        }
    }
}

fn check_lengths(g: &AlgebraDatum, lens: &[usize]) -> CliResult<()> {
    if lens.iter().any(|&n| n != g.rank()) {
        return Err(CliError::Usage(format!(
            "need one entry per node of {} (rank {})",
            g.label(),
            g.rank()
        )));
    }
    Ok(())
}

fn corpus_cmd(a: &CorpusArgs, json: bool) -> CliResult<Outcome> {
    let dir = a.dir.clone().unwrap_or_else(|| default_corpus_dir().to_path_buf());
    let fixtures = load_corpus(&dir)?;
    let results = verify_corpus(&fixtures, &a.filter);
    let pass = results.iter().all(|r| r.pass);
    let mut out = Out::new(json, "corpus");
    if json {
        let cases: Vec<_> = results
            .iter()
            .map(|r| json!({ "id": r.id, "source": r.source, "pass": r.pass, "detail": r.detail }))
            .collect();
        out.field("cases", json!(cases));
        out.field("selected", results.len());
        out.field("passed", results.iter().filter(|r| r.pass).count());
    } else {
        out.line(&format_report(&results));
    }
    Ok(Outcome { out, pass })
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let json = cli.json;
    match &cli.cmd {
        Cmd::Algebra(a) => algebra_cmd(a, json),
        Cmd::Char(c) => char_cmd(c, json),
        Cmd::Fold(c) => fold_cmd(c, json),
        Cmd::Interp(c) => interp_cmd(c, json),
        Cmd::Crystal(c) => crystal_cmd(c, json),
        Cmd::Bae(c) => bae_cmd(c, json),
        Cmd::VerifyCorpus(a) => corpus_cmd(a, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) => {
            print!("{}", o.out.render());
            ExitCode::from(if o.pass { 0 } else { 1 })
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            eprintln!("run `qtchar --help` for usage");
            ExitCode::from(2)
        }
        Err(CliError::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
