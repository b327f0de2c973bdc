//! Command-line orchestration for the exact ADHM and quantum-instanton
//! toolkit: argument parsing, JSON I/O and report emission.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qadhm_core::adhm::{
    c_stable_solution, classify, complex_residuals, derivative_rank, dimension_audit, embed_real, rng,
    ComplexAdhmDatum, Datum,
};
use qadhm_core::monad::{build_monad, chi_additive, chi_twist, classify_sheaf, evaluation_grid as p3_grid};
use qadhm_core::QLaurent;
use qadhm_quantum::qcalculus::{derive_table, penrose_scalar, verify_oracles, Calculus, CechMonomial, PChoice};
use qadhm_quantum::qinstanton::{
    beta_p_alpha_q, beta_surjective_truncated, curvature_asd, evaluation_grid, verify_ids, xi_leading,
};
use qadhm_quantum::qspacetime::{basis_element, HarmonicIndex};
use qadhm_quantum::{Chart, QPoly};
use serde::Deserialize;
use serde_json::{json, Value};

pub mod expr;

/// Largest polynomial degree any command will touch.
pub const MAX_DEGREE_CAP: u32 = 8;

const EXPR_HELP: &str = "\
Expression grammar (products keep their written order):
  expr   := ['+'|'-'] term (('+'|'-') term)*
  term   := factor ('*' factor)*
  factor := atom ('^' ['-'] INT)?
  atom   := INT | q | x11 | x12 | x21 | x22 | det | '(' expr ')'
Negative exponents are accepted only on invertible scalars, e.g. q^-2.";

#[derive(Parser, Debug)]
#[command(name = "adhmq", version, about = "Exact ADHM data, monads and quantum instanton checks")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// Calculus normalization p ∈ {q, qinv}.
    #[arg(long = "p", global = true, default_value = "q")]
    pub p_choice: PChoice,
    /// Seed for every generator.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest degree any command may use (at most 8).
    #[arg(long, global = true, default_value_t = 6)]
    pub degree_cap: u32,
    /// Number of random points added to the P³ evaluation grid.
    #[arg(long, global = true, default_value_t = 8)]
    pub grid_size: usize,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

/// Validated run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub p_choice: PChoice,
    pub seed: u64,
    pub degree_cap: u32,
    pub grid_size: usize,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(a: &ConfigArgs) -> Result<Self, CliError> {
        if a.degree_cap > MAX_DEGREE_CAP {
            return Err(CliError::Precondition(format!("degree cap {} exceeds {MAX_DEGREE_CAP}", a.degree_cap)));
        }
        Ok(RunConfig {
            p_choice: a.p_choice,
            seed: a.seed,
            degree_cap: a.degree_cap,
            grid_size: a.grid_size,
            output: a.output.clone(),
        })
    }

    fn check_degree(&self, d: i64, what: &str) -> Result<(), CliError> {
        if d > self.degree_cap as i64 {
            return Err(CliError::Precondition(format!("{what} has degree {d} above the cap {}", self.degree_cap)));
        }
        Ok(())
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// ADHM data: residuals, stability, embedding, sampling, derivative rank.
    #[command(subcommand)]
    Adhm(AdhmCmd),
    /// Monads on P³ built from ADHM data.
    #[command(subcommand)]
    Monad(MonadCmd),
    /// Quantum Minkowski algebra and q-calculus.
    #[command(subcommand, after_help = EXPR_HELP)]
    Q(QCmd),
    /// Quantum instanton operators.
    #[command(subcommand)]
    Inst(InstCmd),
}

#[derive(Subcommand, Debug)]
pub enum AdhmCmd {
    /// Residuals and stability report.
    Check { file: PathBuf },
    /// Embed a real ξ = 0 datum as a complex datum.
    Embed { file: PathBuf },
    /// Seeded C-regular solution.
    Random {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        c: usize,
    },
    /// Derivative rank and dimension audit.
    Rank { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum MonadCmd {
    /// Monad of a solution.
    Build { file: PathBuf },
    /// Sheaf type and singular sample points.
    Classify { file: PathBuf },
    /// χ(E(k)) by Riemann-Roch and by additivity.
    Chern {
        #[arg(short)]
        r: i64,
        #[arg(short)]
        c: i64,
        #[arg(short, allow_negative_numbers = true)]
        k: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum QCmd {
    /// Normal form of an expression.
    #[command(after_help = EXPR_HELP)]
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The four q-partial derivatives.
    #[command(after_help = EXPR_HELP)]
    Partial {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// The quantum Laplacian (both orderings) and its det-twisted form.
    #[command(after_help = EXPR_HELP)]
    Laplace {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// det^k X^l_{m,n}; l, m, n are integers or halves such as 1/2.
    Harmonic {
        #[arg(short, value_parser = parse_half, allow_hyphen_values = true)]
        l: i64,
        #[arg(short, value_parser = parse_half, allow_hyphen_values = true)]
        m: i64,
        #[arg(short, value_parser = parse_half, allow_hyphen_values = true)]
        n: i64,
        #[arg(short, default_value_t = 0)]
        k: i64,
    },
    /// Eigenvalues of the twisted Laplacian and of Δ on det^k X^l.
    Eigen {
        #[arg(short)]
        k: i64,
        #[arg(short, value_parser = parse_half)]
        l: i64,
    },
    /// Derived first-order calculus table and its oracle checks.
    Table,
    /// Scalar Penrose transform of a Čech cocycle file.
    Penrose { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum InstCmd {
    /// Monad identities on both charts, the pencil relation and Ξ's leading term.
    Verify { file: PathBuf },
    /// The 2-form matrix dᾱ∧dβ̄ and its ASD check.
    Curvature { file: PathBuf },
    /// Surjectivity of β_P on truncated slices over the P¹ grid.
    Slices {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        dmax: u32,
    },
}

/// Parses `a`, `a/2` or `a.5`; returns twice the value.
pub fn parse_half(s: &str) -> Result<i64, String> {
    let bad = || format!("{s:?} is not an integer or half-integer");
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        return match den.trim() {
            "1" => Ok(2 * num),
            "2" => Ok(num),
            _ => Err(bad()),
        };
    }
    if let Some(head) = s.strip_suffix(".5") {
        let neg = head.starts_with('-');
        let whole: i64 = head.parse().map_err(|_| bad())?;
        return Ok(2 * whole + if neg { -1 } else { 1 });
    }
    s.trim().parse::<i64>().map(|v| 2 * v).map_err(|_| bad())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Schema(_) => "schema",
            CliError::Precondition(_) => "precondition",
            CliError::Parse(_) => "parse",
            CliError::Usage(_) => "usage",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": {"kind": self.kind(), "message": self.to_string()}})
    }
}

/// A command's JSON report and whether every asserted identity held.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub value: Value,
    pub ok: bool,
}

fn report(value: Value, ok: bool) -> Result<Report, CliError> {
    Ok(Report { value, ok })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{}: {e}", path.display())))
}

fn read_datum(path: &Path) -> Result<Datum, CliError> {
    Datum::from_json(&read_json(path)?).map_err(|e| CliError::Schema(e.to_string()))
}

/// A complex datum, embedding real ξ = 0 data.
fn read_complex(path: &Path) -> Result<ComplexAdhmDatum, CliError> {
    match read_datum(path)? {
        Datum::Complex(d) => Ok(d),
        Datum::Real(d) => embed_real(&d).map_err(|e| CliError::Precondition(e.to_string())),
    }
}

fn read_solution(path: &Path) -> Result<ComplexAdhmDatum, CliError> {
    let d = read_complex(path)?;
    if !d.is_solution() {
        return Err(CliError::Precondition("datum does not solve the complex ADHM equations".into()));
    }
    Ok(d)
}

fn parse_expr(s: &str, cfg: &RunConfig) -> Result<QPoly, CliError> {
    let f = expr::parse(s).map_err(|e| CliError::Parse(e.to_string()))?;
    cfg.check_degree(f.degree().unwrap_or(0), "expression")?;
    Ok(f)
}

fn poly_json(f: &QPoly) -> Value {
    json!({"normal_form": f.to_string(), "poly": to_value(f)})
}

fn calculus(cfg: &RunConfig) -> Result<Calculus, CliError> {
    Calculus::new(cfg.p_choice).map_err(|e| CliError::Precondition(e.to_string()))
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let cfg = RunConfig::new(&cli.config)?;
    match &cli.command {
        Command::Adhm(c) => run_adhm(c, &cfg),
        Command::Monad(c) => run_monad(c, &cfg),
        Command::Q(c) => run_q(c, &cfg),
        Command::Inst(c) => run_inst(c, &cfg),
    }
}

fn run_adhm(cmd: &AdhmCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        AdhmCmd::Check { file } => {
            let d = read_complex(file)?;
            let res = complex_residuals(&d);
            let ok = res.iter().all(|m| m.is_zero());
            report(
                json!({
                    "c": d.c, "r": d.r,
                    "residuals": res.iter().map(to_value).collect::<Vec<_>>(),
                    "is_solution": ok,
                    "stability": to_value(&classify(&d)),
                }),
                ok,
            )
        }
        AdhmCmd::Embed { file } => match read_datum(file)? {
            Datum::Real(d) => {
                let e = embed_real(&d).map_err(|e| CliError::Precondition(e.to_string()))?;
                report(e.to_json(), true)
            }
            Datum::Complex(_) => Err(CliError::Schema("embed expects a datum of kind \"real\"".into())),
        },
        AdhmCmd::Random { r, c } => {
            let d = c_stable_solution(&mut rng(cfg.seed), *r, *c).map_err(|e| CliError::Precondition(e.to_string()))?;
            let ok = d.is_solution() && classify(&d).regular;
            report(d.to_json(), ok)
        }
        AdhmCmd::Rank { file } => {
            let d = read_solution(file)?;
            let rank = derivative_rank(&d);
            let audit = dimension_audit(&d);
            let full = d.c * d.c * 3;
            let expected_dim = (4 * d.r * d.c) as i64;
            report(
                json!({
                    "c": d.c, "r": d.r, "derivative_rank": rank, "full_rank": full,
                    "dimension": audit, "expected_dimension": expected_dim,
                    "stable_everywhere": classify(&d).stable_everywhere,
                }),
                rank == full && audit == expected_dim,
            )
        }
    }
}

fn run_monad(cmd: &MonadCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        MonadCmd::Build { file } => {
            let d = read_complex(file)?;
            let m = build_monad(&d).map_err(|e| CliError::Precondition(e.to_string()))?;
            let ok = m.is_complex();
            report(json!({"monad": m.to_json(), "beta_alpha_zero": ok}), ok)
        }
        MonadCmd::Classify { file } => {
            let d = read_complex(file)?;
            let grid = p3_grid(cfg.grid_size, cfg.seed);
            let s = classify_sheaf(&d, &grid).map_err(|e| CliError::Precondition(e.to_string()))?;
            report(json!({"classification": to_value(&s), "grid_points": grid.len()}), true)
        }
        MonadCmd::Chern { r, c, k } => {
            if *r < 0 || *c < 0 {
                return Err(CliError::Precondition("r and c must be nonnegative".into()));
            }
            let rr = chi_twist(*r, *c, *k);
            let add = chi_additive(*r, *c, *k);
            report(json!({"r": r, "c": c, "k": k, "chi": rr.to_string(), "chi_additive": add.to_string()}), rr == add)
        }
    }
}

#[derive(Deserialize)]
struct CechTerm {
    x: u32,
    y: u32,
    z: u32,
    w: u32,
    #[serde(default = "one_laurent")]
    coef: QLaurent,
}

fn one_laurent() -> QLaurent {
    QLaurent::from_int(1)
}

#[derive(Deserialize)]
struct CechFile {
    terms: Vec<CechTerm>,
}

fn run_q(cmd: &QCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        QCmd::Normalize { expr } => {
            let f = parse_expr(expr, cfg)?;
            report(poly_json(&f), true)
        }
        QCmd::Partial { expr } => {
            let f = parse_expr(expr, cfg)?;
            let calc = calculus(cfg)?;
            let names = ["d11", "d12", "d21", "d22"];
            let parts = calc.partials(&f);
            let mut out = serde_json::Map::new();
            for (n, p) in names.iter().zip(&parts) {
                out.insert(n.to_string(), poly_json(p));
            }
            out.insert("df".into(), Value::String(calc.d_poly(&f).pretty()));
            out.insert("p_choice".into(), to_value(&cfg.p_choice));
            report(Value::Object(out), true)
        }
        QCmd::Laplace { expr } => {
            let f = parse_expr(expr, cfg)?;
            let calc = calculus(cfg)?;
            let a = calc.laplacian(&f);
            let b = calc.laplacian_alt(&f);
            report(
                json!({
                    "laplacian": poly_json(&a),
                    "orderings_agree": a == b,
                    "tilde_laplacian": poly_json(&calc.tilde_laplacian(&f)),
                    "p_choice": to_value(&cfg.p_choice),
                }),
                a == b,
            )
        }
        QCmd::Harmonic { l, m, n, k } => {
            let idx = HarmonicIndex::new(*l, *m, *n, *k);
            idx.check().map_err(|e| CliError::Precondition(e.to_string()))?;
            cfg.check_degree(idx.degree(), "harmonic")?;
            let f = basis_element(&idx).map_err(|e| CliError::Precondition(e.to_string()))?;
            let calc = calculus(cfg)?;
            let x = basis_element(&HarmonicIndex::new(*l, *m, *n, 0)).expect("checked index");
            let harmonic = calc.laplacian(&x).is_zero();
            report(json!({"index": to_value(&idx), "element": poly_json(&f), "harmonic": harmonic}), harmonic)
        }
        QCmd::Eigen { k, l } => {
            if *k < 0 || *l < 0 {
                return Err(CliError::Precondition("k and l must be nonnegative".into()));
            }
            cfg.check_degree(2 * k + l, "det^k X^l")?;
            let rep = calculus(cfg)?.eigen_report(*k, *l);
            let ok = rep.tilde_eigen_holds && rep.delta_eigen_holds && rep.harmonic;
            report(to_value(&rep), ok)
        }
        QCmd::Table => {
            let t = derive_table(cfg.p_choice).map_err(|e| CliError::Precondition(e.to_string()))?;
            let checks = verify_oracles(&t);
            let ok = checks.iter().all(|c| c.holds);
            report(json!({"table": t.to_json(), "oracles": to_value(&checks)}), ok)
        }
        QCmd::Penrose { file } => {
            let cf: CechFile = serde_json::from_value(read_json(file)?).map_err(|e| CliError::Schema(e.to_string()))?;
            let terms: Vec<(CechMonomial, QLaurent)> =
                cf.terms.into_iter().map(|t| (CechMonomial { x: t.x, y: t.y, z: t.z, w: t.w }, t.coef)).collect();
            for (m, _) in &terms {
                cfg.check_degree((m.x + m.y) as i64, "cocycle term")?;
            }
            let f = penrose_scalar(&terms).map_err(|e| CliError::Schema(e.to_string()))?;
            let harmonic = calculus(cfg)?.laplacian(&f).is_zero();
            report(json!({"image": poly_json(&f), "harmonic": harmonic}), harmonic)
        }
    }
}

fn run_inst(cmd: &InstCmd, cfg: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        InstCmd::Verify { file } => {
            let d = read_complex(file)?;
            let ids: Vec<_> = [Chart::I, Chart::J].iter().map(|&ch| verify_ids(&d, ch)).collect();
            let grid = evaluation_grid();
            let mut bpaq_ok = true;
            for p in &grid {
                for q in &grid {
                    bpaq_ok &= beta_p_alpha_q(&d, p, q).1.holds;
                }
            }
            let xi = xi_leading(&d);
            let ok = ids.iter().all(|r| r.holds) && bpaq_ok && xi.leading_is_det;
            report(
                json!({
                    "identities": to_value(&ids),
                    "pencil_relation_holds": bpaq_ok,
                    "pencil_pairs": grid.len() * grid.len(),
                    "xi": to_value(&xi),
                }),
                ok,
            )
        }
        InstCmd::Curvature { file } => {
            let d = read_solution(file)?;
            let rep = curvature_asd(&d, &calculus(cfg)?);
            let ok = rep.all_asd && rep.matches_expected;
            report(to_value(&rep), ok)
        }
        InstCmd::Slices { file, dmax } => {
            cfg.check_degree(*dmax as i64, "slice")?;
            let d = read_solution(file)?;
            let reps: Vec<_> = evaluation_grid().iter().map(|p| beta_surjective_truncated(&d, p, *dmax)).collect();
            let ok = reps.iter().all(|r| {
                if r.stable_at_p {
                    r.surjective
                } else {
                    r.certificate.as_ref().is_some_and(|c| c.kills_image && c.character_respects_relations)
                }
            });
            let surjective_everywhere = reps.iter().all(|r| r.surjective);
            report(json!({"points": to_value(&reps), "surjective_everywhere": surjective_everywhere}), ok)
        }
    }
}

/// Parse arguments, run, and render: `(exit code, JSON text)`.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            let err = CliError::Usage(e.to_string().trim().to_string());
            return (2, pretty(&err.to_json()));
        }
    };
    let (code, value) = match run(&cli) {
        Ok(r) => (if r.ok { 0 } else { 1 }, r.value),
        Err(e) => (2, e.to_json()),
    };
    let text = pretty(&value);
    if let Some(path) = &cli.config.output {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            return (2, pretty(&CliError::Io(format!("{}: {e}", path.display())).to_json()));
        }
    }
    (code, text)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON renders")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integers() {
        assert_eq!(parse_half("1"), Ok(2));
        assert_eq!(parse_half("1/2"), Ok(1));
        assert_eq!(parse_half("-3/2"), Ok(-3));
        assert_eq!(parse_half("0.5"), Ok(1));
        assert_eq!(parse_half("-1.5"), Ok(-3));
        assert!(parse_half("1/3").is_err());
        assert!(parse_half("x").is_err());
    }

    #[test]
    fn degree_cap_is_enforced() {
        let (code, out) = main_with_args(["adhmq", "--degree-cap", "9", "q", "normalize", "x11"]);
        assert_eq!(code, 2);
        assert!(out.contains("precondition"));
        let (code, out) = main_with_args(["adhmq", "--degree-cap", "2", "q", "normalize", "x11^3"]);
        assert_eq!(code, 2);
        assert!(out.contains("above the cap"));
    }

    #[test]
    fn usage_errors_are_json() {
        let (code, out) = main_with_args(["adhmq", "q", "frobnicate"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
    }

    #[test]
    fn chern_example() {
        let (code, out) = main_with_args(["adhmq", "monad", "chern", "-r", "2", "-c", "1", "-k", "-1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["chi"], "-1");
    }
}
