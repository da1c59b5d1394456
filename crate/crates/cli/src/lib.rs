//! Command dispatch for the `matroid-charset` binary. Every command produces a
//! JSON `CommandResult`; the binary prints it and exits with its code.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use matroid_charset::algebra::{parse_rational, FieldElement, GaloisField, IntPolyRing};
use matroid_charset::brylawski::{brylawski_matrix, gb_search, is_gordon_brylawski, verify_brylawski_rigidity, GbCandidates};
use matroid_charset::density::{consecutive_primes, empirical_density, greedy_density_set, primes_in_range, theoretical_density};
use matroid_charset::eqsys::{
    bad_set_certificate, propagate_symbolic, search_solutions, verify_assignment, witness_finite_all,
    witness_root_of_unity, EquationSystem, Family, VerificationReport,
};
use matroid_charset::flock::{
    check_axioms, check_duality, check_stretch, dual_flock, stretch_flock, support_matroid, sweep, valuation_flock,
    AxiomReport, CheckOptions, Flock, Window, DEFAULT_POINT_BUDGET,
};
use matroid_charset::linalg::RationalMatrix;
use matroid_charset::matroid::{matroid_from_subspace, Matroid, DEFAULT_ENUMERATION_LIMIT};
use matroid_charset::serial::{
    density_json, element_from_json, element_to_json, gb_report_json, greedy_json, rational_json, rigidity_json,
    window_entry_json, window_json, AssignmentJson, FieldJson, FlockJson, MatrixJson, MatroidJson, SystemJson,
    TypedAssignment, SCHEMA_VERSION,
};
use matroid_charset::{Error, Rationals, Subspace};

#[derive(Parser, Debug)]
#[command(name = "matroid-charset", version, about = "Exact constructions around characteristic sets of matroids")]
pub struct Cli {
    /// Write the result to FILE instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Worker thread cap.
    #[arg(long, global = true, env = "MATROID_CHARSET_THREADS")]
    pub threads: Option<usize>,
    /// Seed for every sampled choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Gordon-Brylawski predicate and search.
    #[command(subcommand)]
    Gb(GbCommand),
    /// Brylawski matrices and the rigidity checks.
    #[command(subcommand)]
    Brylawski(BrylawskiCommand),
    /// Equation systems.
    #[command(subcommand)]
    Eqsys(EqsysCommand),
    /// Linear and Frobenius flocks.
    #[command(subcommand)]
    Flock(FlockCommand),
    /// Matroids from bases or matrices.
    #[command(subcommand)]
    Matroid(MatroidCommand),
    /// Prime densities.
    #[command(subcommand)]
    Density(DensityCommand),
    /// Finite fields.
    #[command(subcommand)]
    Field(FieldCommand),
}

#[derive(Subcommand, Debug)]
pub enum GbCommand {
    /// Decide the predicate for one prime set.
    Check {
        #[arg(long, value_delimiter = ',', conflicts_with = "consecutive")]
        primes: Option<Vec<u64>>,
        #[arg(long, requires_all = ["start", "count"])]
        consecutive: bool,
        #[arg(long)]
        start: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Scan candidate prime sets and keep those satisfying the predicate.
    Search {
        /// Set size k.
        #[arg(long)]
        size: usize,
        /// Scan all k-subsets of the primes below N.
        #[arg(long, conflicts_with = "consecutive_from")]
        below: Option<u64>,
        /// Scan windows of k consecutive primes from S.
        #[arg(long, requires = "windows")]
        consecutive_from: Option<u64>,
        #[arg(long)]
        windows: Option<usize>,
        /// Maximum number of candidates scanned.
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum BrylawskiCommand {
    /// Build the integer matrix for a prime set.
    Matrix {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Check the circuits and the final minor modulo a prime.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long = "mod")]
        modulus: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    /// phi_n, finite, cofinite, cofinite_cofinite, finite_all, root_of_unity.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    /// System JSON file, instead of a family.
    #[arg(long, conflicts_with = "family")]
    pub system: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum EqsysCommand {
    /// Build a system and render its equations.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Report side-condition findings.
    Validate {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Propagate symbolically over Z[t].
    Propagate {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Check that all pairwise differences stay nonzero modulo each prime.
    Certificate {
        #[command(flatten)]
        family: FamilyArgs,
        /// Primes to test the differences against.
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
    },
    /// Enumerate solutions over GF(p^m).
    Search {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Maximum number of free-variable tuples.
        #[arg(long, default_value_t = 10_000_000)]
        limit: u128,
        #[arg(long)]
        max_results: Option<usize>,
    },
    /// Construct and verify a solution over a skew polynomial ring.
    Witness {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        p: u64,
        /// Extension degree for finite_all; chosen automatically when absent.
        #[arg(long)]
        m: Option<usize>,
        /// α for finite_all as little-endian coefficients.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u64>>,
    },
    /// Verify an assignment file against a system.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        assignment: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    /// Window [−r, r]^E.
    #[arg(long, allow_hyphen_values = true)]
    pub radius: Option<i64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "upper")]
    pub lower: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub upper: Option<Vec<i64>>,
}

#[derive(Subcommand, Debug)]
pub enum FlockCommand {
    /// Valuation flock of a rational matrix.
    Build {
        /// Rational matrix JSON file.
        #[arg(long, conflicts_with = "rows")]
        matrix: Option<PathBuf>,
        /// Inline rows, e.g. "1,0,1,1;0,1,1,2".
        #[arg(long, allow_hyphen_values = true)]
        rows: Option<String>,
        #[arg(long)]
        p: u64,
        /// Read the subspaces in GF(p^k).
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Evaluate a flock at one point.
    At {
        #[arg(long)]
        flock: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        alpha: Vec<i64>,
    },
    /// Stretch a flock by a factor m.
    Stretch {
        #[arg(long)]
        flock: PathBuf,
        #[arg(long)]
        m: u64,
        /// Exponent e' of ψ = F^e'.
        #[arg(long, allow_hyphen_values = true)]
        psi: Option<i64>,
    },
    /// Dual flock.
    Dual {
        #[arg(long)]
        flock: PathBuf,
    },
    /// Check the flock axioms on a window.
    Check {
        #[arg(long)]
        flock: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        /// Sampled subsets for LF1' on large ground sets.
        #[arg(long, default_value_t = 32)]
        samples: usize,
        /// Also check duality on the window.
        #[arg(long)]
        duality: bool,
    },
    /// Support matroid over a window.
    Support {
        #[arg(long)]
        flock: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Evaluate every point of a window.
    Sweep {
        #[arg(long)]
        flock: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum MatroidCommand {
    /// Matroid of a matrix file.
    FromMatrix {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Uniform matroid U(r,n).
    Uniform {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        size: usize,
    },
    /// Dual matroid.
    Dual {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Delete and contract labelled elements.
    Minor {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        contract: Vec<String>,
    },
    /// List all circuits.
    Circuits {
        #[arg(long)]
        matroid: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum DensityCommand {
    /// Count primes below N in the congruence set.
    Empirical {
        #[arg(long, value_delimiter = ',', default_values_t = Vec::<u64>::new())]
        moduli: Vec<u64>,
        #[arg(long)]
        limit: u64,
    },
    /// Product of (q−2)/(q−1) over the moduli.
    Theoretical {
        #[arg(long, value_delimiter = ',', default_values_t = Vec::<u64>::new())]
        moduli: Vec<u64>,
    },
    /// Prime set whose density is within ε of α.
    Greedy {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        eps: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FieldCommand {
    /// Construct GF(p^m).
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Primitive root of unity of a given order.
    Root {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        order: u64,
    },
}

/// Result status of a command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation-report",
            Status::Error => "error",
        }
    }
}

/// Everything the binary needs to emit one result.
#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub exit_code: i32,
    pub out: Option<PathBuf>,
    pub pretty: bool,
    /// Help or version text, printed as is.
    pub text: Option<String>,
}

impl Outcome {
    pub fn status(&self) -> &str {
        self.result["status"].as_str().unwrap_or("error")
    }

    pub fn payload(&self) -> &Value {
        &self.result["payload"]
    }

    pub fn render(&self) -> String {
        if self.pretty {
            serde_json::to_string_pretty(&self.result).expect("serializable")
        } else {
            serde_json::to_string(&self.result).expect("serializable")
        }
    }

    /// Prints or writes the result.
    pub fn emit(&self) -> std::io::Result<()> {
        let text = match &self.text {
            Some(t) => t.trim_end().to_string(),
            None => self.render(),
        };
        match &self.out {
            Some(path) => std::fs::write(path, text + "\n"),
            None => {
                use std::io::Write;
                let mut out = std::io::stdout().lock();
                match writeln!(out, "{text}") {
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    r => r,
                }
            }
        }
    }
}

/// Command failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit_code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure { code: e.code().to_string(), message: e.to_string(), exit_code }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: "usage_error".into(), message: message.into(), exit_code: 2 }
}

fn input_error(path: &Path, message: impl std::fmt::Display) -> Failure {
    Failure { code: "parse_error".into(), message: format!("{}: {message}", path.display()), exit_code: 2 }
}

type CmdResult = std::result::Result<(Status, Value), Failure>;

fn wrap(command: &[String], status: Status, payload: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "status": status.as_str(),
        "payload": payload,
    })
}

/// Parses argv (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    result: wrap(&echo, Status::Ok, json!({ "text": e.to_string() })),
                    exit_code: 0,
                    out: None,
                    pretty: true,
                    text: Some(e.to_string()),
                };
            }
            let payload = json!({ "code": "usage_error", "message": e.to_string() });
            return Outcome { result: wrap(&echo, Status::Error, payload), exit_code: 2, out: None, pretty: false, text: None };
        }
    };
    let outcome = match cli.threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(usage(format!("cannot build thread pool: {e}"))),
        },
        _ => dispatch(&cli),
    };
    let (result, exit_code) = match outcome {
        Ok((status, payload)) => (wrap(&echo, status, payload), if status == Status::Ok { 0 } else { 1 }),
        Err(f) => (wrap(&echo, Status::Error, json!({ "code": f.code, "message": f.message })), f.exit_code),
    };
    Outcome { result, exit_code, out: cli.out.clone(), pretty: cli.pretty, text: None }
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Gb(c) => gb(c),
        Command::Brylawski(c) => brylawski(c),
        Command::Eqsys(c) => eqsys(c),
        Command::Flock(c) => flock(c, cli.seed),
        Command::Matroid(c) => matroid(c),
        Command::Density(c) => density(c),
        Command::Field(c) => field(c),
    }
}

fn ok(v: Value) -> CmdResult {
    Ok((Status::Ok, v))
}

fn verdict(passed: bool, v: Value) -> CmdResult {
    Ok((if passed { Status::Ok } else { Status::Violation }, v))
}

/// Reads a JSON object, unwrapping the payload of a CommandResult and then
/// the object nested under `key` when present.
fn read_json_in<T: serde::de::DeserializeOwned>(path: &Path, key: Option<&str>) -> std::result::Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| input_error(path, e))?;
    let mut v: Value = serde_json::from_str(&text).map_err(|e| input_error(path, e))?;
    if v.get("schema_version").is_some() && v.get("payload").is_some() {
        v = v["payload"].take();
    }
    if let Some(k) = key {
        if v.get(k).is_some_and(Value::is_object) {
            v = v[k].take();
        }
    }
    serde_json::from_value(v).map_err(|e| input_error(path, e))
}

// ---- gb / brylawski ----

fn gb(c: &GbCommand) -> CmdResult {
    match c {
        GbCommand::Check { primes, consecutive, start, count } => {
            let (set, confirmed) = if *consecutive {
                let (start, count) = (start.unwrap_or(2), count.unwrap_or(1));
                let set = consecutive_primes(start, count);
                if set.len() != count {
                    return Err(usage("not enough primes below 2^64"));
                }
                let confirmed = match (set.first(), set.last()) {
                    (Some(&a), Some(&b)) => primes_in_range(a, b + 1) == set && primes_in_range(start, a).is_empty(),
                    _ => true,
                };
                (set, Some(confirmed))
            } else {
                (primes.clone().ok_or_else(|| usage("give --primes or --consecutive"))?, None)
            };
            let r = is_gordon_brylawski(&set)?;
            let mut payload = gb_report_json(&r);
            if let Some(c) = confirmed {
                payload["consecutive_confirmed"] = json!(c);
            }
            verdict(r.verdict, payload)
        }
        GbCommand::Search { size, below, consecutive_from, windows, limit } => {
            let cand = match (below, consecutive_from) {
                (Some(b), None) => GbCandidates::Subsets { size: *size, below: *b },
                (None, Some(s)) => GbCandidates::Consecutive { start: *s, size: *size, windows: windows.unwrap_or(1) },
                _ => return Err(usage("give --below or --consecutive-from")),
            };
            let found = gb_search(&cand, *limit)?;
            ok(json!({
                "found": found.iter().map(gb_report_json).collect::<Vec<_>>(),
                "count": found.len(),
            }))
        }
    }
}

fn brylawski(c: &BrylawskiCommand) -> CmdResult {
    match c {
        BrylawskiCommand::Matrix { primes } => {
            let m = brylawski_matrix(primes)?;
            let mut payload = serde_json::to_value(MatrixJson::from_brylawski(&m)).expect("serializable");
            payload["n"] = json!(m.b.n.to_string());
            payload["s"] = json!(m.b.s);
            payload["b"] = json!(m.b.values.iter().map(|b| b.to_string()).collect::<Vec<_>>());
            ok(payload)
        }
        BrylawskiCommand::Verify { primes, modulus } => {
            let r = verify_brylawski_rigidity(primes, *modulus)?;
            verdict(r.passed, rigidity_json(&r))
        }
    }
}

// ---- eqsys ----

fn family(a: &FamilyArgs) -> std::result::Result<EquationSystem, Failure> {
    if let Some(path) = &a.system {
        let j: SystemJson = read_json_in(path, Some("system"))?;
        return Ok(j.to_system()?);
    }
    let name = a.family.as_deref().ok_or_else(|| usage("give --family or --system"))?;
    let n = || a.n.ok_or_else(|| usage(format!("family {name} needs --n")));
    let primes = || a.primes.clone().ok_or_else(|| usage(format!("family {name} needs --primes")));
    let f = match name {
        "phi_n" => Family::PhiN(n()?),
        "finite" => Family::Finite(primes()?),
        "cofinite" => Family::Cofinite(primes()?),
        "cofinite_cofinite" => Family::CofiniteCofinite(primes()?),
        "finite_all" => Family::FiniteAll(primes()?),
        "root_of_unity" => Family::RootOfUnity(n()?),
        other => return Err(usage(format!("unknown family {other}"))),
    };
    Ok(f.build()?)
}

fn system_payload(s: &EquationSystem) -> Value {
    json!({
        "system": SystemJson::from_system(s),
        "rendered": s.equations().iter().map(|e| s.render(e)).collect::<Vec<_>>(),
        "findings": findings_json(s),
    })
}

fn findings_json(s: &EquationSystem) -> Value {
    json!(s
        .validate()
        .iter()
        .map(|f| json!({ "equation": f.equation, "text": s.render(&s.equations()[f.equation]), "message": f.message }))
        .collect::<Vec<_>>())
}

fn verification_json(r: &VerificationReport) -> Value {
    json!({
        "accepted": r.accepted,
        "violated": r.violated.iter().map(|v| json!({ "index": v.index, "text": v.text })).collect::<Vec<_>>(),
        "collisions": r.collisions,
    })
}

fn eqsys(c: &EqsysCommand) -> CmdResult {
    match c {
        EqsysCommand::Build { family: f } => ok(system_payload(&family(f)?)),
        EqsysCommand::Validate { family: f } => {
            let s = family(f)?;
            let clean = s.validate().is_empty();
            verdict(clean, json!({ "findings": findings_json(&s), "valid": clean }))
        }
        EqsysCommand::Propagate { family: f } => {
            let s = family(f)?;
            let values = propagate_symbolic(&s)?;
            let map: serde_json::Map<String, Value> =
                values.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
            ok(json!({ "values": map, "assignment": AssignmentJson::int_poly(&values) }))
        }
        EqsysCommand::Certificate { family: f, moduli } => {
            let s = family(f)?;
            let cert = bad_set_certificate(&s, moduli)?;
            let all = cert.verdicts.iter().all(|v| v.all_nonzero);
            verdict(
                all,
                json!({
                    "differences": cert.differences.len(),
                    "degree_bound": cert.degree_bound.to_string(),
                    "verdicts": cert.verdicts.iter().map(|v| json!({
                        "prime": v.prime,
                        "all_nonzero": v.all_nonzero,
                        "first_vanishing": v.first_vanishing,
                    })).collect::<Vec<_>>(),
                }),
            )
        }
        EqsysCommand::Search { family: f, p, m, limit, max_results } => {
            let s = family(f)?;
            let field = GaloisField::new(*p, *m)?;
            let sols = search_solutions(&s, &field, *limit, *max_results)?;
            ok(json!({
                "field": FieldJson::from_field(&field),
                "count": sols.len(),
                "solutions": sols.iter().map(|a| AssignmentJson::field(&field, a)).collect::<Vec<_>>(),
            }))
        }
        EqsysCommand::Witness { family: f, p, m, alpha } => {
            let name = f.family.as_deref().ok_or_else(|| usage("give --family finite_all or root_of_unity"))?;
            let w = match name {
                "finite_all" => {
                    let primes = f.primes.clone().ok_or_else(|| usage("finite_all needs --primes"))?;
                    let n = matroid_charset::eqsys::prime_product(&primes)?;
                    let degree = m.unwrap_or_else(|| matroid_charset::eqsys::finite_all_degree(n));
                    let field = GaloisField::new(*p, degree)?;
                    let a: Option<FieldElement> = match alpha {
                        Some(c) => {
                            let text: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                            Some(element_from_json(&field, &text)?)
                        }
                        None => None,
                    };
                    witness_finite_all(&primes, &field, a)?
                }
                "root_of_unity" => {
                    let n = f.n.ok_or_else(|| usage("root_of_unity needs --n"))?;
                    witness_root_of_unity(n, *p)?
                }
                other => return Err(usage(format!("no witness construction for family {other}"))),
            };
            let report = verify_assignment(&w.ring, &w.system, &w.assignment)?;
            verdict(
                report.accepted,
                json!({
                    "system": SystemJson::from_system(&w.system),
                    "field": FieldJson::from_field(w.ring.field()),
                    "assignment": AssignmentJson::skew(w.ring.field(), &w.assignment),
                    "verification": verification_json(&report),
                }),
            )
        }
        EqsysCommand::Verify { family: f, assignment } => {
            let s = family(f)?;
            let a: AssignmentJson = read_json_in(assignment, Some("assignment"))?;
            let report = match a.parse()? {
                TypedAssignment::Field(field, values) => verify_assignment(&field, &s, &values)?,
                TypedAssignment::Skew(field, values) => {
                    verify_assignment(&matroid_charset::SkewPolyRing::new(field), &s, &values)?
                }
                TypedAssignment::IntPoly(values) => verify_assignment(&IntPolyRing, &s, &values)?,
            };
            verdict(report.accepted, verification_json(&report))
        }
    }
}

// ---- flock ----

fn parse_rows(text: &str) -> std::result::Result<RationalMatrix, Failure> {
    let rows: Vec<Vec<_>> = text
        .split(';')
        .map(|r| r.split(',').map(parse_rational).collect::<matroid_charset::Result<Vec<_>>>())
        .collect::<matroid_charset::Result<_>>()?;
    let ncols = rows.first().map_or(0, |r| r.len());
    Ok(RationalMatrix::new(ncols, rows)?)
}

fn load_flock(path: &Path) -> std::result::Result<Flock, Failure> {
    let j: FlockJson = read_json_in(path, Some("flock"))?;
    Ok(j.to_flock()?)
}

fn window_for(f: &Flock, w: &WindowArgs) -> std::result::Result<Window, Failure> {
    let n = f.ground().len();
    match (&w.radius, &w.lower, &w.upper) {
        (Some(r), None, None) => Ok(Window::cube(n, -r, *r)?),
        (None, Some(lo), Some(hi)) => Ok(Window::new(lo.clone(), hi.clone())?),
        (None, None, None) => Ok(f.default_window(DEFAULT_POINT_BUDGET)),
        _ => Err(usage("give either --radius or --lower/--upper")),
    }
}

fn flock_payload(f: &Flock) -> Value {
    json!({
        "flock": FlockJson::from_flock(f),
        "dim": f.dim(),
        "automorphism": f.automorphism(),
        "field": FieldJson::from_field(f.field()),
    })
}

fn axiom_json(r: &AxiomReport) -> Value {
    json!({
        "window": window_json(&r.window),
        "lf1_checks": r.lf1_checks,
        "lf2_checks": r.lf2_checks,
        "lf1_prime_checks": r.lf1_prime_checks,
        "lf1_prime_subsets": r.lf1_prime_subsets,
        "skipped": r.skipped,
        "violations": r.violations.iter().map(|v| json!({ "axiom": v.axiom, "alpha": v.alpha, "detail": v.detail })).collect::<Vec<_>>(),
    })
}

fn flock(c: &FlockCommand, seed: u64) -> CmdResult {
    match c {
        FlockCommand::Build { matrix, rows, p, degree } => {
            let (a, ground) = match (matrix, rows) {
                (Some(path), None) => {
                    let j: MatrixJson = read_json_in(path, Some("basis"))?;
                    (j.to_rational()?, j.ground.clone())
                }
                (None, Some(text)) => {
                    let a = parse_rows(text)?;
                    let ground = (1..=a.ncols()).map(|i| i.to_string()).collect();
                    (a, ground)
                }
                _ => return Err(usage("give --matrix or --rows")),
            };
            let mut f = valuation_flock(a, ground, *p)?;
            if let Some(k) = degree {
                f = f.base_change(&GaloisField::new(*p, *k)?)?;
            }
            ok(flock_payload(&f))
        }
        FlockCommand::At { flock, alpha } => {
            let f = load_flock(flock)?;
            let v = f.at(alpha)?;
            let m = matroid_from_subspace(&v, DEFAULT_ENUMERATION_LIMIT)?;
            ok(json!({ "alpha": alpha, "basis": MatrixJson::from_subspace(&v), "bases": m.basis_labels() }))
        }
        FlockCommand::Stretch { flock, m, psi } => ok(flock_payload(&stretch_flock(&load_flock(flock)?, *m, *psi)?)),
        FlockCommand::Dual { flock } => ok(flock_payload(&dual_flock(&load_flock(flock)?))),
        FlockCommand::Check { flock, window, samples, duality } => {
            let f = load_flock(flock)?;
            let w = window_for(&f, window)?;
            let opts = CheckOptions { lf1_prime_samples: *samples, seed };
            let axioms = check_axioms(&f, &w, &opts)?;
            let mut passed = axioms.ok();
            let mut payload = json!({ "axioms": axiom_json(&axioms) });
            if f.kind_name() == "stretched" {
                let r = check_stretch(&f, &w)?;
                passed &= r.ok();
                payload["stretch"] = json!({
                    "identity_failures": r.identity_failures,
                    "dimension_failures": r.dimension_failures,
                    "deletion_inequality_failures": r.deletion_failures,
                    "contraction_inequality_failures": r.contraction_failures,
                    "identity_checks": r.identity_checks,
                    "inequality_checks": r.inequality_checks,
                });
            }
            if *duality {
                let r = check_duality(&f, &w)?;
                passed &= r.ok();
                payload["duality"] = json!({
                    "points": r.points,
                    "matroid_failures": r.matroid_failures,
                    "involution_failures": r.involution_failures,
                });
            }
            payload["passed"] = json!(passed);
            verdict(passed, payload)
        }
        FlockCommand::Support { flock, window } => {
            let f = load_flock(flock)?;
            let w = window_for(&f, window)?;
            let m = support_matroid(&f, &w)?;
            ok(json!({
                "matroid": MatroidJson::from_matroid(&m),
                "window": window_json(&w),
                "caveat": "bases collected over the finite window only",
            }))
        }
        FlockCommand::Sweep { flock, window } => {
            let f = load_flock(flock)?;
            let w = window_for(&f, window)?;
            let entries = sweep(&f, &w)?;
            ok(json!({ "window": window_json(&w), "entries": entries.iter().map(window_entry_json).collect::<Vec<_>>() }))
        }
    }
}

// ---- matroid ----

fn load_matroid(path: &Path) -> std::result::Result<Matroid, Failure> {
    let j: MatroidJson = read_json_in(path, Some("matroid"))?;
    Ok(j.to_matroid()?)
}

fn matroid(c: &MatroidCommand) -> CmdResult {
    let out = |m: &Matroid| ok(serde_json::to_value(MatroidJson::from_matroid(m)).expect("serializable"));
    match c {
        MatroidCommand::FromMatrix { matrix } => {
            let j: MatrixJson = read_json_in(matrix, Some("basis"))?;
            let m = if j.is_rational() {
                let a = j.to_rational()?;
                let v = Subspace::new(Rationals, j.ground.clone(), a.rows())?;
                matroid_from_subspace(&v, DEFAULT_ENUMERATION_LIMIT)?
            } else {
                matroid_from_subspace(&j.to_subspace()?, DEFAULT_ENUMERATION_LIMIT)?
            };
            out(&m)
        }
        MatroidCommand::Uniform { rank, size } => {
            if rank > size || *size > 63 {
                return Err(usage("need rank ≤ size ≤ 63"));
            }
            out(&Matroid::uniform(*rank, *size))
        }
        MatroidCommand::Dual { matroid } => out(&load_matroid(matroid)?.dual()),
        MatroidCommand::Minor { matroid, delete, contract } => out(&load_matroid(matroid)?.minor(delete, contract)?),
        MatroidCommand::Circuits { matroid } => {
            let m = load_matroid(matroid)?;
            let c = m.circuits()?;
            ok(json!({ "circuits": c.iter().map(|&b| m.labels(b)).collect::<Vec<_>>() }))
        }
    }
}

// ---- density / field ----

fn density(c: &DensityCommand) -> CmdResult {
    match c {
        DensityCommand::Empirical { moduli, limit } => ok(density_json(&empirical_density(moduli, *limit)?)),
        DensityCommand::Theoretical { moduli } => {
            let d = theoretical_density(moduli)?;
            ok(json!({ "moduli": moduli, "density": rational_json(&d, 6) }))
        }
        DensityCommand::Greedy { alpha, eps } => {
            let r = greedy_density_set(&parse_rational(alpha)?, &parse_rational(eps)?)?;
            ok(greedy_json(&r))
        }
    }
}

fn field(c: &FieldCommand) -> CmdResult {
    match c {
        FieldCommand::Construct { p, m } => {
            let f = GaloisField::new(*p, *m)?;
            ok(json!({ "field": FieldJson::from_field(&f), "order": f.order().to_string(), "modulus_text": f.modulus().to_string() }))
        }
        FieldCommand::Root { p, m, order } => {
            let f = GaloisField::new(*p, *m)?;
            let x = f.primitive_root_of_unity(*order)?;
            ok(json!({ "field": FieldJson::from_field(&f), "root": element_to_json(&x), "text": f.display(&x) }))
        }
    }
}
