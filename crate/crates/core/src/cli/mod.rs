//! Command-line front end: `table`, `check` and `verify`.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 the input
//! could not be parsed or validated.

mod spec;

pub use spec::{format_spec, parse_functional, parse_spec, DeltaDecl, SequenceSpec, SpecError};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::Polynomial;
use crate::families::{catalog_samples, known_expansions, make_family, Family, FamilyError, Param};
use crate::functionals::same_moments;
use crate::numcheck::{rows_to_tsv, run_suite, VerifyTarget};
use crate::sheffer::{construct, verify_characterizations, Route, ShefferSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "umbral", version, about = "Exact Appell and Sheffer sequences from a functional")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print s_0..s_nmax as TSV rows `n<TAB>c_0,c_1,…`
    Table(TableArgs),
    /// Run the exact identity suite
    Check(CheckArgs),
    /// Run a numeric verification suite
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    /// egf, recurrence or delta_expansion
    #[arg(long, default_value = "egf", conflicts_with = "all_routes")]
    pub route: String,
    /// Build with every applicable route and add an agreement column
    #[arg(long)]
    pub all_routes: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// abel_plana, euler_rep, weierstrass, d_hermite or accelerator_moments
    #[arg(long)]
    pub target: String,
    /// Order d for the accelerator targets
    #[arg(long)]
    pub d: Option<usize>,
    /// Absolute tolerance (default 1e-10, or 1e-6 when d >= 2)
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A spec file or a catalog family with its parameters.
#[derive(Args, Debug)]
pub struct TargetArgs {
    #[arg(long, conflicts_with = "family")]
    pub spec: Option<PathBuf>,
    #[arg(long)]
    pub family: Option<String>,
    #[command(flatten)]
    pub params: FamilyParams,
    /// Highest index (default: the spec's nmax, or 10 for a family)
    #[arg(long)]
    pub nmax: Option<usize>,
}

/// Family parameters; lists are comma separated (`--w 1/2,1/2`).
#[derive(Args, Debug, Default)]
pub struct FamilyParams {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
}

impl FamilyParams {
    fn collect(&self) -> Result<BTreeMap<String, Param>, FamilyError> {
        let pairs = [
            ("a", &self.a),
            ("b", &self.b),
            ("beta", &self.beta),
            ("k", &self.k),
            ("omega", &self.omega),
            ("w", &self.w),
            ("x", &self.x),
            ("l", &self.l),
            ("m", &self.m),
            ("d", &self.d),
            ("alpha", &self.alpha),
            ("n", &self.n),
            ("lambda", &self.lambda),
        ];
        let mut out = BTreeMap::new();
        for (name, value) in pairs {
            if let Some(v) = value {
                out.insert(name.to_string(), Param::parse(v)?);
            }
        }
        Ok(out)
    }

    fn any(&self) -> bool {
        self.collect().map_or(true, |m| !m.is_empty())
    }
}

/// Why a command stopped early.
#[derive(Debug)]
enum Stop {
    Invalid(String),
    Failed(String),
}

fn invalid(e: impl ToString) -> Stop {
    Stop::Invalid(e.to_string())
}

struct Resolved {
    spec: ShefferSpec,
    nmax: usize,
    family: Option<Family>,
}

fn resolve(t: &TargetArgs) -> Result<Resolved, Stop> {
    match (&t.spec, &t.family) {
        (Some(path), None) => {
            if t.params.any() {
                return Err(invalid("family parameters need --family"));
            }
            let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            let parsed = parse_spec(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            let nmax = t.nmax.unwrap_or(parsed.nmax);
            let parsed = SequenceSpec { nmax, ..parsed };
            Ok(Resolved { spec: parsed.sheffer().map_err(invalid)?, nmax, family: None })
        }
        (None, Some(id)) => {
            let params = t.params.collect().map_err(invalid)?;
            let family = Family::from_params(id, &params).map_err(invalid)?;
            let fs = make_family(family.clone()).map_err(invalid)?;
            Ok(Resolved { spec: fs.spec, nmax: t.nmax.unwrap_or(10), family: Some(family) })
        }
        _ => Err(invalid("give exactly one of --spec FILE or --family ID")),
    }
}

fn routes_for(spec: &ShefferSpec) -> Vec<Route> {
    Route::ALL.into_iter().filter(|r| *r != Route::DeltaExpansion || spec.is_appell()).collect()
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Stop> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(invalid),
    }
}

fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> Result<(), Stop> {
    let r = resolve(&args.target)?;
    let mut text = String::new();
    if args.all_routes {
        let routes = routes_for(&r.spec);
        let built = routes
            .iter()
            .map(|route| construct(&r.spec, *route, r.nmax))
            .collect::<Result<Vec<_>, _>>()
            .map_err(invalid)?;
        let mut disagree = Vec::new();
        for n in 0..=r.nmax {
            let odd: Vec<&str> =
                routes.iter().zip(&built).filter(|(_, p)| p[n] != built[0][n]).map(|(r, _)| r.name()).collect();
            let status = if odd.is_empty() { "agree".to_string() } else { format!("disagree:{}", odd.join(",")) };
            if !odd.is_empty() {
                disagree.push(n);
            }
            text.push_str(&format!("{n}\t{}\t{status}\n", built[0][n].to_csv()));
        }
        emit(&args.out, &text, stdout)?;
        if !disagree.is_empty() {
            return Err(Stop::Failed(format!("routes disagree at n = {disagree:?}")));
        }
        return Ok(());
    }
    let route = Route::parse(&args.route).ok_or_else(|| invalid(format!("unknown route {:?}", args.route)))?;
    let polys = construct(&r.spec, route, r.nmax).map_err(invalid)?;
    for (n, p) in polys.iter().enumerate() {
        text.push_str(&format!("{n}\t{}\n", p.to_csv()));
    }
    emit(&args.out, &text, stdout)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

/// Reference functionals for equivalence reports.
fn references() -> Vec<Family> {
    let mut refs = vec![Family::Bernoulli, Family::Euler, Family::Hermite];
    for f in catalog_samples() {
        if !refs.contains(&f) {
            refs.push(f);
        }
    }
    refs
}

fn cmd_check(args: &CheckArgs, stdout: &mut dyn Write) -> Result<(), Stop> {
    let r = resolve(&args.target)?;
    let mut lines: Vec<(String, bool, String)> = Vec::new();
    let routes = routes_for(&r.spec);
    let built = routes
        .iter()
        .map(|route| construct(&r.spec, *route, r.nmax))
        .collect::<Result<Vec<_>, _>>()
        .map_err(invalid)?;
    let polys: &Vec<Polynomial> = &built[0];
    let agree = built.iter().all(|b| b == polys);
    let names: Vec<&str> = routes.iter().map(|r| r.name()).collect();
    lines.push(("route_agreement".into(), agree, names.join(",")));

    let report = verify_characterizations(&r.spec, polys).map_err(invalid)?;
    let mut ids: Vec<&str> = Vec::new();
    for e in &report.entries {
        if !ids.contains(&e.id) {
            ids.push(e.id);
        }
    }
    for id in ids {
        let entries: Vec<_> = report.entries.iter().filter(|e| e.id == id).collect();
        let detail = match entries.iter().find(|e| !e.pass) {
            Some(e) => format!("n={}: {}", e.n, e.witness),
            None => format!("{} checked", entries.len()),
        };
        lines.push((id.to_string(), entries.iter().all(|e| e.pass), detail));
    }

    let count = r.nmax + 1;
    let functional = r.spec.functional();
    if let Some(family) = &r.family {
        let fs = make_family(family.clone()).map_err(invalid)?;
        let ok = fs.indicator_matches(count).map_err(invalid)?;
        lines.push(("indicator".into(), ok, format!("order {count}")));
        match known_expansions(family, r.nmax) {
            Ok(expected) => lines.push(("closed_form".into(), &expected == polys, "difference expansion".into())),
            Err(FamilyError::UnsupportedFamily(_)) => {}
            Err(e) => return Err(invalid(e)),
        }
        if let Some(eq) = family.known_equivalent() {
            let other = eq.functional().map_err(invalid)?;
            let ok = same_moments(functional, &other, count).map_err(invalid)?;
            lines.push(("equivalent".into(), ok, eq.to_string()));
        }
    }
    for reference in references() {
        if r.family.as_ref() == Some(&reference) || r.family.as_ref().and_then(Family::known_equivalent) == Some(reference.clone()) {
            continue;
        }
        let other = reference.functional().map_err(invalid)?;
        // inexact or undefined moments simply do not match
        if same_moments(functional, &other, count).unwrap_or(false) {
            lines.push(("equivalent".into(), true, reference.to_string()));
        }
    }

    let mut text = String::new();
    for (id, ok, detail) in &lines {
        text.push_str(&format!("{id}\t{}\t{detail}\n", status(*ok)));
    }
    emit(&args.out, &text, stdout)?;
    let failed: Vec<&str> = lines.iter().filter(|l| !l.1).map(|l| l.0.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Stop::Failed(format!("failed: {}", failed.join(", "))))
    }
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Stop> {
    let target = VerifyTarget::parse(&args.target, args.d).map_err(invalid)?;
    let tol = args.tol.unwrap_or_else(|| target.default_tol());
    let rows = run_suite(target, tol).map_err(invalid)?;
    emit(&args.out, &rows_to_tsv(&rows), stdout)?;
    let worst = rows.iter().max_by(|a, b| a.abs_err.total_cmp(&b.abs_err));
    let failed = rows.iter().filter(|r| !r.pass).count();
    if let Some(w) = worst {
        let _ = writeln!(
            stderr,
            "{target}: {} rows, {failed} failed, max abs error {:.3e} at {} {}",
            rows.len(),
            w.abs_err,
            w.check_id,
            w.params
        );
        if failed > 0 {
            let why = w.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
            return Err(Stop::Failed(format!("worst offender {} {}{why}", w.check_id, w.params)));
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Table(a) => cmd_table(a, stdout),
        Command::Check(a) => cmd_check(a, stdout),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Stop::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INVALID
        }
        Err(Stop::Failed(msg)) => {
            let _ = writeln!(stderr, "{msg}");
            EXIT_FAILURE
        }
    }
}

/// Entry point for the binary.
pub fn main_entry() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
