//! `newform`: invariants, branching tables, zonal harmonics, L-factors,
//! Whittaker values and numerical verification from the command line.

mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use newform::branching::multiplicity_table;
use newform::harmonics::zonal;
use newform::invariants::{conductor_exponent, epsilon_factor, newform_dim, newform_ktype, oldform_dim_any};
use newform::repcore::parse_complex;
use newform::special::{l_factor, rs_l_factor, QuadratureSpec};
use newform::whittaker::{
    whittaker_gl2_closed, whittaker_gl2_jacquet, whittaker_propagate, GroupPoint, PropagateOptions,
};
use newform::zetaintegrals::verify::parse_space;
use newform::zetaintegrals::{verify_suite, Profile, Verdict, VerificationReport};
use newform::{Error, Repr};

use crate::config::CliConfig;

#[derive(Parser, Debug)]
#[command(name = "newform", version, about = "Archimedean newforms for GL(n) over R and C")]
struct Cli {
    /// Print JSON instead of text; `--json FILE` writes it to FILE.
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, default_missing_value = "-", value_name = "FILE")]
    json: Option<String>,
    /// Seed for Monte-Carlo integrals.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Node budget for multi-dimensional integrals.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Conductor exponent, newform K-type, epsilon factor and oldform dimensions.
    Invariants {
        descriptor: String,
        /// Largest degree in the oldform table (default c + 10).
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// Multiplicities of the K_{n-1}-spherical K-types.
    Branch {
        descriptor: String,
        /// Largest Howe degree (default c + 4).
        #[arg(long)]
        max_degree: Option<u64>,
    },
    /// The zonal harmonic P° on F^n of the given degree(s).
    Zonal {
        /// R or C.
        field: String,
        n: usize,
        /// `p` over R, `p,q` over C.
        degrees: String,
        /// Evaluate at a point, given as comma-separated entries.
        #[arg(long, allow_hyphen_values = true)]
        eval: Option<String>,
    },
    /// L(s, pi), or L(s, pi x pi') with `--twist`.
    Lfactor {
        descriptor: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Spherical representation pi'.
        #[arg(long)]
        twist: Option<String>,
    },
    /// W°(diag(y, 1)) at n = 2, or W°(diag(y_1, y_2, 1)) by propagation at n = 3.
    Whittaker {
        descriptor: String,
        /// Torus coordinate(s), comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
    },
    /// Run a verification profile; exits 1 if any check does not pass.
    Verify {
        #[arg(long)]
        profile: Option<String>,
        /// JSON configuration file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Record wall time in each report (makes output run-dependent).
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Closed,
    Jacquet,
    Propagate,
}

/// What a subcommand produced: text, the same content as JSON, and
/// whether every check passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

enum CliError {
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// `--json FILE` is accepted as a synonym of `--json=FILE` when `FILE`
/// ends in `.json`.
fn normalise_args(args: impl Iterator<Item = String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut args = args.peekable();
    while let Some(a) = args.next() {
        if a == "--json" {
            if let Some(next) = args.peek() {
                if next.ends_with(".json") {
                    out.push(format!("--json={}", args.next().expect("peeked")));
                    continue;
                }
            }
        }
        out.push(a);
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(normalise_args(std::env::args())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> std::io::Result<()> {
    match cli.json.as_deref() {
        None => {
            print!("{}", out.text);
            std::io::stdout().flush()
        }
        Some("-") => {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialise"));
            Ok(())
        }
        Some(path) => {
            let mut body = serde_json::to_string_pretty(&out.json).expect("JSON values serialise");
            body.push('\n');
            std::fs::write(path, body)?;
            print!("{}", out.text);
            std::io::stdout().flush()
        }
    }
}

fn parse_rep(text: &str) -> Result<Repr, CliError> {
    text.parse::<Repr>().map_err(|e| CliError::Usage(format!("{text:?}: {e}")))
}

fn parse_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',').map(|p| parse_complex(p.trim()).map_err(CliError::from)).collect()
}

fn format_real(x: f64) -> String {
    if x == 0.0 || (1e-4..1e6).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_complex(z: Complex64) -> String {
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => format_real(z.re),
        (true, false) => format!("{}i", format_real(z.im)),
        _ if z.im < 0.0 => format!("{} - {}i", format_real(z.re), format_real(-z.im)),
        _ => format!("{} + {}i", format_real(z.re), format_real(z.im)),
    }
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn big_json(n: &num_bigint::BigUint) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Invariants { descriptor, max_degree } => invariants(descriptor, *max_degree),
        Command::Branch { descriptor, max_degree } => branch(descriptor, *max_degree),
        Command::Zonal { field, n, degrees, eval } => zonal_cmd(field, *n, degrees, eval.as_deref()),
        Command::Lfactor { descriptor, s, twist } => lfactor(descriptor, s, twist.as_deref()),
        Command::Whittaker { descriptor, at, method } => whittaker(descriptor, at, *method),
        Command::Verify { profile, config, timings } => verify(cli, profile.as_deref(), config.as_ref(), *timings),
    }
}

fn invariants(descriptor: &str, max_degree: Option<u64>) -> Result<Output, CliError> {
    let rep = parse_rep(descriptor)?;
    let c = conductor_exponent(&rep);
    let tau = newform_ktype(&rep);
    let dim = newform_dim(&rep);
    let eps = epsilon_factor(&rep);
    let top = max_degree.unwrap_or(c + 10);
    let old: Vec<(u64, num_bigint::BigUint)> = (0..=top).map(|m| (m, oldform_dim_any(&rep, m))).collect();
    let mut text = String::new();
    text += &format!("representation   {rep}\n");
    text += &format!("conductor        c = {c}\n");
    text += &format!("newform K-type   {tau}\n");
    text += &format!("dim tau          {dim}\n");
    text += &format!("epsilon          i^-{c} = {eps}\n");
    text += "oldforms         m   dim\n";
    for (m, d) in &old {
        text += &format!("                 {m:<3} {d}\n");
    }
    let json = json!({
        "descriptor": rep.to_string(),
        "conductor": c,
        "newform_ktype": tau.entries(),
        "newform_dim": big_json(&dim),
        "epsilon": { "power_of_i": eps.power_of_i(), "value": eps.to_string() },
        "oldform_dims": old.iter().map(|(m, d)| json!({ "m": m, "dim": big_json(d) })).collect::<Vec<_>>(),
    });
    Ok(Output { text, json, ok: true })
}

fn branch(descriptor: &str, max_degree: Option<u64>) -> Result<Output, CliError> {
    let rep = parse_rep(descriptor)?;
    let top = max_degree.unwrap_or(conductor_exponent(&rep) + 4);
    let table = multiplicity_table(&rep, top)?;
    let mut text = format!("{rep}\ndegree  K-type{:width$}mult\n", "", width = 14);
    let mut rows = Vec::new();
    for (tau, mult) in &table {
        let deg = newform::invariants::howe_degree(tau);
        text += &format!("{deg:<7} {:<20}{mult}\n", tau.to_string());
        rows.push(json!({ "degree": deg, "ktype": tau.entries(), "mult": mult }));
    }
    Ok(Output { text, json: json!({ "descriptor": rep.to_string(), "table": rows }), ok: true })
}

fn zonal_cmd(field: &str, n: usize, degrees: &str, eval: Option<&str>) -> Result<Output, CliError> {
    let (field, n, degrees) = parse_space(&format!("{field} {n} {degrees}"))?;
    let p = zonal(field, n, degrees)?;
    let mut text = format!("{p}\n");
    let mut json = json!({ "field": field.symbol().to_string(), "n": n, "polynomial": p.to_string() });
    if let Some(point) = eval {
        let z = parse_list(point)?;
        let v = p.eval(&z)?;
        text += &format!("value at ({point}) = {}\n", format_complex(v));
        json["value"] = complex_json(v);
    }
    Ok(Output { text, json, ok: true })
}

fn lfactor(descriptor: &str, s: &str, twist: Option<&str>) -> Result<Output, CliError> {
    let rep = parse_rep(descriptor)?;
    let s = parse_complex(s)?;
    let (v, label) = match twist {
        Some(t) => {
            let sph = parse_rep(t)?;
            (rs_l_factor(&rep, &sph, s)?, format!("L(s, {rep} x {sph})"))
        }
        None => (l_factor(&rep, s)?, format!("L(s, {rep})")),
    };
    let text = format!("{label} at s = {}\n  = {}\n", format_complex(s), format_complex(v));
    let json = json!({ "descriptor": rep.to_string(), "twist": twist, "s": complex_json(s), "value": complex_json(v) });
    Ok(Output { text, json, ok: true })
}

fn whittaker(descriptor: &str, at: &str, method: Method) -> Result<Output, CliError> {
    let rep = parse_rep(descriptor)?;
    let ys = parse_list(at)?;
    let field = rep.field();
    let (value, error) = match method {
        Method::Closed | Method::Jacquet => {
            if rep.rank() != 2 || ys.len() != 1 {
                return Err(CliError::Usage(
                    "closed and jacquet evaluate W°(diag(y, 1)) at n = 2; pass a single y with --at".into(),
                ));
            }
            if method == Method::Closed {
                (whittaker_gl2_closed(&rep, ys[0])?, 0.0)
            } else {
                let g = GroupPoint::diag(field, &[ys[0], Complex64::new(1.0, 0.0)])?;
                let e = whittaker_gl2_jacquet(&rep, &g, &QuadratureSpec::de(1e-10))?;
                (e.value, e.error)
            }
        }
        Method::Propagate => {
            if ys.len() + 1 != rep.rank() {
                return Err(CliError::Usage(format!(
                    "propagation at n = {} needs {} coordinates",
                    rep.rank(),
                    rep.rank() - 1
                )));
            }
            let g = GroupPoint::diag(field, &ys)?;
            let e = whittaker_propagate(&rep, &g, &PropagateOptions::default())?;
            (e.value, e.error)
        }
    };
    let coords: Vec<String> = ys.iter().map(|&z| format_complex(z)).collect();
    let text = format!("W°(diag({}, 1)) = {}  (error {error:.1e})\n", coords.join(", "), format_complex(value));
    let json = json!({
        "descriptor": rep.to_string(),
        "at": ys.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
        "method": format!("{method:?}").to_lowercase(),
        "value": complex_json(value),
        "error": error,
    });
    Ok(Output { text, json, ok: true })
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    profile: Option<&'a str>,
    passed: usize,
    total: usize,
    reports: &'a [VerificationReport],
}

fn verify(cli: &Cli, profile: Option<&str>, config: Option<&PathBuf>, timings: bool) -> Result<Output, CliError> {
    let file = match config {
        Some(path) => {
            let body = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            CliConfig::from_json(&body).map_err(CliError::Usage)?
        }
        None => CliConfig::default(),
    };
    let mut profile_name = profile.map(str::to_string).or_else(|| file.profile.clone());
    if profile_name.is_none() && file.checks.is_none() {
        profile_name = Some("fast".to_string());
    }
    let profile: Option<Profile> = profile_name.as_deref().map(str::parse).transpose()?;
    let mut suite = file.build(profile);
    if let Some(seed) = cli.seed {
        suite.seed = seed;
    }
    if let Some(budget) = cli.budget {
        suite.budget = Some(budget);
    }
    suite.timings = timings;
    let reports = verify_suite(&suite);
    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    for r in &reports {
        let tag = match r.verdict {
            Verdict::Pass => "PASS ",
            Verdict::Fail => "FAIL ",
            Verdict::Error => "ERROR",
        };
        let pair = match &r.partner {
            Some(p) => format!("{} x {}", r.descriptor, p),
            None => r.descriptor.clone(),
        };
        text += &format!("{tag} {:<18} {pair}", r.identity.name());
        match &r.error {
            Some(e) => text += &format!("  ({e})"),
            None => text += &format!("  [{} points, worst {:.2e} of tolerance]", r.points.len(), r.worst_ratio()),
        }
        if let Some(t) = r.seconds {
            text += &format!("  {t:.2}s");
        }
        text.push('\n');
    }
    text += &format!("{passed}/{} checks passed\n", reports.len());
    let out = VerifyOutput { profile: profile_name.as_deref(), passed, total: reports.len(), reports: &reports };
    let json = serde_json::to_value(&out).expect("reports serialise");
    Ok(Output { text, json, ok: passed == reports.len() })
}
