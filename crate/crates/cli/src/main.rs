//! `segre`: exact Segre-variety computations from the command line.
//!
//! Every subcommand reads a variety file (`--input`), a polynomial, or the
//! bundled gallery, computes exactly (floats appear only in the numerical
//! probe), and prints either human-readable text or, with `--json`, a
//! machine-readable envelope `{command, input, result, timing_ms}`.
//!
//! Exit codes: 0 success, 1 failed gallery checks, 2 usage or input errors,
//! 3 computation budget exhausted (raise with --budget or SEGRE_BUDGET).

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use segre_core::cert::{cone_certificate, CertOptions, ConeCertificate};
use segre_core::corpus;
use segre_core::gb::{GbError, GbOptions};
use segre_core::order::MonomialOrder;
use segre_core::parse::{
    format_point, load_variety, parse_point, parse_rational_list, parse_real_expression,
    print_variety, Curve, ParseError, VarietyData,
};
use segre_core::poly::Polynomial;
use segre_core::probe::{germ_consistency_probe, region_scan, ProbeConfig, ProbeReport};
use segre_core::segre::{complexify, Complexification};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "segre",
    version,
    about = "Exact Segre varieties, degeneracy loci and germ probes for \
             real-algebraic subsets of C^n"
)]
struct Cli {
    /// Reduction-step budget for basis computations
    /// (default: SEGRE_BUDGET or 200000).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Emit a machine-readable JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Grevlex,
    Lex,
}

impl OrderArg {
    fn to_order(self) -> MonomialOrder {
        match self {
            OrderArg::Grevlex => MonomialOrder::GrevLex,
            OrderArg::Lex => MonomialOrder::Lex,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a variety file and print its canonical form.
    Parse {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the complexified ideal (conjugates replaced by zeta variables).
    Complexify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Groebner basis of the Segre slice ideal at a point.
    SegreAt {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated coordinates, e.g. "1,0,1/2" or "1+2i,0,i".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
    },
    /// Dimension of the Segre slice at a point (-1 when off the slice).
    DimAt {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Ideal of the fully Segre-degenerate points.
    Locus {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
    },
    /// Full classification of a point: membership, slice dimension, strata.
    Classify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Numerically search for variety points near a center but off a
    /// candidate set (floating point; a falsification aid, not a proof).
    Probe {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Holomorphic polynomial cutting out the candidate set; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        candidate: Vec<String>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        samples: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Walk a rational curve: exact stratum membership and a germ probe at
    /// each grid value. Text output is CSV.
    Scan {
        #[arg(long)]
        input: PathBuf,
        /// Curve coordinates in one parameter t, e.g. "0, 0, t".
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        /// Comma-separated rational grid, e.g. "-1,-1/2,1/2,1".
        #[arg(long, allow_hyphen_values = true)]
        t_grid: String,
        /// Stratum bound: membership means slice dimension >= k.
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        candidate: Vec<String>,
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long)]
        samples: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Irreducibility or factorization certificate for a homogeneous
    /// polynomial with real coefficients.
    Certify {
        /// The polynomial, e.g. "(x^2+y^2)^6 - s^8*x^3*(s-x)".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated variable names, e.g. "x,y,s".
        #[arg(long)]
        vars: String,
        /// Largest homogeneity degree the certificate attempts.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run the bundled gallery of worked varieties and frozen checks.
    Corpus {
        /// Only entries whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
}

enum CliError {
    Usage(String),
    Budget(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GbError> for CliError {
    fn from(e: GbError) -> Self {
        match e {
            GbError::BudgetExceeded { .. } => {
                CliError::Budget(format!("{e}; raise it with --budget or SEGRE_BUDGET"))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn gb_options(budget: Option<u64>) -> Result<GbOptions, CliError> {
    let mut opts = GbOptions::default();
    if let Ok(env) = std::env::var("SEGRE_BUDGET") {
        opts.budget = env
            .parse()
            .map_err(|_| CliError::Usage(format!("SEGRE_BUDGET is not a number: {env}")))?;
    }
    if let Some(b) = budget {
        opts.budget = b;
    }
    Ok(opts)
}

fn load_input(path: &PathBuf) -> Result<VarietyData, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(load_variety(&text)?)
}

fn parse_candidates(texts: &[String], v: &VarietyData) -> Result<Vec<Polynomial>, CliError> {
    texts
        .iter()
        .map(|t| {
            parse_real_expression(t, v.vars.names()).map_err(|e| {
                CliError::Usage(format!(
                    "candidate '{t}' must be a polynomial in the plain variables: {e}"
                ))
            })
        })
        .collect()
}

fn probe_config(radius: Option<f64>, samples: Option<u32>, seed: Option<u64>) -> ProbeConfig {
    let mut config = ProbeConfig::default();
    if let Some(r) = radius {
        config.radius = r;
    }
    if let Some(s) = samples {
        config.samples = s;
    }
    if let Some(s) = seed {
        config.seed = s;
    }
    config
}

/// Print the result envelope. `seed` is attached for the seeded commands.
fn emit(
    as_json: bool,
    command: &str,
    input: Value,
    result: Value,
    seed: Option<u64>,
    started: Instant,
    text: String,
) {
    if as_json {
        let mut obj = Map::new();
        obj.insert("command".to_string(), json!(command));
        obj.insert("input".to_string(), input);
        obj.insert("result".to_string(), result);
        if let Some(s) = seed {
            obj.insert("seed".to_string(), json!(s));
        }
        obj.insert(
            "timing_ms".to_string(),
            json!(started.elapsed().as_millis() as u64),
        );
        let rendered =
            serde_json::to_string_pretty(&Value::Object(obj)).expect("envelope serializes");
        write_stdout(&format!("{rendered}\n"));
    } else {
        write_stdout(&text);
    }
}

/// A downstream reader closing the pipe early (`segre ... | head`) ends the
/// output stream; that is not an error worth a panic or a message.
fn write_stdout(text: &str) {
    let mut stdout = std::io::stdout().lock();
    if write!(stdout, "{text}")
        .and_then(|()| stdout.flush())
        .is_err()
    {
        std::process::exit(0);
    }
}

fn basis_lines(polys: &[Polynomial], label: &str) -> String {
    let mut out = format!("basis ({label}):\n");
    for p in polys {
        out.push_str(&format!("  {p}\n"));
    }
    out
}

fn basis_json(polys: &[Polynomial]) -> Value {
    json!(polys.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

fn probe_text(report: &ProbeReport) -> String {
    let mut text = format!(
        "verdict: {}\nmin_residual: {:.3e}\nrestarts: {}\n",
        report.verdict, report.min_residual, report.restarts
    );
    match &report.witness {
        Some(w) => {
            let pairs: Vec<String> = w
                .iter()
                .map(|(re, im)| format!("({re:.6}, {im:.6})"))
                .collect();
            text.push_str(&format!("witness: {}\n", pairs.join(", ")));
        }
        None => text.push_str("witness: none\n"),
    }
    if let Some(q) = &report.exact_witness {
        text.push_str(&format!("exact_witness: {}\n", format_point(q)));
    }
    text
}

fn probe_json(report: &ProbeReport) -> Value {
    json!({
        "verdict": report.verdict.to_string(),
        "min_residual": report.min_residual,
        "restarts": report.restarts,
        "witness": report.witness.as_ref().map(|w| {
            w.iter().map(|(re, im)| json!([re, im])).collect::<Vec<_>>()
        }),
        "exact_witness": report.exact_witness.as_ref().map(|q| format_point(q)),
    })
}

fn complexified_ideal(v: &VarietyData, opts: &GbOptions) -> (Complexification, Vec<Polynomial>) {
    let cx = complexify(v, opts);
    let gens = cx.ideal().generators().to_vec();
    (cx, gens)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let started = Instant::now();
    let opts = gb_options(cli.budget)?;
    let as_json = cli.json;
    match cli.cmd {
        Cmd::Parse { input } => {
            let v = load_input(&input)?;
            let printed = print_variety(&v);
            let mut text = printed.clone();
            text.push_str(&format!("generators: {}\n", v.generators.len()));
            for (i, g) in v.generators.iter().enumerate() {
                text.push_str(&format!("  {}: {}  (unit {})\n", i + 1, g.poly, g.unit));
            }
            let result = json!({
                "vars": v.vars.names(),
                "name": v.name,
                "generators": v.generators.iter().map(|g| {
                    json!({"poly": g.poly.to_string(), "unit": g.unit.to_string()})
                }).collect::<Vec<_>>(),
                "canonical": printed,
            });
            emit(
                as_json,
                "parse",
                json!({"input": input.display().to_string()}),
                result,
                None,
                started,
                text,
            );
            Ok(0)
        }
        Cmd::Complexify { input } => {
            let v = load_input(&input)?;
            let (cx, gens) = complexified_ideal(&v, &opts);
            let mut text = format!("variables: {}\n", cx.registry().names().join(" "));
            text.push_str("generators:\n");
            for g in &gens {
                text.push_str(&format!("  {g}\n"));
            }
            let result = json!({
                "variables": cx.registry().names(),
                "generators": basis_json(&gens),
            });
            emit(
                as_json,
                "complexify",
                json!({"input": input.display().to_string()}),
                result,
                None,
                started,
                text,
            );
            Ok(0)
        }
        Cmd::SegreAt {
            input,
            point,
            order,
        } => {
            let v = load_input(&input)?;
            let q = parse_point(&point, v.n())?;
            let cx = complexify(&v, &opts);
            let slice = cx.segre_ideal_at(&q);
            let gb = slice.groebner_basis(&order.to_order(), &opts)?;
            let dim = cx.segre_dim_at(&q)?;
            let label = match order {
                OrderArg::Grevlex => "grevlex",
                OrderArg::Lex => "lex",
            };
            let mut text = format!("point: {}\n", format_point(&q));
            text.push_str(&basis_lines(gb.polys(), label));
            text.push_str(&format!("dim: {dim}\n"));
            let result = json!({
                "point": format_point(&q),
                "order": label,
                "basis": basis_json(gb.polys()),
                "dim": dim,
            });
            emit(
                as_json,
                "segre-at",
                json!({"input": input.display().to_string(), "point": point}),
                result,
                None,
                started,
                text,
            );
            Ok(0)
        }
        Cmd::DimAt { input, point } => {
            let v = load_input(&input)?;
            let q = parse_point(&point, v.n())?;
            let cx = complexify(&v, &opts);
            let dim = cx.segre_dim_at(&q)?;
            let result = json!({"point": format_point(&q), "dim": dim});
            emit(
                as_json,
                "dim-at",
                json!({"input": input.display().to_string(), "point": point}),
                result,
                None,
                started,
                format!("{dim}\n"),
            );
            Ok(0)
        }
        Cmd::Locus { input, order } => {
            let v = load_input(&input)?;
            let cx = complexify(&v, &opts);
            let locus = cx.degenerate_locus();
            let gb = locus.groebner_basis(&order.to_order(), &opts)?;
            let dim = locus.krull_dimension(&opts)?;
            let label = match order {
                OrderArg::Grevlex => "grevlex",
                OrderArg::Lex => "lex",
            };
            let mut text = basis_lines(gb.polys(), label);
            text.push_str(&format!("dim: {dim}\n"));
            let result = json!({
                "order": label,
                "basis": basis_json(gb.polys()),
                "dim": dim,
            });
            emit(
                as_json,
                "locus",
                json!({"input": input.display().to_string()}),
                result,
                None,
                started,
                text,
            );
            Ok(0)
        }
        Cmd::Classify { input, point } => {
            let v = load_input(&input)?;
            let q = parse_point(&point, v.n())?;
            let cx = complexify(&v, &opts);
            let report = cx.classify_point(&q)?;
            let memberships: Vec<String> = report
                .k_membership
                .iter()
                .enumerate()
                .map(|(k, m)| format!("{k}:{m}"))
                .collect();
            let mut text = format!("point: {}\n", format_point(&report.point));
            text.push_str(&format!("on_variety: {}\n", report.on_variety));
            text.push_str(&format!("segre_dim: {}\n", report.segre_dim));
            text.push_str(&format!("k_membership: {}\n", memberships.join(" ")));
            text.push_str(&format!("fully_degenerate: {}\n", report.fully_degenerate));
            text.push_str(&format!("locus_agrees: {}\n", report.locus_agrees));
            text.push_str(&basis_lines(&report.segre_basis, "grevlex"));
            let result = json!({
                "point": format_point(&report.point),
                "on_variety": report.on_variety,
                "segre_dim": report.segre_dim,
                "k_membership": report.k_membership,
                "fully_degenerate": report.fully_degenerate,
                "locus_agrees": report.locus_agrees,
                "basis": basis_json(&report.segre_basis),
            });
            emit(
                as_json,
                "classify",
                json!({"input": input.display().to_string(), "point": point}),
                result,
                None,
                started,
                text,
            );
            Ok(0)
        }
        Cmd::Probe {
            input,
            point,
            candidate,
            radius,
            samples,
            seed,
        } => {
            let v = load_input(&input)?;
            let q = parse_point(&point, v.n())?;
            let cands = parse_candidates(&candidate, &v)?;
            let cx = complexify(&v, &opts);
            let config = probe_config(radius, samples, seed);
            let report = germ_consistency_probe(&cx, &q, &cands, &config);
            let result = probe_json(&report);
            emit(
                as_json,
                "probe",
                json!({
                    "input": input.display().to_string(),
                    "point": point,
                    "candidates": candidate,
                }),
                result,
                Some(config.seed),
                started,
                probe_text(&report),
            );
            Ok(0)
        }
        Cmd::Scan {
            input,
            curve,
            t_grid,
            k,
            candidate,
            radius,
            samples,
            seed,
        } => {
            let v = load_input(&input)?;
            let parsed_curve = Curve::parse(&curve, v.n())?;
            let grid: Vec<BigRational> = parse_rational_list(&t_grid)?;
            let cands = parse_candidates(&candidate, &v)?;
            let cx = complexify(&v, &opts);
            let config = probe_config(radius, samples, seed);
            let rows = region_scan(&cx, &parsed_curve, &grid, k, &cands, &config)?;
            let mut text = String::from("t,member,verdict,min_residual\n");
            for row in &rows {
                text.push_str(&format!(
                    "{},{},{},{:.3e}\n",
                    row.t, row.member, row.probe.verdict, row.probe.min_residual
                ));
            }
            let result = json!({
                "k": k,
                "rows": rows.iter().map(|r| json!({
                    "t": r.t.to_string(),
                    "point": format_point(&r.point),
                    "member": r.member,
                    "verdict": r.probe.verdict.to_string(),
                    "min_residual": r.probe.min_residual,
                })).collect::<Vec<_>>(),
            });
            emit(
                as_json,
                "scan",
                json!({
                    "input": input.display().to_string(),
                    "curve": curve,
                    "t_grid": t_grid,
                    "candidates": candidate,
                }),
                result,
                Some(config.seed),
                started,
                text,
            );
            Ok(0)
        }
        Cmd::Certify { poly, vars, cap } => {
            let names: Vec<String> = vars
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect();
            if names.is_empty() {
                return Err(CliError::Usage("--vars lists no variables".to_string()));
            }
            let p = parse_real_expression(&poly, &names)?;
            let mut cert_opts = CertOptions {
                gb: opts.clone(),
                ..CertOptions::default()
            };
            if let Some(c) = cap {
                cert_opts.degree_cap = c;
            }
            let verdict = cone_certificate(&p, &cert_opts);
            let (text, result) = match &verdict {
                ConeCertificate::CertifiedIrreducible => (
                    "verdict: certified-irreducible\n".to_string(),
                    json!({"verdict": "certified-irreducible"}),
                ),
                ConeCertificate::ReducibleWithWitness(pair) => (
                    format!(
                        "verdict: reducible-with-witness\nfactors:\n  {}\n  {}\n",
                        pair[0], pair[1]
                    ),
                    json!({
                        "verdict": "reducible-with-witness",
                        "factors": [pair[0].to_string(), pair[1].to_string()],
                    }),
                ),
                ConeCertificate::Indeterminate { reason } => (
                    format!("verdict: indeterminate\nreason: {reason}\n"),
                    json!({"verdict": "indeterminate", "reason": reason}),
                ),
            };
            emit(
                as_json,
                "certify",
                json!({"poly": poly, "vars": vars}),
                result,
                None,
                started,
                text,
            );
            Ok(0)
        }
        Cmd::Corpus { filter } => {
            let outcomes = corpus::run_all(filter.as_deref());
            if outcomes.is_empty() {
                return Err(CliError::Usage(format!(
                    "no gallery entry matches '{}'",
                    filter.unwrap_or_default()
                )));
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let mut text = String::new();
            for o in &outcomes {
                if o.passed {
                    text.push_str(&format!("PASS {}: {}\n", o.entry, o.label));
                } else {
                    text.push_str(&format!("FAIL {}: {}\n  {}\n", o.entry, o.label, o.detail));
                }
            }
            text.push_str(&format!(
                "{} checks, {} passed, {} failed\n",
                outcomes.len(),
                outcomes.len() - failed,
                failed
            ));
            let result = json!({
                "checks": outcomes.iter().map(|o| json!({
                    "entry": o.entry,
                    "label": o.label,
                    "passed": o.passed,
                    "detail": o.detail,
                })).collect::<Vec<_>>(),
                "passed": outcomes.len() - failed,
                "failed": failed,
            });
            emit(
                as_json,
                "corpus",
                json!({"filter": filter}),
                result,
                None,
                started,
                text,
            );
            Ok(if failed > 0 { 1 } else { 0 })
        }
    }
}
