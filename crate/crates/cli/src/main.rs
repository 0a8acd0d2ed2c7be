//! Command-line front door for the exact spectral toolkit: k-values,
//! prime graphs, the coclique tables, the claim catalogue and the
//! Mersenne scan.
//!
//! Exit codes: 0 success or all-match, 1 a verification failed, 2 usage,
//! 3 a resource budget ran out. Output is buffered per subcommand and
//! written in one piece, so partial lines never interleave with warnings.

mod cache;
mod config;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use spectra_core::arith::{factorize, k_value, Primality, SignedBase};
use spectra_core::graph::{build_graph_with, max_cocliques, PrimeGraph};
use spectra_core::groups::{table1_prediction, table2_class, Family, GroupSpec};
use spectra_core::ledger::{run_catalogue, Status};
use spectra_core::mersenne::{satisfying_q, scan, MersenneRecord};
use spectra_core::Error;

use config::{Config, OutputFormat, Overrides};

#[derive(Parser)]
#[command(
    name = "spectra",
    version,
    about = "Exact spectra and prime graphs of finite simple classical groups"
)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print k_i(a), the primitive part of a^i - 1, with its factorization.
    Kvalue {
        /// Cyclotomic index, at least 3.
        i: u32,
        /// Base with |a| >= 2; negative values are fine.
        #[arg(allow_hyphen_values = true)]
        a: i64,
    },
    /// Build the prime graph of one group and print it as DOT or JSON.
    Graph {
        /// Group spec family:prk:p[:f], e.g. L:9:5 or O-:6:3.
        spec: String,
    },
    /// Recompute a coclique table and flag every covered group MATCH or MISMATCH.
    Tables {
        /// Which table: 1 for (t, E, J \ E) rows, 2 for the t-class listing.
        #[arg(long)]
        which: u8,
        /// Largest field size to cover, at most 13.
        #[arg(long, default_value_t = 13)]
        qmax: u64,
    },
    /// Run the claim catalogue and report one status line per claim.
    Verify {
        /// Only run claims whose id starts with this prefix.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Scan Mersenne primes q = 2^k - 1 and classify Phi_6(q).
    Mersenne {
        /// Exponent ceiling for the scan; overrides the configured default.
        #[arg(long)]
        max: Option<u32>,
    },
}

/// Buffered result of one subcommand.
struct Emitted {
    stdout: String,
    warning: Option<String>,
    code: u8,
}

impl Emitted {
    fn ok(stdout: String) -> Emitted {
        Emitted { stdout, warning: None, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match Config::resolve(&cli.overrides) {
        Ok(cfg) => cfg,
        Err(msg) => return usage(&msg),
    };
    if let Some(path) = &cfg.cache_path {
        if let Err(msg) = cache::load(path) {
            return usage(&msg);
        }
    }

    let outcome = dispatch(&cli.command, &cfg);

    // The cache is worth keeping even when the run itself failed.
    if let Some(path) = &cfg.cache_path {
        if let Err(msg) = cache::save(path) {
            eprintln!("warning: {msg}");
        }
    }

    match outcome {
        Ok(emitted) => {
            if let Some(w) = &emitted.warning {
                eprintln!("warning: {w}");
            }
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(emitted.stdout.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(emitted.code)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::Unsupported(_) | Error::MalformedClaim { .. } => 2,
        Error::FactorBudget { .. } | Error::PartialGraph { .. } => 3,
    }
}

fn dispatch(command: &Command, cfg: &Config) -> spectra_core::Result<Emitted> {
    match command {
        Command::Kvalue { i, a } => cmd_kvalue(*i, *a, cfg),
        Command::Graph { spec } => cmd_graph(spec, cfg),
        Command::Tables { which, qmax } => cmd_tables(*which, *qmax, cfg),
        Command::Verify { filter } => cmd_verify(filter.as_deref(), cfg),
        Command::Mersenne { max } => cmd_mersenne(*max, cfg),
    }
}

fn text_or_json(cfg: &Config, what: &str) -> spectra_core::Result<OutputFormat> {
    match cfg.format_or(OutputFormat::Text) {
        OutputFormat::Dot => Err(Error::InvalidArgument(format!("{what} prints text or json, not dot"))),
        fmt => Ok(fmt),
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json output");
    out.push('\n');
    out
}

fn cmd_kvalue(i: u32, a: i64, cfg: &Config) -> spectra_core::Result<Emitted> {
    let fmt = text_or_json(cfg, "kvalue")?;
    let base = SignedBase::from_i64(a)?;
    let k = k_value(i, &base)?;
    let factors = factorize(&k)?;
    let stdout = match fmt {
        OutputFormat::Text => {
            if factors.is_empty() {
                "1\n".to_string()
            } else {
                format!("{k} = {}\n", factor_line(factors.pairs()))
            }
        }
        OutputFormat::Json => pretty(&json!({
            "i": i,
            "a": a,
            "value": k.to_string(),
            "factors": factors
                .pairs()
                .iter()
                .map(|(p, e)| json!([p.to_string(), e]))
                .collect::<Vec<_>>(),
        })),
        OutputFormat::Dot => unreachable!(),
    };
    Ok(Emitted::ok(stdout))
}

fn factor_line(pairs: &[(num_bigint::BigUint, u32)]) -> String {
    pairs
        .iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

fn cmd_graph(spec: &str, cfg: &Config) -> spectra_core::Result<Emitted> {
    let fmt = match cfg.format_or(OutputFormat::Dot) {
        OutputFormat::Text => {
            return Err(Error::InvalidArgument("graph prints dot or json, not text".into()))
        }
        fmt => fmt,
    };
    let group: GroupSpec = spec.parse()?;
    match build_graph_with(&group, &cfg.graph_budget()) {
        Ok(graph) => {
            let code = if graph.pseudo_vertices().is_empty() { 0 } else { 3 };
            let warning = (!graph.warnings().is_empty()).then(|| graph.warnings().join("; "));
            Ok(Emitted { stdout: render_graph(&graph, fmt), warning, code })
        }
        // The partial graph is still worth printing; the exit code and the
        // warning carry the bad news.
        Err(Error::PartialGraph { reason, graph }) => Ok(Emitted {
            stdout: render_graph(&graph, fmt),
            warning: Some(format!("graph incomplete: {reason}")),
            code: 3,
        }),
        Err(e) => Err(e),
    }
}

fn render_graph(graph: &PrimeGraph, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Dot => graph.to_dot(),
        OutputFormat::Json => pretty(&graph.to_json()),
        OutputFormat::Text => unreachable!(),
    }
}

/// Feasibility bound for the table sweeps; cocliques over larger fields
/// outgrow the exact search budget.
const TABLES_QMAX: u64 = 13;

fn cmd_tables(which: u8, qmax: u64, cfg: &Config) -> spectra_core::Result<Emitted> {
    let fmt = text_or_json(cfg, "tables")?;
    if which != 1 && which != 2 {
        return Err(Error::InvalidArgument(format!("no table {which}; pick 1 or 2")));
    }
    if !(2..=TABLES_QMAX).contains(&qmax) {
        return Err(Error::InvalidArgument(format!("qmax must lie in 2..={TABLES_QMAX}")));
    }

    let mut lines = String::new();
    let mut rows = Vec::new();
    let mut mismatches = 0usize;
    for group in covered_specs(qmax)? {
        let graph = build_graph_with(&group, &cfg.graph_budget())?;
        let report = max_cocliques(&graph, true)?;
        let matched;
        if which == 1 {
            let predicted = table1_prediction(&group).expect("covered row");
            matched = report.t == predicted.t
                && report.e == predicted.e
                && report.j_minus_e() == predicted.j_minus_e;
            writeln!(
                lines,
                "{:<10} t={} E={} J\\E={}  expected t={} E={} J\\E={}  {}",
                group.atlas_name(),
                report.t,
                set_line(&report.e),
                set_line(&report.j_minus_e()),
                predicted.t,
                set_line(&predicted.e),
                set_line(&predicted.j_minus_e),
                verdict(matched),
            )
            .unwrap();
            rows.push(json!({
                "group": group.to_string(),
                "atlas": group.atlas_name(),
                "t": report.t,
                "e": report.e,
                "j_minus_e": report.j_minus_e(),
                "expected": {
                    "t": predicted.t,
                    "e": predicted.e,
                    "j_minus_e": predicted.j_minus_e,
                },
                "match": matched,
            }));
        } else {
            let Some(class) = table2_class(&group) else { continue };
            matched = report.t == u64::from(class);
            writeln!(
                lines,
                "{:<10} t={} class={}  {}",
                group.atlas_name(),
                report.t,
                class,
                verdict(matched),
            )
            .unwrap();
            rows.push(json!({
                "group": group.to_string(),
                "atlas": group.atlas_name(),
                "t": report.t,
                "class": class,
                "match": matched,
            }));
        }
        if !matched {
            mismatches += 1;
        }
    }

    let all_match = mismatches == 0;
    let stdout = match fmt {
        OutputFormat::Text => {
            if all_match {
                writeln!(lines, "{} groups checked, all MATCH", rows.len()).unwrap();
            } else {
                writeln!(lines, "{} groups checked, {mismatches} MISMATCH", rows.len()).unwrap();
            }
            lines
        }
        OutputFormat::Json => pretty(&json!({
            "which": which,
            "qmax": qmax,
            "rows": rows,
            "all_match": all_match,
        })),
        OutputFormat::Dot => unreachable!(),
    };
    Ok(Emitted { stdout, warning: None, code: u8::from(!all_match) })
}

fn verdict(matched: bool) -> &'static str {
    if matched {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn set_line(set: &BTreeSet<u64>) -> String {
    let inner = set.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    format!("{{{inner}}}")
}

/// Every group with a table row, by ascending rank, field and family.
/// Rank 16 closes out the t = 8 class listing.
fn covered_specs(qmax: u64) -> spectra_core::Result<Vec<GroupSpec>> {
    const FAMILIES: [Family; 6] = [
        Family::Linear,
        Family::Unitary,
        Family::Symplectic,
        Family::OrthogonalOdd,
        Family::OrthogonalEvenPlus,
        Family::OrthogonalEvenMinus,
    ];
    let mut out = Vec::new();
    for prk in 4..=16 {
        for q in 2..=qmax {
            let Some((p, f)) = prime_power(q) else { continue };
            for family in FAMILIES {
                let Ok(group) = GroupSpec::new(family, prk, p, f) else { continue };
                if table1_prediction(&group).is_some() {
                    out.push(group);
                }
            }
        }
    }
    Ok(out)
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut f = 0;
            while m % p == 0 {
                m /= p;
                f += 1;
            }
            return (m == 1).then_some((p, f));
        }
        p += 1;
    }
    (q >= 2).then_some((q, 1))
}

fn cmd_verify(filter: Option<&str>, cfg: &Config) -> spectra_core::Result<Emitted> {
    let fmt = text_or_json(cfg, "verify")?;
    let report = run_catalogue(filter)?;
    let stdout = match fmt {
        OutputFormat::Text => {
            let mut lines = String::new();
            for r in &report.claims {
                writeln!(lines, "{:<13}{:<34}{}", status_line(r.status), r.id, r.evidence).unwrap();
            }
            let s = report.summary;
            writeln!(
                lines,
                "{} claims: {} pass, {} fail, {} skipped, {} inconclusive",
                report.claims.len(),
                s.pass,
                s.fail,
                s.skipped,
                s.inconclusive,
            )
            .unwrap();
            lines
        }
        OutputFormat::Json => report.to_json(),
        OutputFormat::Dot => unreachable!(),
    };
    Ok(Emitted { stdout, warning: None, code: u8::from(!report.clean()) })
}

fn status_line(status: Status) -> &'static str {
    match status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIPPED",
        Status::Inconclusive => "INCONCLUSIVE",
    }
}

fn cmd_mersenne(max: Option<u32>, cfg: &Config) -> spectra_core::Result<Emitted> {
    let fmt = text_or_json(cfg, "mersenne")?;
    let max = max.unwrap_or(cfg.mersenne_max_exponent);
    let records = scan(max)?;
    let satisfying = satisfying_q(&records);
    let stdout = match fmt {
        OutputFormat::Text => {
            let mut lines = String::new();
            writeln!(lines, "{:>6}  {:>8}  Phi_6(q)", "k", "digits").unwrap();
            for r in &records {
                writeln!(lines, "{:>6}  {:>8}  {}", r.k, r.q_digits, primality_line(r)).unwrap();
            }
            if satisfying.is_empty() {
                writeln!(lines, "satisfying q: none").unwrap();
            } else {
                writeln!(lines, "satisfying q: {}", satisfying.join(", ")).unwrap();
            }
            lines
        }
        OutputFormat::Json => pretty(&json!({
            "max_exponent": max,
            "records": records,
            "satisfying_q": satisfying,
        })),
        OutputFormat::Dot => unreachable!(),
    };
    Ok(Emitted::ok(stdout))
}

fn primality_line(record: &MersenneRecord) -> &'static str {
    match record.phi6_is_prime {
        Primality::Prime => "prime",
        Primality::ProbablePrime => "probable-prime",
        Primality::Composite => "composite",
    }
}
