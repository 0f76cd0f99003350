//! `cospec`: exact and numeric (strong) cospectrality from the command line.
//!
//! Exit status is 0 on success, 1 when a check finds a violation (or the
//! exact and numeric verdicts disagree), and 2 on usage or input errors.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cospec::charpoly::charpoly;
use cospec::cospectral::GraphPolys;
use cospec::harness::{audit_cut_triples, find_sets, fuzz_identities, verify_trees, CampaignReport};
use cospec::spectral::{eigendecompose_escalating, strongly_cospectral_numeric, DEFAULT_PRECISION};
use cospec::{parse_graph6, to_graph6, Error, Graph};

#[derive(Parser)]
#[command(name = "cospec", version, about = "Cospectral and strongly cospectral vertices")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Add wall time to campaign reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial of a graph.
    Charpoly { graph6: String },
    /// Cospectrality and strong cospectrality of every vertex pair.
    Pairs {
        graph6: String,
        #[command(flatten)]
        mode: PairMode,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Strongly cospectral classes with parity signatures.
    #[command(alias = "find-sets")]
    Classes { graph6: String },
    /// Eigenvalues and projectors as decimal strings.
    Spectrum {
        graph6: String,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
    },
    /// Exhaustive check that no tree has three pairwise strongly cospectral
    /// vertices.
    VerifyTrees {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Point-by-point audit of every cut-separated cospectral triple in trees.
    AuditTriples {
        #[arg(long)]
        max_n: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Identity checks on seeded random graphs and trees.
    Fuzz {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Cartesian product of two graphs.
    Product { left: String, right: String },
}

#[derive(Args)]
#[group(multiple = false)]
struct PairMode {
    /// Exact divisibility decision only (default).
    #[arg(long)]
    exact: bool,
    /// Numeric projector test only.
    #[arg(long)]
    numeric: bool,
    /// Both, flagging any disagreement.
    #[arg(long)]
    both: bool,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

struct Output {
    value: Value,
    csv: Vec<Vec<String>>,
    human: String,
    ok: bool,
}

fn usage(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse { .. }
            | Error::InvalidVertex { .. }
            | Error::Domain(_)
            | Error::Config(_)
            | Error::Precondition(_)
    )
}

fn graph(text: &str) -> Result<Graph, Error> {
    parse_graph6(text.trim())
}

fn charpoly_cmd(g: &Graph) -> Output {
    let p = charpoly(g);
    let coeffs: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
    Output {
        value: json!({ "graph6": to_graph6(g), "charpoly": p.to_string(), "coefficients": coeffs }),
        csv: std::iter::once(vec!["degree".into(), "coefficient".into()])
            .chain(coeffs.iter().enumerate().map(|(k, c)| vec![k.to_string(), c.clone()]))
            .collect(),
        human: p.to_string(),
        ok: true,
    }
}

fn pairs_cmd(g: &Graph, mode: &PairMode, precision: usize) -> Result<Output, Error> {
    let exact = mode.exact || mode.both || !mode.numeric;
    let numeric = mode.numeric || mode.both;
    let polys = GraphPolys::new(g);
    let mut rows = Vec::new();
    let mut csv = vec![vec![
        "i".to_string(),
        "j".into(),
        "cospectral".into(),
        "strong_exact".into(),
        "strong_numeric".into(),
        "signature".into(),
    ]];
    let mut human = String::new();
    let mut ok = true;
    let n = g.order();
    for i in 0..n {
        for j in i + 1..n {
            let e = if exact { Some(polys.decide(i, j)?) } else { None };
            let v = if numeric {
                Some(strongly_cospectral_numeric(g, i, j, precision)?)
            } else {
                None
            };
            let agree = match (&e, &v) {
                (Some(e), Some(v)) => e.strongly_cospectral == v.strongly_cospectral,
                _ => true,
            };
            ok &= agree;
            let cospectral = polys.cospectral(i, j)?;
            let strong_e = e.as_ref().map(|e| e.strongly_cospectral);
            let strong_v = v.as_ref().map(|v| v.strongly_cospectral);
            let sig = v.as_ref().map(|v| v.signature_string());
            let show = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
            csv.push(vec![
                i.to_string(),
                j.to_string(),
                cospectral.to_string(),
                show(strong_e),
                show(strong_v),
                sig.clone().unwrap_or_default(),
            ]);
            human.push_str(&format!(
                "{i:>3} {j:>3}  cospectral {:<5}  strong exact {:<5}  numeric {:<5}{}{}\n",
                cospectral,
                show(strong_e),
                show(strong_v),
                sig.map(|s| format!("  signature {s}")).unwrap_or_default(),
                if agree { "" } else { "  DISAGREE" },
            ));
            rows.push(json!({ "vertices": [i, j], "cospectral": cospectral, "exact": e, "numeric": v, "agree": agree }));
        }
    }
    Ok(Output {
        value: json!({ "graph6": to_graph6(g), "pairs": rows }),
        csv,
        human,
        ok,
    })
}

fn classes_cmd(g: &Graph) -> Result<Output, Error> {
    let sets = find_sets(g)?;
    let mut csv = vec![vec!["class".to_string(), "vertex".into(), "signature".into()]];
    let mut human = String::new();
    if sets.is_empty() {
        human.push_str("no strongly cospectral pairs\n");
    }
    for (c, s) in sets.iter().enumerate() {
        human.push_str(&format!("class {c}: {:?}\n", s.vertices));
        csv.push(vec![c.to_string(), s.vertices[0].to_string(), String::new()]);
        for d in &s.signatures {
            let (a, b) = d.vertices;
            human.push_str(&format!("  {a} ~ {b}  signature {}\n", d.signature_string()));
            csv.push(vec![c.to_string(), b.to_string(), d.signature_string()]);
        }
    }
    Ok(Output {
        value: json!({ "graph6": to_graph6(g), "classes": sets }),
        csv,
        human,
        ok: true,
    })
}

fn spectrum_cmd(g: &Graph, precision: usize) -> Result<Output, Error> {
    let d = eigendecompose_escalating(g, precision)?;
    let dump = d.dump();
    let mut csv = vec![vec!["eigenvalue".to_string(), "multiplicity".into()]];
    let mut human = format!("precision {} bits\n", dump.precision_bits);
    for e in &dump.eigenvalues {
        csv.push(vec![e.value.clone(), e.multiplicity.to_string()]);
        human.push_str(&format!("{}  (multiplicity {})\n", e.value, e.multiplicity));
    }
    let invariants = d.check_invariants(g);
    let ok = invariants.within_tolerance;
    Ok(Output {
        value: json!({ "graph6": to_graph6(g), "decomposition": dump, "invariants": invariants }),
        csv,
        human,
        ok,
    })
}

fn campaign_output(report: CampaignReport) -> Output {
    let mut csv = vec![vec!["shard".to_string(), "counter".into(), "value".into()]];
    for (shard, counts) in &report.shards {
        for (k, v) in counts {
            csv.push(vec![shard.clone(), k.clone(), v.to_string()]);
        }
    }
    for (k, v) in &report.totals {
        csv.push(vec!["total".into(), k.clone(), v.to_string()]);
    }
    for (k, v) in &report.branch_counts {
        csv.push(vec!["lambda_branch".into(), k.clone(), v.to_string()]);
    }
    let mut human = format!(
        "{}: {}\n",
        report.campaign,
        if report.success { "ok" } else { "VIOLATIONS FOUND" }
    );
    for (shard, counts) in &report.shards {
        let line: Vec<String> = counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
        human.push_str(&format!("  {shard}: {}\n", line.join(", ")));
    }
    let totals: Vec<String> = report.totals.iter().map(|(k, v)| format!("{k} {v}")).collect();
    human.push_str(&format!("  total: {}\n", totals.join(", ")));
    if !report.branch_counts.is_empty() {
        let b: Vec<String> = report.branch_counts.iter().map(|(k, v)| format!("{k} {v}")).collect();
        human.push_str(&format!("  lambda branches: {}\n", b.join(", ")));
    }
    for v in &report.violations {
        human.push_str(&format!("  violation {} on {}: {}\n", v.check, v.graph6, v.detail));
    }
    if let Some(t) = report.wall_time_seconds {
        human.push_str(&format!("  wall time {t:.2}s\n"));
    }
    Output {
        ok: report.success,
        value: serde_json::to_value(&report).expect("report serializes"),
        csv,
        human,
    }
}

fn with_jobs<T: Send>(jobs: &Jobs, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    match jobs.jobs {
        None => Ok(f()),
        Some(0) => Err(Error::Config("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|p| p.install(f))
            .map_err(|e| Error::Config(format!("thread pool: {e}"))),
    }
}

fn campaign(
    timing: bool,
    jobs: &Jobs,
    run: impl FnOnce() -> Result<CampaignReport, Error> + Send,
) -> Result<Output, Error> {
    let clock = Instant::now();
    let mut report = with_jobs(jobs, run)??;
    if timing {
        report.wall_time_seconds = Some(clock.elapsed().as_secs_f64());
    }
    Ok(campaign_output(report))
}

fn run(cli: &Cli) -> Result<Output, Error> {
    match &cli.command {
        Command::Charpoly { graph6 } => Ok(charpoly_cmd(&graph(graph6)?)),
        Command::Pairs {
            graph6,
            mode,
            precision,
        } => pairs_cmd(&graph(graph6)?, mode, *precision),
        Command::Classes { graph6 } => classes_cmd(&graph(graph6)?),
        Command::Spectrum { graph6, precision } => spectrum_cmd(&graph(graph6)?, *precision),
        Command::VerifyTrees { max_n, jobs } => campaign(cli.timing, jobs, || verify_trees(*max_n)),
        Command::AuditTriples { max_n, jobs } => {
            campaign(cli.timing, jobs, || audit_cut_triples(*max_n))
        }
        Command::Fuzz {
            count,
            max_n,
            seed,
            jobs,
        } => campaign(cli.timing, jobs, || fuzz_identities(*count, *max_n, *seed)),
        Command::Product { left, right } => {
            let p = graph(left)?.cartesian_product(&graph(right)?)?;
            let code = to_graph6(&p);
            Ok(Output {
                value: json!({ "graph6": code, "order": p.order(), "edges": p.edges() }),
                csv: vec![vec!["graph6".into()], vec![code.clone()]],
                human: code,
                ok: true,
            })
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.value).expect("json"),
                Format::Csv => out
                    .csv
                    .iter()
                    .map(|row| row.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","))
                    .collect::<Vec<_>>()
                    .join("\n"),
                Format::Human => out.human.trim_end().to_string(),
            };
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if usage(&e) { 2 } else { 1 })
        }
    }
}
