//! Command-line front end: simulate runs, detect groups from timing,
//! cluster contact graphs, score partitions, sweep the mixing parameter,
//! and classify degree tails.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use coburst::bcsbm::{simulate, simulate_multi_domain, BcsbmParams, TemporalGraphRun};
use coburst::community::{label_propagation, louvain, Partition};
use coburst::error::{Error, Result};
use coburst::events::{EventLog, Window};
use coburst::graph::WeightedGraph;
use coburst::heavytail::{classify_network, NetworkTailReport};
use coburst::pipeline::{
    detect_bursty, evaluate, participation_events_from_snapshots, shuffled_null_nmi,
    DetectOptions, Detector, LPA_MAX_ITERS,
};
use coburst::plot::plot_sweep_svg;
use coburst::rng::cell_seed;
use coburst::simgraph::{Sparsify, Transform};
use coburst::sweep::{run_sweep, write_failures_json, write_rows_csv, SweepSpec};

#[derive(Parser)]
#[command(
    name = "coburst",
    version,
    about = "Timing-based coordination detection and bursty temporal-graph generation"
)]
struct Cli {
    /// Base random seed (default 42; per-stage seeds are derived from it).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output path; each subcommand documents its default.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Suppress status messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a temporal graph run and write it as a directory.
    Simulate(SimulateArgs),
    /// Detect coordinating groups from event timing alone.
    Detect(DetectArgs),
    /// Cluster the aggregated contact graph directly (structural baseline).
    Baseline(BaselineArgs),
    /// Score a predicted partition against a reference partition.
    Evaluate(EvaluateArgs),
    /// Sweep the mixing parameter, scoring every detector per replicate.
    Sweep(SweepArgs),
    /// Fit and compare degree-tail models on simulated networks.
    Degfit(DegfitArgs),
}

#[derive(Args)]
struct SimulateArgs {
    /// Generator parameters as JSON (defaults used when omitted).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override the intra-community target probability.
    #[arg(long)]
    lambda: Option<f64>,
    /// Override the number of snapshots.
    #[arg(long)]
    t_steps: Option<usize>,
    /// Generate this many independent domains (subdirectories d0, d1, ...)
    /// plus a merged activity log.
    #[arg(long, default_value_t = 1)]
    n_domains: usize,
}

#[derive(Args)]
struct DetectArgs {
    /// Event log (.jsonl or .csv with entity,domain,t).
    #[arg(long)]
    events: Option<PathBuf>,
    /// Alternatively: a snapshots.csv written by `simulate`; each edge
    /// timestamps both endpoints (participation events).
    #[arg(long)]
    snapshots: Option<PathBuf>,
    /// Domain tag for events built from snapshots.
    #[arg(long, default_value = "d0")]
    domain: String,
    /// Drop profiles with fewer events than this.
    #[arg(long, default_value_t = 5)]
    min_events: usize,
    /// Keep zero gaps from exactly tied timestamps.
    #[arg(long)]
    keep_zero_deltas: bool,
    /// Observation window start (inclusive; requires --window-end).
    #[arg(long)]
    window_start: Option<f64>,
    /// Observation window end (exclusive; requires --window-start).
    #[arg(long)]
    window_end: Option<f64>,
    /// Only score profile pairs from different domains.
    #[arg(long)]
    cross_domain_only: bool,
    /// Louvain resolution on the similarity graph.
    #[arg(long, default_value_t = 1.0)]
    resolution: f64,
    /// Distance-to-weight transform: one_minus_ks or exp_neg_ks.
    #[arg(long, default_value = "one_minus_ks")]
    transform: String,
    /// Scale for exp_neg_ks (weight = exp(-distance / scale)).
    #[arg(long, default_value_t = 1.0)]
    scale: f64,
    /// Edge sparsification: none, top_k, or threshold.
    #[arg(long, default_value = "none")]
    sparsify: String,
    /// Neighbors kept per node for top_k.
    #[arg(long, default_value_t = 10)]
    k: usize,
    /// Minimum weight kept for threshold.
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
}

#[derive(Args)]
struct BaselineArgs {
    /// Weighted edge list (src,dst,weight CSV).
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Alternatively: a run directory written by `simulate`; its snapshots
    /// are aggregated into a contact graph.
    #[arg(long)]
    run: Option<PathBuf>,
    /// louvain_edges or lpa_edges.
    #[arg(long, default_value = "louvain_edges")]
    method: String,
    /// Louvain resolution.
    #[arg(long, default_value_t = 1.0)]
    resolution: f64,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Predicted partition (node,community CSV).
    #[arg(long)]
    pred: PathBuf,
    /// Reference partition (node,community CSV).
    #[arg(long)]
    truth: PathBuf,
    /// Also report NMI against this many label-shuffled references.
    #[arg(long)]
    null: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep configuration as JSON (defaults used when omitted).
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Override the number of replicates per grid value.
    #[arg(long)]
    replicates: Option<usize>,
    /// Override the grid: comma-separated values in [0, 1].
    #[arg(long)]
    lambda_grid: Option<String>,
    /// Override the detectors: comma-separated names.
    #[arg(long)]
    detectors: Option<String>,
    /// Skip the SVG plot.
    #[arg(long)]
    no_svg: bool,
    /// Omit the generation-time comment from the SVG, making it
    /// byte-reproducible. The CSV is never stamped.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct DegfitArgs {
    /// Classify the degree tail of one run directory.
    #[arg(long)]
    run: Option<PathBuf>,
    /// Classify a plain degree file (one nonnegative integer per line).
    #[arg(long)]
    degrees: Option<PathBuf>,
    /// Use total degrees instead of in-degrees.
    #[arg(long)]
    total_degree: bool,
    /// Corpus mode: simulate at these comma-separated lambda values and
    /// classify every replicate, writing a summary CSV.
    #[arg(long)]
    sweep_lambdas: Option<String>,
    /// Replicates per lambda in corpus mode.
    #[arg(long, default_value_t = 10)]
    replicates: usize,
    /// Generator parameters for corpus mode (defaults when omitted).
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<()> {
    let status = |msg: String| {
        if !cli.quiet {
            eprintln!("{msg}");
        }
    };
    match &cli.cmd {
        Cmd::Simulate(args) => cmd_simulate(&cli, args, &status),
        Cmd::Detect(args) => cmd_detect(&cli, args, &status),
        Cmd::Baseline(args) => cmd_baseline(&cli, args, &status),
        Cmd::Evaluate(args) => cmd_evaluate(&cli, args, &status),
        Cmd::Sweep(args) => cmd_sweep(&cli, args, &status),
        Cmd::Degfit(args) => cmd_degfit(&cli, args, &status),
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| Error::io(parent.display().to_string(), e))?;
        }
    }
    std::fs::write(path, text).map_err(|e| Error::io(path.display().to_string(), e))
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs, status: &dyn Fn(String)) -> Result<()> {
    let mut params = match &args.config {
        Some(path) => BcsbmParams::read_json(path)?,
        None => BcsbmParams::default(),
    };
    if let Some(seed) = cli.seed {
        params.seed = seed;
    }
    if let Some(lambda) = args.lambda {
        params.lambda = lambda;
    }
    if let Some(t) = args.t_steps {
        params.t_steps = t;
    }
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("coburst_run"));
    ensure_dir(&out)?;

    if args.n_domains <= 1 {
        let run = simulate(&params)?;
        run.write_dir(&out)?;
        status(format!(
            "wrote run to {} ({} events, intra_edge_fraction {:.4})",
            out.display(),
            run.n_events(),
            run.intra_edge_fraction()
        ));
    } else {
        let runs = simulate_multi_domain(&params, args.n_domains)?;
        let mut merged = EventLog::default();
        for run in &runs {
            run.write_dir(out.join(&run.domain))?;
            merged.events.extend(run.activity_log().events);
        }
        merged.write_jsonl(out.join("activity.jsonl"))?;
        status(format!(
            "wrote {} domains to {} ({} merged events)",
            runs.len(),
            out.display(),
            merged.len()
        ));
    }
    Ok(())
}

fn parse_transform(args: &DetectArgs) -> Result<Transform> {
    match args.transform.as_str() {
        "one_minus_ks" => Ok(Transform::OneMinusKs),
        "exp_neg_ks" => Ok(Transform::ExpNegKs { scale: args.scale }),
        other => Err(Error::invalid(
            "transform",
            format!("unknown transform {other:?} (expected one_minus_ks or exp_neg_ks)"),
        )),
    }
}

fn parse_sparsify(args: &DetectArgs) -> Result<Sparsify> {
    match args.sparsify.as_str() {
        "none" => Ok(Sparsify::None),
        "top_k" => Ok(Sparsify::TopK { k: args.k }),
        "threshold" => Ok(Sparsify::Threshold { theta: args.theta }),
        other => Err(Error::invalid(
            "sparsify",
            format!("unknown sparsifier {other:?} (expected none, top_k, or threshold)"),
        )),
    }
}

fn cmd_detect(cli: &Cli, args: &DetectArgs, status: &dyn Fn(String)) -> Result<()> {
    let log = match (&args.events, &args.snapshots) {
        (Some(events), None) => EventLog::read_auto(events)?,
        (None, Some(snapshots)) => participation_events_from_snapshots(snapshots, &args.domain)?,
        _ => {
            return Err(Error::invalid(
                "input",
                "pass exactly one of --events or --snapshots",
            ))
        }
    };
    let window = match (args.window_start, args.window_end) {
        (Some(s), Some(e)) => Some(Window::new(s, e)?),
        (None, None) => None,
        _ => {
            return Err(Error::invalid(
                "window",
                "--window-start and --window-end must be given together",
            ))
        }
    };
    let opts = DetectOptions {
        transform: parse_transform(args)?,
        sparsify: parse_sparsify(args)?,
        min_events: args.min_events,
        keep_zero_deltas: args.keep_zero_deltas,
        window,
        cross_domain_only: args.cross_domain_only,
        resolution: args.resolution,
        seed: cli.seed.unwrap_or(42),
    };

    let outcome = detect_bursty(&log, &opts)?;
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("detect_out"));
    ensure_dir(&out)?;
    outcome.partition.write_csv(out.join("partition.csv"))?;
    outcome.graph.write_edge_csv(out.join("graph.csv"))?;
    let sidecar = serde_json::json!({
        "options": opts,
        "n_profiles": outcome.n_profiles,
        "n_omitted": outcome.omitted.len(),
    });
    write_text(
        &out.join("options.json"),
        &(serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n"),
    )?;
    if !outcome.omitted.is_empty() {
        let mut text = String::from("entity,domain,n_events\n");
        for (key, count) in &outcome.omitted {
            text.push_str(&format!("{},{},{count}\n", key.entity, key.domain));
        }
        write_text(&out.join("omitted.csv"), &text)?;
    }
    status(format!(
        "wrote {} ({} profiles, {} omitted, {} communities)",
        out.display(),
        outcome.n_profiles,
        outcome.omitted.len(),
        outcome.partition.n_communities()
    ));
    Ok(())
}

fn cmd_baseline(cli: &Cli, args: &BaselineArgs, status: &dyn Fn(String)) -> Result<()> {
    let graph = match (&args.edges, &args.run) {
        (Some(edges), None) => WeightedGraph::read_edge_csv(edges)?,
        (None, Some(run)) => TemporalGraphRun::read_dir(run)?.aggregate_graph(),
        _ => {
            return Err(Error::invalid(
                "input",
                "pass exactly one of --edges or --run",
            ))
        }
    };
    let method: Detector = args.method.parse()?;
    let seed = cli.seed.unwrap_or(42);
    let partition = match method {
        Detector::LouvainEdges => louvain(&graph, args.resolution, seed)?,
        Detector::LpaEdges => label_propagation(&graph, seed, LPA_MAX_ITERS),
        Detector::Bursty => {
            return Err(Error::invalid(
                "method",
                "bursty needs event timing; use the detect subcommand",
            ))
        }
    };
    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("baseline_out"));
    ensure_dir(&out)?;
    partition.write_csv(out.join("partition.csv"))?;
    let sidecar = serde_json::json!({
        "method": method.name(),
        "resolution": args.resolution,
        "seed": seed,
    });
    write_text(
        &out.join("options.json"),
        &(serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n"),
    )?;
    status(format!(
        "wrote {} ({} nodes, {} communities)",
        out.display(),
        partition.n_nodes(),
        partition.n_communities()
    ));
    Ok(())
}

fn cmd_evaluate(cli: &Cli, args: &EvaluateArgs, status: &dyn Fn(String)) -> Result<()> {
    let pred = Partition::read_csv(&args.pred)?;
    let truth = Partition::read_csv(&args.truth)?;
    let report = evaluate(&pred, &truth)?;
    let mut doc = serde_json::to_value(&report).expect("report serializes");
    if let Some(n) = args.null {
        if n == 0 {
            return Err(Error::invalid("null", "need at least 1 shuffle"));
        }
        let nulls = shuffled_null_nmi(&pred, &truth, n, cli.seed.unwrap_or(42))?;
        let mean = nulls.iter().sum::<f64>() / nulls.len() as f64;
        let max = nulls.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        doc["null_nmi"] = serde_json::json!({ "n": n, "mean": mean, "max": max });
    }
    let text = serde_json::to_string_pretty(&doc).expect("doc serializes") + "\n";
    match &cli.out {
        Some(path) => {
            write_text(path, &text)?;
            status(format!("wrote {}", path.display()));
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_f64_list(text: &str, what: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::invalid(what, format!("{s:?} is not a number")))
        })
        .collect()
}

fn cmd_sweep(cli: &Cli, args: &SweepArgs, status: &dyn Fn(String)) -> Result<()> {
    let mut spec = match &args.spec {
        Some(path) => SweepSpec::read_json(path)?,
        None => SweepSpec::default(),
    };
    if let Some(seed) = cli.seed {
        spec.base_seed = seed;
    }
    if let Some(reps) = args.replicates {
        spec.replicates = reps;
    }
    if let Some(grid) = &args.lambda_grid {
        spec.lambda_grid = parse_f64_list(grid, "lambda_grid")?;
    }
    if let Some(dets) = &args.detectors {
        spec.detectors = dets
            .split(',')
            .map(|s| s.trim().parse::<Detector>())
            .collect::<Result<Vec<_>>>()?;
    }

    let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("sweep.csv"));
    if let Some(parent) = out.parent() {
        if !parent.as_os_str().is_empty() {
            ensure_dir(parent)?;
        }
    }
    let result = run_sweep(&spec)?;
    write_rows_csv(&result.rows, &out)?;
    status(format!("wrote {} ({} rows)", out.display(), result.rows.len()));

    if !result.failures.is_empty() {
        let mut failures_path = out.clone();
        failures_path.set_extension("failures.json");
        write_failures_json(&result.failures, &failures_path)?;
        status(format!(
            "{} cells failed; see {}",
            result.failures.len(),
            failures_path.display()
        ));
    }
    if !args.no_svg && !result.rows.is_empty() {
        let stamp = if args.no_timestamp {
            None
        } else {
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            Some(format!("at unix {secs}"))
        };
        let svg = plot_sweep_svg(&result.rows, stamp.as_deref())?;
        let svg_path = out.with_extension("svg");
        write_text(&svg_path, &svg)?;
        status(format!("wrote {}", svg_path.display()));
    }
    Ok(())
}

fn read_degree_file(path: &Path) -> Result<Vec<u64>> {
    let pstr = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(&pstr, e))?;
    let mut degrees = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let d: u64 = line
            .parse()
            .map_err(|_| Error::parse(&pstr, idx + 1, format!("{line:?} is not a degree")))?;
        degrees.push(d);
    }
    if degrees.is_empty() {
        return Err(Error::Insufficient(format!("{pstr}: no degrees")));
    }
    Ok(degrees)
}

fn report_csv_fields(report: &NetworkTailReport) -> String {
    let winner = report.winner.as_deref().unwrap_or("");
    match &report.comparisons {
        Some(c) => format!(
            "{},{},{},{},{},{},{},{}",
            winner,
            c.vs_power_law.llr,
            c.vs_power_law.p_value,
            c.vs_log_normal.llr,
            c.vs_log_normal.p_value,
            c.vs_exponential.llr,
            c.vs_exponential.p_value,
            report.n_unique
        ),
        None => format!("{winner},,,,,,,{}", report.n_unique),
    }
}

fn cmd_degfit(cli: &Cli, args: &DegfitArgs, status: &dyn Fn(String)) -> Result<()> {
    let picked = [
        args.run.is_some(),
        args.degrees.is_some(),
        args.sweep_lambdas.is_some(),
    ]
    .iter()
    .filter(|b| **b)
    .count();
    if picked != 1 {
        return Err(Error::invalid(
            "input",
            "pass exactly one of --run, --degrees, or --sweep-lambdas",
        ));
    }

    if let Some(lambdas) = &args.sweep_lambdas {
        let grid = parse_f64_list(lambdas, "sweep_lambdas")?;
        if args.replicates == 0 {
            return Err(Error::invalid("replicates", "need at least 1"));
        }
        let mut params = match &args.config {
            Some(path) => BcsbmParams::read_json(path)?,
            None => BcsbmParams::default(),
        };
        let base_seed = cli.seed.unwrap_or(42);
        params.seed = base_seed;

        use rayon::prelude::*;
        let cells: Vec<(usize, usize)> = (0..grid.len())
            .flat_map(|li| (0..args.replicates).map(move |rep| (li, rep)))
            .collect();
        let total_degree = args.total_degree;
        let rows: Vec<Result<String>> = cells
            .par_iter()
            .map(|&(li, rep)| {
                let mut p = params.clone();
                p.lambda = grid[li];
                p.seed = cell_seed(base_seed, li, rep);
                let run = simulate(&p)?;
                let degrees = if total_degree {
                    run.total_degrees()
                } else {
                    run.in_degrees()
                };
                let report = classify_network(&degrees)?;
                Ok(format!(
                    "{},{},{},{}",
                    grid[li],
                    p.seed,
                    report.eligible,
                    report_csv_fields(&report)
                ))
            })
            .collect();

        let out = cli.out.clone().unwrap_or_else(|| PathBuf::from("degfit.csv"));
        let mut text = String::from(
            "lambda,seed,eligible,winner,llr_pl,p_pl,llr_ln,p_ln,llr_exp,p_exp,n_unique\n",
        );
        for row in rows {
            text.push_str(&row?);
            text.push('\n');
        }
        write_text(&out, &text)?;
        status(format!(
            "wrote {} ({} networks classified)",
            out.display(),
            grid.len() * args.replicates
        ));
        return Ok(());
    }

    let degrees = if let Some(run_dir) = &args.run {
        let run = TemporalGraphRun::read_dir(run_dir)?;
        if args.total_degree {
            run.total_degrees()
        } else {
            run.in_degrees()
        }
    } else {
        read_degree_file(args.degrees.as_ref().expect("checked above"))?
    };
    let report = classify_network(&degrees)?;
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &cli.out {
        Some(path) => {
            write_text(path, &text)?;
            status(format!("wrote {}", path.display()));
        }
        None => print!("{text}"),
    }
    Ok(())
}
