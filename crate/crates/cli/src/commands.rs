use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use erbimatch::evaluation::{
    benchmark, default_grid, emit_report, evaluate, threshold_sweep, Report, ReportFormat,
    StatisticsSummary, SweepRecord, TimingRecord,
};
use erbimatch::ingest::{
    read_edge_list, read_embeddings, read_ground_truth, read_profiles, read_score_matrix,
    write_edge_list, write_matching, MatchingHeader, ProfileFormat,
};
use erbimatch::matchers::{self, Algorithm};
use erbimatch::recipes::run_recipe;
use erbimatch::simgen::{build_similarity_graph, BuildOptions, Measure, Model, Scope, SimFnConfig};
use erbimatch::{BahConfig, Error, MatcherConfig, Result};
use serde_json::{json, Value};

use crate::args::{
    BenchArgs, BuildGraphArgs, Cli, Command, MatchArgs, MatcherArgs, ModelKind, ReportArgs,
    ReproduceArgs, StatsArgs, SweepArgs,
};

pub fn run(cli: Cli) -> Result<()> {
    let workers = init_workers(cli.workers)?;
    match cli.command {
        Command::BuildGraph(a) => build_graph(a),
        Command::Match(a) => run_match(a),
        Command::Sweep(a) => sweep(a, workers),
        Command::Bench(a) => bench(a),
        Command::Stats(a) => stats(a),
        Command::Reproduce(a) => reproduce(a, workers),
    }
}

fn init_workers(requested: Option<usize>) -> Result<usize> {
    if let Some(n) = requested {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "--workers must be at least 1".into(),
            ));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    }
    Ok(rayon::current_num_threads())
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn matcher_config(a: &MatcherArgs) -> Result<MatcherConfig> {
    let time_limit = Duration::try_from_secs_f64(a.time_limit)
        .map_err(|_| Error::InvalidArgument(format!("invalid time limit {}", a.time_limit)))?;
    let bah = BahConfig {
        max_moves: a.max_moves,
        time_limit,
        rng_seed: a.seed,
    };
    bah.validate()?;
    Ok(MatcherConfig {
        bah,
        bmc_basis: a.basis,
    })
}

fn algorithms(names: &[String]) -> Result<Vec<Algorithm>> {
    if names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(Algorithm::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in names {
        let a: Algorithm = name.parse()?;
        if !out.contains(&a) {
            out.push(a);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument("no algorithm selected".into()));
    }
    Ok(out)
}

fn dataset_label(explicit: &Option<String>, graph: &Path) -> String {
    explicit.clone().unwrap_or_else(|| {
        graph
            .file_name()
            .map(|s| {
                s.to_string_lossy()
                    .split('.')
                    .next()
                    .unwrap_or_default()
                    .to_string()
            })
            .unwrap_or_default()
    })
}

fn write_report(report: &Report, out: &ReportArgs) -> Result<()> {
    match &out.output {
        Some(path) => emit_report(report, out.format, path),
        None => {
            let text = report.render(out.format)?;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("writing report to stdout", e))
        }
    }
}

fn format_name(f: ReportFormat) -> &'static str {
    match f {
        ReportFormat::Json => "json",
        ReportFormat::Csv => "csv",
    }
}

fn profile_format(path: &Path) -> Result<ProfileFormat> {
    ProfileFormat::from_path(path).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "cannot tell the profile format of {}; use .csv, .tsv or .jsonl",
            path.display()
        ))
    })
}

fn build_graph(a: BuildGraphArgs) -> Result<()> {
    let model = match a.model {
        ModelKind::Raw => Model::RawString,
        ModelKind::Bag => Model::Bag {
            unit: a.unit,
            n: a.n,
            scheme: a.scheme,
        },
        ModelKind::Graph => Model::Graph {
            unit: a.unit,
            n: a.n,
        },
        ModelKind::Vector => Model::PrecomputedVector,
    };
    let cfg = SimFnConfig {
        scope: a
            .attribute
            .clone()
            .map_or(Scope::SchemaAgnostic, Scope::SchemaBased),
        measure: Measure::parse(&a.measure, &model)?,
        model,
    };
    cfg.validate()?;

    let left = read_profiles(&a.left, profile_format(&a.left)?)?;
    let right = read_profiles(&a.right, profile_format(&a.right)?)?;
    let embeddings = match (&a.left_embeddings, &a.right_embeddings) {
        (Some(l), Some(r)) => Some((read_embeddings(l)?, read_embeddings(r)?)),
        _ => None,
    };
    let opts = BuildOptions {
        max_pairs: a.max_pairs,
        embeddings: embeddings.as_ref().map(|(l, r)| (l, r)),
    };

    let start = Instant::now();
    let built = build_similarity_graph(&left, &right, &cfg, &opts)?;
    let elapsed = start.elapsed().as_secs_f64();
    write_edge_list(&a.output, &built.graph)?;
    eprintln!(
        "{}: {} x {} profiles, {} edges, {} + {} uncovered, {elapsed:.3}s",
        cfg.describe(),
        left.len(),
        right.len(),
        built.graph.edge_count(),
        built.uncovered_left,
        built.uncovered_right,
    );
    Ok(())
}

fn run_match(a: MatchArgs) -> Result<()> {
    let cfg = matcher_config(&a.matcher)?;
    let g = read_edge_list(&a.graph)?;
    let gt = a.gt.as_deref().map(read_ground_truth).transpose()?;

    let start = Instant::now();
    let m = matchers::run(a.algorithm, &g, a.threshold, &cfg)?;
    let elapsed = start.elapsed().as_secs_f64();

    let config = json!({
        "command": "match",
        "graph": path_str(&a.graph),
        "algorithm": a.algorithm,
        "threshold": a.threshold,
        "matcher": cfg,
    });
    let header = MatchingHeader {
        algorithm: a.algorithm,
        threshold: a.threshold,
        config,
        wall_time_seconds: Some(elapsed),
    };
    write_matching(&a.output, &g, &m, &header)?;
    eprintln!(
        "{}: {} pairs at t = {} in {elapsed:.6}s",
        a.algorithm,
        m.len(),
        a.threshold
    );
    if let Some(gt) = gt {
        let s = evaluate(&m, &gt, &g);
        eprintln!(
            "precision {:.4}  recall {:.4}  f1 {:.4}",
            s.precision, s.recall, s.f_measure
        );
    }
    Ok(())
}

fn sweep(a: SweepArgs, workers: usize) -> Result<()> {
    let cfg = matcher_config(&a.matcher)?;
    let algs = algorithms(&a.algorithm)?;
    let g = read_edge_list(&a.graph)?;
    let gt = read_ground_truth(&a.gt)?;
    let grid = default_grid();
    let dataset = dataset_label(&a.dataset, &a.graph);
    let similarity = a
        .graph
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();

    let mut report = Report::new(json!({
        "command": "sweep",
        "graph": path_str(&a.graph),
        "ground_truth": path_str(&a.gt),
        "dataset": dataset,
        "algorithms": algs,
        "grid": grid,
        "matcher": cfg,
        "workers": workers,
        "format": format_name(a.report.format),
    }));
    for alg in algs {
        let result = threshold_sweep(&g, alg, &cfg, &gt, &grid)?;
        eprintln!(
            "{alg}: optimal_t {:.2}  f1 {:.4}  precision {:.4}  recall {:.4}",
            result.optimal_t,
            result.optimal_score.f_measure,
            result.optimal_score.precision,
            result.optimal_score.recall
        );
        report.deterministic.sweeps.push(SweepRecord {
            dataset: dataset.clone(),
            similarity: similarity.clone(),
            sweep: result,
        });
    }
    write_report(&report, &a.report)
}

fn bench(a: BenchArgs) -> Result<()> {
    let cfg = matcher_config(&a.matcher)?;
    let algs = algorithms(&a.algorithm)?;
    let g = read_edge_list(&a.graph)?;
    let dataset = dataset_label(&a.dataset, &a.graph);

    let mut report = Report::new(json!({
        "command": "bench",
        "graph": path_str(&a.graph),
        "dataset": dataset,
        "algorithms": algs,
        "threshold": a.threshold,
        "repetitions": a.repetitions,
        "matcher": cfg,
        "format": format_name(a.report.format),
    }));
    for alg in algs {
        let stats = benchmark(&g, alg, &cfg, a.threshold, a.repetitions)?;
        eprintln!(
            "{alg}: mean {:.6}s  stddev {:.6}s",
            stats.mean, stats.stddev
        );
        report.timings.push(TimingRecord {
            dataset: dataset.clone(),
            algorithm: alg,
            threshold: a.threshold,
            stats,
        });
    }
    write_report(&report, &a.report)
}

fn stats(a: StatsArgs) -> Result<()> {
    let matrix = read_score_matrix(&a.scores)?;
    let summary = StatisticsSummary::compute(&matrix, a.alpha)?;
    if let Some(f) = &summary.friedman {
        eprintln!(
            "friedman: statistic {:.4}  critical {:.4}  reject {}",
            f.statistic, f.critical_value, f.reject
        );
    }
    eprintln!(
        "nemenyi: k {}  n {}  critical distance {:.4}",
        matrix.k(),
        matrix.n(),
        summary.nemenyi.critical_distance
    );
    let mut report = Report::new(json!({
        "command": "stats",
        "scores": path_str(&a.scores),
        "alpha": a.alpha,
        "format": format_name(a.report.format),
    }));
    report.deterministic.statistics = Some(summary);
    write_report(&report, &a.report)
}

fn reproduce(a: ReproduceArgs, workers: usize) -> Result<()> {
    let outcome = run_recipe(a.recipe, &a.data_dir)?;
    let spec = &outcome.spec;
    let verdict = if outcome.within_tolerance() {
        "within"
    } else {
        "outside"
    };
    eprintln!(
        "{}: {} edges, f1 {:.4} at t = {} (expected {} ± {}, {verdict} tolerance)",
        a.recipe,
        outcome.edge_count,
        outcome.score.f_measure,
        spec.threshold,
        spec.expected_f1,
        spec.tolerance,
    );
    let mut config: Value = serde_json::to_value(spec)?;
    config["command"] = json!("reproduce");
    config["data_dir"] = json!(path_str(&a.data_dir));
    config["workers"] = json!(workers);
    config["format"] = json!(format_name(a.report.format));
    let mut report = Report::new(config);
    report.deterministic.sweeps.push(SweepRecord {
        dataset: spec.dataset.clone(),
        similarity: spec.similarity.describe(),
        sweep: outcome.sweep.clone(),
    });
    write_report(&report, &a.report)
}
