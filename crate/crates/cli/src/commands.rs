use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use dlsml::classifiers::{
    evaluate_protocol, BaggingParams, ForestParams, Hyperparameters, ModelKind, NaiveBayesParams, NeuralNetParams,
    ProtocolReport, ProtocolRow,
};
use dlsml::dls::{OverSelection, ResourceTable, TableError};
use dlsml::match_data::{parse_matches, parse_snapshots, synth_corpus_with, write_matches, write_snapshots, Dataset, SynthConfig};
use dlsml::pso::{compare_tables, optimize, PsoConfig, PsoMode};
use dlsml::unpredictability::{rank_teams, Scenario};

use crate::{Command, Common, EvaluateArgs, IndexArgs, Inputs, OptimizeArgs, SynthArgs, ValidateArgs};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Synth(a) => synth(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Optimize(a) => optimize_cmd(a),
        Command::Index(a) => index(a),
        Command::ValidateTable(a) => validate(a),
    }
}

/// Echo of everything that determines a run's outputs.
#[derive(Serialize)]
struct RunConfig<'a, P: Serialize> {
    command: &'a str,
    matches: Option<String>,
    snapshots: Option<String>,
    table: Option<String>,
    seed: u64,
    out: String,
    params: P,
}

fn show(p: &Path) -> String {
    p.display().to_string()
}

fn prepare(common: &Common) -> Result<ResourceTable> {
    if common.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(common.jobs).build_global();
    fs::create_dir_all(&common.out).with_context(|| format!("creating {}", common.out.display()))?;
    match &common.table {
        Some(path) => load_table(path, true),
        None => Ok(ResourceTable::standard()),
    }
}

/// Loads and validates a table. With `allow_wicket_order`, a table whose
/// only fault is a row rising as wickets fall is accepted with a warning.
fn load_table(path: &Path, allow_wicket_order: bool) -> Result<ResourceTable> {
    let table = ResourceTable::load_unvalidated(path)?;
    match table.validate() {
        Ok(()) => Ok(table),
        // validate checks the anchor and every column before any row
        Err(e @ TableError::WicketOrder { .. }) if allow_wicket_order => {
            eprintln!("warning: {}: {e}", path.display());
            Ok(table)
        }
        Err(e) => Err(e).with_context(|| format!("{} is not a valid resource table", path.display())),
    }
}

fn load(inputs: &Inputs) -> Result<Dataset> {
    let file = parse_matches(&inputs.matches)?;
    if !file.dropped.is_empty() {
        eprintln!("skipped {} tied or no-result matches", file.dropped.len());
    }
    Ok(parse_snapshots(&inputs.snapshots, file.matches)?)
}

fn write_config<P: Serialize>(
    common: &Common,
    command: &str,
    inputs: Option<&Inputs>,
    params: P,
) -> Result<()> {
    let config = RunConfig {
        command,
        matches: inputs.map(|i| show(&i.matches)),
        snapshots: inputs.map(|i| show(&i.snapshots)),
        table: common.table.as_deref().map(show),
        seed: common.seed,
        out: show(&common.out),
        params,
    };
    let mut text = serde_json::to_string_pretty(&config)?;
    text.push('\n');
    let path = common.out.join("run_config.json");
    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_rows<R: Serialize>(path: PathBuf, rows: impl IntoIterator<Item = R>) -> Result<()> {
    let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
    let mut any = false;
    for row in rows {
        w.serialize(row)?;
        any = true;
    }
    if !any {
        bail!("nothing to write to {}", path.display());
    }
    w.flush().with_context(|| format!("writing {}", path.display()))
}

fn fraction(v: f64) -> String {
    format!("{v:.6}")
}

fn synth(a: SynthArgs) -> Result<()> {
    let table = prepare(&a.common)?;
    let config = SynthConfig {
        disagreement_at_40: (!a.no_steering).then_some(a.disagreement),
        ..SynthConfig::default()
    };
    let ds = synth_corpus_with(a.common.seed, a.n, &table, &config)?;
    write_matches(a.common.out.join("matches.csv"), ds.matches())?;
    write_snapshots(a.common.out.join("snapshots.csv"), &ds)?;
    #[derive(Serialize)]
    struct Params {
        n: usize,
        synth: SynthConfig,
    }
    write_config(&a.common, "synth", None, Params { n: a.n, synth: config })?;
    println!(
        "wrote {} matches and {} snapshots to {}",
        ds.len(),
        ds.snapshot_count(),
        a.common.out.display()
    );
    Ok(())
}

#[derive(Serialize)]
struct ProtocolCsv {
    selection: String,
    n_samples: usize,
    dl_accuracy: String,
    kind: ModelKind,
    classifier_accuracy: String,
}

impl From<&ProtocolRow> for ProtocolCsv {
    fn from(r: &ProtocolRow) -> Self {
        ProtocolCsv {
            selection: r.selection.to_string(),
            n_samples: r.n_samples,
            dl_accuracy: fraction(r.dl_accuracy),
            kind: r.kind,
            classifier_accuracy: fraction(r.classifier_accuracy),
        }
    }
}

fn write_protocol(out: &Path, stem: &str, report: &ProtocolReport) -> Result<()> {
    write_rows(out.join(format!("{stem}.csv")), report.rows.iter().map(ProtocolCsv::from))?;
    write_rows(out.join(format!("{stem}_best.csv")), report.best().into_iter().map(ProtocolCsv::from))
}

fn evaluate(a: EvaluateArgs) -> Result<()> {
    let table = prepare(&a.common)?;
    let ds = load(&a.inputs)?;
    let kinds = a
        .kinds
        .iter()
        .map(|k| k.parse::<ModelKind>())
        .collect::<dlsml::Result<Vec<_>>>()?;
    let hyper = Hyperparameters {
        naive_bayes: NaiveBayesParams {
            var_floor: a.nb_var_floor,
            ..NaiveBayesParams::default()
        },
        neural_net: NeuralNetParams {
            hidden: a.nn_hidden,
            learning_rate: a.nn_learning_rate,
            epochs: a.nn_epochs,
        },
        bagging: BaggingParams {
            members: a.bagging_members,
            naive_bayes: NaiveBayesParams {
                var_floor: a.nb_var_floor,
                ..NaiveBayesParams::default()
            },
        },
        forest: ForestParams {
            n_trees: a.forest_trees,
            max_features: a.forest_max_features,
            min_leaf: a.forest_min_leaf,
            ..ForestParams::default()
        },
    };
    hyper.validate()?;

    let checkpoints = evaluate_protocol(&ds, &table, &OverSelection::checkpoints(), &kinds, &hyper, a.common.seed)?;
    let ranges = evaluate_protocol(&ds, &table, &OverSelection::ranges(), &kinds, &hyper, a.common.seed)?;
    write_protocol(&a.common.out, "table1_checkpoints", &checkpoints)?;
    write_protocol(&a.common.out, "table2_ranges", &ranges)?;

    #[derive(Serialize)]
    struct Params {
        kinds: Vec<ModelKind>,
        hyperparameters: Hyperparameters,
    }
    write_config(&a.common, "evaluate", Some(&a.inputs), Params { kinds, hyperparameters: hyper })?;
    for b in checkpoints.best().into_iter().chain(ranges.best()) {
        println!(
            "{:<10} n={:<6} par rule {:.2}%  best {} {:.2}%",
            b.selection.label(),
            b.n_samples,
            100.0 * b.dl_accuracy,
            b.kind,
            100.0 * b.classifier_accuracy
        );
    }
    Ok(())
}

fn optimize_cmd(a: OptimizeArgs) -> Result<()> {
    let base = prepare(&a.common)?;
    let ds = load(&a.inputs)?;
    let config = PsoConfig {
        swarm_size: a.swarm,
        c1: a.c1,
        c2: a.c2,
        generations: a.generations,
        inertia: a.inertia,
        v_max: a.vmax,
        seed: a.common.seed,
        mode: a.mode.parse::<PsoMode>()?,
        monotone: !a.unconstrained,
        enforce_wicket_order: a.enforce_wicket_order,
    };
    let result = optimize(&ds, &base, &config)?;
    let out = &a.common.out;
    result.optimized_table.save(out.join("optimized_table.csv"))?;

    #[derive(Serialize)]
    struct ComparisonCsv {
        selection: String,
        n_samples: usize,
        base_accuracy: String,
        optimized_accuracy: String,
    }
    let rows = compare_tables(&ds, &base, &result.optimized_table, &OverSelection::all_standard())?;
    write_rows(
        out.join("table3_comparison.csv"),
        rows.iter().map(|r| ComparisonCsv {
            selection: r.selection.to_string(),
            n_samples: r.n_samples,
            base_accuracy: fraction(r.base_accuracy),
            optimized_accuracy: fraction(r.optimized_accuracy),
        }),
    )?;

    #[derive(Serialize)]
    struct TraceCsv {
        generation: usize,
        best_fitness: u64,
    }
    write_rows(
        out.join("fitness_trace.csv"),
        result
            .fitness_trace
            .iter()
            .enumerate()
            .map(|(generation, &best_fitness)| TraceCsv { generation, best_fitness }),
    )?;
    write_config(&a.common, "optimize", Some(&a.inputs), &config)?;

    println!(
        "fitness {} -> {} of {} snapshots with 0-3 wickets down",
        result.baseline_fitness, result.optimized_fitness, result.n_snapshots
    );
    if result.wicket_order_violations > 0 {
        println!(
            "note: {} cells rise as wickets fall; use --enforce-wicket-order to forbid this",
            result.wicket_order_violations
        );
    }
    Ok(())
}

fn index(a: IndexArgs) -> Result<()> {
    let table = prepare(&a.common)?;
    let ds = load(&a.inputs)?;
    #[derive(Serialize)]
    struct RankCsv<'a> {
        scenario: Scenario,
        team: &'a str,
        failing_count: u64,
        scenario_total: u64,
        percentage: String,
        rank: usize,
    }
    let rankings = Scenario::ALL
        .into_iter()
        .map(|s| rank_teams(&ds, &table, s, a.min_matches))
        .collect::<dlsml::Result<Vec<_>>>()?;
    for ranking in &rankings {
        write_rows(
            a.common.out.join(format!("index_{}.csv", ranking.scenario)),
            ranking.ranked().map(|(rank, s)| RankCsv {
                scenario: s.scenario,
                team: s.team.as_str(),
                failing_count: s.failing_count,
                scenario_total: s.scenario_total,
                percentage: s.percent_string(),
                rank,
            }),
        )?;
        if let Some(top) = ranking.scores.first() {
            println!("{:<15} {} {}%", ranking.scenario, top.team, top.percent_string());
        }
    }
    #[derive(Serialize)]
    struct Params {
        min_matches: u32,
    }
    write_config(&a.common, "index", Some(&a.inputs), Params { min_matches: a.min_matches })
}

fn validate(a: ValidateArgs) -> Result<()> {
    load_table(&a.table, a.allow_wicket_order)?;
    println!("{}: valid", a.table.display());
    Ok(())
}
