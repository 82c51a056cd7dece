mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use binedge_core::families::{Family, GraphRecipe};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use input::Loaded;
use report::{CliError, RunReport, Timing};

const WORKERS_ENV: &str = "BINEDGE_WORKERS";

#[derive(Parser)]
#[command(name = "binedge", version, about = "Binomial edge ideals of pendant-clique graph families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Add wall-clock timing to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Args, Clone, Default)]
struct Source {
    /// Graph JSON `{"n", "edges"}` or a document with a `graph` field.
    #[arg(long, value_name = "FILE", group = "source")]
    graph: Option<PathBuf>,
    /// Recipe JSON or a document with a `recipe` field.
    #[arg(long, value_name = "FILE", group = "source")]
    recipe: Option<PathBuf>,
    /// A shipped fixture by name.
    #[arg(long, value_name = "NAME", group = "source")]
    fixture: Option<String>,
}

#[derive(Args, Clone)]
struct Sweep {
    /// Run over every enumerated recipe instead of one input.
    #[arg(long)]
    all: bool,
    /// Vertex bound for `--all`.
    #[arg(long, default_value_t = 8)]
    max_n: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value = "pendant-cliques")]
    family: String,
    #[arg(long)]
    path_len: Option<usize>,
    /// Clique join, `v<pos>:K<t>` on a path vertex or `e<pos>:K<t>` on a path edge.
    #[arg(long = "join", value_name = "SPEC")]
    joins: Vec<String>,
    /// Pendant edge at a path position.
    #[arg(long = "whisker", value_name = "POS")]
    whiskers: Vec<usize>,
    /// Pendant edge on an extra clique vertex, `<edge pos>:<offset>`.
    #[arg(long = "clique-whisker", value_name = "SPEC")]
    clique_whiskers: Vec<String>,
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    sweep: Sweep,
    /// Emit Graphviz DOT instead of JSON.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a recipe, flags or fixture, or list recipes.
    Generate(GenerateArgs),
    /// Admissible-path Groebner basis, checked against Buchberger for small n.
    Gbasis {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6)]
        oracle_bound: usize,
    },
    /// Initial ideal of the binomial edge ideal.
    Initial {
        #[command(flatten)]
        source: Source,
    },
    /// Minimal primes with heights.
    Primes {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 6)]
        oracle_bound: usize,
    },
    /// Special odd cycle search in the facet complex of a squarefree monomial ideal.
    Socp {
        #[command(flatten)]
        source: Source,
        /// Monomial ideal JSON `{"variables": [..], "generators": [..]}`.
        #[arg(long, value_name = "FILE", group = "source")]
        ideal: Option<PathBuf>,
    },
    /// Symbolic versus ordinary powers.
    Powers {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE", group = "source")]
        ideal: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        tmax: u32,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Symbolic F-split certificate for generalized pendant cliques graphs.
    Fsplit {
        #[command(flatten)]
        source: Source,
        /// Characteristic; repeat for several. Defaults to 2, 3, 5.
        #[arg(long = "p")]
        p: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        oracle_bound: usize,
        #[command(flatten)]
        sweep: Sweep,
    },
    /// Strong F-regularity premises: q membership in every p_U power and the Fedder check.
    Sfr {
        #[command(flatten)]
        source: Source,
        /// Characteristic; repeat for several. Defaults to 2, 3.
        #[arg(long = "p")]
        p: Vec<u32>,
        #[arg(long, default_value_t = 6)]
        oracle_bound: usize,
        #[command(flatten)]
        sweep: Sweep,
    },
}

fn load(source: &Source, ideal: Option<&PathBuf>) -> Result<Loaded, CliError> {
    match (&source.graph, &source.recipe, &source.fixture, ideal) {
        (Some(p), ..) | (_, Some(p), ..) | (.., Some(p)) => input::load_file(p),
        (.., Some(name), None) => input::load_fixture(name),
        _ => Err(CliError::Invalid("no input: pass --graph, --recipe, --fixture or --all".into())),
    }
}

fn parse_join(spec: &str) -> Result<(char, usize, usize), CliError> {
    let bad = || CliError::Invalid(format!("bad join {spec:?}; expected v<pos>:K<t> or e<pos>:K<t>"));
    let (at, size) = spec.split_once(':').ok_or_else(bad)?;
    let kind = at.chars().next().filter(|c| *c == 'v' || *c == 'e').ok_or_else(bad)?;
    let pos = at[1..].parse().map_err(|_| bad())?;
    let t = size.strip_prefix('K').unwrap_or(size).parse().map_err(|_| bad())?;
    Ok((kind, pos, t))
}

fn recipe_from_flags(a: &GenerateArgs) -> Result<GraphRecipe, CliError> {
    let r = a.path_len.ok_or_else(|| CliError::Invalid("--path-len is required without --recipe or --fixture".into()))?;
    let mut recipe = GraphRecipe::path(r);
    for spec in &a.joins {
        recipe = match parse_join(spec)? {
            ('v', pos, t) => recipe.with_vertex_join(pos, t),
            (_, pos, t) => recipe.with_edge_join(pos, t),
        };
    }
    for &w in &a.whiskers {
        recipe = recipe.with_whisker(w);
    }
    for spec in &a.clique_whiskers {
        let (pos, off) = spec
            .split_once(':')
            .and_then(|(p, o)| Some((p.parse().ok()?, o.parse().ok()?)))
            .ok_or_else(|| CliError::Invalid(format!("bad clique whisker {spec:?}; expected <pos>:<offset>")))?;
        recipe = recipe.with_clique_whisker(pos, off);
    }
    Ok(recipe)
}

fn family_arg(name: &str) -> Result<Family, CliError> {
    Family::from_name(name).ok_or_else(|| CliError::Invalid(format!("unknown family {name:?}")))
}

fn generate(a: &GenerateArgs) -> Result<String, CliError> {
    let family = family_arg(&a.family)?;
    if a.sweep.all {
        let recipes = commands::sweep_recipes(family, a.sweep.max_n);
        let doc = json!({ "family": family.name(), "max_n": a.sweep.max_n, "count": recipes.len(), "recipes": recipes });
        return Ok(serde_json::to_string_pretty(&doc).expect("json"));
    }
    let doc: Value = if a.source.fixture.is_some() || a.source.recipe.is_some() || a.source.graph.is_some() {
        let loaded = load(&a.source, None)?;
        match loaded.value.get("graph") {
            Some(_) => loaded.value,
            None => {
                let recipe = input::recipe_of(&loaded.value)?;
                let built = recipe.build().map_err(CliError::invalid)?;
                json!({ "recipe": recipe, "graph": built.graph, "labels": built.labeling.as_slice() })
            }
        }
    } else {
        let recipe = recipe_from_flags(a)?;
        recipe.validate_for(family).map_err(CliError::invalid)?;
        let built = recipe.build().map_err(CliError::invalid)?;
        json!({ "family": family.name(), "recipe": recipe, "graph": built.graph, "labels": built.labeling.as_slice() })
    };
    if a.dot {
        return Ok(input::graph_of(&doc)?.to_dot());
    }
    Ok(serde_json::to_string_pretty(&doc).expect("json"))
}

fn primes_or_default(ps: &[u32], default: &[u32]) -> Vec<u32> {
    if ps.is_empty() {
        default.to_vec()
    } else {
        ps.to_vec()
    }
}

fn run(command: &Command, report: &mut RunReport) -> Result<(), CliError> {
    let single = |source: &Source, ideal: Option<&PathBuf>, report: &mut RunReport| -> Result<Value, CliError> {
        let loaded = load(source, ideal)?;
        report.inputs.push(loaded.hash);
        Ok(loaded.value)
    };
    match command {
        Command::Generate(_) => unreachable!("generate prints its own document"),
        Command::Gbasis { source, oracle_bound } => {
            report.param("oracle_bound", oracle_bound);
            let doc = single(source, None, report)?;
            commands::gbasis(report, &doc, *oracle_bound)
        }
        Command::Initial { source } => {
            let doc = single(source, None, report)?;
            commands::initial(report, &doc)
        }
        Command::Primes { source, oracle_bound } => {
            report.param("oracle_bound", oracle_bound);
            let doc = single(source, None, report)?;
            commands::primes(report, &doc, *oracle_bound)
        }
        Command::Socp { source, ideal } => {
            let doc = single(source, ideal.as_ref(), report)?;
            commands::socp(report, &doc, ideal.is_some())
        }
        Command::Powers { source, ideal, tmax, sweep } => {
            report.param("tmax", tmax);
            if sweep.all {
                report.param("max_n", sweep.max_n);
                return commands::powers_sweep(report, sweep.max_n, *tmax);
            }
            let doc = single(source, ideal.as_ref(), report)?;
            commands::powers(report, &doc, ideal.is_some(), *tmax)
        }
        Command::Fsplit { source, p, oracle_bound, sweep } => {
            let ps = primes_or_default(p, &[2, 3, 5]);
            report.param("p", &ps);
            report.param("oracle_bound", oracle_bound);
            if sweep.all {
                report.param("max_n", sweep.max_n);
                return commands::fsplit_sweep(report, sweep.max_n, &ps, *oracle_bound);
            }
            let doc = single(source, None, report)?;
            commands::fsplit(report, &doc, &ps, *oracle_bound)
        }
        Command::Sfr { source, p, oracle_bound, sweep } => {
            let ps = primes_or_default(p, &[2, 3]);
            report.param("p", &ps);
            report.param("oracle_bound", oracle_bound);
            if sweep.all {
                report.param("max_n", sweep.max_n);
                return commands::sfr_sweep(report, sweep.max_n, &ps, *oracle_bound);
            }
            let doc = single(source, None, report)?;
            commands::sfr(report, &doc, &ps, *oracle_bound)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Generate(_) => "generate",
        Command::Gbasis { .. } => "gbasis",
        Command::Initial { .. } => "initial",
        Command::Primes { .. } => "primes",
        Command::Socp { .. } => "socp",
        Command::Powers { .. } => "powers",
        Command::Fsplit { .. } => "fsplit",
        Command::Sfr { .. } => "sfr",
    }
}

fn configure_workers() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::Invalid(format!("{WORKERS_ENV}={v:?} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(CliError::invalid)?;
    }
    Ok(())
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_workers() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Command::Generate(args) = &cli.command {
        return match generate(args) {
            Ok(out) => {
                emit(&out);
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        };
    }
    let start = Instant::now();
    let mut report = RunReport::new(command_name(&cli.command));
    if let Err(e) = run(&cli.command, &mut report) {
        eprintln!("error: {e}");
        report.fail_with(&e);
    }
    if cli.timing {
        report.timing = Some(Timing { elapsed_ms: start.elapsed().as_millis() });
    }
    emit(&serde_json::to_string_pretty(&report).expect("reports serialize"));
    ExitCode::from(report.status.exit_code() as u8)
}
