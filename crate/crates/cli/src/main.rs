use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use cotwin::search::{SearchOptions, Source};
use cotwin::{
    chromatic_poly, classify, decode, encode, iterate_hat, search, subgraph_sequence, tutte_subset_expansion, Budget,
    Error, ErrorKind, Exec, Graph, Predicate, SubgraphDescription, TutteEngine, WitnessReport,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cotwin", version, about = "Exact graph polynomials and graph/complement invariant search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare a graph with its complement.
    Check {
        graph6: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Classify every graph of a graph6 file or of a generated order.
    Search(SearchArgs),
    /// Chromatic or Tutte polynomial of a graph.
    Poly {
        #[command(subcommand)]
        which: PolyCommand,
    },
    /// Subgraph sequence of a graph, or a comparison of two.
    Subseq {
        /// One graph, or two with --compare.
        #[arg(required = true, num_args = 1..=2)]
        graphs: Vec<String>,
        #[arg(long)]
        compare: bool,
    },
    /// Apply the hat construction.
    Hat {
        graph6: String,
        #[arg(long, default_value_t = 1)]
        iterate: usize,
    },
}

#[derive(Subcommand)]
enum PolyCommand {
    Chromatic {
        graph6: String,
    },
    Tutte {
        graph6: String,
        #[arg(long, value_enum, default_value_t = Method::Dc)]
        method: Method,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Subset,
    Dc,
    /// Both methods, checked equal.
    Both,
}

#[derive(Args)]
struct BudgetArgs {
    /// Largest edge count for subgraph-sequence comparison.
    #[arg(long, default_value_t = Budget::default().max_subset_edges)]
    max_subset_edges: usize,
    /// Largest edge count for Tutte comparison.
    #[arg(long, default_value_t = Budget::default().max_tutte_edges)]
    max_tutte_edges: usize,
    /// Seconds allowed per Tutte polynomial.
    #[arg(long)]
    tutte_time_limit: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_subset_edges: self.max_subset_edges,
            max_tutte_edges: self.max_tutte_edges,
            tutte_time_limit: self.tutte_time_limit.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["file", "gen"]))]
struct SearchArgs {
    /// Newline-delimited graph6 file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Every graph of this order (at most 7).
    #[arg(long)]
    gen: Option<usize>,
    /// Preset name or literals such as `tutte_equal & !degree_seq_equal`.
    #[arg(long, default_value = "all")]
    predicate: String,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Run on one thread without the parallel pool.
    #[arg(long)]
    serial: bool,
    /// State file written after every batch and resumed from if present.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Abort on the first malformed line.
    #[arg(long)]
    strict: bool,
    /// Stop after this many graphs.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, default_value_t = SearchOptions::default().batch)]
    batch: usize,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Usage => 2,
        ErrorKind::Parse => 3,
        ErrorKind::Resource => 4,
        ErrorKind::Io => 5,
        ErrorKind::Invariant => 6,
    }
}

fn parse(g6: &str) -> Result<Graph, Error> {
    Ok(decode(g6)?)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON value serializes"));
}

fn show(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "-",
    }
}

fn print_table(r: &WitnessReport) {
    let rows = [
        ("half_edge_condition", show(Some(r.half_edge_condition))),
        ("self_complementary", show(r.self_complementary)),
        ("degree_seq_equal", show(r.degree_seq_equal)),
        ("chromatic_equal", show(r.chromatic_equal)),
        ("subgraph_seq_equal", show(r.subgraph_seq_equal)),
        ("tutte_equal", show(r.tutte_equal)),
    ];
    println!("{:<20} {}", "graph6", r.graph6);
    println!("{:<20} {}", "order", r.order);
    println!("{:<20} {}", "size", r.size);
    for (name, value) in rows {
        println!("{name:<20} {value}");
    }
    for (field, why) in &r.skipped {
        println!("{:<20} skipped: {why}", field);
    }
    println!("{:<20} {}", "tags", r.tags.join(", "));
}

fn description_json(d: &SubgraphDescription) -> Value {
    json!({ "edges": d.edge_count, "components": d.component_orders })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Check { graph6, format, budget } => {
            let report = classify(&parse(&graph6)?, &budget.budget())?;
            match format {
                Format::Json => print_json(&serde_json::to_value(&report).expect("report serializes")),
                Format::Table => print_table(&report),
            }
        }
        Command::Search(args) => {
            let source = match (args.file, args.gen) {
                (Some(path), _) => Source::File { path, strict: args.strict },
                (None, Some(n)) => Source::Generate(n),
                (None, None) => unreachable!("clap requires a source"),
            };
            let predicate: Predicate = args.predicate.parse()?;
            let opts = SearchOptions {
                budget: args.budget.budget(),
                exec: if args.serial { Exec::Serial } else { Exec::default() },
                jobs: args.jobs,
                checkpoint: args.checkpoint,
                batch: args.batch,
                limit: args.limit,
            };
            let result = search(&source, &predicate, &opts)?;
            print_json(&serde_json::to_value(&result).expect("result serializes"));
        }
        Command::Poly { which: PolyCommand::Chromatic { graph6 } } => {
            let g = parse(&graph6)?;
            print_json(&json!({ "graph6": encode(&g), "chromatic": chromatic_poly(&g).to_json() }));
        }
        Command::Poly { which: PolyCommand::Tutte { graph6, method } } => {
            let g = parse(&graph6)?;
            let subset = match method {
                Method::Dc => None,
                _ => Some(tutte_subset_expansion(&g)?),
            };
            let dc = match method {
                Method::Subset => None,
                _ => {
                    let start = Instant::now();
                    let mut engine = TutteEngine::new();
                    let t = engine.compute_graph(&g)?;
                    let stats = engine.stats();
                    eprintln!(
                        "deletion-contraction: {:.2?}, cache hit rate {:.1}%, nodes {}",
                        start.elapsed(),
                        100.0 * stats.cache.hit_rate(),
                        stats.nodes
                    );
                    Some(t)
                }
            };
            if let (Some(a), Some(b)) = (&subset, &dc) {
                if a != b {
                    return Err(Error::Invariant(format!(
                        "subset expansion gives {a}, deletion-contraction gives {b}"
                    )));
                }
            }
            let t = dc.or(subset).expect("at least one method ran");
            print_json(&json!({ "graph6": encode(&g), "tutte": t.to_json() }));
        }
        Command::Subseq { graphs, compare } => {
            if compare != (graphs.len() == 2) {
                Cli::command()
                    .error(clap::error::ErrorKind::WrongNumberOfValues, "pass one graph, or two graphs with --compare")
                    .exit();
            }
            let seqs = graphs.iter().map(|s| Ok(subgraph_sequence(&parse(s)?)?)).collect::<Result<Vec<_>, Error>>()?;
            if compare {
                let diff = seqs[0]
                    .first_difference(&seqs[1])
                    .map(|(d, a, b)| json!({ "description": description_json(&d), "left": a, "right": b }));
                print_json(&json!({ "equal": diff.is_none(), "first_difference": diff }));
            } else {
                print_json(&seqs[0].to_json());
            }
        }
        Command::Hat { graph6, iterate } => {
            println!("{}", encode(&iterate_hat(&parse(&graph6)?, iterate)?));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
