use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use kakimizu::complex::{
    homology_h1, is_k_large, is_locally_k_large, reduce_cycle_homotopy, LargenessCheck, Move, SearchOutcome,
    DEFAULT_MAX_DIM,
};
use kakimizu::systems::{
    graph_to_system, kakimizu_null_homotopy, lattice_model, lattice_window, line_model, random_connected_graph,
    ReductionOutcome,
};
use kakimizu::verify::{run_suite, Suite};
use kakimizu::{Cycle, FlagComplex, HomotopyBounds, NullHomotopyWitness, SurfaceSystem, Verdict, VerifyBounds};

/// Appends a line to the output buffer.
macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

macro_rules! put {
    ($out:expr, $($arg:tt)*) => {
        write!($out, $($arg)*).expect("writing to a String")
    };
}

const FAILURE: u8 = 1;
const USAGE: u8 = 2;
const INCONCLUSIVE: u8 = 3;

/// Kakimizu complexes of abstract Seifert surface systems.
#[derive(Parser)]
#[command(name = "kakimizu", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a system file and summarize it.
    Validate { file: PathBuf },
    /// Covering spread of a pair.
    Spread(PairArgs),
    /// Distance of a pair in the complex, computed as covering spread plus one.
    Distance {
        #[command(flatten)]
        pair: PairArgs,
        /// Breadth-first search in the complex instead.
        #[arg(long)]
        bfs: bool,
    },
    /// Build the complex, print its face counts and optionally export it.
    Complex {
        file: PathBuf,
        #[arg(long, value_name = "PATH")]
        export_dot: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        export_simplices: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_DIM)]
        max_dim: usize,
    },
    /// Link and residue of a simplex, as simplex lists.
    Links {
        file: PathBuf,
        #[arg(short, long, value_delimiter = ',', required = true)]
        simplex: Vec<String>,
    },
    /// Whether the complex is k-large (exit 1 if not).
    Klarge {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        /// Check every residue instead.
        #[arg(long)]
        local: bool,
    },
    /// First homology of the complex.
    H1 { file: PathBuf },
    /// Contract a cycle and print the moves (exit 3 if no contraction is found).
    Reduce {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<String>,
        #[arg(long, default_value_t = HomotopyBounds::default().max_len)]
        max_len: usize,
        #[arg(long, default_value_t = HomotopyBounds::default().max_steps)]
        max_steps: usize,
        #[arg(long, value_enum, default_value_t = Method::Generic)]
        method: Method,
        /// Print the witness as JSON.
        #[arg(long)]
        json: bool,
    },
    /// A shortest path from -v to -u.
    Geodesic(PairArgs),
    /// Write a generated system to a file.
    Gen {
        #[command(subcommand)]
        model: GenModel,
    },
    /// Run the verification suites (exit 1 on failure, 3 if only inconclusive).
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Also write the JSON report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Add wall times to the table.
        #[arg(long)]
        timings: bool,
        #[arg(long, default_value_t = VerifyBounds::default().cycle_len_cap)]
        cycle_cap: usize,
        #[arg(long, default_value_t = VerifyBounds::default().max_len)]
        max_len: usize,
        #[arg(long, default_value_t = VerifyBounds::default().max_steps)]
        max_steps: usize,
    },
}

#[derive(Args)]
struct PairArgs {
    file: PathBuf,
    #[arg(short)]
    u: String,
    #[arg(short)]
    v: String,
}

#[derive(Subcommand)]
enum GenModel {
    /// Vertices u{n} for min <= n <= max.
    Line {
        #[arg(long, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, allow_hyphen_values = true)]
        max: i64,
        #[command(flatten)]
        out: GenOut,
    },
    /// Vertices x{a}y{b} of a window of the triangulated plane.
    Lattice {
        #[arg(long, default_value_t = 5)]
        width: u64,
        #[arg(long, default_value_t = 5)]
        height: u64,
        /// Shift the window so that it starts at (a, b).
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        origin: Option<Vec<i64>>,
        #[command(flatten)]
        out: GenOut,
    },
    /// A random connected graph read as a system.
    Graph {
        #[arg(long, default_value_t = 20)]
        nodes: usize,
        /// Probability of each edge beyond a random spanning tree.
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[command(flatten)]
        out: GenOut,
    },
}

#[derive(Args)]
struct GenOut {
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Generic,
    Dcs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Distance,
    Girth,
    Sc,
    Contractible,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

fn load(path: &Path) -> Result<SurfaceSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    SurfaceSystem::load(&text).with_context(|| format!("loading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn pair(args: &PairArgs) -> Result<(SurfaceSystem, usize, usize)> {
    let system = load(&args.file)?;
    let u = system.vertex(&args.u)?;
    let v = system.vertex(&args.v)?;
    Ok((system, u, v))
}

fn print_witness(out: &mut String, complex: &FlagComplex, witness: &NullHomotopyWitness, json: bool) {
    if json {
        say!(out, "{}", serde_json::to_string_pretty(witness).expect("witnesses serialize"));
        return;
    }
    say!(out, "start {}", complex.labels_of(&witness.start).join(","));
    for step in &witness.steps {
        let mv = match step.mv {
            Move::Backtrack { at } => format!("backtrack at {at}"),
            Move::Shortcut { at } => format!("shortcut at {at}"),
            Move::Detour { at, via } => format!("detour after {at} via {}", complex.label(via)),
        };
        say!(out, "{mv}: {}", complex.labels_of(&step.cycle).join(","));
    }
    say!(out, "trivial in {} moves", witness.len());
}

fn print_largeness(out: &mut String, check: &LargenessCheck) -> u8 {
    say!(out, "{}", check.large);
    if let Some(w) = &check.witness {
        if w.context.is_empty() {
            say!(out, "diagonal-free cycle {}", w.cycle.join(","));
        } else {
            say!(out, "diagonal-free cycle {} around {}", w.cycle.join(","), w.context.join(","));
        }
    }
    if check.large {
        0
    } else {
        FAILURE
    }
}

fn run(cli: Cli, out: &mut String) -> Result<u8> {
    match cli.command {
        Command::Validate { file } => {
            let system = load(&file)?;
            let stored = system.stored_patterns().count();
            say!(out, "ok: {} vertices, {stored} intersecting pairs", system.len());
        }
        Command::Spread(args) => {
            let (system, u, v) = pair(&args)?;
            let cs = if u == v { 0 } else { system.covering_spread(u, v)? };
            say!(out, "{cs}");
        }
        Command::Distance { pair: args, bfs } => {
            let (system, u, v) = pair(&args)?;
            if bfs {
                match system.build_complex(1).distance(u, v)? {
                    Some(d) => say!(out, "{d}"),
                    None => say!(out, "unreachable"),
                }
            } else {
                say!(out, "{}", system.spread_distance(u, v)?);
            }
        }
        Command::Complex { file, export_dot, export_simplices, max_dim } => {
            let complex = load(&file)?.build_complex(max_dim);
            say!(out, "vertices {}", complex.num_vertices());
            for d in 1..=max_dim {
                let count = complex.simplices(d).len();
                if count == 0 {
                    break;
                }
                say!(out, "{d}-simplices {count}");
            }
            match complex.dimension() {
                Some(d) => say!(out, "dimension {d}"),
                None => say!(out, "dimension empty"),
            }
            if let Some(path) = export_dot {
                write(&path, &complex.to_dot())?;
            }
            if let Some(path) = export_simplices {
                write(&path, &complex.to_simplex_list())?;
            }
        }
        Command::Links { file, simplex } => {
            let complex = load(&file)?.build_complex(DEFAULT_MAX_DIM);
            let sigma = simplex.iter().map(|id| complex.vertex(id)).collect::<Result<Vec<_>, _>>()?;
            say!(out, "link");
            put!(out, "{}", complex.link(&sigma)?.to_simplex_list());
            say!(out, "residue");
            put!(out, "{}", complex.residue(&sigma)?.to_simplex_list());
        }
        Command::Klarge { file, k, local } => {
            let complex = load(&file)?.build_complex(DEFAULT_MAX_DIM);
            let check = if local { is_locally_k_large(&complex, k)? } else { is_k_large(&complex, k)? };
            return Ok(print_largeness(out, &check));
        }
        Command::H1 { file } => {
            let complex = load(&file)?.build_complex(2);
            say!(out, "{}", homology_h1(&complex));
        }
        Command::Reduce { file, cycle, max_len, max_steps, method, json } => {
            let system = load(&file)?;
            let complex = system.build_complex(DEFAULT_MAX_DIM);
            let cycle = Cycle::from_labels(&complex, &cycle)?;
            let bounds = HomotopyBounds { max_len, max_steps };
            match method {
                Method::Generic => match reduce_cycle_homotopy(&complex, &cycle, bounds)? {
                    SearchOutcome::Trivial(w) => print_witness(out, &complex, &w, json),
                    SearchOutcome::Inconclusive { explored, exhausted } => {
                        let why = if exhausted {
                            "every path within the length bound was visited"
                        } else {
                            "step limit reached"
                        };
                        say!(out, "inconclusive after {explored} states: {why}");
                        return Ok(INCONCLUSIVE);
                    }
                },
                Method::Dcs => {
                    if !system.capabilities().supports_dcs {
                        bail!("{} has no double curve sum; use --method generic", file.display());
                    }
                    match kakimizu_null_homotopy(&system, &complex, &cycle, bounds)? {
                        ReductionOutcome::Trivial(w) => print_witness(out, &complex, &w, json),
                        ReductionOutcome::Inconclusive { partial, explored } => {
                            say!(out, "inconclusive after {explored} moves");
                            print_witness(out, &complex, &partial, json);
                            return Ok(INCONCLUSIVE);
                        }
                    }
                }
            }
        }
        Command::Geodesic(args) => {
            let (system, u, v) = pair(&args)?;
            let path = system.geodesic(u, v)?;
            let ids: Vec<_> = path.iter().map(|&x| system.id(x)).collect();
            say!(out, "{}", ids.join(" "));
        }
        Command::Gen { model } => {
            let (system, out) = match model {
                GenModel::Line { min, max, out } => (line_model(min, max)?, out),
                GenModel::Lattice { width, height, origin, out } => {
                    let system = match origin.as_deref() {
                        Some(&[a, b]) => lattice_window(a, a + width as i64 - 1, b, b + height as i64 - 1)?,
                        _ => lattice_model(width, height)?,
                    };
                    (system, out)
                }
                GenModel::Graph { nodes, p, out } => {
                    if nodes == 0 {
                        bail!("--nodes must be positive");
                    }
                    (graph_to_system(&random_connected_graph(nodes, p, out.seed))?, out)
                }
            };
            write(&out.output, &system.save())?;
        }
        Command::Verify { file, suite, format, json, timings, cycle_cap, max_len, max_steps } => {
            let system = load(&file)?;
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Distance => Suite::Distance,
                SuiteArg::Girth => Suite::Girth,
                SuiteArg::Sc => Suite::Sc,
                SuiteArg::Contractible => Suite::Contractible,
            };
            let bounds = VerifyBounds { cycle_len_cap: cycle_cap, max_len, max_steps };
            let report = run_suite(&system, suite, bounds);
            match format {
                Format::Table => put!(out, "{}", report.to_table(timings)),
                Format::Json => put!(out, "{}", report.to_json()),
            }
            if let Some(path) = json {
                write(&path, &report.to_json())?;
            }
            return Ok(match report.verdict {
                Verdict::Pass => 0,
                Verdict::Fail => FAILURE,
                Verdict::Inconclusive => INCONCLUSIVE,
            });
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    // a closed pipe downstream is not an error
    if let Err(e) = io::stdout().write_all(out.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(FAILURE);
        }
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}
