use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nestint::hardness::predrawn_dump;
use nestint::oracle::{brute_nesting_with, brute_triple_with, OracleConfig, DEFAULT_CAP};
use nestint::{
    build_minimal_representation, build_mpq_tree, decode, encode, min_nesting, parse_graph, parse_representation,
    random_interval_graph, reduce_3partition_with, solve_small, BitCode, Error, Graph, ReduceOptions,
    ThreePartitionInstance,
};

/// Minimum nesting of interval graphs.
///
/// Graphs are edge lists: a header `n m`, then one `u v` pair per line,
/// vertices `0..n`. Lines starting with `#` are ignored. Input is read from
/// the given path, or standard input when it is absent or `-`.
#[derive(Parser)]
#[command(name = "nestint", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print `yes` if the graph is an interval graph with nesting at most k.
    Recognize {
        #[arg(long)]
        k: usize,
        input: Option<PathBuf>,
    },
    /// Print `nu=<k>`, the minimum nesting.
    Nesting {
        input: Option<PathBuf>,
        /// Also print the triple of every MPQ-tree node as TSV.
        #[arg(long)]
        triples: bool,
    },
    /// Write a representation of minimum nesting as `v l r` lines.
    Represent {
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write a partition into proper layers as `v label` lines.
    Layers {
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Encode a representation of the graph as a bit code.
    Encode {
        input: Option<PathBuf>,
        /// Encode this representation instead of a minimal one.
        #[arg(long)]
        repr: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decode a bit code into an edge list.
    Decode {
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the decoded representation here.
        #[arg(long)]
        repr: Option<PathBuf>,
    },
    /// Dump the MPQ-tree of the twin-pruned graph.
    Tree { input: Option<PathBuf> },
    /// Minimum nesting by exhaustive search over clique orderings.
    Oracle {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also print the gadget triple.
        #[arg(long)]
        triples: bool,
    },
    /// Generate a random interval graph and a representation of it.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Maximum interval length, in units of the mean left-endpoint gap.
        #[arg(long, default_value_t = 2.0)]
        spread: f64,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        repr: Option<PathBuf>,
    },
    /// Build the two-length extension instance for a 3-Partition instance
    /// given as `s M` followed by the items.
    Reduce3p {
        input: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write the pre-drawn intervals as `v l r len` lines.
        #[arg(long)]
        predrawn: Option<PathBuf>,
        /// Add the two guard vertices beside the outer pre-drawn intervals.
        #[arg(long)]
        guards: bool,
        #[arg(long)]
        allow_outside_window: bool,
        /// Solve the instance and write the extending representation here.
        #[arg(long)]
        solve: Option<PathBuf>,
    },
}

enum Failure {
    Core(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = Result<T, Failure>;

fn read_bytes(path: Option<&Path>) -> Res<Vec<u8>> {
    let mut buf = Vec::new();
    match path {
        None => io::stdin().read_to_end(&mut buf).map(|_| buf).map_err(|e| Failure::Io("<stdin>".into(), e)),
        Some(p) if p == Path::new("-") => read_bytes(None),
        Some(p) => fs::read(p).map_err(|e| Failure::Io(p.to_path_buf(), e)),
    }
}

fn read_text(path: Option<&Path>) -> Res<String> {
    let bytes = read_bytes(path)?;
    String::from_utf8(bytes).map_err(|_| Failure::Core(Error::Parse { line: 0, msg: "input is not UTF-8".into() }))
}

fn read_graph(path: Option<&Path>) -> Res<Graph> {
    Ok(parse_graph(&read_text(path)?)?)
}

fn write_out(path: Option<&Path>, data: &[u8]) -> Res<()> {
    match path {
        None => io::stdout().write_all(data).map_err(|e| Failure::Io("<stdout>".into(), e)),
        Some(p) => fs::write(p, data).map_err(|e| Failure::Io(p.to_path_buf(), e)),
    }
}

fn run(cmd: Command) -> Res<ExitCode> {
    match cmd {
        Command::Recognize { k, input } => {
            let g = read_graph(input.as_deref())?;
            match min_nesting(&g) {
                Ok((nu, _)) => {
                    let yes = nu <= k;
                    println!("{}", if yes { "yes" } else { "no" });
                    return Ok(if yes { ExitCode::SUCCESS } else { ExitCode::from(1) });
                }
                Err(e @ (Error::NotInterval | Error::NotChordal)) => {
                    println!("no");
                    return Err(e.into());
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Nesting { input, triples } => {
            let g = read_graph(input.as_deref())?;
            let (nu, ann) = min_nesting(&g)?;
            println!("nu={nu}");
            if triples {
                print!("{}", ann.triples_tsv());
            }
        }
        Command::Represent { input, output } => {
            let g = read_graph(input.as_deref())?;
            let (_, ann) = min_nesting(&g)?;
            let r = build_minimal_representation(&g, &ann)?;
            write_out(output.as_deref(), r.dump().as_bytes())?;
        }
        Command::Layers { input, output } => {
            let g = read_graph(input.as_deref())?;
            let (_, ann) = min_nesting(&g)?;
            let r = build_minimal_representation(&g, &ann)?;
            let text: String = r.proper_layers().label.iter().enumerate().map(|(v, l)| format!("{v} {l}\n")).collect();
            write_out(output.as_deref(), text.as_bytes())?;
        }
        Command::Encode { input, repr, output } => {
            let g = read_graph(input.as_deref())?;
            let r = match repr {
                Some(p) => {
                    let r = parse_representation(&read_text(Some(&p))?)?;
                    if !r.verify(&g) {
                        return Err(Error::Precondition("representation does not match the graph".into()).into());
                    }
                    r
                }
                None => {
                    let (_, ann) = min_nesting(&g)?;
                    build_minimal_representation(&g, &ann)?
                }
            };
            write_out(output.as_deref(), &encode(&r).to_bytes())?;
        }
        Command::Decode { input, output, repr } => {
            let code = BitCode::from_bytes(&read_bytes(input.as_deref())?)?;
            let (g, r) = decode(&code)?;
            write_out(output.as_deref(), g.to_edge_list().as_bytes())?;
            if let Some(p) = repr {
                write_out(Some(&p), r.dump().as_bytes())?;
            }
        }
        Command::Tree { input } => {
            let g = read_graph(input.as_deref())?;
            if g.n() > 0 {
                let red = nestint::prune_twins(&g);
                print!("{}", build_mpq_tree(&red.pruned)?.dump());
            }
        }
        Command::Oracle { input, cap, jobs, triples } => {
            let g = read_graph(input.as_deref())?;
            let cfg = OracleConfig { cap, jobs };
            println!("nu={}", brute_nesting_with(&g, cfg)?);
            if triples {
                println!("triple={}", brute_triple_with(&g, cfg)?);
            }
        }
        Command::Gen { n, seed, spread, output, repr } => {
            let (g, r) = random_interval_graph(n, seed, spread);
            write_out(output.as_deref(), g.to_edge_list().as_bytes())?;
            if let Some(p) = repr {
                write_out(Some(&p), r.dump().as_bytes())?;
            }
        }
        Command::Reduce3p { input, output, predrawn, guards, allow_outside_window, solve } => {
            let inst = ThreePartitionInstance::parse(&read_text(input.as_deref())?)?;
            let h = reduce_3partition_with(&inst, ReduceOptions { guards, allow_outside_window })?;
            write_out(output.as_deref(), h.graph.to_edge_list().as_bytes())?;
            if let Some(p) = predrawn {
                write_out(Some(&p), predrawn_dump(&h).as_bytes())?;
            }
            if let Some(p) = solve {
                match solve_small(&h)? {
                    Some(r) => {
                        write_out(Some(&p), r.dump().as_bytes())?;
                        eprintln!("solvable");
                    }
                    None => {
                        eprintln!("unsolvable");
                        return Ok(ExitCode::from(1));
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::NotInterval | Error::NotChordal => 3,
                Error::CapExceeded { .. } => 4,
                _ => 2,
            })
        }
    }
}
