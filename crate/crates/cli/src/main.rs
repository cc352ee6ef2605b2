use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ckgraph::ktheory::{self, Outcome};
use ckgraph::multigraph::{
    generate_chain, generate_cycle, generate_flower, generate_theta, parse_graph, Multigraph,
};
use ckgraph::sweep::{run_sweep, SweepConfig, SweepMode};
use ckgraph::{zeta, Error, Execution};

const EXIT_INPUT: u8 = 2;
const EXIT_THEOREM: u8 = 3;
const EXIT_INDETERMINATE: u8 = 4;
const EXIT_COUNTEREXAMPLE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "ckgraph",
    version,
    about = "K-theory and zeta invariants of graph edge operators"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// K0, K1, unit order and simplicity flags of a graph.
    Invariants { file: PathBuf },
    /// Compare two graphs up to stable or strict isomorphism.
    Classify(ClassifyArgs),
    /// Ihara-Bass identity and vanishing order at u = 1.
    Zeta { file: PathBuf },
    /// Write a named graph family member.
    Generate {
        #[arg(value_enum)]
        family: Family,
        /// Betti number (flower, theta, chain) or vertex count (cycle).
        param: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every invariant over a batch of small graphs.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    first: PathBuf,
    second: PathBuf,
    #[arg(long, conflicts_with = "strict", required_unless_present = "strict")]
    stable: bool,
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Flower,
    Theta,
    Chain,
    Cycle,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
    #[arg(long, default_value_t = 6)]
    max_edges: usize,
    /// Sample random graphs instead of enumerating all of them.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 500, requires = "random")]
    samples: usize,
    #[arg(long, default_value_t = 42, requires = "random")]
    seed: u64,
    /// Run on the calling thread only.
    #[arg(long)]
    sequential: bool,
    /// Corrupt one entry of every edge matrix (harness self-test).
    #[arg(long)]
    inject_fault: bool,
}

/// A failed command: message for stderr and the exit code.
struct Failure(String, u8);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_theorem_violation() {
            EXIT_THEOREM
        } else {
            EXIT_INPUT
        };
        Failure(e.to_string(), code)
    }
}

type CmdResult = Result<u8, Failure>;

fn read_graph(path: &Path) -> Result<Multigraph, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display()), EXIT_INPUT))?;
    parse_graph(&bytes).map_err(|e| Failure(format!("{}: {e}", path.display()), EXIT_INPUT))
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report serialization cannot fail")
}

fn invariants(file: &Path, format: Format) -> CmdResult {
    let g = read_graph(file)?;
    let r = ktheory::report(&g)?;
    match format {
        Format::Json => println!("{}", json(&r)),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "g           {}", r.g);
            let _ = writeln!(out, "vertices    {}", r.vertices);
            let _ = writeln!(out, "edges       {}", r.edges);
            let _ = writeln!(out, "K0          {}", r.k0);
            let _ = writeln!(out, "K1 rank     {}", r.k1_rank);
            match &r.unit_order {
                Some(n) => {
                    let _ = writeln!(out, "unit order  {n}");
                }
                None => {
                    let _ = writeln!(out, "unit order  infinite");
                }
            }
            let s = r.simplicity;
            let _ = writeln!(
                out,
                "simple      {} (irreducible {}, permutation {})",
                s.simple, s.irreducible, s.permutation
            );
            print!("{out}");
        }
    }
    Ok(0)
}

fn classify(args: &ClassifyArgs, format: Format) -> CmdResult {
    let (g1, g2) = (read_graph(&args.first)?, read_graph(&args.second)?);
    let v = if args.strict {
        ktheory::classify_strict(&g1, &g2)?
    } else {
        ktheory::classify_stable(&g1, &g2)?
    };
    match format {
        Format::Json => println!("{}", json(&v)),
        Format::Text => {
            let outcome = serde_json::to_value(v.outcome).expect("outcome serializes");
            println!("{} {}", v.mode, outcome.as_str().unwrap_or_default());
            if let Some(reason) = &v.reason {
                println!("caveat: {reason}");
            }
        }
    }
    Ok(if v.outcome == Outcome::Indeterminate {
        EXIT_INDETERMINATE
    } else {
        0
    })
}

fn zeta_cmd(file: &Path, format: Format) -> CmdResult {
    let g = read_graph(file)?;
    let r = zeta::zeta_report(&g)?;
    if !r.identity_holds {
        return Err(Failure(
            format!(
                "theorem violation: det(1 - uT) = {} differs from {}",
                r.edge_poly, r.vertex_poly
            ),
            EXIT_THEOREM,
        ));
    }
    match format {
        Format::Json => println!("{}", json(&r)),
        Format::Text => {
            println!("g               {}", r.g);
            println!("det(1 - uT)     {}", r.edge_poly);
            println!("identity holds  {}", r.identity_holds);
            println!("order at u = 1  {}", r.ord_at_one);
        }
    }
    Ok(0)
}

fn generate(family: Family, param: usize, out: Option<&Path>, format: Format) -> CmdResult {
    let g = match family {
        Family::Flower => generate_flower(param),
        Family::Theta => generate_theta(param),
        Family::Chain => generate_chain(param),
        Family::Cycle => generate_cycle(param),
    }?;
    let body = match format {
        Format::Json => format!("{}\n", g.to_json()),
        Format::Text => g.to_text(),
    };
    match out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure(format!("cannot write {}: {e}", path.display()), EXIT_INPUT))?,
        None => print!("{body}"),
    }
    Ok(0)
}

fn verify(args: &VerifyArgs, format: Format) -> CmdResult {
    if args.max_vertices == 0 || args.max_edges == 0 {
        return Err(Failure("bounds must be at least 1".into(), EXIT_INPUT));
    }
    if !args.random && args.max_vertices > 5 {
        return Err(Failure(
            "exhaustive mode supports at most 5 vertices; use --random".into(),
            EXIT_INPUT,
        ));
    }
    let config = SweepConfig {
        max_vertices: args.max_vertices,
        max_edges: args.max_edges,
        mode: if args.random {
            SweepMode::Random {
                samples: args.samples,
                seed: args.seed,
            }
        } else {
            SweepMode::Exhaustive
        },
        execution: if args.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
        inject_fault: args.inject_fault,
    };
    let report = run_sweep(&config);
    match format {
        Format::Json => println!("{}", json(&report)),
        Format::Text => print!("{}", report.to_text()),
    }
    match &report.counterexample {
        None => Ok(0),
        Some(c) => {
            eprintln!("counterexample in {}: {}", c.check, c.detail);
            eprint!("reproducer:\n{}", c.graph.to_text());
            Ok(EXIT_COUNTEREXAMPLE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Invariants { file } => invariants(file, cli.format),
        Command::Classify(args) => classify(args, cli.format),
        Command::Zeta { file } => zeta_cmd(file, cli.format),
        Command::Generate { family, param, out } => {
            generate(*family, *param, out.as_deref(), cli.format)
        }
        Command::Verify(args) => verify(args, cli.format),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure(message, code)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
