//! Command-line front end. [`run`] returns the process exit code:
//! 0 on success, 1 when a verification fails, 2 on bad input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::ar::ArQuiver;
use crate::crystal::{generate_crystal, CrystalGraph, GraphJson, DEFAULT_MAX_NODES};
use crate::error::{Error, Result};
use crate::modclass::ModClassJson;
use crate::promotion::{Promoter, Rectangle};
use crate::quiver::{Family, Quiver, QuiverSpec};
use crate::reineke::ModuleModel;
use crate::tableaux::tableau_crystal;

#[derive(Parser, Debug)]
#[command(name = "arcrystal", version, about = "Crystals of Dynkin quiver representations")]
struct Cli {
    /// Worker threads for crystal generation (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Abort generation once this many nodes exist.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Auslander-Reiten quiver.
    Arq {
        #[command(subcommand)]
        command: ArqCommand,
    },
    /// Highest-weight crystals of the module model.
    Crystal {
        #[command(subcommand)]
        command: CrystalCommand,
    },
    /// Kirillov-Reshetikhin crystals of type A.
    Kr {
        #[command(subcommand)]
        command: KrCommand,
    },
    /// Promotion of a module class in B(m ϖ_j), standard A_n only.
    Promote {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        j: usize,
    },
    /// The vector of starred string lengths of a module class.
    EpsStar {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
struct QuiverArgs {
    #[arg(long, value_enum, ignore_case = true)]
    family: FamilyArg,
    #[arg(long)]
    rank: usize,
    /// Comma-separated arrows `a>b` (chains like `3>2>1` allowed), or `standard`.
    #[arg(long, default_value = "")]
    arrows: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    #[value(name = "A")]
    A,
    #[value(name = "D")]
    D,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Dot,
    Json,
}

#[derive(Subcommand, Debug)]
enum ArqCommand {
    Gamma {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long = "out", value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum CrystalCommand {
    /// Generate B(lambda) from its highest-weight pairings.
    Gen {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Pairings `lambda(h_1),...,lambda(h_n)`.
        #[arg(long)]
        hw: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Check the crystal axioms on a JSON graph.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Compare B(m ϖ_j) with the tableau crystal.
    CompareSsyt {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        m: usize,
    },
}

#[derive(Subcommand, Debug)]
enum KrCommand {
    Gen {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
}

/// Failure of a command: bad input (exit 2) or a failed check (exit 1).
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::Graph(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::A => Family::A,
        FamilyArg::D => Family::D,
    }
}

/// Parse `a>b,c>d` / `3>2>1` / `standard` into arrows.
pub fn parse_arrows(text: &str, rank: usize) -> Result<Vec<[usize; 2]>> {
    let text = text.trim();
    if text == "standard" {
        return Ok((2..=rank).rev().map(|k| [k, k - 1]).collect());
    }
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let verts = part
            .split('>')
            .map(|v| v.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad arrow {part:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if verts.len() < 2 {
            return Err(Error::Parse(format!("bad arrow {part:?}")));
        }
        out.extend(verts.windows(2).map(|w| [w[0], w[1]]));
    }
    Ok(out)
}

fn parse_weight(text: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight entry {x:?}"))))
        .collect()
}

fn build_quiver(args: &QuiverArgs) -> Result<Quiver> {
    Quiver::new(&QuiverSpec { family: family(args.family), rank: args.rank, arrows: parse_arrows(&args.arrows, args.rank)? })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

fn execute(cli: Cli, out: &mut dyn Write) -> std::result::Result<(), Failure> {
    let max_nodes = cli.max_nodes;
    match cli.command {
        Command::Arq { command: ArqCommand::Gamma { quiver, format } } => {
            let ar = ArQuiver::new(&build_quiver(&quiver)?)?;
            match format {
                Format::Dot => write!(out, "{}", ar.to_dot())?,
                Format::Json => write!(out, "{}", to_json(&ar.to_json()))?,
            }
        }
        Command::Crystal { command: CrystalCommand::Gen { quiver, hw, format } } => {
            let model = ModuleModel::new(&build_quiver(&quiver)?)?;
            let crystal = generate_crystal(&model, &parse_weight(&hw)?, max_nodes)?;
            match format {
                Format::Dot => write!(out, "{}", crystal.graph.to_dot())?,
                Format::Json => write!(out, "{}", to_json(&crystal.to_json(&model)))?,
            }
        }
        Command::Crystal { command: CrystalCommand::Verify { input } } => {
            let json: GraphJson = read_json(&input)?;
            let graph = CrystalGraph::from_json(&json).map_err(|e| match e {
                Error::Graph(m) => Failure::Check(m),
                e => Failure::from(e),
            })?;
            let violations = graph.check_axioms();
            if violations.is_empty() {
                writeln!(out, "ok: {} nodes, {} edges", graph.len(), graph.edges().len())?;
            } else {
                for v in &violations {
                    writeln!(out, "{v}")?;
                }
                return Err(Failure::Check(format!("{} axiom violations", violations.len())));
            }
        }
        Command::Crystal { command: CrystalCommand::CompareSsyt { rank, j, m } } => {
            let rect = Rectangle::new(rank, j, m)?;
            let quiver = Quiver::standard_a(rank)?;
            let model = ModuleModel::new(&quiver)?;
            let crystal = generate_crystal(&model, &rect.lambda(), max_nodes)?;
            let tableaux = tableau_crystal(rect, quiver.cartan_matrix())?;
            match crystal.graph.isomorphism(&tableaux)? {
                Some(_) => writeln!(out, "isomorphic: {} nodes", crystal.len())?,
                None => {
                    writeln!(out, "not isomorphic: {} vs {} nodes", crystal.len(), tableaux.len())?;
                    return Err(Failure::Check("crystals differ".into()));
                }
            }
        }
        Command::Kr { command: KrCommand::Gen { rank, j, m, format } } => {
            let promoter = Promoter::new(Rectangle::new(rank, j, m)?)?;
            let kr = promoter.kr_graph(max_nodes)?;
            match format {
                Format::Dot => write!(out, "{}", kr.graph.to_dot())?,
                Format::Json => write!(out, "{}", to_json(&kr.to_json(promoter.model())))?,
            }
        }
        Command::Promote { input, m, j } => {
            let json: ModClassJson = read_json(&input)?;
            let quiver = json.quiver()?;
            let promoter = Promoter::for_quiver(&quiver, Rectangle::new(quiver.rank(), j, m)?)?;
            let module = json.to_modclass(promoter.model().ar())?;
            let promoted = promoter.promote(&module)?;
            write!(out, "{}", to_json(&promoted.to_json(promoter.model().ar())))?;
        }
        Command::EpsStar { input } => {
            let json: ModClassJson = read_json(&input)?;
            let model = ModuleModel::new(&json.quiver()?)?;
            let module = json.to_modclass(model.ar())?;
            writeln!(out, "{}", serde_json::to_string(&model.eps_star_vector(&module)?).expect("serialisable"))?;
        }
    }
    Ok(())
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let threads = cli.threads;
    let mut buffer: Vec<u8> = Vec::new();
    let result = match threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build() {
            Ok(pool) => pool.install(|| execute(cli, &mut buffer)),
            Err(e) => Err(Failure::Usage(format!("cannot start {t} threads: {e}"))),
        },
        None => execute(cli, &mut buffer),
    };
    if out.write_all(&buffer).and_then(|()| out.flush()).is_err() {
        return 1;
    }
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
    }
}
