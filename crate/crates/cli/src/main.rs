mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cylkit::checker::{Mode, DEFAULT_SAMPLES, DEFAULT_SEED};
use cylkit::suites::SuiteId;
use cylkit::terms::SigTag;

#[derive(Parser, Debug)]
#[command(
    name = "cylkit",
    version,
    about = "Finite-model workbench for algebras of relations"
)]
struct Cli {
    /// Worker threads for the checker and the representation stages.
    #[arg(long, global = true, env = "CYLKIT_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check equations or a whole suite in a finite algebra.
    Check(CheckArgs),
    /// Build the complex algebra of an atom structure and write its operator tables.
    Cm(CmArgs),
    /// Compute the atom structure of an algebra given by operator tables.
    Uf(UfArgs),
    /// Check that an algebra is isomorphic to Cm of its atom structure.
    Roundtrip(RoundtripArgs),
    /// Run a representation demo and write its manifest.
    Represent(RepresentArgs),
    /// Write the instances of a suite, one labelled equation per entry.
    ExportSuite(ExportArgs),
    /// Search small atom structures for a counterexample to an equation.
    Search(SearchArgs),
}

#[derive(Args, Debug, Clone)]
pub struct AlgebraArgs {
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    /// Size of the base of the full set algebra.
    #[arg(long, default_value_t = 2)]
    base: usize,
    /// Use Cm of this atom-structure JSON instead of the set algebra.
    #[arg(long, conflicts_with = "tables")]
    structure: Option<PathBuf>,
    /// Use the algebra given by these operator tables instead of the set algebra.
    #[arg(long)]
    tables: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["suite", "eq", "eq_file"]))]
pub struct CheckArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Option<SuiteId>,
    #[arg(long)]
    eq: Vec<String>,
    #[arg(long)]
    eq_file: Option<PathBuf>,
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Auto)]
    mode: ModeArg,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest assignment count checked exhaustively per equation.
    #[arg(long)]
    budget: Option<u128>,
    /// Stop at the first failing instance.
    #[arg(long)]
    fail_fast: bool,
    /// Include optional variants of the suite's schemas.
    #[arg(long)]
    include_optional: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Random,
    Auto,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exhaustive => Mode::Exhaustive,
            ModeArg::Random => Mode::Random,
            ModeArg::Auto => Mode::Auto,
        }
    }
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["structure", "seq"]))]
pub struct CmArgs {
    /// Atom-structure JSON.
    #[arg(long)]
    structure: Option<PathBuf>,
    /// Use the structure of all sequences over a base of this size.
    #[arg(long)]
    seq: Option<usize>,
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    #[arg(long, value_parser = parse_sig, default_value = "CSPD")]
    sig: SigTag,
    /// Write the operator tables here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["tables", "seq"]))]
pub struct UfArgs {
    /// Operator-tables JSON.
    #[arg(long)]
    tables: Option<PathBuf>,
    /// Dump the structure of all sequences over a base of this size.
    #[arg(long)]
    seq: Option<usize>,
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    #[arg(long, value_parser = parse_sig, default_value = "CSPD")]
    sig: SigTag,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["structure", "tables"]))]
pub struct RoundtripArgs {
    #[arg(long)]
    structure: Option<PathBuf>,
    #[arg(long)]
    tables: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// Substitutions from twisted diagonals, represented by rearranging a blow-up.
    Sec5,
    /// Permutations on repetition-free atoms, represented by splitting.
    Sec6,
}

#[derive(Args, Debug)]
pub struct RepresentArgs {
    #[arg(long, value_enum)]
    demo: Demo,
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    #[arg(long, default_value_t = 2)]
    base: usize,
    /// Size of the factor base. Defaults to |U|*alpha for sec5 and alpha! for sec6.
    #[arg(long = "W")]
    w: Option<usize>,
    /// Twist of the diagonals in the sec5 demo.
    #[arg(long, default_value_t = 1)]
    shift: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Random elements per FPA instance on the sec6 image algebra.
    #[arg(long, default_value_t = 256)]
    samples: u64,
    /// Write the manifest here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: SuiteId,
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    #[arg(long)]
    include_optional: bool,
    /// For THM2/THM3, allow repeated indices where the side conditions do.
    #[arg(long)]
    all_indices: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    eq: String,
    #[arg(long, default_value_t = 3)]
    alpha: usize,
    #[arg(long, default_value_t = cylkit::checker::search::MAX_SEARCH_ATOMS)]
    max_atoms: usize,
    /// Only equivalence relations for c and map graphs for s and p.
    #[arg(long)]
    restricted: bool,
    #[arg(long, default_value_t = 1 << 22)]
    max_structures: u64,
    /// Write the witness structure here.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<SuiteId, String> {
    s.parse()
        .map_err(|e: cylkit::suites::SuiteError| e.to_string())
}

fn parse_sig(s: &str) -> Result<SigTag, String> {
    [SigTag::C, SigTag::Cs, SigTag::Csp, SigTag::Cspd, SigTag::Pa]
        .into_iter()
        .find(|t| t.as_str().eq_ignore_ascii_case(s))
        .ok_or_else(|| format!("unknown signature {s:?}; expected C, CS, CSP, CSPD or PA"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Check(a) => commands::check(a),
        Command::Cm(a) => commands::cm(a),
        Command::Uf(a) => commands::uf(a),
        Command::Roundtrip(a) => commands::roundtrip(a),
        Command::Represent(a) => commands::represent(a),
        Command::ExportSuite(a) => commands::export_suite(a),
        Command::Search(a) => commands::search(a),
    };
    match result {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
