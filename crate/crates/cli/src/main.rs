//! `systolecalc`: translation lengths, trace-length brackets, congruence
//! subgroup checks, systole bounds, growth constants and bounded-height
//! enumeration from the command line.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "systolecalc", version, about = "Systole bounds for arithmetic lattices")]
struct Cli {
    /// Output format: aligned text (6 significant figures), CSV or JSON
    /// (shortest round-trip floats).
    #[arg(long, value_enum, default_value = "table", global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Translation length, class and eigenvalue magnitudes of an element.
    Length(ElementArgs),
    /// Both trace-length brackets next to the computed length.
    Bounds(ElementArgs),
    /// Congruence subgroup membership and the trace congruence.
    Membership(MembershipArgs),
    /// Smallest power q with |tr(x^q)| > p^m - n.
    Witness(WitnessArgs),
    /// Length lower bound and systole lower bound at level p^m.
    Syslb(TowerArgs),
    /// Systole bound against log index along a congruence tower.
    Growth(GrowthArgs),
    /// Growth constant, f-value and degree bound for a family.
    Constants(ConstantsArgs),
    /// Bounded-height enumeration of a principal congruence subgroup.
    Enumerate(EnumerateArgs),
    /// Quaternion arithmetic in the standard order of (a, b / Q).
    #[command(subcommand)]
    Quat(QuatCommand),
}

/// An element: an integer matrix, or an algebra together with a quaternion.
#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["matrix", "algebra"])))]
struct ElementInput {
    /// JSON matrix file `{"n": 2, "entries": [[1, 5], [5, 26]]}`.
    #[arg(long, value_name = "PATH")]
    matrix: Option<PathBuf>,
    /// JSON algebra file `{"a": 2, "b": 3}`; requires --element.
    #[arg(long, value_name = "PATH", requires = "element")]
    algebra: Option<PathBuf>,
    /// JSON quaternion file `{"coeffs": ["1", "0", "0", "0"]}`.
    #[arg(long, value_name = "PATH", requires = "algebra")]
    element: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ElementArgs {
    #[command(flatten)]
    input: ElementInput,
    /// Working precision of the root refinement, in bits.
    #[arg(long, default_value_t = 128)]
    bits: u32,
}

#[derive(Args, Debug)]
struct MembershipArgs {
    #[command(flatten)]
    input: ElementInput,
    /// Level N of the congruence subgroup.
    #[arg(long)]
    level: String,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    input: ElementInput,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
}

#[derive(Args, Debug)]
struct TowerArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: u32,
}

#[derive(Args, Debug)]
struct GrowthArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    /// Largest exponent m in the table.
    #[arg(long)]
    mmax: u32,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    /// sl, real, complex, quaternionic, real-field, or a Killing-Cartan
    /// letter A-G (E6/E7/E8 also accepted as E with --rank).
    #[arg(long)]
    family: String,
    /// Matrix size (sl) or hyperbolic dimension.
    #[arg(long)]
    n: Option<u32>,
    /// Rank of a Killing-Cartan type.
    #[arg(long)]
    rank: Option<u32>,
    /// Degree of the field of definition, for Killing-Cartan types and real-field.
    #[arg(long)]
    degree: Option<u32>,
    /// Covolume v > 1 for the degree bound (Killing-Cartan types).
    #[arg(long)]
    volume: Option<f64>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("lvl").required(true).args(["level", "p"])))]
struct EnumerateArgs {
    /// Matrix size for SL_n(Z); ignored with --algebra.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Level N; alternatively give --p and --m.
    #[arg(long)]
    level: Option<String>,
    #[arg(long, requires = "m")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    m: Option<u32>,
    /// Largest absolute entry or coefficient.
    #[arg(long)]
    height: u64,
    /// Enumerate units of the standard quaternion order instead of SL_n(Z).
    #[arg(long, value_name = "PATH")]
    algebra: Option<PathBuf>,
    /// Number of contiguous ranges searched in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = 128)]
    bits: u32,
    /// Candidate budget; overrides SYSTOLECALC_BUDGET.
    #[arg(long)]
    budget: Option<u128>,
    /// Keep only semisimple elements.
    #[arg(long)]
    semisimple_only: bool,
    /// Keep the identity element in the records.
    #[arg(long)]
    include_identity: bool,
}

#[derive(Subcommand, Debug)]
enum QuatCommand {
    /// Product u v.
    Mul(QuatMulArgs),
    /// Reduced trace and reduced norm.
    Norm(QuatArgs),
    /// Real 2x2 image and rational 4x4 image.
    Embed(QuatArgs),
}

#[derive(Args, Debug)]
struct QuatArgs {
    #[arg(long, value_name = "PATH")]
    algebra: PathBuf,
    #[arg(long, value_name = "PATH")]
    element: PathBuf,
}

#[derive(Args, Debug)]
struct QuatMulArgs {
    #[arg(long, value_name = "PATH")]
    algebra: PathBuf,
    /// Left factor.
    #[arg(long, value_name = "PATH")]
    element: PathBuf,
    /// Right factor.
    #[arg(long, value_name = "PATH")]
    other: PathBuf,
}

/// Failures, split by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad invocation or unreadable input; exit 2.
    Usage(String),
    /// Valid input outside an operation's domain; exit 1.
    Domain(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    ExitCode::SUCCESS
                }
                _ => {
                    let rendered = e.render().to_string();
                    let mut lines = rendered.lines().map(str::trim).filter(|l| !l.is_empty());
                    let first = lines.next().unwrap_or("error: invalid arguments");
                    // "missing arguments:" lists the flags on the following line
                    match lines.next() {
                        Some(next) if first.ends_with(':') => eprintln!("{first} {next}"),
                        _ => eprintln!("{first}"),
                    }
                    ExitCode::from(2)
                }
            };
        }
    };
    let mut out = Vec::new();
    match commands::run(cli.command, cli.format, &mut out) {
        Ok(()) => {
            let _ = std::io::stdout().write_all(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
