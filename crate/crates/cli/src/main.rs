mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twistcode::twist::{Family, DEFAULT_N_MAX};

#[derive(Parser)]
#[command(
    name = "twistcode",
    version,
    about = "Character tables, irreducible products of characters and the quantum codes they induce"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Clone)]
pub struct Options {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest tensor power scanned for the minimal n
    #[arg(long, global = true, default_value_t = DEFAULT_N_MAX)]
    pub n_max: u32,

    /// Largest t tried for the unitary t-group check
    #[arg(long, global = true, default_value_t = 6)]
    pub t_max: u32,

    /// Absolute tolerance for numerical checks (default 1e-9·q^n)
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Worker threads; output is identical for every value
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,

    /// Seed for the random probes used by `verify`
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Skip exact orthogonality checks when loading CTBL files
    #[arg(long, global = true)]
    pub no_validate: bool,

    /// Also report pairs whose λ is linear
    #[arg(long, global = true)]
    pub include_trivial: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the character table of a group and print it as CTBL
    Table {
        /// PERMGROUP, MATREP or CTBL file
        input: PathBuf,
        /// Refuse groups with more elements than this
        #[arg(long)]
        cap: Option<u64>,
    },
    /// List APP pairs and the smallest code of each orbit
    App {
        /// CTBL, PERMGROUP or MATREP file; a MATREP fixes f to its own character
        input: PathBuf,
        /// Restrict f to the characters matching DEG[:KER][@IDX]
        #[arg(long)]
        f: Option<String>,
    },
    /// Smallest n with λ contained in the n-th tensor power of f
    Minn {
        input: PathBuf,
        /// Signature DEG[:KER][@IDX] of f
        f: String,
        /// Signature DEG[:KER][@IDX] of λ
        lambda: String,
    },
    /// Build and numerically certify a code inside f^⊗n
    Verify {
        /// MATREP file with the generators of f
        matrep: PathBuf,
        /// Signature DEG[:KER][@IDX] of λ
        lambda: String,
        /// Number of physical qudits
        n: usize,
        /// CTBL file checked for consistency with the group
        #[arg(long)]
        table: Option<PathBuf>,
        /// Largest error weight checked
        #[arg(long, default_value_t = 1)]
        weight: usize,
    },
    /// Weil character degrees and code parameters of Sp(2b,3) or SU(b,2)
    Family {
        /// `sp` or `su`
        family: Family,
        b: u32,
    },
    /// Haar moment ∫|tr U|^{2t} dU over U(q)
    Moment { q: u32, t: u32 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = cli.opts.clone();
    let result = match cli.command {
        Command::Table { input, cap } => commands::table(&input, cap, &opts),
        Command::App { input, f } => commands::app(&input, f.as_deref(), &opts),
        Command::Minn { input, f, lambda } => commands::minn(&input, &f, &lambda, &opts),
        Command::Verify { matrep, lambda, n, table, weight } => {
            commands::verify(&matrep, &lambda, n, table.as_deref(), weight, &opts)
        }
        Command::Family { family, b } => Ok(commands::family(family, b)),
        Command::Moment { q, t } => Ok(commands::moment(q, t)),
    };
    match result {
        Ok(out) => match out.render(opts.format) {
            Ok(s) => {
                print!("{s}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            if opts.format == Format::Json {
                println!("{}", e.to_json());
            } else {
                eprintln!("error: {}", e.message);
            }
            ExitCode::from(e.code)
        }
    }
}
