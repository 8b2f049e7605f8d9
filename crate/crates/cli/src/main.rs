mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Parser)]
#[command(name = "cobord", version, about = "Exact formal group laws, Chern numbers and degree formulas")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of the universal formal group law, or its axiom check.
    Lazard {
        /// Truncation order (total degree).
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, value_enum, default_value_t = LazardShow::Aij)]
        show: LazardShow,
    },
    /// Per-variety invariants for a catalog.
    Variety {
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long, value_enum, default_value_t = VarietyShow::ChernNumbers)]
        show: VarietyShow,
        /// Restrict to these labels (repeatable).
        #[arg(long = "label")]
        labels: Vec<String>,
    },
    /// Run a verification; exit 0 iff everything passes.
    Check(CheckArgs),
    /// Print the standard catalog as JSON.
    Catalog,
}

#[derive(Clone, Copy, ValueEnum)]
enum LazardShow {
    Aij,
    Axioms,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarietyShow {
    ChernNumbers,
    Sd,
    LazardClass,
}

#[derive(Args)]
struct CatalogArg {
    /// Catalog file, `-` for stdin; the standard catalog when absent.
    #[arg(long, env = "COBORD_CATALOG")]
    catalog: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Adams,
    Products,
    Rost,
    Gdf,
    FglRoundtrip,
    CrossTheory,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    kind: CheckKind,
    #[command(flatten)]
    catalog: CatalogArg,
    /// Source variety label (rost, gdf).
    #[arg(long)]
    source: Option<String>,
    /// Target variety label (rost, gdf).
    #[arg(long)]
    target: Option<String>,
    /// Asserted degree of source -> target.
    #[arg(long, allow_negative_numbers = true)]
    deg: Option<i64>,
    /// Prime for rost.
    #[arg(long)]
    p: Option<u64>,
    /// Asserted degree of the zero-cycle for rost.
    #[arg(long, allow_negative_numbers = true)]
    eta: Option<i64>,
    /// Decomposition term `COEFF:LABEL` for gdf (repeatable).
    #[arg(long = "term", allow_hyphen_values = true)]
    terms: Vec<String>,
    /// Truncation order for fgl-roundtrip.
    #[arg(long, default_value_t = 8)]
    order: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let result = commands::run(cli.command, cli.format, &mut out);
    let _ = out.flush();
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
