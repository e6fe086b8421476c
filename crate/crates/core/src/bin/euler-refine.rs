use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use euler_refine::cli::{
    self, bijection_checks, cmd_export, cmd_openq, cmd_ratios, cmd_table, cmd_verify,
    enumeration_cap, render_bijection_checks, render_verify, Format, Population, SequenceName,
    TableMethod, TableOptions, VerifyOptions,
};
use euler_refine::Error;

#[derive(Parser)]
#[command(name = "euler-refine", version, about = "Refinements of Euler numbers: tables, identity checks and exports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format: table, json, csv or bfile
    #[arg(long, default_value = "table", value_parser = parse::<Format>)]
    format: Format,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest degree that may be enumerated (default: $EULER_REFINE_CAP or 11)
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Print E, E↗, E↖, E↑, E↓ (and optionally D↑, D↓) for n = 2..=max-n
    Table {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// enum, formula, egf or all (all cross-checks the three routes)
        #[arg(long, default_value = "formula", value_parser = parse::<TableMethod>)]
        method: TableMethod,
        /// Population for E↗/E↖: up-down, down-up or alternating
        #[arg(long, default_value = "up-down", value_parser = parse::<Population>)]
        population: Population,
        /// Add D↑/D↓ columns (enumeration)
        #[arg(long)]
        with_d: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Check every identity by enumeration, formula and EGF; exit 1 on failure
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        egf_order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate E↖/E↗ and E↓/E↑ as exact fractions and decimals
    Ratios {
        #[arg(long, default_value_t = 40)]
        max_n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compute D↑/D↓ by enumeration and match them against candidate EGFs
    Openq {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Export one sequence (E, Ene, Enw, Eup, Edown, Dup, Ddown)
    Export {
        sequence: String,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustively check the explicit bijections for 4 <= n <= max-n
    BijectionCheck {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn parse<T: std::str::FromStr<Err = Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn emit(common: &Common, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Table { max_n, method, population, with_d, common } => {
            let cap = enumeration_cap(common.cap)?;
            let opts = TableOptions { max_n, method, population, with_d, cap, format: common.format };
            emit(&common, &cmd_table(&opts)?)?;
            Ok(true)
        }
        Command::Verify { max_n, egf_order, common } => {
            let cap = enumeration_cap(common.cap)?;
            let set = cmd_verify(&VerifyOptions { max_n, egf_order, cap, euler_override: None })?;
            emit(&common, &render_verify(&set, common.format)?)?;
            Ok(set.passed())
        }
        Command::Ratios { max_n, common } => {
            emit(&common, &cmd_ratios(max_n, common.format)?)?;
            Ok(true)
        }
        Command::Openq { max_n, common } => {
            let cap = enumeration_cap(common.cap)?;
            let report = cli::openq_report(max_n, cap)?;
            emit(&common, &cmd_openq(max_n, cap, common.format)?)?;
            Ok(report.partition_holds())
        }
        Command::Export { sequence, max_n, common } => {
            let cap = enumeration_cap(common.cap)?;
            let name: SequenceName = sequence.parse()?;
            emit(&common, &cmd_export(name, max_n, common.format, cap)?)?;
            Ok(true)
        }
        Command::BijectionCheck { max_n, common } => {
            let cap = enumeration_cap(common.cap)?;
            let checks = bijection_checks(max_n, cap)?;
            emit(&common, &render_bijection_checks(&checks, common.format)?)?;
            Ok(checks.iter().all(|c| c.pass))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
