use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use weakwreath::field::FieldDesc;
use weakwreath_cli::commands::{
    cmd_check, cmd_factorize, cmd_spinchain, cmd_wdl, cmd_wreath, CheckKind, SpinChainArgs,
};

/// Exact engine for weak distributive laws, iterated weak wreath products
/// and spin-chain observable algebras.
#[derive(Parser)]
#[command(name = "weakwreath", version, about)]
struct Cli {
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Field override: `rational` or `prime:p`
    #[arg(long, global = true)]
    field: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a structure-constant file
    Check {
        /// What to check: algebra | coalgebra | demimonad | weak-bialgebra
        #[arg(long)]
        kind: CheckKind,
        path: PathBuf,
    },
    /// Check a weak distributive law given by two algebra files and a map file
    Wdl {
        t: PathBuf,
        s: PathBuf,
        lambda: PathBuf,
    },
    /// Iterated weak wreath product of a chain manifest
    Wreath {
        manifest: PathBuf,
        /// Fusion order k1,k2,… to compare against the canonical result
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Verify that every fusion order yields the same monad
        #[arg(long)]
        all_orders: bool,
    },
    /// Build and analyze the alternating spin chain of a weak bialgebra
    Spinchain {
        /// Builtin name (f z2 z3 s3 m1 m2 m3) or a structure file path
        source: String,
        /// Last site index n (the chain has sites 0…n)
        #[arg(short = 'n', long = "sites")]
        sites: usize,
        /// Put the dual on even sites instead of H
        #[arg(long)]
        dual_even_sites: bool,
        /// Verify the cube of sub-interval algebras
        #[arg(long)]
        cube: bool,
        /// Verify the factorization conditions on the cube
        #[arg(long)]
        factorization_check: bool,
        /// Golden-value table
        #[arg(long, default_value = "data/golden.txt")]
        golden: PathBuf,
        /// Recompute the golden table with the independent rank oracle
        #[arg(long)]
        regen_golden: bool,
    },
    /// Binary factorization round trip on a weak distributive law
    Factorize {
        t: PathBuf,
        s: PathBuf,
        lambda: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let field = match cli.field.as_deref().map(str::parse::<FieldDesc>) {
        None => None,
        Some(Ok(f)) => Some(f),
        Some(Err(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Check { kind, path } => cmd_check(path, *kind, field),
        Command::Wdl { t, s, lambda } => cmd_wdl(t, s, lambda, field),
        Command::Wreath {
            manifest,
            order,
            all_orders,
        } => cmd_wreath(manifest, order.as_deref(), *all_orders, field),
        Command::Spinchain {
            source,
            sites,
            dual_even_sites,
            cube,
            factorization_check,
            golden,
            regen_golden,
        } => cmd_spinchain(&SpinChainArgs {
            source: source.clone(),
            sites: *sites,
            dual_even_sites: *dual_even_sites,
            cube: *cube,
            factorization_check: *factorization_check,
            golden: golden.clone(),
            regen_golden: *regen_golden,
            field,
        }),
        Command::Factorize { t, s, lambda } => cmd_factorize(t, s, lambda, field),
    };
    match outcome {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            // timing stays on stderr so reports are byte-identical across runs
            eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
