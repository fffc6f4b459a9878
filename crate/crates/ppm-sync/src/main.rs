//! Thin CLI over the sweep harness and the order-statistic analytics.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ppm_sync::order_stats::{
    cramer_mean, cramer_var, dominance_report, order_stat_oracle, OrderStatQuery,
};
use ppm_sync::params::CanonicalParams;
use ppm_sync::sweep::{
    export_results, run_sweep, write_results, OutputFormat, SweepConfig, WorkerCount,
};

#[derive(Parser)]
#[command(
    name = "ppm-sync",
    version,
    about = "PPM multipath synchronization experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo sweep from a TOML configuration.
    Run {
        /// Configuration file.
        #[arg(long)]
        config: PathBuf,
        /// Override the configured master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the configured worker count.
        #[arg(long)]
        workers: Option<usize>,
        /// Override the configured output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the configured output format (csv|json).
        #[arg(long)]
        format: Option<OutputFormat>,
    },
    /// Print the exact order-statistic oracle next to the asymptotic
    /// formulas for the nu-th largest of G standard normals.
    Oracle {
        /// Rank from the top (1 = maximum).
        #[arg(long)]
        nu: usize,
        /// Population size.
        #[arg(long = "G")]
        g: usize,
    },
    /// Print the dominance analysis for a canonical operating point.
    Report {
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "L")]
        l: usize,
        #[arg(long = "k")]
        k: f64,
    },
}

fn run(cli: Cli) -> ppm_sync::Result<()> {
    match cli.command {
        Command::Run {
            config,
            seed,
            workers,
            out,
            format,
        } => {
            let mut cfg = SweepConfig::load(&config)?;
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            if let Some(workers) = workers {
                cfg.worker_count = WorkerCount::Fixed(workers);
            }
            if let Some(out) = out {
                cfg.output_path = Some(out);
            }
            if let Some(format) = format {
                cfg.output_format = format;
            }

            let result = run_sweep(&cfg)?;
            for p in &result.points {
                for d in &p.detectors {
                    eprintln!(
                        "M={} L={} k={} {}: zero_capture={:.4} miss={:.4} capture_fraction={:.4}",
                        p.num_positions,
                        p.num_paths,
                        p.snr_scale,
                        d.detector,
                        d.zero_capture.rate,
                        d.miss.rate,
                        d.capture_fraction.rate,
                    );
                }
            }
            match &cfg.output_path {
                Some(path) => {
                    export_results(&result, path, cfg.output_format)?;
                    eprintln!("wrote {}", path.display());
                }
                None => write_results(&result, cfg.output_format, &mut std::io::stdout())?,
            }
            Ok(())
        }
        Command::Oracle { nu, g } => {
            let (mean, var) = order_stat_oracle(nu, g)?;
            println!("rank {nu} of {g} standard normals");
            println!("oracle    : mean {mean:.9}  var {var:.9}");
            match OrderStatQuery::new(nu, g, 0.0, 1.0)
                .and_then(|q| Ok((cramer_mean(&q)?, cramer_var(&q)?)))
            {
                Ok((am, av)) => {
                    println!("asymptotic: mean {am:.9}  var {av:.9}");
                    println!("error     : mean {:+.3e}  var {:+.3e}", am - mean, av - var);
                }
                Err(e) => println!("asymptotic: not applicable ({e})"),
            }
            Ok(())
        }
        Command::Report { m, l, k } => {
            let c = CanonicalParams::new(m, l, k)?;
            print!("{}", dominance_report(&c)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
