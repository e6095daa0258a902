use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jc_gme::explab::{emit_csv, parse_config, plot_script, run_sweep, Preset, SweepSpec};
use jc_gme::states::Param;
use jc_gme::Error;

/// Triple Jaynes-Cummings sweeps with entanglement diagnostics.
#[derive(Parser)]
#[command(name = "jcgme", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Genuine negativity of the atoms for alpha = gamma in {0.95, 0.92, 0.90}.
    Fig2(Common),
    /// Pairwise atomic negativities for the same settings.
    Fig3(Common),
    /// Classically correlated initial pairs (alpha = gamma = 0).
    Classical(Common),
    /// Quantum-correlated, unentangled initial pairs (alpha = gamma = 0.3).
    Qcorr(Common),
}

#[derive(Args)]
struct Common {
    /// Output CSV path, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
    /// Also write a matplotlib script that plots the CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    gt_steps: Option<usize>,
    #[arg(long)]
    gt_end: Option<f64>,
    #[arg(long)]
    fock_dim: Option<usize>,
}

impl Common {
    fn apply(&self, spec: &mut SweepSpec) -> jc_gme::Result<()> {
        for (p, v) in [
            (Param::Alpha, self.alpha),
            (Param::Gamma, self.gamma),
            (Param::Beta, self.beta),
            (Param::Kappa, self.kappa),
        ] {
            if let Some(v) = v {
                spec.set_param(p, v)?;
            }
        }
        if let Some(n) = self.gt_steps {
            spec.grid.steps = n;
        }
        if let Some(e) = self.gt_end {
            spec.grid.end = e;
        }
        if let Some(f) = self.fock_dim {
            spec.base = spec.base.with_fock_dim(f)?;
        }
        spec.validate()
    }
}

fn run(cli: Cli) -> jc_gme::Result<()> {
    let (mut spec, common) = match cli.command {
        Command::Sweep { config, common } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| Error::Io(format!("{}: {e}", config.display())))?;
            (parse_config(&text)?, common)
        }
        Command::Fig2(c) => (Preset::Fig2.spec(), c),
        Command::Fig3(c) => (Preset::Fig3.spec(), c),
        Command::Classical(c) => (Preset::Classical.spec(), c),
        Command::Qcorr(c) => (Preset::QuantumCorrelated.spec(), c),
    };
    common.apply(&mut spec)?;
    let table = run_sweep(&spec)?;
    if common.out == "-" {
        emit_csv(&table, io::stdout().lock())?;
    } else {
        emit_csv(&table, BufWriter::new(File::create(&common.out)?))?;
    }
    if let Some(path) = &common.plot {
        let csv = if common.out == "-" {
            "sweep.csv"
        } else {
            common.out.as_str()
        };
        File::create(path)?.write_all(plot_script(csv, &table).as_bytes())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 2 } else { 1 })
        }
    }
}
