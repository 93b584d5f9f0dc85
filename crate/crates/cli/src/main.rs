use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use varkernel::{KernelSpec, VarietySpec};

mod commands;
mod report;

use report::CliError;

#[derive(Parser, Debug)]
#[command(name = "varkernel", version, about = "Kernel approximation experiments over algebraic varieties")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert function by closed form, standard monomials and Vandermonde rank.
    Hilbert {
        #[arg(long)]
        variety: VarietySpec,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_enum, default_value_t = commands::Verify::Both)]
        verify: commands::Verify,
    },
    /// Build one low-rank approximation and audit it.
    Approx {
        #[arg(long)]
        variety: VarietySpec,
        #[arg(long, default_value = "gaussian:sigma=1")]
        kernel: KernelSpec,
        #[arg(long, value_enum)]
        method: commands::Method,
        /// Target error for the Chebyshev route.
        #[arg(long)]
        eps: Option<f64>,
        /// Nyström landmarks, or the rank cap for Taylor features.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        audit_pairs: usize,
    },
    /// Random Fourier feature error profile over a rank grid.
    RffBench {
        #[arg(long)]
        variety: VarietySpec,
        #[arg(long, default_value = "gaussian:sigma=1")]
        kernel: KernelSpec,
        #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024,2048,4096,8192,16384")]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        pairs: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
    },
    /// Approximate Fekete norming set and its empirical slack.
    Fekete {
        #[arg(long)]
        variety: VarietySpec,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 100_000)]
        sup_sample: usize,
    },
    /// Taylor features against Nyström on 1-sparse vectors.
    Fig1 {
        #[arg(long, default_value_t = 20)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 50)]
        runs: usize,
        #[arg(long, default_value_t = 1e-10)]
        jitter: f64,
        #[arg(long, default_value_t = 100_000)]
        pairs: usize,
    },
    /// RFF error quantiles over a (k, d, rank) grid of sparse varieties.
    Fig2 {
        #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
        ks: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
        ds: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "64,128,256,512,1024,2048,4096,8192,16384")]
        ranks: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        pairs: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
    },
    /// Hilbert function against the ambient dimension for trig and SO(3).
    Fig3 {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 100)]
        trig_d: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let flags: Vec<String> = std::env::args().skip(1).collect();
    let body = commands::execute(&cli.command, cli.seed)?;
    let text = report::render(&flags, cli.seed, &body)?;
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
