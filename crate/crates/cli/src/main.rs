//! Command-line front end: verification suites, vacuum and solution
//! states, number spectra, disentangling reports and disk-edge scans,
//! emitted as JSON/CSV for scripts and external plotting.
//!
//! Exit codes: 0 success, 2 usage, 3 domain/parameter, 4 validation
//! failure.

mod commands;
mod config;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use config::{GlobalArgs, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "mpfock",
    version,
    about = "Truncated Fock-space engine: squeeze operators, wave-equation vacua, metaplectic coherent states"
)]
struct Cli {
    /// Truncation dimension (number of retained levels)
    #[arg(long, global = true)]
    dim: Option<usize>,

    /// Comparison tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Interior margin excluded from edge-sensitive comparisons
    #[arg(long, global = true)]
    margin: Option<usize>,

    /// Output format where both are meaningful
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// JSON config file mirroring the global flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite (fock, bch, generators, bargmann, wave, all)
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Produce a vacuum state
    Vacuum {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        m: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum)]
        mode: commands::VacuumMode,
    },
    /// Produce a solution state with route diagnostics
    Solution {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        m: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum, default_value = "thermal")]
        mode: commands::SolutionMode,
        /// Fiducial |0> coefficient (general mode), real part
        #[arg(long, default_value_t = 1.0)]
        va: f64,
        #[arg(long, default_value_t = 0.0)]
        va_im: f64,
        /// Fiducial |1> coefficient (general mode), real part
        #[arg(long, default_value_t = 0.0)]
        vb: f64,
        #[arg(long, default_value_t = 0.0)]
        vb_im: f64,
    },
    /// Number spectrum of a disk-family state, or an edge scan
    Spectrum {
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        omega_im: f64,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, value_enum, default_value = "full")]
        sector: commands::Sector,
        /// Edge scan over |omega| as START..END:STEPS (emits the scan table)
        #[arg(long)]
        scan: Option<String>,
    },
    /// Disentangle exp(A(aa+ + a+a) + B a+^2 + C a^2) with oracle validation
    Bch {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        a_im: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        b_im: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c_im: f64,
    },
    /// Evaluate a stored state's Bargmann function on a rectangular grid
    BargmannEval {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        re_min: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        re_max: f64,
        #[arg(long, default_value_t = 41)]
        re_steps: usize,
        #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
        im_min: f64,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        im_max: f64,
        #[arg(long, default_value_t = 41)]
        im_steps: usize,
    },
    /// Per-level odd/even ratio table along a path toward the disk edge
    LimitScan {
        #[arg(long)]
        start: f64,
        #[arg(long)]
        end: f64,
        #[arg(long)]
        steps: usize,
        /// Highest paired level m to report
        #[arg(long, default_value_t = 10)]
        levels: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let globals = GlobalArgs {
        dim: cli.dim,
        tol: cli.tol,
        margin: cli.margin,
        format: cli.format,
        out: cli.out.clone(),
        config: cli.config.clone(),
    };
    let cfg = match RunConfig::resolve(&globals) {
        Ok(cfg) => cfg,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };

    let code = match cli.command {
        Command::Verify { suite } => commands::cmd_verify(&suite, &cfg),
        Command::Vacuum { p, m, eps, mode } => commands::cmd_vacuum(p, m, eps, mode, &cfg),
        Command::Solution {
            p,
            m,
            eps,
            mode,
            va,
            va_im,
            vb,
            vb_im,
        } => commands::cmd_solution(p, m, eps, mode, (va, va_im), (vb, vb_im), &cfg),
        Command::Spectrum {
            omega,
            omega_im,
            p,
            m,
            eps,
            sector,
            scan,
        } => commands::cmd_spectrum(
            &commands::SpectrumSource {
                omega,
                omega_im,
                p,
                m,
                eps,
            },
            sector,
            scan.as_deref(),
            &cfg,
        ),
        Command::Bch {
            a,
            b,
            c,
            a_im,
            b_im,
            c_im,
        } => commands::cmd_bch((a, a_im), (b, b_im), (c, c_im), &cfg),
        Command::BargmannEval {
            state,
            re_min,
            re_max,
            re_steps,
            im_min,
            im_max,
            im_steps,
        } => commands::cmd_bargmann_eval(
            &state,
            (re_min, re_max, re_steps),
            (im_min, im_max, im_steps),
            &cfg,
        ),
        Command::LimitScan {
            start,
            end,
            steps,
            levels,
        } => commands::cmd_limit_scan(start, end, steps, levels, &cfg),
    };
    ExitCode::from(code)
}
