//! Verification driver: each subcommand runs one of the exact suites and
//! writes a deterministic JSON report (sorted keys, exact rational strings)
//! plus optional CSV data for plotting.
//!
//! Exit codes: 0 all verifications passed, 1 usage or configuration error,
//! 2 verification failure.

mod commands;
mod report;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "piqes",
    version,
    about = "particular-integral verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// gl(2) structure relations, kernel/annihilation, involution and flag
    /// preservation suites with seeded random quadratic elements.
    Gl2Verify {
        /// Largest representation label n to test.
        #[arg(long)]
        n: u32,
        /// Seed for the randomized operator draws (mandatory).
        #[arg(long)]
        seed: u64,
        /// Random operators per n in the annihilation suite.
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Report path (stdout when omitted).
        #[arg(long)]
        out: Option<String>,
    },
    /// Nine-parameter operator: block spectrum on P_n plus exact commutant
    /// against every particular integral.
    QesHeun {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Sextic model: exact block spectrum, x-representation commutant, and
    /// optional numerical cross-validation.
    QesSextic {
        #[arg(long)]
        n: u32,
        /// Parity label, 0 or 1.
        #[arg(long)]
        q: u8,
        /// Quartic growth parameter (exact rational, e.g. "1" or "3/2").
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Quadratic parameter (exact rational).
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Also run the finite-difference eigensolver and compare.
        #[arg(long)]
        compare_numeric: bool,
        /// Half-line grid points for the numeric comparison.
        #[arg(long, default_value_t = 1500)]
        grid_points: usize,
        /// Write the potential as two-column CSV for plotting.
        #[arg(long)]
        potential_csv: Option<String>,
        /// Write numeric energies as CSV (index,energy,sector); implies the
        /// numeric run.
        #[arg(long)]
        spectra_csv: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Classical limit: bracket certificate, special points, and a
    /// symplectic trajectory with conservation diagnostics.
    Classical {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u8,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        p0: f64,
        #[arg(long, default_value_t = 50.0)]
        t_max: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Keep every k-th sample in the trajectory CSV.
        #[arg(long, default_value_t = 100)]
        sample_every: usize,
        /// Trajectory CSV path (time,x,p,H,ReI,ImI).
        #[arg(long)]
        traj_csv: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Calogero-Sutherland suites: gauge rotation, characteristic vector,
    /// exact commutant; rank 1 and 2 rational, plus the rank-1
    /// trigonometric model.
    CsVerify {
        #[arg(long)]
        rank: usize,
        /// Coupling (exact rational).
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Oscillator frequency (exact rational).
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Largest triangular-space label n to verify.
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        /// Also run the rank-1 trigonometric model.
        #[arg(long)]
        trig: bool,
        /// Trigonometric frequency parameter (exact rational).
        #[arg(long, default_value = "1")]
        beta: String,
        /// Trigonometric coupling (exact rational).
        #[arg(long, default_value = "2")]
        mu: String,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version requests are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    let outcome = match cli.command {
        Command::Gl2Verify {
            n,
            seed,
            trials,
            out,
        } => commands::gl2_verify(n, seed, trials, out),
        Command::QesHeun {
            n,
            seed,
            trials,
            out,
        } => commands::qes_heun(n, seed, trials, out),
        Command::QesSextic {
            n,
            q,
            a,
            b,
            compare_numeric,
            grid_points,
            potential_csv,
            spectra_csv,
            out,
        } => commands::qes_sextic(
            n,
            q,
            &a,
            &b,
            compare_numeric,
            grid_points,
            potential_csv,
            spectra_csv,
            out,
        ),
        Command::Classical {
            n,
            q,
            a,
            b,
            x0,
            p0,
            t_max,
            dt,
            sample_every,
            traj_csv,
            out,
        } => commands::classical(n, q, &a, &b, x0, p0, t_max, dt, sample_every, traj_csv, out),
        Command::CsVerify {
            rank,
            nu,
            omega,
            n_max,
            trig,
            beta,
            mu,
            out,
        } => commands::cs_verify(rank, &nu, &omega, n_max, trig, &beta, &mu, out),
    };
    match outcome {
        Ok(true) => std::process::exit(0),
        Ok(false) => {
            eprintln!("verification failed");
            std::process::exit(2);
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
    }
}
