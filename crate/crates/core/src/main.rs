// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cmc_simons::formal::{run_formal, run_on_states, build_state, Mutation};
use cmc_simons::identities::Verdict;
use cmc_simons::pinching::{sweep, sweep_row, write_csv, PinchingInput, Range, SweepRanges};
use cmc_simons::report::{
    env_tolerance, run_simons, run_verify, to_json, FormalRunReport, SweepConfig, TOL_ENV,
};
use cmc_simons::{Error, Result};

/// Verification of cmc-surface identities in E(kappa, tau).
#[derive(Parser)]
#[command(name = "cmc-simons", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the identity checks described by a JSON config.
    Verify {
        config: PathBuf,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Default tolerance for every check without a per-check override.
        #[arg(long, env = TOL_ENV, hide_env_values = true)]
        tol: Option<String>,
    },
    /// Exact replay of the identity chain on random rational jet data.
    Formal {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Flip the sign of the gap term in the beta_11 constraint.
        #[arg(long, hide = true)]
        mutate: bool,
        /// Replace the random states by the single state t = 0, beta_1 = 0.
        #[arg(long, hide = true)]
        trivial: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the Simons functional of a compact cmc surface.
    Simons {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pinching interval and corridor at one point, as CSV.
    Bounds {
        #[arg(long, allow_hyphen_values = true)]
        kappa: f64,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long = "H", allow_hyphen_values = true)]
        h: f64,
        #[arg(long = "C", allow_hyphen_values = true)]
        c: f64,
    },
    /// Sweep the pinching quantities over a ranges config, as CSV.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn outcome(v: Verdict) -> Outcome {
    if v == Verdict::Pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run(cmd: Cmd) -> Result<Outcome> {
    match cmd {
        Cmd::Verify { config, out, tol } => {
            let env_tol = match tol {
                Some(t) => match t.trim().parse::<f64>() {
                    Ok(x) if x.is_finite() && x > 0.0 => Some(x),
                    _ => return Err(Error::Config(format!("tolerance '{t}' is not positive"))),
                },
                None => env_tolerance()?,
            };
            let text = read(&config)?;
            let rep = run_verify(&text, env_tol)?;
            emit(&to_json(&rep)?, out.as_deref())?;
            for r in &rep.records {
                eprintln!("{:<20} {:>10.3e}  {:?}", r.name, r.max_residual, r.verdict);
            }
            Ok(outcome(rep.verdict))
        }
        Cmd::Formal {
            count,
            seed,
            mutate,
            trivial,
            out,
        } => {
            if count == 0 {
                return Err(Error::Config("count must be at least 1".into()));
            }
            let mutation = if mutate { Mutation::FlipBeta11 } else { Mutation::None };
            let formal = if trivial {
                use num_traits::{One, Zero};
                let z = cmc_simons::formal::Q::zero;
                let one = cmc_simons::formal::Q::one;
                let st = build_state(z(), z(), one(), one(), one() + one())?;
                run_on_states(&[st], seed, mutation)
            } else {
                run_formal(count, seed, mutation)
            };
            for f in formal.failures.iter().take(5) {
                eprintln!("state {}: {} residual {}\n  {}", f.index, f.identity, f.residual, f.witness);
            }
            let rep = FormalRunReport::from(formal);
            emit(&to_json(&rep)?, out.as_deref())?;
            Ok(outcome(rep.verdict))
        }
        Cmd::Simons { config, out } => {
            let rep = run_simons(&read(&config)?)?;
            emit(&to_json(&rep)?, out.as_deref())?;
            eprintln!(
                "simons functional {:.3e} (doubled grid {:.3e}){}",
                rep.simons.integral.value,
                rep.simons.integral.doubled,
                if rep.simons.equality { ", equality case" } else { "" }
            );
            Ok(outcome(rep.verdict))
        }
        Cmd::Bounds { kappa, tau, h, c } => {
            let inp = PinchingInput::new(kappa, tau, h, c)
                .map_err(|e| Error::Config(e.to_string()))?;
            let row = sweep_row(&inp)?;
            write_csv(std::slice::from_ref(&row), std::io::stdout())?;
            Ok(if row.violations.unwrap_or(0) == 0 { Outcome::Pass } else { Outcome::Fail })
        }
        Cmd::Sweep { config, out } => {
            let cfg = SweepConfig::parse(&read(&config)?)?;
            let ranges: SweepRanges = cfg.ranges();
            for r in [ranges.kappa, ranges.tau, ranges.h, ranges.c] {
                Range::values(&r)?;
            }
            let s = sweep(&ranges)?;
            if s.rows.is_empty() {
                return Err(Error::Config("sweep produced no valid rows".into()));
            }
            match out {
                Some(p) => write_csv(&s.rows, fs::File::create(p)?)?,
                None => write_csv(&s.rows, std::io::stdout())?,
            }
            eprintln!(
                "{} rows, {} rejected inputs, {} ordering violations",
                s.rows.len(),
                s.rejected,
                s.violations
            );
            Ok(if s.violations == 0 { Outcome::Pass } else { Outcome::Fail })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
