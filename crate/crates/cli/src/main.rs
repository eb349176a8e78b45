//! `fnrlax`: derive and verify constrained FNR hierarchies from the command line.
//!
//! Exit status: 0 on success (all checks passed), 1 if a verification failed,
//! 2 on usage or engine errors.

mod config;
mod emit;
mod subst;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use fnrlax_core::fnr::{diag_consistency, squared_trace_check};
use fnrlax_core::poisson::{
    field_bracket_table, flow_matches_zc, jacobi_check, leibniz_consistency_check, resolvent_check,
    sklyanin_check,
};
use fnrlax_core::zerocurv::{dual_equivalence, strong_zc_check};
use fnrlax_core::{build_psi, hamiltonian_density, lax_matrix, zero_curvature, CheckReport};

use crate::emit::Format;

/// Environment variable capping the address space, in MiB.
const MEMORY_ENV: &str = "FNRLAX_MAX_MEMORY_MB";

#[derive(Parser, Debug)]
#[command(
    name = "fnrlax",
    version,
    about = "Lax matrices, PDEs and r-matrix checks for constrained FNR flows"
)]
struct Cli {
    #[command(flatten)]
    global: Global,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format [default: text]
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Flat `key = value` file (format, output, depth, sub, zero_form)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

type Time = u32;

fn time_arg(s: &str) -> Result<Time, String> {
    match s.parse::<u32>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the rows of Psi_k, or a Lax matrix V_k^(N) with --lax
    Psi {
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long)]
        depth: Option<u32>,
        #[arg(long, value_parser = time_arg)]
        lax: Option<Time>,
    },
    /// Derive the t_n flow on the phase space of Psi_k from zero curvature
    Derive {
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long, value_parser = time_arg)]
        n: Time,
        #[arg(long)]
        depth: Option<u32>,
        /// Substitution file applied to the derived right-hand sides
        #[arg(long)]
        sub: Option<PathBuf>,
        /// Print `d_n u - rhs = 0` instead of `d_n u = rhs`
        #[arg(long)]
        zero_form: bool,
    },
    /// Density of H_k^(n), canonical form
    Hamiltonian {
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long, value_parser = time_arg)]
        n: Time,
    },
    /// Ultralocal bracket table on the free fields of Psi_k
    Brackets {
        #[arg(long, value_parser = time_arg)]
        k: Time,
    },
    /// Run a verification; exit status 1 if any identity fails
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Linear r-matrix algebra of V_k^(k)
    Sklyanin {
        #[arg(long, value_parser = time_arg)]
        k: Time,
    },
    /// Both Lax pairs for (t_n, t_k), n < k, give the same PDEs
    Duality {
        #[arg(long, value_parser = time_arg)]
        n: Time,
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Hamiltonian flow of H_k^(n) equals the zero-curvature flow
    Flow {
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long, value_parser = time_arg)]
        n: Time,
    },
    /// Strong zero curvature for two partner times n, m
    StrongZc {
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long, value_parser = time_arg)]
        n: Time,
        #[arg(long, value_parser = time_arg)]
        m: Time,
    },
    /// (1 + W) sigma3 (1 + W)^-1 = Psi_k(L)
    Resolvent {
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Tr L^2 = 2 and the diagonal part of the flow
    Psi {
        #[arg(long, value_parser = time_arg)]
        k: Time,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Antisymmetry, Jacobi and Leibniz consistency of the bracket table
    Brackets {
        #[arg(long, value_parser = time_arg)]
        k: Time,
    },
}

struct Resolved {
    format: Format,
    output: Option<PathBuf>,
    depth: Option<u32>,
    sub: Option<PathBuf>,
    zero_form: bool,
}

/// Emitted document plus whether every check passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

fn depth_for(explicit: Option<u32>, k: u32, n: u32) -> Result<u32> {
    let depth = explicit.unwrap_or(k + n + 2);
    if depth < k.max(n) {
        bail!("depth {depth} must be at least max(k, n) = {}", k.max(n));
    }
    Ok(depth)
}

fn checks(reports: Vec<CheckReport>, time: u32, format: Format) -> Outcome {
    let passed = reports.iter().all(CheckReport::all_passed);
    Outcome {
        text: emit::reports(&reports, time, format),
        passed,
    }
}

fn run(command: Command, cfg: &Resolved) -> Result<Outcome> {
    let f = cfg.format;
    let out = match command {
        Command::Psi { k, depth, lax } => {
            let n = lax.unwrap_or(0);
            let table = build_psi(k, depth_for(depth.or(cfg.depth), k, n)?)?;
            match lax {
                Some(n) => Outcome::ok(emit::lax(&lax_matrix(&table, n)?, k, n, f)),
                None => Outcome::ok(emit::psi(&table, f)),
            }
        }
        Command::Derive {
            k,
            n,
            depth,
            sub,
            zero_form,
        } => {
            let table = build_psi(k, depth_for(depth.or(cfg.depth), k, n)?)?;
            let mut system = zero_curvature(&table, n)?;
            if let Some(path) = sub.or_else(|| cfg.sub.clone()) {
                system = system.substitute(&subst::load(&path)?);
            }
            Outcome::ok(emit::system(&system, zero_form || cfg.zero_form, f))
        }
        Command::Hamiltonian { k, n } => {
            let table = build_psi(k, k)?;
            Outcome::ok(emit::density(k, n, &hamiltonian_density(&table, n)?, f))
        }
        Command::Brackets { k } => {
            Outcome::ok(emit::brackets(&field_bracket_table(&build_psi(k, k)?)?, f))
        }
        Command::Verify(v) => match v {
            Verify::Sklyanin { k } => checks(vec![sklyanin_check(&build_psi(k, k)?)?], k, f),
            Verify::Duality { n, k, depth } => {
                if n >= k {
                    bail!("duality needs n < k, got n={n} k={k}");
                }
                let depth = depth_for(depth.or(cfg.depth), k, n)?;
                let (_, report) = dual_equivalence(n, k, depth)?;
                checks(vec![report], n, f)
            }
            Verify::Flow { k, n } => {
                checks(vec![flow_matches_zc(&build_psi(k, k.max(n))?, n)?], k, f)
            }
            Verify::StrongZc { k, n, m } => {
                let table = build_psi(k, k.max(n).max(m))?;
                checks(vec![strong_zc_check(&table, n, m)?], k, f)
            }
            Verify::Resolvent { k, depth } => {
                let depth = depth.or(cfg.depth).unwrap_or(k + 4);
                checks(vec![resolvent_check(&build_psi(k, depth)?, depth)?], k, f)
            }
            Verify::Psi { k, depth } => {
                let table = build_psi(k, depth_for(depth.or(cfg.depth), k, k)?)?;
                checks(
                    vec![squared_trace_check(&table), diag_consistency(&table)],
                    k,
                    f,
                )
            }
            Verify::Brackets { k } => {
                let table = build_psi(k, k)?;
                let bt = field_bracket_table(&table)?;
                checks(
                    vec![jacobi_check(&bt), leibniz_consistency_check(&table)?],
                    k,
                    f,
                )
            }
        },
    };
    Ok(out)
}

#[cfg(unix)]
fn apply_memory_cap() -> Result<()> {
    let Ok(raw) = std::env::var(MEMORY_ENV) else {
        return Ok(());
    };
    let mb: u64 = raw
        .trim()
        .parse()
        .with_context(|| format!("{MEMORY_ENV} must be a whole number of MiB, got `{raw}`"))?;
    let bytes = mb.saturating_mul(1024 * 1024) as libc::rlim_t;
    let lim = libc::rlimit {
        rlim_cur: bytes,
        rlim_max: bytes,
    };
    // SAFETY: setrlimit only reads the struct we pass.
    let rc = unsafe { libc::setrlimit(libc::RLIMIT_AS, &lim) };
    if rc != 0 {
        bail!("setrlimit failed: {}", std::io::Error::last_os_error());
    }
    Ok(())
}

#[cfg(not(unix))]
fn apply_memory_cap() -> Result<()> {
    Ok(())
}

fn main_inner(cli: Cli) -> Result<bool> {
    apply_memory_cap()?;
    let file = match &cli.global.config {
        Some(p) => config::load(p)?,
        None => config::FileConfig::default(),
    };
    let cfg = Resolved {
        format: cli.global.format.or(file.format).unwrap_or(Format::Text),
        output: cli.global.output.clone().or(file.output),
        depth: file.depth,
        sub: file.sub,
        zero_form: file.zero_form.unwrap_or(false),
    };
    let outcome = run(cli.command, &cfg)?;
    match &cfg.output {
        Some(path) => std::fs::write(path, &outcome.text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
