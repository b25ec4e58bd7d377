//! The `qonf` command line: tables, J-functions, confluence reports and
//! verification suites over the workspace crates.
//!
//! Exit codes: 0 success, 1 verification failure or resonance, 2 usage or
//! input error.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod parse;
pub mod verify;

use clap::Parser;
use qonf_rings::par::{init_threads_from_env, Exec};

pub use args::{Cli, Command, Format, Suite};
pub use error::{CliError, CliResult};
pub use verify::{run_suite, Check, Report, VerifyConfig};

fn verify_cmd(a: &args::VerifyArgs) -> CliResult<output::Rendered> {
    let s = &a.schedule;
    if s.kmin < 0 || s.kmax < s.kmin + 2 {
        return Err(CliError::Usage(format!("need 0 ≤ kmin and kmax ≥ kmin + 2, got {}..{}", s.kmin, s.kmax)));
    }
    let cfg = VerifyConfig {
        seed: a.seed,
        tol: a.tol,
        limit_tol: a.limit_tol,
        q0: a.q0,
        schedule: qonf_confluence::TSchedule::halvings(s.kmin, s.kmax),
        exec: Exec::default(),
    };
    let report = run_suite(a.suite, &cfg);
    let first = report.first_failure().map(|c| c.summary.clone());
    let text = report.render_text();
    let json = serde_json::to_value(&report)?;
    let failed = first.is_some();
    Ok(output::Rendered::json(json).with_text(text).fail_if(failed, first.unwrap_or_default()))
}

/// Dispatch one parsed command line.
pub fn run(cli: &Cli) -> CliResult<()> {
    init_threads_from_env();
    let (rendered, out) = match &cli.command {
        Command::Nd(a) => (commands::nd(a)?, &a.out),
        Command::Potential(a) => (commands::potential(a)?, &a.out),
        Command::Wdvv(a) => (commands::wdvv(a)?, &a.out),
        Command::Theta(a) => (commands::theta_cmd(a)?, &a.out),
        Command::Qchar(a) => (commands::qchar_cmd(a)?, &a.out),
        Command::Qlog(a) => (commands::qlog_cmd(a)?, &a.out),
        Command::Qhg(a) => (commands::qhg(a)?, &a.out),
        Command::Solve(a) => (commands::solve(a)?, &a.out),
        Command::Birkhoff(a) => (commands::birkhoff(a)?, &a.out),
        Command::Confluence(a) => (commands::confluence(a)?, &a.out),
        Command::Jfn(a) => (commands::jfn(a)?, &a.out),
        Command::Compare(a) => (commands::compare(a)?, &a.out),
        Command::Verify(a) => (verify_cmd(a)?, &a.out),
    };
    rendered.emit(out)?;
    match rendered.failure {
        Some(what) => Err(CliError::Verification(what)),
        None => Ok(()),
    }
}

/// Parse `argv`, run, and return the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
