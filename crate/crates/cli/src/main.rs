use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use clap::Parser;
use morphograph_cli::{configure_threads, run, Cli, CliError, RunConfig};

fn fail(kind: &str, message: &str, code: u8) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": kind, "message": message, "exit": code }));
    ExitCode::from(code)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = RunConfig::try_from(cli)?;
    let out = run(&cfg)?;
    for (path, bytes) in &out.files {
        std::fs::write(path, bytes).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    std::io::stdout().write_all(&out.stdout).map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail("input", e.to_string().trim(), 2),
    };
    panic::set_hook(Box::new(|_| {}));
    match panic::catch_unwind(AssertUnwindSafe(|| execute(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => fail(e.kind(), &e.to_string(), e.exit_code()),
        Err(p) => {
            let msg = p.downcast_ref::<&str>().map(|s| s.to_string()).or_else(|| p.downcast_ref::<String>().cloned()).unwrap_or_default();
            fail("invariant", &msg, 3)
        }
    }
}
