use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use plethysm::cache::Cache;
use plethysm::cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match real_main(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            // library errors already carry their cause in the message
            let lib = err.downcast_ref::<plethysm::Error>();
            match lib {
                Some(e) => eprintln!("error: {e}"),
                None => eprintln!("error: {err:#}"),
            }
            let code = lib.map_or(1, exit_code);
            ExitCode::from(code as u8)
        }
    }
}

fn real_main(cli: &Cli) -> anyhow::Result<i32> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = run(cli, &Cache::from_env(), &mut out)?;
    out.flush().context("flushing stdout")?;
    Ok(code)
}
