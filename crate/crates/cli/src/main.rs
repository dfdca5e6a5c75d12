use std::process::ExitCode;

use clap::Parser;

use qkepler_cli::config::{merge_config_args, RunConfig};
use qkepler_cli::report::Status;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let argv = match merge_config_args(&argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage.code() as u8);
        }
    };
    let cfg = match RunConfig::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { Status::Usage.code() } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = qkepler_cli::run(&cfg);
    if let Some(msg) = &out.diagnostic {
        eprintln!("error: {msg}");
    }
    print!("{}", qkepler_cli::render(&out, cfg.format));
    if let Some(dir) = &cfg.out {
        if let Err(e) = qkepler_cli::write_outputs(&out, dir) {
            eprintln!("error: cannot write to {}: {e}", dir.display());
            return ExitCode::from(Status::ToolFailure.code() as u8);
        }
    }
    ExitCode::from(out.status.code() as u8)
}
