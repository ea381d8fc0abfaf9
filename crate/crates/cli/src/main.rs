use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(dpqs::cli::run(std::env::args_os()))
}
