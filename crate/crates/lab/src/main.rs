use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(quanta_lab::cli::run(std::env::args_os()))
}
