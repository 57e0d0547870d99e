use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(dcsf::cli::main_with(std::env::args_os()))
}
