use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(laxforge::shell::run(std::env::args_os()))
}
