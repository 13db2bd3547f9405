use std::process::ExitCode;

fn main() -> ExitCode {
    let code = eulab::cli::main_with(std::env::args(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
