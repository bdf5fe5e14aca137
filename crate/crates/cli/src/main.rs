use std::process::ExitCode;

fn main() -> ExitCode {
    let result = punditry_cli::app::run(std::env::args_os());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    ExitCode::from(u8::try_from(result.code).unwrap_or(2))
}
