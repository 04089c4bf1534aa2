use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = ktypes_cli::execute(std::env::args_os());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
