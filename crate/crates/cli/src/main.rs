use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = sepwords_cli::main_with(std::env::args(), &mut out, &mut io::stderr());
    ExitCode::from(code)
}
