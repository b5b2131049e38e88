use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = ordtop::cli::run(std::env::args_os());
    let _ = if outcome.code == 2 {
        std::io::stderr().lock().write_all(outcome.output.as_bytes())
    } else {
        std::io::stdout().lock().write_all(outcome.output.as_bytes())
    };
    ExitCode::from(outcome.code as u8)
}
