use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = tancone::cli::run(std::env::args_os());
    let written = if outcome.status == 2 {
        std::io::stderr().write_all(outcome.report.as_bytes())
    } else {
        std::io::stdout().write_all(outcome.report.as_bytes())
    };
    if written.is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.status)
}
