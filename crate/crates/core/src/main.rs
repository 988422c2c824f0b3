use std::process::ExitCode;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let mut out = std::io::stdout().lock();
    ExitCode::from(symmorse::cli::run(&argv, &mut out))
}
