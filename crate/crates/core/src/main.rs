use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stdout = std::io::stdout().lock();
    match gencat::cli::run(std::env::args(), &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gencat: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
