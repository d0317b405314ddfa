use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = std::io::stdout();
    match divorient::cli::run(std::env::args_os(), &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("divorient: {e}");
            ExitCode::FAILURE
        }
    }
}
