use std::process::ExitCode;

fn main() -> ExitCode {
    match sloppy_phase::cli::run(std::env::args_os()) {
        Ok(dir) => {
            println!("wrote {}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
