use std::process::ExitCode;

fn main() -> ExitCode {
    trigonal::cli::run()
}
