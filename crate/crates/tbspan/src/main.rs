use std::process::ExitCode;

fn main() -> ExitCode {
    tbspan::cli::main()
}
