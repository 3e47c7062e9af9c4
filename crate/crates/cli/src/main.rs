use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(simplex_orders_cli::run(std::env::args()) as u8)
}
