use std::io::Write;

fn main() {
    let bounds = std::env::var(tame2_cli::BOUNDS_ENV).ok();
    let outcome = tame2_cli::run(std::env::args_os(), bounds.as_deref());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
