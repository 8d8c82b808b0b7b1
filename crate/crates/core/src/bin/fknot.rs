use std::io::Write;
use std::process::ExitCode;

use fknot::cli::{run, BUDGET_ENV};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let env = std::env::var(BUDGET_ENV).ok();
    let out = run(&argv, env.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
