use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = hesscell::cli::run_command(std::env::args_os());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
        if !out.stderr.ends_with('\n') {
            eprintln!();
        }
    }
    ExitCode::from(out.code as u8)
}
