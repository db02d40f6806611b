use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = flagqh::cli::run_args(std::env::args_os());
    if out.status == flagqh::cli::EXIT_USAGE || out.status == flagqh::cli::EXIT_ABORT {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
        std::io::stdout().flush().ok();
    }
    ExitCode::from(out.status as u8)
}
