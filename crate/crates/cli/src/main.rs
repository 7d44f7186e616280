use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env = std::env::var(maxface::TOL_ENV).ok();
    let code = maxface::run(std::env::args_os(), env.as_deref(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code)
}
