mod app;

use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let out = app::run(std::env::args(), &mut io::stdin().lock());
    io::stdout().write_all(out.stdout.as_bytes()).expect("stdout");
    io::stderr().write_all(out.stderr.as_bytes()).expect("stderr");
    if let Some(config) = out.serve {
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        if let Err(e) = rt.block_on(folwb_service::serve(config)) {
            eprintln!("serve: {e}");
            return ExitCode::from(2);
        }
    }
    ExitCode::from(out.code)
}
