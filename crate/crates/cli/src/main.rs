use std::io;
use std::process;

fn main() {
    let status = majority_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr());
    process::exit(status.code());
}
