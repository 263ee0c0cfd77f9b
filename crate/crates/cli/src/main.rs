use std::io::Write;

use clap::Parser;
use homalg_cli::commands::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    if out.code == 2 {
        eprint!("{}", out.text);
    } else {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(out.text.as_bytes());
    }
    std::process::exit(out.code);
}
