use clap::Parser;
use qhall::cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let (text, code) = render(&cli, run(&cli));
    println!("{text}");
    std::process::exit(code);
}
