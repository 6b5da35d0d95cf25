use clap::Parser;
use shockgraph::cli::{main_with, Cli};

fn main() -> std::process::ExitCode {
    main_with(Cli::parse())
}
