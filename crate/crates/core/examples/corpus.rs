//! Runs the bundled golden scenes and reports each check.
//!
//! ```text
//! cargo run --example corpus [CORPUS_DIR]
//! ```

use std::path::PathBuf;
use std::process::ExitCode;

use shockgraph::corpus::{default_dir, verify_corpus};

fn main() -> ExitCode {
    let dir = std::env::args().nth(1).map_or_else(default_dir, PathBuf::from);
    let results = match verify_corpus(&dir) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::FAILURE;
        }
    };
    for r in &results {
        println!(
            "{:<5} {:<16} {:?}",
            if r.passed() { "pass" } else { "FAIL" },
            r.name,
            r.basis
        );
        for m in &r.mismatches {
            println!("      {m}");
        }
    }
    if results.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
