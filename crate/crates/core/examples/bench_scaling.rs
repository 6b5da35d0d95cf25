//! Wall time and event count against scene size, with the fitted log-log
//! slope.
//!
//! ```text
//! cargo run --release --example bench_scaling [N1,N2,...]
//! ```

use shockgraph::pipeline::{bench, loglog_slope, RunConfig};

fn main() -> shockgraph::Result<()> {
    let sizes: Vec<usize> = std::env::args()
        .nth(1)
        .map(|s| s.split(',').filter_map(|n| n.trim().parse().ok()).collect())
        .unwrap_or_else(|| vec![50, 100, 200, 400, 800]);
    let rows = bench(&sizes, 0, &RunConfig::default())?;
    println!("{:>6} {:>9} {:>10} {:>8}", "N", "elements", "seconds", "events");
    for r in &rows {
        println!("{:>6} {:>9} {:>10.4} {:>8}", r.n, r.elements, r.seconds, r.events);
    }
    let time: Vec<(f64, f64)> = rows.iter().map(|r| (r.elements as f64, r.seconds)).collect();
    let events: Vec<(f64, f64)> = rows.iter().map(|r| (r.elements as f64, r.events as f64)).collect();
    if let (Some(t), Some(e)) = (loglog_slope(&time), loglog_slope(&events)) {
        println!("slope: time {t:.3}, events {e:.3}");
    }
    Ok(())
}
