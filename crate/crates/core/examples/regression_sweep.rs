//! Runs every catalog expectation and prints one line per check.

use ybmaps::catalog::{run_all, RunOptions};
use ybmaps::FieldConfig;

fn main() -> ybmaps::Result<()> {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let run = run_all(&FieldConfig::default_prime(seed), &RunOptions::new(200))?;
    for row in &run.rows {
        let mark = if row.matches { "ok  " } else { "MISS" };
        println!("{mark} {:<22} {:<32} {}", row.entry, row.check, row.report.verdict);
    }
    println!("{} mismatches", run.mismatches);
    Ok(())
}
