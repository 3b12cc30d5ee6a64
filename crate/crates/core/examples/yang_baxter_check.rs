//! Randomized YB check on a catalog map and on a broken map.

use ybmaps::catalog;
use ybmaps::yb::check_yb;
use ybmaps::{Carrier, CheckOptions, FieldConfig, ParametricYbMap};

fn main() -> ybmaps::Result<()> {
    let cfg = FieldConfig::default_prime(1);
    let opts = CheckOptions::new(200);
    let adler = catalog::adler();
    let report = check_yb(&adler, &cfg, &opts)?;
    println!("{}", report.summary_line());
    if let Some(c) = &report.confidence {
        println!("    per-sample false-accept bound {:.3e}", c.per_sample_bound);
    }

    let broken = ParametricYbMap::new("broken", Carrier::Scalars(1), 1, |x, a, y, b| {
        let t = (&a[0] - &b[0]).try_div(&(&x[0] + &y[0]))?;
        Ok((vec![&y[0] + &t], vec![&x[0] + &t]))
    });
    println!("{}", check_yb(&broken, &cfg, &opts)?.summary_line());
    Ok(())
}
