//! Check the asymptotic statement on one instance of each case.
//!
//! cargo run --release --example verify_theorem

use plethysm::cache::Cache;
use plethysm::partition;
use plethysm::verify::{verify_theorem, VerifyOptions};

fn main() -> plethysm::Result<()> {
    let cache = Cache::from_env();
    let opts = VerifyOptions::default();
    for (lambda, p, k) in [(partition![3, 1], 2, 2), (partition![4, 4, 2, 2], 4, 3), (partition![3, 2, 1], 3, 2)] {
        let report = verify_theorem(&lambda, p, k, &opts, &cache)?;
        println!(
            "λ = {lambda}, p = {p}, k = {k}: case ({}) {}",
            report.case.label(),
            if report.passed { "PASS" } else { "FAIL" }
        );
        if let Some(pattern) = &report.pattern {
            println!("  pattern {pattern}");
        }
        for f in &report.a_fits {
            println!(
                "  μ = {}: lead(a)/lead(c) = {} (dim V_μ/p! = {})",
                f.mu,
                f.observed_ratio.as_deref().unwrap_or("-"),
                f.expected_ratio
            );
        }
        for check in report.checks.iter().filter(|c| !c.passed) {
            println!("  failed: {}", check.name);
        }
    }
    Ok(())
}
