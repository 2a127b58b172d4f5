//! Sample a^{dλ}_{μ,(dk)}, fit a quasi-polynomial and check the fit on held-out
//! values. Samples are cached under $PLETHYSM_CACHE_DIR (default ./.cache).
//!
//! cargo run --example fit_quasipolynomial

use plethysm::cache::{Cache, What};
use plethysm::partition;
use plethysm::quasipoly::{fit_validated, write_csv, FitOptions};
use plethysm::sequence::sequence;

fn main() -> plethysm::Result<()> {
    let cache = Cache::from_env();
    let lambda = partition![2, 2];
    for mu in [partition![4], partition![2, 2], partition![1, 1, 1, 1]] {
        let samples = sequence(What::A, &lambda, 4, 1, Some(&mu), 0..=40, &cache)?;
        let fit = fit_validated(&samples, &FitOptions::default())?;
        println!("μ = {mu}: {}", fit.quasi_polynomial);
        println!(
            "  trained on {} samples, {} held out, max residual {}",
            fit.samples_used,
            fit.held_out.len(),
            fit.max_residual()
        );
        println!("  json {}", serde_json::to_string(&fit.quasi_polynomial)?);
    }
    let c = sequence(What::C, &partition![3, 2, 1], 3, 2, None, 0..=6, &cache)?;
    print!("{}", write_csv(&c));
    Ok(())
}
