//! a^{d(31,3,2,2,2)}_{(5),(8d)} for small d. Peeling the 2d full columns
//! leaves a coefficient of s_(5)[h_{6d}] on a two-row shape.
//!
//! cargo run --release --example closed_form_spot_check -- 4

use plethysm::partition;
use plethysm::partitions::Partition;
use plethysm::sequence::a_value;
use plethysm::symfunc::reduce_by_strip;

fn main() -> plethysm::Result<()> {
    let dmax = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let lambda = partition![31, 3, 2, 2, 2];
    let mu = Partition::row(5);
    for d in 1..=dmax {
        let (shape, k, mu_reduced) = reduce_by_strip(&lambda.scale(d), &mu, 8 * d);
        let a = a_value(&lambda, 5, 8, &mu, d)?;
        println!("d = {d}: a = {a}   (reduced to π = {shape}, k = {k}, μ = {mu_reduced})");
    }
    Ok(())
}
