//! Highest weight vectors h_T in (S^k V)^{⊗p}, the S_p action on their span and
//! the resulting Specht multiplicities.
//!
//! cargo run --example highest_weight_vectors

use plethysm::hwv::{act_permutation, apply_raising, build_hwv, hwv_basis, Permutation};
use plethysm::partition;
use plethysm::partitions::partitions_of;
use plethysm::tableau::FilledTableau;

fn main() -> plethysm::Result<()> {
    let t: FilledTableau = "112/23/3".parse()?;
    let h = build_hwv(&t, 3)?;
    println!("h_T for T = {t} ({} terms):\n{}", h.len(), h.dump());
    for i in 1..3 {
        println!("E_{i} h_T is zero: {}", apply_raising(&h, i)?.is_zero());
    }
    let sigma = Permutation::from_one_line(&[2, 3, 1])?;
    println!("h_T·{sigma} == h_T: {}", act_permutation(&h, &sigma)? == h);

    let space = hwv_basis(&partition![3, 2, 1], 3, 2, 3)?;
    println!("\nspan of h_T for λ = (3,2,1): dimension {}", space.dimension());
    for mu in partitions_of(3, None) {
        println!("  V_{mu} occurs {} times", space.multiplicity(&mu)?);
    }
    let sign = hwv_basis(&partition![2, 2, 2], 3, 2, 3)?.is_isotypic_one_dim();
    println!("λ = (2,2,2): one-dimensional, (1 2) acts by {sign:?}");
    Ok(())
}
