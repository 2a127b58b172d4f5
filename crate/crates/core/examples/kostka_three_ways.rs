//! c^λ_{p,k} = K_{λ,(k^p)} by brute enumeration, by the Pieri chain and as a
//! lattice-point count of the Pieri polytope, plus the polytope itself.
//!
//! cargo run --example kostka_three_ways

use plethysm::partition;
use plethysm::pieri::{
    enumerate_ssyt, kostka_count, point_to_ssyt, ssyt_to_point, witness_ssyt, ConstraintSystem, KostkaMode, PieriPoint,
};

fn main() -> plethysm::Result<()> {
    let (lambda, p, k) = (partition![3, 2, 1], 3, 2);
    for mode in [KostkaMode::Brute, KostkaMode::ChainDp, KostkaMode::Polytope] {
        println!("{mode:?}: {}", kostka_count(&lambda, p, k, mode)?);
    }
    for t in enumerate_ssyt(&lambda, &[k; 3]) {
        let x = ssyt_to_point(&t, p, k)?;
        assert_eq!(point_to_ssyt(&x)?, t);
        println!("{t}  ↦  {:?}", x.flat());
    }

    let system = ConstraintSystem::new(&partition![3, 3, 1, 1], 4, 2)?;
    println!("\ndimension {}", system.dimension());
    print!("{}", system.to_h_representation(1));
    for d in 1..=6 {
        println!("d = {d}: {} lattice points", system.count_points(d));
    }
    let first = PieriPoint::from_flat(4, 2, &system.points(1)[0])?;
    println!("first point of P as a tableau: {}", point_to_ssyt(&first)?);
    println!("greedy witness: {}", witness_ssyt(&partition![3, 3, 1, 1], 4, 2)?);
    Ok(())
}
