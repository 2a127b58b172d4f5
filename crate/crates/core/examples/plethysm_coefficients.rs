//! Schur expansions of small plethysms and single coefficients a^π_{μ,λ}.
//!
//! cargo run --example plethysm_coefficients

use plethysm::partition;
use plethysm::symfunc::{plethysm_coefficient, plethysm_coefficient_fast, Inner, PowerSumElement};

fn main() -> plethysm::Result<()> {
    for n in 1..=4 {
        let sym = PowerSumElement::h(2).plethysm(&PowerSumElement::h(n))?.schur_expand()?;
        let alt = PowerSumElement::e(2).plethysm(&PowerSumElement::h(n))?.schur_expand()?;
        let show = |e: &plethysm::symfunc::SchurExpansion| {
            e.coeffs.iter().map(|(l, c)| format!("{c}·s{l}")).collect::<Vec<_>>().join(" + ")
        };
        println!("h2[h{n}] = {}", show(&sym));
        println!("e2[h{n}] = {}", show(&alt));
    }

    // S^2(Λ^2 V) = Λ^4 V ⊕ S_(2,2) V
    let s2_wedge2 = PowerSumElement::h(2).plethysm(&PowerSumElement::e(2))?.schur_expand()?;
    println!("h2[e2] has {} constituents", s2_wedge2.coeffs.len());

    // the general route expands s_μ[s_λ] fully; the h_k route goes through an alternant
    let slow = plethysm_coefficient(&partition![2], &partition![1, 1], &partition![2, 2])?;
    println!("a^(2,2)_(2),(1,1) = {slow}");
    for pi in [partition![6, 3, 3], partition![5, 4, 3], partition![4, 4, 4]] {
        let a = plethysm_coefficient_fast(&partition![3], 4, &pi, Inner::H)?;
        let b = plethysm_coefficient_fast(&partition![2, 1], 4, &pi, Inner::H)?;
        println!("π = {pi}: a_(3),(4) = {a}, a_(2,1),(4) = {b}");
    }
    Ok(())
}
