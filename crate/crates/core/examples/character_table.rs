//! Murnaghan–Nakayama character table of S_p.
//!
//! cargo run --example character_table -- 5

use plethysm::characters::CharacterTable;
use plethysm::partitions::partitions_of;

fn main() {
    let p = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let table = CharacterTable::compute(p);
    let classes = partitions_of(p, None);
    print!("{:>12}", "");
    for rho in &classes {
        print!("{:>12}", rho.to_string());
    }
    println!();
    for mu in &classes {
        print!("{:>12}", mu.to_string());
        for rho in &classes {
            print!("{:>12}", table.get(mu, rho).expect("full table").to_string());
        }
        println!();
    }
}
