//! Parsing slope contents and computing Galois mean slopes.
//!
//! ```text
//! cargo run --example slope_content
//! ```

use ramify2::slope::{parse_slope_content, SlopeContent};
use ramify2::tables::{octic_max_content, OcticConstraint};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Largest octic content for 3 to 6 wild slopes.
    for m in 3..=6 {
        let sc = octic_max_content(m, OcticConstraint::None)?;
        println!("{m} slopes: {sc:<24} gms {}", sc.gms());
    }

    let sc: SlopeContent = "[2, 3, 7/2]_9^2".parse()?;
    println!(
        "{sc}: {} wild slopes, tame {}, residue {}",
        sc.wild_count(),
        sc.tame(),
        sc.residue()
    );
    println!("grd contribution {}", sc.grd_factor());
    // residue degree never changes gms
    assert_eq!(sc.with_residue(1)?.gms(), sc.gms());

    // other primes
    let three = parse_slope_content("[3/2]_2", 3)?;
    println!("p=3 {three}: gms {}", three.gms());

    for bad in ["[1]_1", "[3]_2", "[3.5]_1"] {
        println!("{bad}: {}", bad.parse::<SlopeContent>().unwrap_err());
    }
    Ok(())
}
