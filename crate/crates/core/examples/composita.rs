//! Slope content bounds for composita.
//!
//! ```text
//! cargo run --example composita
//! ```

use ramify2::composita::{
    bounded_compose, cap_wild_count, check_compositum_bounds, compose_many, crude_compose,
    quartic_compositum_cap,
};
use ramify2::slope::SlopeContent;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a: SlopeContent = "[2,3,7/2]_9".parse()?;
    let b: SlopeContent = "[2,3,4]_15".parse()?;

    let crude = crude_compose(&a, &b)?;
    println!("crude     {crude}  gms {}", crude.gms());
    for m in [5, 4] {
        let c = cap_wild_count(&a, &b, m)?;
        println!("m <= {m}    {c}  gms {}", c.gms());
        assert!(check_compositum_bounds(&a, &b, &c)?);
    }
    match cap_wild_count(&a, &b, 3) {
        Err(e) => println!("m <= 3    {e}"),
        Ok(c) => unreachable!("{c}"),
    }

    // [2,4] would drop a slope of 3 that both factors have.
    let wrong: SlopeContent = "[2,4]_45".parse()?;
    println!(
        "{wrong} consistent: {}",
        check_compositum_bounds(&a, &b, &wrong)?
    );

    let parts: Vec<SlopeContent> = ["[3]_1", "[2,3,4]_1", "[3,4,5]_1", "[]_3"]
        .iter()
        .map(|t| t.parse())
        .collect::<Result<_, _>>()?;
    println!("fold      {}", compose_many(&parts, None)?);

    let octic: SlopeContent = "[2,3,7/2,4,17/4,5]_1".parse()?;
    let ceiling = quartic_compositum_cap();
    let quartic: SlopeContent = "[2,3,4]_1".parse()?;
    println!(
        "clipped   {}",
        bounded_compose(&octic, &quartic, &"[2,2,3,3,7/2,4,17/4,5]_1".parse()?)?
    );
    println!("quartic compositum {ceiling}");
    Ok(())
}
