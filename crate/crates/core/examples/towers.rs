//! Discriminant exponents and average slopes along towers of degree-p steps.
//!
//! ```text
//! cargo run --example towers
//! ```

use ramify2::towers::{closure_slope_bound, max_slope_bound, simulate_tower, NuChoice, TowerSpec};

fn show(spec: &TowerSpec) -> Result<(), ramify2::towers::TowerError> {
    let t = simulate_tower(spec)?;
    println!("p={} e={} f={}", spec.p, spec.e, spec.f);
    for (i, s) in t.slopes.iter().enumerate() {
        println!(
            "  step {}: nu={:<4} c={:<6} S={:<8} bound {}",
            i + 1,
            t.nus[i],
            t.exponents[i + 1],
            s.to_string(),
            max_slope_bound(spec.p, i as u64 + 1)
        );
    }
    assert_eq!(t.differences, t.predicted_differences());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // x^2 + 2 at every step: slopes 3, 4, 5, ...
    show(&TowerSpec::over_tame_base(2, 1, 1, vec![NuChoice::Max; 5]))?;
    show(&TowerSpec::over_tame_base(2, 1, 1, vec![NuChoice::Min; 5]))?;
    show(&TowerSpec::over_tame_base(
        3,
        2,
        1,
        vec![NuChoice::Max, NuChoice::Min, NuChoice::Max],
    ))?;

    let mut bad = TowerSpec::over_tame_base(2, 3, 1, vec![NuChoice::Max]);
    bad.c0 = 5.into();
    println!("c0=5: {}", simulate_tower(&bad).unwrap_err());

    for n in [8, 12, 14, 16] {
        println!(
            "closure of a degree {n} field: slopes <= {}",
            closure_slope_bound(2, n)
        );
    }
    Ok(())
}
