//! From a gms bound to a bound on the order of the Galois group.
//!
//! ```text
//! cargo run --example order_bounds
//! ```

use ramify2::rational::{parse_rational, rat};
use ramify2::tables::{order_bound_for_gms, rd_bound_table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>8} {:>8} {:>6}", "gms_2", "rd", "n");
    for row in rd_bound_table() {
        assert!(row.threshold_below_log2_rd());
        println!(
            "{:>8} {:>8} {:>6}",
            row.gms2_threshold.to_string(),
            row.rd_value,
            row.degree
        );
    }

    for g in [
        "97/24", "101/24", "53/12", "71/16", "203/48", "413/96", "495/112", "107/24",
    ] {
        let g = parse_rational(g).expect("fraction");
        println!("gms <= {g:<8} => |G| < {}", order_bound_for_gms(&g)?);
    }
    println!("gms <= 5: {}", order_bound_for_gms(&rat(5, 1)).unwrap_err());
    Ok(())
}
