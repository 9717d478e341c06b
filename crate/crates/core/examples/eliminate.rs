//! Staged elimination of the transitive groups of one degree.
//!
//! ```text
//! cargo run --example eliminate -- 12
//! ```

use ramify2::catalog::Catalog;
use ramify2::pipeline::{eliminate, Mode, Stage};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let degree: u32 = std::env::args().nth(1).map_or(Ok(13), |a| a.parse())?;
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/groups.dat");
    let catalog = Catalog::load(path)?;

    let trace = eliminate(degree, &catalog, Mode::Paper)?;
    for (stage, n) in trace.stage_counts() {
        println!("{stage:<22} {n}");
    }
    println!("\nleft for the refined bound:");
    for v in trace.at_stage(Stage::MRefinedOrderBound) {
        println!("  {} {}", v.group, v.detail);
    }
    println!("\nquotient stage, first few:");
    for v in trace.at_stage(Stage::Quotient).take(5) {
        println!("  {} {}", v.group, v.detail);
    }
    println!("\nsurvivors: {}", trace.survivors.len());
    Ok(())
}
