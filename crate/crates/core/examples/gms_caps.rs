//! Per-bucket gms caps for degrees 9 to 15, in both evaluation modes.
//!
//! ```text
//! cargo run --example gms_caps
//! ```

use ramify2::pipeline::{
    compare_modes, evaluate_scenario, gms_caps_for_degree, paper_scenarios, Mode,
};
use ramify2::tables::CapTable;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let table = CapTable::default();
    for s in paper_scenarios() {
        let e = evaluate_scenario(&table, &s)?;
        let note = s
            .printed
            .as_ref()
            .map(|p| format!(" (printed {p})"))
            .unwrap_or_default();
        println!(
            "{:<62} {:<34} {}{note}",
            s.label,
            e.content.to_string(),
            e.gms
        );
    }

    for n in [9, 12] {
        for mode in [Mode::Paper, Mode::Exhaustive] {
            let caps = gms_caps_for_degree(n, mode)?;
            println!("\ndegree {n}, {mode}");
            for c in &caps.entries {
                println!(
                    "  {:<5} {:<8} |G| < {:<5} {}",
                    c.bucket.to_string(),
                    c.gms.to_string(),
                    c.order_bound,
                    c.source
                );
            }
        }
        for c in compare_modes(n)?.iter().filter(|c| c.diverges) {
            println!(
                "  modes differ at {}: {} vs {}",
                c.bucket, c.paper, c.exhaustive
            );
        }
    }
    Ok(())
}
