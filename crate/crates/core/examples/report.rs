//! Full run over degrees 9 to 15, printed and optionally written as JSON.
//!
//! ```text
//! cargo run --example report -- /tmp/report.json
//! ```

use ramify2::catalog::Catalog;
use ramify2::pipeline::{report, Mode, Status};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let catalog = Catalog::load(concat!(env!("CARGO_MANIFEST_DIR"), "/data/groups.dat"))?;
    let r = report(&catalog, Mode::Paper)?;
    print!("{}", r.to_text());
    if let Some(out) = std::env::args().nth(1) {
        std::fs::write(&out, serde_json::to_string_pretty(&r)?)?;
        println!("wrote {out}");
    }
    if r.status == Status::Failed {
        std::process::exit(1);
    }
    Ok(())
}
