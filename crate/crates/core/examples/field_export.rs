//! Writes a solution to CSV and prints the JSON summary.

use std::f64::consts::PI;
use std::fs::File;
use std::io::BufWriter;

use triples::vortex::{build_problem, solve, write_fields, PhiProfile, VortexSummary};

fn main() -> triples::Result<()> {
    let p = build_problem(32, 1, 0, 2.5, PhiProfile::Cosine { level: PI, amplitude: PI / 2.0 })?;
    let s = solve(&p)?;
    let path = std::env::temp_dir().join("vortex_fields.csv");
    write_fields(BufWriter::new(File::create(&path)?), &p, &s)?;
    println!("{}", serde_json::to_string_pretty(&VortexSummary::new(&p, &s)).expect("summary serializes"));
    println!("fields written to {}", path.display());
    Ok(())
}
