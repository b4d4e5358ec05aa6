//! Run the structural checks and compare against the built-in golden table.
//!
//! ```text
//! cargo run --release --example verify_suite -- 12
//! ```

use quandles::autcalc;

fn main() -> quandles::Result<()> {
    let max_n: usize = std::env::args()
        .nth(1)
        .map_or(8, |s| s.parse().expect("max n"));
    let report = autcalc::verify_theorems(max_n);
    print!("{report}");
    let diff = autcalc::compare_golden(autcalc::GOLDEN_DIS_CSV)?;
    for d in &diff {
        println!("golden: {d}");
    }
    println!(
        "{} checks, {} failed, {} golden mismatches",
        report.checks.len(),
        report.failures().count(),
        diff.len()
    );
    if !report.all_pass() || !diff.is_empty() {
        std::process::exit(1);
    }
    Ok(())
}
