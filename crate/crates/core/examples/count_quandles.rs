//! Count quandles of each order up to isomorphism.
//!
//! ```text
//! cargo run --release --example count_quandles -- 8
//! ```

use std::time::Instant;

use quandles::enumerate;

fn main() -> quandles::Result<()> {
    let max: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("order"))
        .unwrap_or(6);
    for n in 1..=max {
        let start = Instant::now();
        let c = enumerate::count(n)?;
        println!("order {n}: {c} quandles ({:.2?})", start.elapsed());
    }
    Ok(())
}
