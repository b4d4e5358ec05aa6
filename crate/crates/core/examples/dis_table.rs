//! The displacement group of every quandle of order 3 to 5, as CSV or
//! Markdown.
//!
//! ```text
//! cargo run --release --example dis_table -- md
//! ```

use quandles::autcalc::{self, Selector};
use quandles::enumerate;
use quandles::gapio::{self, TableFormat};

fn main() -> quandles::Result<()> {
    let format = match std::env::args().nth(1).as_deref() {
        Some("md") => TableFormat::Markdown,
        _ => TableFormat::Csv,
    };
    let mut rows = Vec::new();
    for n in 3..=5 {
        for q in enumerate::enumerate(n)?.quandles {
            let t = autcalc::group_triple(&q)?;
            rows.push((q, t));
        }
    }
    print!(
        "{}",
        gapio::emit_results_table(&rows, &[Selector::Dis], format)
    );
    Ok(())
}
