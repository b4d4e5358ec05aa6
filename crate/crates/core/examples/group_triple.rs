//! Dis, Inn and Aut of a few quandles, named up to isomorphism.
//!
//! ```text
//! cargo run --release --example group_triple -- R:7 Tak:3x3
//! ```

use quandles::autcalc::{self, Selector};
use quandles::families;

fn main() -> quandles::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = [
            "T:3",
            "R:3",
            "R:4",
            "R:6",
            "R:9",
            "P:5:(2,3)(4,5)",
            "Conj:Q8",
            "Conj:S4",
        ]
        .map(String::from)
        .to_vec();
    }
    println!(
        "{:<16} {:>6} {:>6} {:>6}  names",
        "quandle", "|Dis|", "|Inn|", "|Aut|"
    );
    for spec in &specs {
        let t = autcalc::group_triple(&families::parse_family(spec)?)?;
        println!(
            "{spec:<16} {:>6} {:>6} {:>6}  {} / {} / {}",
            t.dis.order(),
            t.inn.order(),
            t.aut.order(),
            t.name(Selector::Dis),
            t.name(Selector::Inn),
            t.name(Selector::Aut),
        );
    }
    Ok(())
}
