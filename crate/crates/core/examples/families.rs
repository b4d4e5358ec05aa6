//! Build members of the standard families and print their tables.
//!
//! ```text
//! cargo run --example families -- R:5 "P:4:(2,3,4)" Conj:S3
//! ```

use quandles::families;

fn main() -> quandles::Result<()> {
    let mut specs: Vec<String> = std::env::args().skip(1).collect();
    if specs.is_empty() {
        specs = [
            "T:3",
            "R:3",
            "R:4",
            "A:5:2",
            "P:4:(2,3,4)",
            "Conj:S3",
            "Core:Z4",
            "Tak:3x3",
        ]
        .map(String::from)
        .to_vec();
    }
    for spec in &specs {
        let q = families::parse_family(spec)?;
        println!("{spec} (order {})", q.order());
        print!("{}", q.to_matrix_text());
        println!();
    }
    Ok(())
}
