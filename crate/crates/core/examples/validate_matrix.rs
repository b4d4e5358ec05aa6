//! Check operation tables against the quandle axioms and print the first
//! violated instance.
//!
//! ```text
//! cargo run --example validate_matrix
//! cargo run --example validate_matrix -- path/to/file.qmat
//! ```

use quandles::gapio;

const SAMPLE: &str = "\
# R_4
1 3 1 3
4 2 4 2
3 1 3 1
2 4 2 4

# not idempotent
2 1
1 2

# columns are permutations but self-distributivity fails
1 3 2
2 2 1
3 1 3
";

fn main() -> quandles::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => SAMPLE.to_string(),
    };
    for (i, entry) in gapio::scan_quandles(&text)?.into_iter().enumerate() {
        match entry {
            Ok(q) => println!("entry {}: quandle of order {}", i + 1, q.order()),
            Err(v) => println!("entry {}: {v}", i + 1),
        }
    }
    Ok(())
}
