//! Enumerate one quandle per isomorphism class and write them as a library.
//!
//! ```text
//! cargo run --release --example enumerate_library -- 6 order6.qlib
//! ```

use std::time::Duration;

use quandles::enumerate::{self, Options};
use quandles::gapio::{self, QuandleLibrary};

fn main() -> quandles::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(5, |s| s.parse().expect("order"));
    let opts = Options {
        budget: Some(Duration::from_secs(600)),
        ..Options::default()
    };
    let result = enumerate::enumerate_with(n, &opts)?;
    let trivial_columns = result
        .quandles
        .iter()
        .filter(|q| q.has_trivial_column())
        .count();
    eprintln!(
        "order {n}: {} quandles, {trivial_columns} with a trivial column",
        result.count
    );
    let text = gapio::emit_library(&QuandleLibrary::new(result.quandles));
    match args.next() {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}
