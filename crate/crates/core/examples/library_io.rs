//! Convert between the library format (one list of column permutations per
//! quandle) and plain matrix text.
//!
//! ```text
//! cargo run --example library_io
//! ```

use quandles::gapio::{self, QuandleLibrary};

const LIBRARY: &str = "Quandles := [ [ (), () ],
  [ (2,3), (1,3), (1,2) ],
  [ (2,4), (1,3), (2,4), (1,3) ] ];";

fn main() -> quandles::Result<()> {
    let lib = gapio::parse_library(LIBRARY)?;
    let matrices = gapio::emit_matrices(&lib.entries);
    print!("{matrices}");
    let back = QuandleLibrary::new(gapio::parse_matrices(&matrices)?);
    assert_eq!(back, lib);
    println!("{}", gapio::emit_library(&back));
    for q in lib.iter() {
        println!("{}", gapio::matrix_cell(q));
    }
    Ok(())
}
