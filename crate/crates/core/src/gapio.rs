//! Text formats: the cycle-notation quandle library (`.qlib`), plain
//! matrices (`.qmat`) and results tables (`.csv`, `.md`).
//!
//! Library grammar, 1-based points, whitespace allowed between tokens:
//!
//! ```text
//! library := "[" entry ("," entry)* "]"
//! entry   := "[" perm ("," perm)* "]"
//! perm    := "()" | cycle+
//! cycle   := "(" int ("," int)+ ")"
//! ```
//!
//! Permutation `k` of an entry is column `k` of the table. The reader also
//! accepts `[ ]`, a leading `name :=` or `name =`, and a trailing `;`.

use std::fmt::Write as _;

use crate::autcalc::{GroupTriple, Selector};
use crate::error::{Error, Result};
use crate::perm::{perm_from_raw, Perm};
use crate::quandle::{Quandle, Violation};
use crate::text::{Cursor, Pos};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuandleLibrary {
    pub entries: Vec<Quandle>,
}

impl QuandleLibrary {
    pub fn new(entries: Vec<Quandle>) -> Self {
        QuandleLibrary { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quandle> {
        self.entries.iter()
    }
}

impl From<Vec<Quandle>> for QuandleLibrary {
    fn from(entries: Vec<Quandle>) -> Self {
        QuandleLibrary { entries }
    }
}

impl IntoIterator for QuandleLibrary {
    type Item = Quandle;
    type IntoIter = std::vec::IntoIter<Quandle>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.into_iter()
    }
}

pub fn parse_library(text: &str) -> Result<QuandleLibrary> {
    let entries = first_violation(scan_library(text)?)?;
    Ok(QuandleLibrary { entries })
}

/// Parses the syntax and validates each entry separately; only syntax and
/// range errors fail the whole document.
pub fn scan_library(text: &str) -> Result<Vec<std::result::Result<Quandle, Violation>>> {
    let mut cur = Cursor::new(text);
    skip_assignment(&mut cur);
    cur.expect(b'[')?;
    let mut entries = Vec::new();
    if !cur.eat(b']') {
        loop {
            entries.push(parse_entry(&mut cur)?);
            if cur.eat(b']') {
                break;
            }
            if !cur.eat(b',') {
                return Err(cur.unexpected("',' or ']'"));
            }
        }
    }
    cur.eat(b';');
    if !cur.at_end() {
        return Err(cur.unexpected("end of input"));
    }
    Ok(entries)
}

fn first_violation(entries: Vec<std::result::Result<Quandle, Violation>>) -> Result<Vec<Quandle>> {
    entries
        .into_iter()
        .enumerate()
        .map(|(entry, r)| r.map_err(|violation| Error::LibraryEntry { entry, violation }))
        .collect()
}

fn soft(r: Result<Quandle>) -> Result<std::result::Result<Quandle, Violation>> {
    match r {
        Ok(q) => Ok(Ok(q)),
        Err(Error::Axiom(v)) => Ok(Err(v)),
        Err(e) => Err(e),
    }
}

/// Skips `identifier :=` or `identifier =` if present.
fn skip_assignment(cur: &mut Cursor<'_>) {
    let Some(b) = cur.peek() else { return };
    if !(b.is_ascii_alphabetic() || b == b'_') {
        return;
    }
    let save = cur.clone();
    while matches!(cur.peek_raw(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
        cur.advance();
    }
    cur.eat(b':');
    if !cur.eat(b'=') {
        *cur = save;
    }
}

fn parse_entry(cur: &mut Cursor<'_>) -> Result<std::result::Result<Quandle, Violation>> {
    cur.expect(b'[')?;
    let mut raws = vec![cur.raw_perm()?];
    while cur.eat(b',') {
        raws.push(cur.raw_perm()?);
    }
    let end = cur.pos();
    cur.expect(b']')?;
    let degree = raws.len();
    let columns = raws
        .iter()
        .map(|raw| perm_from_raw(raw, degree))
        .collect::<Result<Vec<Perm>>>()
        .map_err(|e| match e {
            Error::UnsupportedDegree(d) => Cursor::error_at(end, format!("entry has {d} columns")),
            other => other,
        })?;
    soft(Quandle::from_columns(&columns))
}

/// One entry per line; `[ [ (), () ] ]` for `T_2`.
pub fn emit_library(lib: &QuandleLibrary) -> String {
    if lib.is_empty() {
        return "[ ]".to_string();
    }
    let mut out = String::from("[ ");
    for (i, q) in lib.iter().enumerate() {
        if i > 0 {
            out.push_str(",\n  ");
        }
        out.push_str(&emit_entry(q));
    }
    out.push_str(" ]");
    out
}

pub fn emit_entry(q: &Quandle) -> String {
    let cols: Vec<String> = q.columns().iter().map(Perm::to_string).collect();
    format!("[ {} ]", cols.join(", "))
}

/// Matrices of 1-based entries, one row per line, separated by blank lines.
/// Lines starting with `#` are ignored.
pub fn parse_matrices(text: &str) -> Result<Vec<Quandle>> {
    first_violation(scan_matrices(text)?)
}

pub fn scan_matrices(text: &str) -> Result<Vec<std::result::Result<Quandle, Violation>>> {
    let mut blocks: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.starts_with('#') {
            continue;
        }
        if trimmed.is_empty() {
            if !current.is_empty() {
                blocks.push(std::mem::take(&mut current));
            }
            continue;
        }
        let mut row = Vec::new();
        let mut column = 1;
        for token in line.split_whitespace() {
            // column of this token within the line
            let offset = line[column - 1..].find(token).unwrap() + column - 1;
            column = offset + token.len() + 1;
            let v = token.parse::<usize>().map_err(|_| {
                Cursor::error_at(
                    Pos {
                        line: lineno + 1,
                        column: offset + 1,
                    },
                    format!("expected a positive integer, found '{token}'"),
                )
            })?;
            row.push(v);
        }
        current.push(row);
    }
    if !current.is_empty() {
        blocks.push(current);
    }
    if blocks.is_empty() {
        return Err(Cursor::error_at(
            Pos { line: 1, column: 1 },
            "no matrices found",
        ));
    }
    blocks
        .iter()
        .map(|rows| soft(Quandle::from_rows_1based(rows)))
        .collect()
}

pub fn emit_matrices(quandles: &[Quandle]) -> String {
    quandles
        .iter()
        .map(Quandle::to_matrix_text)
        .collect::<Vec<_>>()
        .join("\n")
}

/// Reads either format: matrices start with a digit, libraries do not.
pub fn parse_quandles(text: &str) -> Result<Vec<Quandle>> {
    first_violation(scan_quandles(text)?)
}

pub fn scan_quandles(text: &str) -> Result<Vec<std::result::Result<Quandle, Violation>>> {
    let first = text
        .lines()
        .map(str::trim_start)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.bytes().next());
    match first {
        Some(b) if b.is_ascii_digit() => scan_matrices(text),
        _ => scan_library(text),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableFormat {
    #[default]
    Csv,
    Markdown,
}

/// `"1 1 1;3 2 2;2 3 3"`: rows separated by `;`, 1-based entries.
pub fn matrix_cell(q: &Quandle) -> String {
    q.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn parse_matrix_cell(cell: &str) -> Result<Quandle> {
    let rows = cell
        .split(';')
        .map(|r| {
            r.split_whitespace()
                .map(|t| {
                    t.parse::<usize>().map_err(|_| Error::Parse {
                        line: 1,
                        column: 1,
                        message: format!("bad matrix entry '{t}'"),
                    })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Quandle::from_rows_1based(&rows)
}

pub fn emit_results_table(
    rows: &[(Quandle, GroupTriple)],
    which: &[Selector],
    format: TableFormat,
) -> String {
    let header: Vec<&str> = std::iter::once("quandle")
        .chain(which.iter().map(|s| s.as_str()))
        .collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|(q, t)| {
            std::iter::once(matrix_cell(q))
                .chain(which.iter().map(|&s| t.name(s).to_string()))
                .collect()
        })
        .collect();
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&header).expect("in-memory write");
            for r in &body {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        TableFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "| {} |", header.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
            for r in &body {
                let _ = writeln!(out, "| {} |", r.join(" | "));
            }
            out
        }
    }
}

/// Header names, then per row the quandle and its remaining cells.
pub type ResultsTable = (Vec<String>, Vec<(Quandle, Vec<String>)>);

/// Reads a CSV results table back.
pub fn parse_results_csv(text: &str) -> Result<ResultsTable> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| {
        let line = e.position().map_or(1, |p| p.line() as usize);
        Error::Parse {
            line,
            column: 1,
            message: e.to_string(),
        }
    };
    let header: Vec<String> = r
        .headers()
        .map_err(csv_err)?
        .iter()
        .skip(1)
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let q = parse_matrix_cell(&rec[0]).map_err(|e| Error::Parse {
            line,
            column: 1,
            message: e.to_string(),
        })?;
        rows.push((q, rec.iter().skip(1).map(str::to_string).collect()));
    }
    Ok((header, rows))
}
