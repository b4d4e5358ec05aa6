//! Quandles as presentation matrices.
//!
//! `table[x][y] = x ▷ y`, 0-based. Column `y` is the right translation
//! `β_y : x ↦ x ▷ y`. Validation checks idempotency (Q1), column
//! invertibility (Q2) and right self-distributivity (Q3), in that order,
//! reporting the smallest witness.

use std::fmt;

use thiserror::Error;

use crate::error::{Error, Result};
use crate::perm::{Perm, MAX_DEGREE};

/// Why a table is not a quandle. Indices are stored 0-based and printed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("order {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
    #[error("entry {value} at row {}, column {} is out of range", .row + 1, .column + 1)]
    OutOfRange {
        row: usize,
        column: usize,
        value: usize,
    },
    #[error("Q1 violation at x={}: x ▷ x = {}", .x + 1, .value + 1)]
    Idempotency { x: usize, value: usize },
    #[error("Q2 violation: column {} repeats the value {}", .column + 1, .value + 1)]
    Invertibility { column: usize, value: usize },
    #[error("Q3 violation at x={}, y={}, z={}", .x + 1, .y + 1, .z + 1)]
    SelfDistributivity { x: usize, y: usize, z: usize },
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quandle {
    n: usize,
    table: Vec<u8>,
}

const UNSET: u8 = u8::MAX;

impl Quandle {
    /// Validates a 0-based table.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Quandle> {
        let n = rows.len();
        if n == 0 {
            return Err(Violation::Empty.into());
        }
        if n > MAX_DEGREE {
            return Err(Violation::TooLarge(n).into());
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, values) in rows.iter().enumerate() {
            if values.len() != n {
                return Err(Violation::NotSquare {
                    row,
                    len: values.len(),
                    expected: n,
                }
                .into());
            }
            for (column, &value) in values.iter().enumerate() {
                if value >= n {
                    return Err(Violation::OutOfRange { row, column, value }.into());
                }
                table.push(value as u8);
            }
        }
        let q = Quandle { n, table };
        q.check_axioms()?;
        Ok(q)
    }

    /// Validates a table written with 1-based entries, as in printed matrices.
    pub fn from_rows_1based(rows: &[Vec<usize>]) -> Result<Quandle> {
        let mut zero_based = Vec::with_capacity(rows.len());
        for (row, values) in rows.iter().enumerate() {
            let mut r = Vec::with_capacity(values.len());
            for (column, &v) in values.iter().enumerate() {
                if v == 0 {
                    return Err(Violation::OutOfRange {
                        row,
                        column,
                        value: 0,
                    }
                    .into());
                }
                r.push(v - 1);
            }
            zero_based.push(r);
        }
        Self::from_table(&zero_based)
    }

    /// Builds the table whose column `y` is `columns[y]`.
    pub fn from_columns(columns: &[Perm]) -> Result<Quandle> {
        let n = columns.len();
        let mut rows = vec![vec![0usize; n]; n];
        for (y, col) in columns.iter().enumerate() {
            if col.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: col.degree(),
                });
            }
            for (x, row) in rows.iter_mut().enumerate() {
                row[y] = col.apply(x);
            }
        }
        Self::from_table(&rows)
    }

    /// Caller guarantees the axioms.
    pub(crate) fn from_raw_unchecked(n: usize, table: Vec<u8>) -> Quandle {
        debug_assert_eq!(table.len(), n * n);
        debug_assert!(Quandle {
            n,
            table: table.clone()
        }
        .check_axioms()
        .is_ok());
        Quandle { n, table }
    }

    fn check_axioms(&self) -> std::result::Result<(), Violation> {
        let n = self.n;
        for x in 0..n {
            if self.op(x, x) != x {
                return Err(Violation::Idempotency {
                    x,
                    value: self.op(x, x),
                });
            }
        }
        for column in 0..n {
            let mut seen = vec![false; n];
            let mut dup: Option<usize> = None;
            for x in 0..n {
                let v = self.op(x, column);
                if std::mem::replace(&mut seen[v], true) {
                    dup = Some(dup.map_or(v, |d| d.min(v)));
                }
            }
            if let Some(value) = dup {
                return Err(Violation::Invertibility { column, value });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(xy, z) != self.op(self.op(x, z), self.op(y, z)) {
                        return Err(Violation::SelfDistributivity { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// `x ▷ y`.
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.op(x, y)).collect())
            .collect()
    }

    /// The right translation `β_y`.
    pub fn column_perm(&self, y: usize) -> Result<Perm> {
        if y >= self.n {
            return Err(Error::IndexOutOfRange {
                index: y,
                order: self.n,
            });
        }
        Ok(self.column(y))
    }

    fn column(&self, y: usize) -> Perm {
        Perm::from_bytes_unchecked((0..self.n).map(|x| self.table[x * self.n + y]).collect())
    }

    pub fn columns(&self) -> Vec<Perm> {
        (0..self.n).map(|y| self.column(y)).collect()
    }

    pub fn is_trivial_column(&self, y: usize) -> bool {
        (0..self.n).all(|x| self.op(x, y) == x)
    }

    pub fn has_trivial_column(&self) -> bool {
        (0..self.n).any(|y| self.is_trivial_column(y))
    }

    /// Whether the bijection `f` satisfies `f(a ▷ b) = f(a) ▷ f(b)`.
    pub fn is_automorphism(&self, f: &Perm) -> bool {
        f.degree() == self.n
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| f.apply(self.op(a, b)) == self.op(f.apply(a), f.apply(b)))
            })
    }

    /// The isomorphic copy with every element `x` renamed to `f(x)`.
    pub fn relabel(&self, f: &Perm) -> Result<Quandle> {
        if f.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: f.degree(),
            });
        }
        let n = self.n;
        let mut table = vec![0u8; n * n];
        for x in 0..n {
            for y in 0..n {
                table[f.apply(x) * n + f.apply(y)] = f.apply(self.op(x, y)) as u8;
            }
        }
        Ok(Quandle { n, table })
    }

    /// An isomorphism `self → other`, if any.
    pub fn isomorphism_to(&self, other: &Quandle) -> Option<Perm> {
        if self.n != other.n {
            return None;
        }
        let mut m = Matcher::new(self, other);
        let mut found = None;
        m.search(&mut |f| {
            found = Some(f);
            false
        });
        found
    }

    /// Every automorphism, found by backtracking over partial bijections.
    pub(crate) fn automorphisms(&self) -> Vec<Perm> {
        let mut m = Matcher::new(self, self);
        let mut all = Vec::new();
        m.search(&mut |f| {
            all.push(f);
            true
        });
        all
    }

    /// The relabeling whose table, in row-major order, is lexicographically
    /// least.
    pub fn canonical_form(&self) -> Quandle {
        let (table, _) = Canonizer::new(self).run_full();
        Quandle { n: self.n, table }
    }

    /// A relabeling `f` with `self.relabel(f) == self.canonical_form()`.
    pub fn canonical_labeling(&self) -> Perm {
        let (_, labels) = Canonizer::new(self).run_full();
        labels
    }

    /// `self == self.canonical_form()`, decided without finishing the search
    /// once a smaller relabeling turns up.
    pub fn is_canonical(&self) -> bool {
        Canonizer::new(self).into_is_minimal()
    }

    /// Matrix text: one row per line, 1-based entries separated by spaces.
    pub fn to_matrix_text(&self) -> String {
        let mut s = String::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if y > 0 {
                    s.push(' ');
                }
                s.push_str(&(self.op(x, y) + 1).to_string());
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for Quandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quandle({})[", self.n)?;
        for x in 0..self.n {
            if x > 0 {
                f.write_str("; ")?;
            }
            for y in 0..self.n {
                if y > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.op(x, y) + 1)?;
            }
        }
        f.write_str("]")
    }
}

/// `Some(f)` with `f(a ▷ b) = f(a) ▷ f(b)` when `x` and `y` are isomorphic.
pub fn are_isomorphic(x: &Quandle, y: &Quandle) -> Option<Perm> {
    x.isomorphism_to(y)
}

pub fn canonical_form(x: &Quandle) -> Quandle {
    x.canonical_form()
}

/// Relabeling-invariant summary of an element: cycle type of its column and
/// the value multiplicities of its row.
fn element_signature(q: &Quandle, a: usize) -> Vec<u16> {
    let mut sig: Vec<u16> = q.column(a).cycle_type().iter().map(|&c| c as u16).collect();
    sig.push(u16::MAX);
    let mut counts = vec![0u16; q.n];
    for y in 0..q.n {
        counts[q.op(a, y)] += 1;
    }
    sig.push(counts[a]);
    counts.sort_unstable();
    sig.extend(counts);
    sig
}

/// Backtracking over partial bijections `src → dst`. Every assignment is
/// closed under the operation: once `a` and `b` are mapped, `a ▷ b` is forced.
struct Matcher<'a> {
    src: &'a Quandle,
    dst: &'a Quandle,
    fwd: Vec<u8>,
    used: Vec<bool>,
    trail: Vec<u8>,
    compatible: Vec<Vec<bool>>,
}

impl<'a> Matcher<'a> {
    fn new(src: &'a Quandle, dst: &'a Quandle) -> Self {
        let n = src.n;
        let src_sig: Vec<_> = (0..n).map(|a| element_signature(src, a)).collect();
        let dst_sig: Vec<_> = (0..n).map(|b| element_signature(dst, b)).collect();
        let compatible = src_sig
            .iter()
            .map(|s| dst_sig.iter().map(|t| s == t).collect())
            .collect();
        Matcher {
            src,
            dst,
            fwd: vec![UNSET; n],
            used: vec![false; n],
            trail: Vec::with_capacity(n),
            compatible,
        }
    }

    fn set(&mut self, a: usize, b: usize) -> bool {
        if self.used[b] || !self.compatible[a][b] {
            return false;
        }
        self.fwd[a] = b as u8;
        self.used[b] = true;
        self.trail.push(a as u8);
        true
    }

    fn assign(&mut self, a: usize, b: usize) -> bool {
        if !self.set(a, b) {
            return false;
        }
        let mut next = self.trail.len() - 1;
        while next < self.trail.len() {
            let u = self.trail[next] as usize;
            next += 1;
            let fu = self.fwd[u] as usize;
            for i in 0..self.trail.len() {
                let v = self.trail[i] as usize;
                let fv = self.fwd[v] as usize;
                for (p, q, fp, fq) in [(u, v, fu, fv), (v, u, fv, fu)] {
                    let c = self.src.op(p, q);
                    let want = self.dst.op(fp, fq);
                    match self.fwd[c] {
                        UNSET => {
                            if !self.set(c, want) {
                                return false;
                            }
                        }
                        got => {
                            if got as usize != want {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap() as usize;
            self.used[self.fwd[a] as usize] = false;
            self.fwd[a] = UNSET;
        }
    }

    /// Calls `emit` on each complete bijection; stops when it returns false.
    fn search(&mut self, emit: &mut dyn FnMut(Perm) -> bool) -> bool {
        let Some(a) = self.fwd.iter().position(|&b| b == UNSET) else {
            let images: Vec<u8> = self.fwd.clone();
            return emit(Perm::from_bytes_unchecked(images));
        };
        for b in 0..self.src.n {
            if self.used[b] || !self.compatible[a][b] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(a, b) && !self.search(emit) {
                return false;
            }
            self.undo(mark);
        }
        true
    }
}

/// Cap on automorphisms remembered for orbit pruning.
const MAX_STORED_AUTOMORPHISMS: usize = 64;

/// Branch and bound for the row-major least relabeling.
///
/// A relabeling is built as a list `labels[k] = old element carrying new
/// label k`. Cells are read in row-major order; cell `(i, j)` of the new table
/// is the label of `old(i) ▷ old(j)`. When that value is still unlabeled the
/// least choice is forced: it receives the next free label. Only row 0 ever
/// branches (an unlabeled column index), since once row 0 is read every label
/// is assigned. Leaves equal to the incumbent yield automorphisms, which prune
/// later branches whose candidates lie in one orbit of the pointwise
/// stabilizer of the labeled prefix.
struct Canonizer<'a> {
    q: &'a Quandle,
    n: usize,
    labels: Vec<u8>,
    label_of: Vec<u8>,
    best: Vec<u8>,
    best_labels: Vec<u8>,
    have_best: bool,
    /// Bumped whenever the incumbent changes.
    best_version: u64,
    /// Stop as soon as a strictly smaller table is found.
    check_only: bool,
    found_smaller: bool,
    automorphisms: Vec<Vec<u8>>,
    scratch: Vec<u8>,
}

impl<'a> Canonizer<'a> {
    fn new(q: &'a Quandle) -> Self {
        let n = q.n;
        Canonizer {
            q,
            n,
            labels: Vec::with_capacity(n),
            label_of: vec![UNSET; n],
            best: Vec::new(),
            best_labels: Vec::new(),
            have_best: false,
            best_version: 0,
            check_only: false,
            found_smaller: false,
            automorphisms: Vec::new(),
            scratch: vec![0; n * n],
        }
    }

    fn run_full(mut self) -> (Vec<u8>, Perm) {
        self.row0(0, false);
        // best_labels[k] = old element with new label k; the relabeling maps old → new
        let mut f = vec![0u8; self.n];
        for (k, &old) in self.best_labels.iter().enumerate() {
            f[old as usize] = k as u8;
        }
        (self.best, Perm::from_bytes_unchecked(f))
    }

    fn into_is_minimal(mut self) -> bool {
        self.best = self.q.table.clone();
        self.best_labels = (0..self.n as u8).collect();
        self.have_best = true;
        self.check_only = true;
        self.row0(0, true);
        !self.found_smaller
    }

    #[inline]
    fn push_label(&mut self, old: usize) {
        self.label_of[old] = self.labels.len() as u8;
        self.labels.push(old as u8);
    }

    #[inline]
    fn pop_label(&mut self) {
        let old = self.labels.pop().unwrap();
        self.label_of[old as usize] = UNSET;
    }

    /// Label of `a ▷ b` (old elements), assigning the next label if needed.
    /// Returns the label and whether it was newly assigned.
    #[inline]
    fn value(&mut self, a: usize, b: usize) -> (u8, bool) {
        let v = self.q.op(a, b);
        match self.label_of[v] {
            UNSET => {
                self.push_label(v);
                (self.label_of[v], true)
            }
            l => (l, false),
        }
    }

    /// Compares `value` against the incumbent at `cell`. `None` prunes.
    #[inline]
    fn compare(&self, cell: usize, value: u8, tie: bool) -> Option<bool> {
        if !tie {
            return Some(false);
        }
        match value.cmp(&self.best[cell]) {
            std::cmp::Ordering::Less => Some(false),
            std::cmp::Ordering::Equal => Some(true),
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Continue reading row 0 at column `j`. Returns false to abort the search.
    fn row0(&mut self, j: usize, tie: bool) -> bool {
        if j == self.n {
            return self.finish(tie);
        }
        if self.labels.len() > j {
            let g0 = self.labels[0] as usize;
            let gj = self.labels[j] as usize;
            let (v, forced) = self.value(g0, gj);
            let ok = match self.compare(j, v, tie) {
                Some(t) => self.row0(j + 1, t),
                None => true,
            };
            if forced {
                self.pop_label();
            }
            return ok;
        }
        // branch: choose the old element that receives label j
        let candidates: Vec<usize> = (0..self.n).filter(|&u| self.label_of[u] == UNSET).collect();
        let mut explored: Vec<usize> = Vec::new();
        let mut tie = tie;
        let mut version = self.best_version;
        for &u in &candidates {
            if self.best_version != version {
                // the new incumbent shares this prefix
                tie = true;
                version = self.best_version;
            }
            if !explored.is_empty() && self.same_orbit_as_explored(u, &explored) {
                continue;
            }
            explored.push(u);
            self.push_label(u);
            let g0 = self.labels[0] as usize;
            let (v, forced) = self.value(g0, u);
            let ok = match self.compare(j, v, tie) {
                Some(t) => self.row0(j + 1, t),
                None => true,
            };
            if forced {
                self.pop_label();
            }
            self.pop_label();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Whether some stored automorphism fixing the labeled prefix pointwise
    /// links `u` to an explored candidate (orbits of the generated group).
    fn same_orbit_as_explored(&self, u: usize, explored: &[usize]) -> bool {
        let stabilizing: Vec<&Vec<u8>> = self
            .automorphisms
            .iter()
            .filter(|a| self.labels.iter().all(|&x| a[x as usize] == x))
            .collect();
        if stabilizing.is_empty() {
            return false;
        }
        let mut in_orbit = vec![false; self.n];
        let mut stack = vec![u];
        in_orbit[u] = true;
        while let Some(x) = stack.pop() {
            if explored.contains(&x) {
                return true;
            }
            for a in &stabilizing {
                let y = a[x] as usize;
                if !in_orbit[y] {
                    in_orbit[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    /// Rows 1.. are determined once row 0 is read.
    fn finish(&mut self, mut tie: bool) -> bool {
        debug_assert_eq!(self.labels.len(), self.n);
        let n = self.n;
        for i in 0..n {
            let gi = self.labels[i] as usize;
            for j in 0..n {
                let gj = self.labels[j] as usize;
                let v = self.label_of[self.q.op(gi, gj)];
                let cell = i * n + j;
                if tie {
                    match v.cmp(&self.best[cell]) {
                        std::cmp::Ordering::Less => tie = false,
                        std::cmp::Ordering::Equal => {}
                        std::cmp::Ordering::Greater => return true,
                    }
                }
                self.scratch[cell] = v;
            }
        }
        if tie && self.have_best {
            // equal tables: labels ∘ best_labels⁻¹ is an automorphism
            if self.automorphisms.len() < MAX_STORED_AUTOMORPHISMS {
                let mut a = vec![0u8; n];
                for k in 0..n {
                    a[self.best_labels[k] as usize] = self.labels[k];
                }
                if a.iter().enumerate().any(|(i, &x)| i != x as usize) {
                    self.automorphisms.push(a);
                }
            }
            return true;
        }
        if self.check_only {
            self.found_smaller = true;
            return false;
        }
        self.best.clear();
        self.best.extend_from_slice(&self.scratch);
        self.best_labels.clone_from(&self.labels);
        self.have_best = true;
        self.best_version += 1;
        true
    }
}
