//! Isomorph-free generation of all quandles of a given order.
//!
//! Cells are filled column by column. Every assignment is propagated through
//! the self-distributive law: whenever four of the five cells of an instance
//! `(x▷y)▷z = (x▷z)▷(y▷z)` are known, the fifth is forced or checked. A
//! completed table is kept only if it equals its canonical form.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::quandle::{are_isomorphic, Quandle};

const UNSET: u8 = u8::MAX;
/// Largest order accepted by the search.
pub const MAX_ORDER: usize = 16;
/// Largest order accepted by the brute-force oracle.
pub const MAX_ORACLE_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationResult {
    pub order: usize,
    /// Canonical representatives, sorted.
    pub quandles: Vec<Quandle>,
    pub count: usize,
}

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Wall-clock budget. `None` runs to completion.
    pub budget: Option<Duration>,
    /// Worker threads. `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Print per-subtree progress to stderr.
    pub progress: bool,
}

pub fn enumerate(n: usize) -> Result<EnumerationResult> {
    enumerate_with(n, &Options::default())
}

pub fn count(n: usize) -> Result<usize> {
    count_with(n, &Options::default())
}

pub fn enumerate_with(n: usize, opts: &Options) -> Result<EnumerationResult> {
    let mut quandles = run(n, opts, true)?.1;
    quandles.sort();
    Ok(EnumerationResult {
        order: n,
        count: quandles.len(),
        quandles,
    })
}

pub fn count_with(n: usize, opts: &Options) -> Result<usize> {
    Ok(run(n, opts, false)?.0)
}

fn run(n: usize, opts: &Options, keep: bool) -> Result<(usize, Vec<Quandle>)> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::UnsupportedDegree(n));
    }
    let deadline = opts.budget.map(|b| Instant::now() + b);
    let stop = AtomicBool::new(false);
    let tasks = split(n);
    let done = AtomicU64::new(0);
    let total = tasks.len();

    let work = || {
        tasks
            .par_iter()
            .map(|prefix| {
                let mut s = Search::new(n, deadline, &stop, keep);
                s.run_prefix(prefix);
                if opts.progress {
                    let k = done.fetch_add(1, Ordering::Relaxed) + 1;
                    eprintln!("order {n}: subtree {k}/{total}, {} found", s.count);
                }
                (s.count, s.found)
            })
            .collect::<Vec<_>>()
    };
    let parts = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(work),
        None => work(),
    };
    if stop.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded);
    }
    let mut count = 0;
    let mut all = Vec::new();
    for (c, found) in parts {
        count += c;
        all.extend(found);
    }
    Ok((count, all))
}

/// Decision prefixes for parallel subtrees: every consistent assignment of
/// the first two free cells.
fn split(n: usize) -> Vec<Vec<(usize, u8)>> {
    let stop = AtomicBool::new(false);
    let mut s = Search::new(n, None, &stop, false);
    if !s.init() {
        return Vec::new();
    }
    let mut out = Vec::new();
    s.collect_prefixes(2, &mut Vec::new(), &mut out);
    out
}

struct Search<'a> {
    n: usize,
    /// Row-major table, `UNSET` where unknown.
    t: Vec<u8>,
    /// `colinv[y * n + v]` is the row holding `v` in column `y`.
    colinv: Vec<u8>,
    colcount: Vec<u8>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    deadline: Option<Instant>,
    stop: &'a AtomicBool,
    /// Set once `stop` has been observed; unwinds the search.
    halted: bool,
    nodes: u64,
    keep: bool,
    count: usize,
    found: Vec<Quandle>,
}

impl<'a> Search<'a> {
    fn new(n: usize, deadline: Option<Instant>, stop: &'a AtomicBool, keep: bool) -> Self {
        Search {
            n,
            t: vec![UNSET; n * n],
            colinv: vec![UNSET; n * n],
            colcount: vec![0; n],
            trail: Vec::with_capacity(n * n),
            queue: Vec::with_capacity(n * n),
            deadline,
            stop,
            halted: false,
            nodes: 0,
            keep,
            count: 0,
            found: Vec::new(),
        }
    }

    fn init(&mut self) -> bool {
        for x in 0..self.n {
            if !self.set(x * self.n + x, x as u8) {
                return false;
            }
        }
        self.propagate()
    }

    fn run_prefix(&mut self, prefix: &[(usize, u8)]) {
        if self.stop.load(Ordering::Relaxed) || !self.init() {
            return;
        }
        for &(cell, v) in prefix {
            if !(self.set(cell, v) && self.propagate()) {
                return;
            }
        }
        self.dfs();
    }

    fn collect_prefixes(
        &mut self,
        depth: usize,
        prefix: &mut Vec<(usize, u8)>,
        out: &mut Vec<Vec<(usize, u8)>>,
    ) {
        let Some(cell) = self.next_cell() else {
            out.push(prefix.clone());
            return;
        };
        if depth == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in self.candidates(cell) {
            let mark = self.trail.len();
            if self.set(cell, v) && self.propagate() {
                prefix.push((cell, v));
                self.collect_prefixes(depth - 1, prefix, out);
                prefix.pop();
            }
            self.undo(mark);
        }
    }

    fn dfs(&mut self) {
        if self.halted {
            return;
        }
        self.nodes += 1;
        if self.nodes & 0x3ff == 0 {
            if matches!(self.deadline, Some(d) if Instant::now() >= d) {
                self.stop.store(true, Ordering::Relaxed);
            }
            if self.stop.load(Ordering::Relaxed) {
                self.halted = true;
                return;
            }
        }
        let Some(cell) = self.next_cell() else {
            self.leaf();
            return;
        };
        for v in self.candidates(cell) {
            let mark = self.trail.len();
            if self.set(cell, v) && self.propagate() {
                self.dfs();
            }
            self.undo(mark);
        }
    }

    fn leaf(&mut self) {
        let q = Quandle::from_raw_unchecked(self.n, self.t.clone());
        if q.is_canonical() {
            self.count += 1;
            if self.keep {
                self.found.push(q);
            }
        }
    }

    /// First unknown cell in column-major order.
    fn next_cell(&self) -> Option<usize> {
        let n = self.n;
        (0..n)
            .filter(|&y| (self.colcount[y] as usize) < n)
            .flat_map(|y| (0..n).map(move |x| x * n + y))
            .find(|&c| self.t[c] == UNSET)
    }

    fn candidates(&self, cell: usize) -> Vec<u8> {
        let y = cell % self.n;
        (0..self.n as u8)
            .filter(|&v| self.colinv[y * self.n + v as usize] == UNSET)
            .collect()
    }

    #[inline]
    fn set(&mut self, cell: usize, v: u8) -> bool {
        let cur = self.t[cell];
        if cur != UNSET {
            return cur == v;
        }
        let n = self.n;
        let (x, y) = (cell / n, cell % n);
        let inv = y * n + v as usize;
        if self.colinv[inv] != UNSET {
            return false;
        }
        self.t[cell] = v;
        self.colinv[inv] = x as u8;
        self.colcount[y] += 1;
        self.trail.push(cell);
        self.queue.push(cell);
        true
    }

    fn undo(&mut self, mark: usize) {
        self.queue.clear();
        let n = self.n;
        while self.trail.len() > mark {
            let cell = self.trail.pop().unwrap();
            let y = cell % n;
            let v = self.t[cell] as usize;
            self.t[cell] = UNSET;
            self.colinv[y * n + v] = UNSET;
            self.colcount[y] -= 1;
        }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> u8 {
        self.t[x * self.n + y]
    }

    /// Checks or completes the instance `(x▷y)▷z = (x▷z)▷(y▷z)`.
    #[inline]
    fn instance(&mut self, x: usize, y: usize, z: usize) -> bool {
        let a = self.get(x, y);
        let c = self.get(x, z);
        let d = self.get(y, z);
        if a == UNSET || c == UNSET || d == UNSET {
            return true;
        }
        let n = self.n;
        let lcell = a as usize * n + z;
        let rcell = c as usize * n + d as usize;
        let (l, r) = (self.t[lcell], self.t[rcell]);
        match (l == UNSET, r == UNSET) {
            (false, false) => l == r,
            (false, true) => self.set(rcell, l),
            (true, false) => self.set(lcell, r),
            (true, true) => true,
        }
    }

    fn propagate(&mut self) -> bool {
        let n = self.n;
        while let Some(cell) = self.queue.pop() {
            let (p, q) = (cell / n, cell % n);
            for k in 0..n {
                // cell as x▷y, x▷z, y▷z
                if !(self.instance(p, q, k) && self.instance(p, k, q) && self.instance(k, p, q)) {
                    return false;
                }
                // cell as (x▷y)▷z: x▷y = p in column k
                let x = self.colinv[k * n + p];
                if x != UNSET && !self.instance(x as usize, k, q) {
                    return false;
                }
                // cell as (x▷z)▷(y▷z) with z = k
                let x = self.colinv[k * n + p];
                let y = self.colinv[k * n + q];
                if x != UNSET && y != UNSET && !self.instance(x as usize, y as usize, k) {
                    return false;
                }
            }
            // last free cell of a column is forced
            if self.colcount[q] as usize == n - 1 {
                let x = (0..n).find(|&x| self.get(x, q) == UNSET).unwrap();
                let v = (0..n).find(|&v| self.colinv[q * n + v] == UNSET).unwrap();
                if !self.set(x * n + q, v as u8) {
                    return false;
                }
            }
        }
        true
    }
}

/// Brute-force reference: generate column tuples of permutations fixing
/// their index, reject Q3 failures among known cells after each column,
/// validate complete tables from scratch and deduplicate by isomorphism.
pub fn oracle_enumerate(n: usize) -> Result<EnumerationResult> {
    if n == 0 || n > MAX_ORACLE_ORDER {
        return Err(Error::UnsupportedDegree(n));
    }
    let columns: Vec<Vec<Perm>> = (0..n)
        .map(|y| {
            permutations(n)
                .into_iter()
                .filter(|p| p[y] == y)
                .map(|p| Perm::from_images(&p).expect("permutation"))
                .collect()
        })
        .collect();
    let mut reps: Vec<Quandle> = Vec::new();
    let mut chosen: Vec<Perm> = Vec::with_capacity(n);
    oracle_fill(n, &columns, &mut chosen, &mut |q| {
        if !reps.iter().any(|r| are_isomorphic(r, &q).is_some()) {
            reps.push(q);
        }
    })?;
    let mut quandles: Vec<Quandle> = reps.iter().map(Quandle::canonical_form).collect();
    quandles.sort();
    Ok(EnumerationResult {
        order: n,
        count: quandles.len(),
        quandles,
    })
}

fn oracle_fill(
    n: usize,
    columns: &[Vec<Perm>],
    chosen: &mut Vec<Perm>,
    emit: &mut dyn FnMut(Quandle),
) -> Result<()> {
    let k = chosen.len();
    if k == n {
        match Quandle::from_columns(chosen) {
            Ok(q) => emit(q),
            Err(Error::Axiom(_)) => {}
            Err(e) => return Err(e),
        }
        return Ok(());
    }
    for p in &columns[k] {
        chosen.push(p.clone());
        if known_cells_consistent(n, chosen) {
            oracle_fill(n, columns, chosen, emit)?;
        }
        chosen.pop();
    }
    Ok(())
}

fn known_cells_consistent(n: usize, cols: &[Perm]) -> bool {
    let k = cols.len();
    let at = |x: usize, y: usize| (y < k).then(|| cols[y].apply(x));
    for x in 0..n {
        for y in 0..k {
            for z in 0..k {
                let a = at(x, y).unwrap();
                let c = at(x, z).unwrap();
                let d = at(y, z).unwrap();
                let lhs = at(a, z).unwrap();
                if let Some(rhs) = at(c, d) {
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
