//! Reference computations written without the library's algorithms: plain
//! loops over tables and image vectors.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{HashSet, VecDeque};

use quandles::{Perm, Quandle};

pub type Images = Vec<usize>;

/// Triple-loop check of Q1, Q2, Q3 on a 0-based table.
pub fn is_quandle(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    if n == 0 || t.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return false;
    }
    for x in 0..n {
        if t[x][x] != x {
            return false;
        }
    }
    for y in 0..n {
        let col: HashSet<usize> = (0..n).map(|x| t[x][y]).collect();
        if col.len() != n {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if t[t[x][y]][z] != t[t[x][z]][t[y][z]] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn images(p: &Perm) -> Images {
    p.images().collect()
}

/// `(p ∘ q)(x) = p(q(x))`.
pub fn compose(p: &[usize], q: &[usize]) -> Images {
    q.iter().map(|&x| p[x]).collect()
}

pub fn inverse(p: &[usize]) -> Images {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Breadth-first closure on image vectors.
pub fn closure(degree: usize, gens: &[Images]) -> HashSet<Images> {
    let id: Images = (0..degree).collect();
    let mut seen: HashSet<Images> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = compose(s, &g);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen
}

pub fn columns(q: &Quandle) -> Vec<Images> {
    let rows = q.rows();
    let n = rows.len();
    (0..n)
        .map(|y| (0..n).map(|x| rows[x][y]).collect())
        .collect()
}

pub fn inn(q: &Quandle) -> HashSet<Images> {
    closure(q.order(), &columns(q))
}

pub fn dis(q: &Quandle) -> HashSet<Images> {
    let cols = columns(q);
    let mut gens = Vec::new();
    for a in &cols {
        for b in &cols {
            gens.push(compose(a, &inverse(b)));
        }
    }
    closure(q.order(), &gens)
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Images> {
    fn go(n: usize, cur: &mut Images, used: &mut Vec<bool>, out: &mut Vec<Images>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every bijection `f` with `f(a ▷ b) = f(a) ▷ f(b)`.
pub fn aut(q: &Quandle) -> HashSet<Images> {
    let t = q.rows();
    let n = t.len();
    all_perms(n)
        .into_iter()
        .filter(|f| (0..n).all(|a| (0..n).all(|b| f[t[a][b]] == t[f[a]][f[b]])))
        .collect()
}

pub fn to_set<'a>(elements: impl Iterator<Item = &'a Perm>) -> HashSet<Images> {
    elements.map(images).collect()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn phi(n: usize) -> usize {
    (1..=n).filter(|&a| gcd(a, n) == 1).count()
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Number of permutations of `1..n` (0 fixed) commuting with `sigma`.
pub fn centralizer_fixing_zero_brute(sigma: &[usize]) -> usize {
    let n = sigma.len();
    all_perms(n)
        .into_iter()
        .filter(|f| f[0] == 0 && compose(f, sigma) == compose(sigma, f))
        .count()
}

/// Number of permutations of `0..n` commuting with `sigma`, 0 not fixed.
pub fn centralizer_brute(sigma: &[usize]) -> usize {
    let n = sigma.len();
    all_perms(n)
        .into_iter()
        .filter(|f| compose(f, sigma) == compose(sigma, f))
        .count()
}

/// `∏ k^{c_k} c_k!` over cycle lengths.
pub fn centralizer_formula(cycle_lengths: &[usize]) -> usize {
    let max = cycle_lengths.iter().copied().max().unwrap_or(0);
    (1..=max)
        .map(|k| {
            let c = cycle_lengths.iter().filter(|&&l| l == k).count();
            k.pow(c as u32) * factorial(c)
        })
        .product()
}

/// Cycle lengths of `sigma` on the points other than 0.
pub fn cycle_lengths_off_zero(sigma: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut out = Vec::new();
    for s in 1..n {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = sigma[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out
}

pub fn perm_order(p: &[usize]) -> usize {
    let id: Images = (0..p.len()).collect();
    let mut q = p.to_vec();
    let mut k = 1;
    while q != id {
        q = compose(p, &q);
        k += 1;
    }
    k
}

/// `|GL(2, p)|` by counting invertible matrices.
pub fn gl2_order(p: usize) -> usize {
    let mut count = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if !(a * d + p * p - b * c).is_multiple_of(p) {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// `|Aut(Z_{d1} × … × Z_{dk})|` by counting additive bijections, given by
/// the images of the standard generators.
pub fn abelian_aut_order(factors: &[usize]) -> usize {
    let n: usize = factors.iter().product();
    let digits = |mut x: usize| {
        let mut out = vec![0; factors.len()];
        for (i, &d) in factors.iter().enumerate().rev() {
            out[i] = x % d;
            x /= d;
        }
        out
    };
    let add = |a: &[usize], b: &[usize]| -> Vec<usize> {
        a.iter()
            .zip(b)
            .zip(factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    };
    let scale = |k: usize, a: &[usize]| -> Vec<usize> {
        a.iter().zip(factors).map(|(x, d)| (k * x) % d).collect()
    };
    let elems: Vec<Vec<usize>> = (0..n).map(digits).collect();
    let k = factors.len();
    let mut count = 0;
    let mut choice = vec![0usize; k];
    loop {
        // generator i ↦ elems[choice[i]]; need image order to divide d_i
        let ok_orders =
            (0..k).all(|i| scale(factors[i], &elems[choice[i]]).iter().all(|&v| v == 0));
        if ok_orders {
            let mut image = HashSet::new();
            for e in &elems {
                let mut acc = vec![0; k];
                for i in 0..k {
                    acc = add(&acc, &scale(e[i], &elems[choice[i]]));
                }
                image.insert(acc);
            }
            if image.len() == n {
                count += 1;
            }
        }
        let mut i = 0;
        loop {
            if i == k {
                return count;
            }
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Rows of a 1-based matrix cell `"1 3 2;3 2 1;2 1 3"`, 0-based.
pub fn rows_from_cell(cell: &str) -> Vec<Vec<usize>> {
    cell.split(';')
        .map(|r| {
            r.split_whitespace()
                .map(|v| v.parse::<usize>().unwrap() - 1)
                .collect()
        })
        .collect()
}

/// Golden rows `(matrix, Dis name)`, read straight from the fixture.
pub fn golden_table() -> Vec<(Vec<Vec<usize>>, String)> {
    include_str!("../../data/small_quandles.csv")
        .lines()
        .skip(1)
        .map(|l| {
            let (m, name) = l.split_once(',').unwrap();
            (rows_from_cell(m), name.to_string())
        })
        .collect()
}

/// Quandle from 0-based rows built with a relabeling `f`: new[f x][f y] = f(t[x][y]).
pub fn relabel_rows(t: &[Vec<usize>], f: &[usize]) -> Vec<Vec<usize>> {
    let n = t.len();
    let mut out = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            out[f[x]][f[y]] = f[t[x][y]];
        }
    }
    out
}
