//! The displacement, inner automorphism and automorphism groups of a quandle,
//! and a self-verification suite of structural statements about them.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::families::{self, CayleyGroup};
use crate::groupid::{self, factorial, GroupName};
use crate::perm::{gcd, Perm, PermGroup};
use crate::quandle::Quandle;

/// `Inn(X) = ⟨β_y : y ∈ X⟩`.
pub fn inner_group(x: &Quandle) -> Result<PermGroup> {
    PermGroup::closure(x.order(), &x.columns())
}

/// `Dis(X) = ⟨β_a β_b⁻¹ : a, b ∈ X⟩`, from all pairwise products.
pub fn displacement_group(x: &Quandle) -> Result<PermGroup> {
    let cols = x.columns();
    let inverses: Vec<Perm> = cols.iter().map(Perm::inverse).collect();
    let mut gens = Vec::with_capacity(cols.len() * cols.len());
    for a in &cols {
        for b_inv in &inverses {
            gens.push(a * b_inv);
        }
    }
    PermGroup::closure(x.order(), &gens)
}

/// `Aut(X)`, by backtracking over partial bijections closed under `▷`.
pub fn automorphism_group(x: &Quandle) -> Result<PermGroup> {
    PermGroup::from_group_elements(x.order(), x.automorphisms())
}

/// `Aut(X)` by testing every permutation of the elements. Only for small orders.
pub fn automorphism_group_exhaustive(x: &Quandle) -> Result<PermGroup> {
    let n = x.order();
    if n > 8 {
        return Err(Error::OrderTooLarge(n));
    }
    let mut points: Vec<usize> = (0..n).collect();
    let mut found = Vec::new();
    loop {
        let f = Perm::from_images(&points)?;
        if x.is_automorphism(&f) {
            found.push(f);
        }
        if !next_permutation(&mut points) {
            break;
        }
    }
    PermGroup::from_group_elements(n, found)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[derive(Debug, Clone)]
pub struct GroupTriple {
    pub dis: PermGroup,
    pub inn: PermGroup,
    pub aut: PermGroup,
    pub dis_name: GroupName,
    pub inn_name: GroupName,
    pub aut_name: GroupName,
}

impl GroupTriple {
    pub fn name(&self, which: Selector) -> &GroupName {
        match which {
            Selector::Dis => &self.dis_name,
            Selector::Inn => &self.inn_name,
            Selector::Aut => &self.aut_name,
        }
    }

    pub fn group(&self, which: Selector) -> &PermGroup {
        match which {
            Selector::Dis => &self.dis,
            Selector::Inn => &self.inn,
            Selector::Aut => &self.aut,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    Dis,
    Inn,
    Aut,
}

impl Selector {
    pub const ALL: [Selector; 3] = [Selector::Dis, Selector::Inn, Selector::Aut];

    pub fn parse(s: &str) -> Option<Selector> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dis" => Some(Selector::Dis),
            "inn" => Some(Selector::Inn),
            "aut" => Some(Selector::Aut),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Selector::Dis => "dis",
            Selector::Inn => "inn",
            Selector::Aut => "aut",
        }
    }
}

/// All three groups with names. Fails if the chain `Dis ⊴ Inn ⊴ Aut`,
/// `Dis ⊴ Aut` does not hold.
pub fn group_triple(x: &Quandle) -> Result<GroupTriple> {
    let dis = displacement_group(x)?;
    let inn = inner_group(x)?;
    let aut = automorphism_group(x)?;
    check_normal_chain(&dis, &inn, &aut)?;
    Ok(GroupTriple {
        dis_name: groupid::identify(&dis)?,
        inn_name: groupid::identify(&inn)?,
        aut_name: groupid::identify(&aut)?,
        dis,
        inn,
        aut,
    })
}

fn check_normal_chain(dis: &PermGroup, inn: &PermGroup, aut: &PermGroup) -> Result<()> {
    if dis.is_normal_in(inn)? && inn.is_normal_in(aut)? && dis.is_normal_in(aut)? {
        Ok(())
    } else {
        Err(Error::InvalidGroup(
            "normal chain Dis ⊴ Inn ⊴ Aut does not hold".into(),
        ))
    }
}

/// `∏_k k^{c_k} c_k!` over the cycle type of `sigma` on the points other
/// than 0, i.e. the order of the centralizer of `sigma` in the stabilizer of 0.
pub fn centralizer_order_fixing_zero(sigma: &Perm) -> usize {
    let mut lengths = Vec::new();
    let mut seen = vec![false; sigma.degree()];
    seen[0] = true;
    for start in 1..sigma.degree() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = sigma.apply(x);
        }
        lengths.push(len);
    }
    centralizer_order_from_cycle_lengths(&lengths)
}

pub fn centralizer_order_from_cycle_lengths(lengths: &[usize]) -> usize {
    let mut counts = std::collections::BTreeMap::new();
    for &l in lengths {
        *counts.entry(l).or_insert(0usize) += 1;
    }
    counts
        .iter()
        .map(|(&k, &c)| k.pow(c as u32) * factorial(c))
        .product()
}

pub fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|&a| gcd(a as u64, n as u64) == 1).count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub params: String,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CHECK {} {} {} {}",
            self.id,
            self.params,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn push(&mut self, id: &str, params: String, outcome: Result<(bool, String)>) {
        let (pass, detail) = match outcome {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check {
            id: id.to_string(),
            params,
            pass,
            detail,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Presentation matrices of every quandle of order 1 to 5 with the name of
/// its displacement group, one CSV row each.
pub const GOLDEN_DIS_CSV: &str = include_str!("../data/small_quandles.csv");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenMismatch {
    /// 1-based data row.
    pub row: usize,
    pub quandle: Quandle,
    pub selector: Selector,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for GoldenMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} [{}] {}: expected {} got {}",
            self.row,
            crate::gapio::matrix_cell(&self.quandle),
            self.selector.as_str(),
            self.expected,
            self.got
        )
    }
}

/// Recomputes every named column of a CSV results table. Columns other than
/// `dis`, `inn` and `aut` are ignored.
pub fn compare_golden(text: &str) -> Result<Vec<GoldenMismatch>> {
    let (header, rows) = crate::gapio::parse_results_csv(text)?;
    let selectors: Vec<Option<Selector>> = header.iter().map(|h| Selector::parse(h)).collect();
    let mut out = Vec::new();
    for (i, (q, cells)) in rows.iter().enumerate() {
        let triple = group_triple(q)?;
        for (cell, sel) in cells.iter().zip(&selectors) {
            let Some(sel) = *sel else { continue };
            let got = triple.name(sel).to_string();
            if got != *cell {
                out.push(GoldenMismatch {
                    row: i + 1,
                    quandle: q.clone(),
                    selector: sel,
                    expected: cell.clone(),
                    got,
                });
            }
        }
    }
    Ok(out)
}

/// Number of random σ tried per order in the one-column check.
const SIGMAS_PER_ORDER: usize = 20;
const SIGMA_SEED: u64 = 0x5eed_2025;

/// Random non-identity permutations of degree `n` fixing 0, deterministic per `n`.
pub fn sample_sigmas(n: usize, count: usize) -> Vec<Perm> {
    let mut rng = ChaCha8Rng::seed_from_u64(SIGMA_SEED ^ n as u64);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut rest: Vec<usize> = (1..n).collect();
        rest.shuffle(&mut rng);
        let mut images = vec![0];
        images.extend(rest);
        let p = Perm::from_images(&images).expect("shuffled images");
        if !p.is_identity() {
            out.push(p);
        }
    }
    out
}

/// Runs the structural checks (a)–(g) for `3 ≤ n ≤ max_n`.
///
/// - `dis-dihedral`: `Dis(R_n) ≅ Z_n` (n odd), `Z_{n/2}` (n even)
/// - `inn-dihedral`: `Inn(R_n) ≅ D_n` (n odd), `D_{n/2}` (n even)
/// - `aut-dihedral`: `|Aut(R_n)| = n φ(n)`
/// - `one-column`: `Dis(P_n^σ) = Inn(P_n^σ) ≅ Z_{|σ|}` for sampled σ (n ≤ 8)
/// - `trivial-column`: `Dis = Inn` whenever a column is trivial, over every
///   quandle of order ≤ min(6, max_n)
/// - `inn-conj`: `|Inn(Conj G)| = |G| / |Z(G)|`
/// - `takasaki`: `|Aut(T(G))| = |G| |Aut(G)|`, `|Inn(T(G))| = 2|G|` for odd abelian `G`
pub fn verify_theorems(max_n: usize) -> Report {
    let mut report = Report::default();
    let max_n = max_n.max(3);

    for n in 3..=max_n {
        let r = families::dihedral(n);
        let expected = GroupName::Cyclic(if n % 2 == 1 { n } else { n / 2 });
        report.push(
            "dis-dihedral",
            format!("n={n}"),
            r.as_ref()
                .map_err(clone_err)
                .and_then(|r| displacement_group(r).and_then(|g| groupid::identify(&g)))
                .map(|name| named(&name, &expected)),
        );

        let m = if n % 2 == 1 { n } else { n / 2 };
        report.push(
            "inn-dihedral",
            format!("n={n}"),
            r.as_ref()
                .map_err(clone_err)
                .and_then(inner_group)
                .and_then(|g| {
                    let concrete = groupid::catalog::dihedral_group(m);
                    let iso = groupid::is_isomorphic(&g, &concrete)?;
                    Ok((iso, format!("order={} vs D_{m}", g.order())))
                }),
        );

        let want = n * euler_phi(n);
        report.push(
            "aut-dihedral",
            format!("n={n}"),
            r.as_ref()
                .map_err(clone_err)
                .and_then(automorphism_group)
                .map(|g| {
                    (
                        g.order() == want,
                        format!("|Aut|={} expected={want}", g.order()),
                    )
                }),
        );
    }

    for n in 3..=max_n.min(8) {
        for (i, sigma) in sample_sigmas(n, SIGMAS_PER_ORDER).iter().enumerate() {
            report.push(
                "one-column",
                format!("n={n} sigma#{i}={sigma}"),
                check_one_column(n, sigma),
            );
        }
    }

    let small = max_n.min(6);
    report.push(
        "trivial-column",
        format!("n<={small}"),
        check_trivial_columns(small),
    );

    for (label, g) in [
        ("Z4", CayleyGroup::cyclic(4)),
        ("S3", CayleyGroup::symmetric(3)),
        ("D4", CayleyGroup::dihedral(4)),
        ("Q8", CayleyGroup::quaternion()),
    ] {
        let expected = g.order() / g.center_order();
        report.push(
            "inn-conj",
            format!("G={label}"),
            families::conj(&g).and_then(|q| inner_group(&q)).map(|inn| {
                (
                    inn.order() == expected,
                    format!("|Inn|={} expected={expected}", inn.order()),
                )
            }),
        );
    }

    for factors in [&[5][..], &[7], &[9], &[3, 3]] {
        let g = factors
            .iter()
            .map(|&d| CayleyGroup::cyclic(d))
            .reduce(|a, b| a.direct_product(&b))
            .expect("non-empty");
        let label = factors
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join("x");
        report.push(
            "takasaki",
            format!("G={label}"),
            families::takasaki(factors).and_then(|q| {
                let aut = automorphism_group(&q)?.order();
                let inn = inner_group(&q)?.order();
                let want_aut = g.order() * g.automorphism_count();
                let want_inn = 2 * g.order();
                Ok((
                    aut == want_aut && inn == want_inn,
                    format!("|Aut|={aut} expected={want_aut} |Inn|={inn} expected={want_inn}"),
                ))
            }),
        );
    }

    report
}

fn clone_err(e: &Error) -> Error {
    Error::Family(e.to_string())
}

fn named(got: &GroupName, expected: &GroupName) -> (bool, String) {
    (got == expected, format!("got={got} expected={expected}"))
}

fn check_one_column(n: usize, sigma: &Perm) -> Result<(bool, String)> {
    let q = families::one_column(n, sigma)?;
    let dis = displacement_group(&q)?;
    let inn = inner_group(&q)?;
    let aut = automorphism_group(&q)?;
    let same = dis.same_elements(&inn);
    let inn_name = groupid::identify(&inn)?;
    let cyclic = match sigma.order() {
        1 => GroupName::Trivial,
        k => GroupName::Cyclic(k as usize),
    };
    let want_aut = centralizer_order_fixing_zero(sigma);
    Ok((
        same && inn_name == cyclic && aut.order() == want_aut,
        format!(
            "dis=inn:{same} inn={inn_name} |Aut|={} centralizer={want_aut}",
            aut.order()
        ),
    ))
}

fn check_trivial_columns(max_n: usize) -> Result<(bool, String)> {
    let mut with_trivial = 0;
    let mut total = 0;
    let mut exceptions = 0;
    for n in 1..=max_n {
        for q in enumerate::enumerate(n)?.quandles {
            total += 1;
            let dis = displacement_group(&q)?;
            let inn = inner_group(&q)?;
            let aut = automorphism_group(&q)?;
            if !(dis.is_normal_in(&inn)? && inn.is_normal_in(&aut)? && dis.is_normal_in(&aut)?) {
                exceptions += 1;
            }
            if q.has_trivial_column() {
                with_trivial += 1;
                if !dis.same_elements(&inn) {
                    exceptions += 1;
                }
            }
        }
    }
    Ok((
        exceptions == 0,
        format!("quandles={total} with_trivial_column={with_trivial} exceptions={exceptions}"),
    ))
}
