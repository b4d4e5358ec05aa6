//! Naming small permutation groups up to isomorphism.
//!
//! A group is summarized by a [`GroupFingerprint`] (order, element-order
//! statistics, center, derived subgroup, exponent). Abelian groups are named
//! directly from their element orders, which determine them. Non-abelian
//! candidates (dihedral, symmetric, alternating of the matching order) are
//! screened by fingerprint and then confirmed by an explicit isomorphism.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::Result;
use crate::perm::{lcm, small_generating_set, Perm, PermGroup};

/// Largest order for which a concrete catalog group is built to confirm an
/// identification by isomorphism search.
const ISOMORPHISM_SEARCH_LIMIT: usize = 5040;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    /// element order → number of elements of that order
    pub element_orders: BTreeMap<u64, usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub exponent: u64,
}

impl fmt::Display for GroupFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "order={}, orders=", self.order)?;
        for (i, (k, v)) in self.element_orders.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupName {
    Trivial,
    Cyclic(usize),
    /// Dihedral group of order `2n`; `Dihedral(2)` is the Klein four-group.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Invariant factors `d_1 | d_2 | … | d_k`.
    DirectProductOfCyclics(Vec<usize>),
    Unidentified(GroupFingerprint),
}

impl GroupName {
    pub fn order(&self) -> usize {
        match self {
            GroupName::Trivial => 1,
            GroupName::Cyclic(n) => *n,
            GroupName::Dihedral(n) => 2 * n,
            GroupName::Symmetric(n) => factorial(*n),
            GroupName::Alternating(n) => (factorial(*n) / 2).max(1),
            GroupName::DirectProductOfCyclics(ds) => ds.iter().product(),
            GroupName::Unidentified(fp) => fp.order,
        }
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupName::Trivial => f.write_str("{1}"),
            GroupName::Cyclic(n) => write!(f, "Z_{n}"),
            GroupName::Dihedral(n) => write!(f, "D_{n}"),
            GroupName::Symmetric(n) => write!(f, "S_{n}"),
            GroupName::Alternating(n) => write!(f, "A_{n}"),
            GroupName::DirectProductOfCyclics(ds) => {
                for (i, d) in ds.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "Z_{d}")?;
                }
                Ok(())
            }
            GroupName::Unidentified(fp) => write!(f, "Unidentified({fp})"),
        }
    }
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub fn fingerprint(g: &PermGroup) -> Result<GroupFingerprint> {
    let mut element_orders = BTreeMap::new();
    let mut exponent = 1u64;
    for p in g.elements() {
        let k = p.order();
        exponent = lcm(exponent, k);
        *element_orders.entry(k).or_insert(0) += 1;
    }
    let gens = g.generators();
    let center_order = g
        .elements()
        .filter(|p| gens.iter().all(|s| p.commutes_with(s)))
        .count();
    let abelian = center_order == g.order();
    let derived_order = if abelian {
        1
    } else {
        derived_subgroup(g)?.order()
    };
    Ok(GroupFingerprint {
        order: g.order(),
        abelian,
        element_orders,
        center_order,
        derived_order,
        exponent,
    })
}

/// Normal closure of the commutators of the generators.
pub fn derived_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            // a b a⁻¹ b⁻¹
            let c = &(&(a * b) * &a.inverse()) * &b.inverse();
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    let mut sub = PermGroup::closure(g.degree(), &seeds)?;
    loop {
        let missing: Vec<Perm> = gens
            .iter()
            .flat_map(|s| sub.generators().iter().map(move |h| h.conjugate_by(s)))
            .filter(|c| !sub.contains(c))
            .collect();
        if missing.is_empty() {
            return Ok(sub);
        }
        seeds.extend(missing);
        sub = PermGroup::closure(g.degree(), &seeds)?;
    }
}

pub fn center(g: &PermGroup) -> Result<PermGroup> {
    let gens = g.generators();
    let central: Vec<Perm> = g
        .elements()
        .filter(|p| gens.iter().all(|s| p.commutes_with(s)))
        .cloned()
        .collect();
    PermGroup::closure(g.degree(), &central)
}

/// Invariant factors of a finite abelian group, read off its element orders:
/// the number of elements of order dividing `p^k` is `p^(Σ min(k, e_i))`.
pub fn invariant_factors(element_orders: &BTreeMap<u64, usize>) -> Vec<usize> {
    let order: usize = element_orders.values().sum();
    let mut prime_exponents: Vec<(usize, Vec<u32>)> = Vec::new();
    for p in prime_factors(order) {
        let mut at_least = Vec::new(); // at_least[k-1] = #{i : e_i ≥ k}
        let mut prev_log = 0u32;
        let mut pk = 1u64;
        loop {
            pk *= p as u64;
            let count: usize = element_orders
                .iter()
                .filter(|(&o, _)| pk.is_multiple_of(o))
                .map(|(_, &c)| c)
                .sum();
            let log = ilog(count, p);
            if log == prev_log {
                break;
            }
            at_least.push(log - prev_log);
            prev_log = log;
        }
        // conjugate partition
        let parts = at_least.first().copied().unwrap_or(0) as usize;
        let mut exps: Vec<u32> = (0..parts)
            .map(|i| at_least.iter().filter(|&&r| r as usize > i).count() as u32)
            .collect();
        exps.sort_unstable_by(|a, b| b.cmp(a));
        prime_exponents.push((p, exps));
    }
    let width = prime_exponents
        .iter()
        .map(|(_, e)| e.len())
        .max()
        .unwrap_or(0);
    let mut factors = vec![1usize; width];
    for (p, exps) in &prime_exponents {
        // largest exponent goes to the last factor
        for (i, &e) in exps.iter().enumerate() {
            factors[width - 1 - i] *= p.pow(e);
        }
    }
    factors.retain(|&d| d > 1);
    factors
}

fn ilog(mut value: usize, base: usize) -> u32 {
    let mut k = 0;
    while value > 1 {
        debug_assert_eq!(value % base, 0);
        value /= base;
        k += 1;
    }
    k
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Names the isomorphism class of `g`, or reports its fingerprint.
pub fn identify(g: &PermGroup) -> Result<GroupName> {
    let fp = fingerprint(g)?;
    if fp.order == 1 {
        return Ok(GroupName::Trivial);
    }
    if fp.abelian {
        let factors = invariant_factors(&fp.element_orders);
        return Ok(match factors.as_slice() {
            [] => GroupName::Trivial,
            [n] => GroupName::Cyclic(*n),
            [2, 2] => GroupName::Dihedral(2),
            _ => GroupName::DirectProductOfCyclics(factors),
        });
    }

    let order = fp.order;
    if order % 2 == 0 && order / 2 >= 3 {
        let m = order / 2;
        if is_dihedral(g, m)? {
            return Ok(GroupName::Dihedral(m));
        }
    }
    for k in 4..=12usize {
        let full = factorial(k);
        if full > order * 2 {
            break;
        }
        for (name, target) in [
            (GroupName::Symmetric(k), full),
            (GroupName::Alternating(k), full / 2),
        ] {
            if target != order {
                continue;
            }
            if acts_faithfully_on_orbit_of_size(g, k) {
                // a subgroup of S_k of order k! or k!/2 is S_k or A_k
                return Ok(name);
            }
            if order <= ISOMORPHISM_SEARCH_LIMIT {
                let candidate = match name {
                    GroupName::Symmetric(_) => catalog::symmetric_group(k),
                    _ => catalog::alternating_group(k),
                };
                if fingerprint(&candidate)? == fp && is_isomorphic_unchecked(g, &candidate)? {
                    return Ok(name);
                }
            }
        }
    }
    Ok(GroupName::Unidentified(fp))
}

/// Looks for `r` of order `m` and an involution `s` outside `<r>` with
/// `s r s = r^-1`; together they generate a group of order `2m`.
fn is_dihedral(g: &PermGroup, m: usize) -> Result<bool> {
    let Some(r) = g.elements().find(|p| p.order() == m as u64) else {
        return Ok(false);
    };
    let rotations: Vec<Perm> = (0..m as u64).map(|k| r.pow(k)).collect();
    let r_inv = r.inverse();
    for s in g.elements() {
        if s.order() == 2 && !rotations.contains(s) && s.compose(r)?.compose(s)? == r_inv {
            return Ok(true);
        }
    }
    Ok(false)
}

fn acts_faithfully_on_orbit_of_size(g: &PermGroup, k: usize) -> bool {
    g.orbits()
        .into_iter()
        .filter(|o| o.len() == k)
        .any(|orbit| {
            g.elements()
                .filter(|p| orbit.iter().all(|&x| p.apply(x) == x))
                .count()
                == 1
        })
}

/// Whether `g` and `h` are isomorphic as abstract groups.
pub fn is_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    if fingerprint(g)? != fingerprint(h)? {
        return Ok(false);
    }
    is_isomorphic_unchecked(g, h)
}

/// Searches for an isomorphism `h → g` by assigning images to a small
/// generating set of `h`, constrained by element order, and checking that the
/// assignment extends to an injective homomorphism.
fn is_isomorphic_unchecked(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    if g.order() != h.order() {
        return Ok(false);
    }
    let h_elements: Vec<Perm> = h.elements().cloned().collect();
    let h_gens = small_generating_set(h.degree(), &h_elements)?;
    if h_gens.is_empty() {
        return Ok(true);
    }
    let mut by_order: HashMap<u64, Vec<&Perm>> = HashMap::new();
    for p in g.elements() {
        by_order.entry(p.order()).or_default().push(p);
    }
    let candidates: Vec<Vec<&Perm>> = h_gens
        .iter()
        .map(|s| by_order.get(&s.order()).cloned().unwrap_or_default())
        .collect();
    let mut images: Vec<Perm> = Vec::with_capacity(h_gens.len());
    Ok(search_images(&h_gens, &candidates, &mut images, h.order()))
}

fn search_images(
    h_gens: &[Perm],
    candidates: &[Vec<&Perm>],
    images: &mut Vec<Perm>,
    target_order: usize,
) -> bool {
    let depth = images.len();
    if depth == h_gens.len() {
        return true;
    }
    for &c in &candidates[depth] {
        images.push(c.clone());
        if let Some(size) = extend_homomorphism(&h_gens[..=depth], images) {
            let done = depth + 1 == h_gens.len();
            if (!done || size == target_order)
                && search_images(h_gens, candidates, images, target_order)
            {
                return true;
            }
        }
        images.pop();
    }
    false
}

/// Walks the Cayley graph of `⟨gens⟩` from the identity, sending
/// `s·u ↦ image(s)·φ(u)`. Returns the subgroup order if the map is a
/// well-defined injective homomorphism.
fn extend_homomorphism(gens: &[Perm], images: &[Perm]) -> Option<usize> {
    let degree_h = gens[0].degree();
    let degree_g = images[0].degree();
    let mut map: HashMap<Perm, Perm> = HashMap::new();
    let mut seen_images: HashSet<Perm> = HashSet::new();
    let mut order = vec![Perm::identity(degree_h)];
    map.insert(Perm::identity(degree_h), Perm::identity(degree_g));
    seen_images.insert(Perm::identity(degree_g));
    let mut next = 0;
    while next < order.len() {
        let u = order[next].clone();
        next += 1;
        let phi_u = map[&u].clone();
        for (s, t) in gens.iter().zip(images) {
            let v = s * &u;
            let w = t * &phi_u;
            match map.get(&v) {
                Some(existing) => {
                    if *existing != w {
                        return None;
                    }
                }
                None => {
                    if !seen_images.insert(w.clone()) {
                        return None;
                    }
                    map.insert(v.clone(), w);
                    order.push(v);
                }
            }
        }
    }
    Some(order.len())
}

/// Concrete permutation representations of the named families.
pub mod catalog {
    use crate::perm::{Perm, PermGroup};

    fn cyc(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).expect("catalog permutation")
    }

    fn close(n: usize, gens: &[Perm]) -> PermGroup {
        PermGroup::closure(n, gens).expect("catalog group within limits")
    }

    /// `Z_n` acting regularly on `n` points.
    pub fn cyclic_group(n: usize) -> PermGroup {
        assert!(n >= 1);
        if n == 1 {
            return PermGroup::trivial(1);
        }
        let rot: Vec<usize> = (0..n).collect();
        close(n, &[cyc(n, &[&rot])])
    }

    /// Dihedral group of order `2m`: symmetries of the `m`-gon for `m ≥ 3`,
    /// the Klein four-group for `m = 2`, `Z_2` for `m = 1`.
    pub fn dihedral_group(m: usize) -> PermGroup {
        match m {
            0 => panic!("dihedral group needs m >= 1"),
            1 => cyclic_group(2),
            2 => close(
                4,
                &[cyc(4, &[&[0, 1], &[2, 3]]), cyc(4, &[&[0, 2], &[1, 3]])],
            ),
            _ => {
                let rot: Vec<usize> = (0..m).collect();
                let refl: Vec<usize> = (0..m).map(|x| (m - x) % m).collect();
                close(
                    m,
                    &[
                        cyc(m, &[&rot]),
                        Perm::from_images(&refl).expect("reflection"),
                    ],
                )
            }
        }
    }

    pub fn symmetric_group(k: usize) -> PermGroup {
        assert!(k >= 1);
        if k == 1 {
            return PermGroup::trivial(1);
        }
        let rot: Vec<usize> = (0..k).collect();
        close(k, &[cyc(k, &[&[0, 1]]), cyc(k, &[&rot])])
    }

    pub fn alternating_group(k: usize) -> PermGroup {
        assert!(k >= 1);
        if k < 3 {
            return PermGroup::trivial(k);
        }
        let gens: Vec<Perm> = (2..k).map(|i| cyc(k, &[&[0, 1, i]])).collect();
        close(k, &gens)
    }

    /// Direct product of cyclic groups acting on disjoint point sets.
    pub fn abelian_group(factors: &[usize]) -> PermGroup {
        let degree: usize = factors.iter().sum::<usize>().max(1);
        let mut gens = Vec::new();
        let mut offset = 0;
        for &d in factors {
            let rot: Vec<usize> = (offset..offset + d).collect();
            if d > 1 {
                gens.push(cyc(degree, &[&rot]));
            }
            offset += d;
        }
        close(degree, &gens)
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn large_even_order_is_not_mistaken_for_dihedral() {
        // order 432 on 9 points, far more than a 216-gon fits in
        let q = crate::families::takasaki(&[3, 3]).unwrap();
        let aut = crate::autcalc::automorphism_group(&q).unwrap();
        assert_eq!(aut.order(), 432);
        assert!(matches!(
            identify(&aut).unwrap(),
            GroupName::Unidentified(_)
        ));
        let d7 = dihedral_group(7).conjugate_by(&cyc(7, &[&[0, 3], &[1, 5]]));
        assert_eq!(identify(&d7).unwrap(), GroupName::Dihedral(7));
    }

    #[test]
    fn fingerprint_of_small_groups() {
        let t = fingerprint(&PermGroup::trivial(3)).unwrap();
        assert_eq!(t.order, 1);
        assert!(t.abelian);
        assert_eq!(t.element_orders, BTreeMap::from([(1, 1)]));

        let z4 = fingerprint(&cyclic_group(4)).unwrap();
        assert_eq!(z4.element_orders, BTreeMap::from([(1, 1), (2, 1), (4, 2)]));
        let v4 = fingerprint(&dihedral_group(2)).unwrap();
        assert_eq!(v4.element_orders, BTreeMap::from([(1, 1), (2, 3)]));
        assert_ne!(z4, v4);

        let s4 = fingerprint(&symmetric_group(4)).unwrap();
        assert_eq!(s4.center_order, 1);
        assert_eq!(s4.derived_order, 12);
        assert_eq!(s4.exponent, 12);
    }

    #[test]
    fn names_render() {
        assert_eq!(GroupName::Trivial.to_string(), "{1}");
        assert_eq!(GroupName::Cyclic(5).to_string(), "Z_5");
        assert_eq!(GroupName::Dihedral(2).to_string(), "D_2");
        assert_eq!(
            GroupName::DirectProductOfCyclics(vec![2, 4]).to_string(),
            "Z_2 x Z_4"
        );
        let fp = fingerprint(&cyclic_group(2)).unwrap();
        assert_eq!(
            GroupName::Unidentified(fp).to_string(),
            "Unidentified(order=2, orders=1:1 2:1)"
        );
    }

    #[test]
    fn identifies_catalog_families() {
        assert_eq!(
            identify(&PermGroup::trivial(2)).unwrap(),
            GroupName::Trivial
        );
        assert_eq!(identify(&cyclic_group(6)).unwrap(), GroupName::Cyclic(6));
        assert_eq!(
            identify(&dihedral_group(2)).unwrap(),
            GroupName::Dihedral(2)
        );
        assert_eq!(
            identify(&dihedral_group(3)).unwrap(),
            GroupName::Dihedral(3)
        );
        assert_eq!(
            identify(&symmetric_group(3)).unwrap(),
            GroupName::Dihedral(3)
        );
        assert_eq!(
            identify(&dihedral_group(12)).unwrap(),
            GroupName::Dihedral(12)
        );
        assert_eq!(
            identify(&symmetric_group(4)).unwrap(),
            GroupName::Symmetric(4)
        );
        assert_eq!(
            identify(&alternating_group(4)).unwrap(),
            GroupName::Alternating(4)
        );
        assert_eq!(
            identify(&alternating_group(5)).unwrap(),
            GroupName::Alternating(5)
        );
        assert_eq!(
            identify(&alternating_group(3)).unwrap(),
            GroupName::Cyclic(3)
        );
        assert_eq!(
            identify(&abelian_group(&[2, 2, 2])).unwrap(),
            GroupName::DirectProductOfCyclics(vec![2, 2, 2])
        );
        assert_eq!(
            identify(&abelian_group(&[4, 6])).unwrap(),
            GroupName::DirectProductOfCyclics(vec![2, 12])
        );
        assert_eq!(
            identify(&abelian_group(&[3, 5])).unwrap(),
            GroupName::Cyclic(15)
        );
    }

    #[test]
    fn symmetric_group_in_a_non_natural_action() {
        // S_3 acting on 6 points (regular action)
        let a = cyc(6, &[&[0, 1, 2], &[3, 4, 5]]);
        let b = cyc(6, &[&[0, 3], &[1, 5], &[2, 4]]);
        let g = PermGroup::closure(6, &[a, b]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(identify(&g).unwrap(), GroupName::Dihedral(3));

        // S_4 acting on the 6 two-element subsets of {0,1,2,3}
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .collect();
        let induced = |p: &Perm| {
            let images: Vec<usize> = pairs
                .iter()
                .map(|&(i, j)| {
                    let (a, b) = (p.apply(i), p.apply(j));
                    let key = (a.min(b), a.max(b));
                    pairs.iter().position(|&q| q == key).unwrap()
                })
                .collect();
            Perm::from_images(&images).unwrap()
        };
        let gens: Vec<Perm> = symmetric_group(4)
            .generators()
            .iter()
            .map(induced)
            .collect();
        let g = PermGroup::closure(6, &gens).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(identify(&g).unwrap(), GroupName::Symmetric(4));
    }

    #[test]
    fn quaternion_group_is_unidentified() {
        let i = cyc(8, &[&[0, 1, 3, 6], &[2, 5, 7, 4]]);
        let j = cyc(8, &[&[0, 2, 3, 7], &[1, 4, 6, 5]]);
        let q8 = PermGroup::closure(8, &[i, j]).unwrap();
        assert_eq!(q8.order(), 8);
        match identify(&q8).unwrap() {
            GroupName::Unidentified(fp) => {
                assert_eq!(fp.element_orders, BTreeMap::from([(1, 1), (2, 1), (4, 6)]));
            }
            other => panic!("Q_8 mislabeled as {other}"),
        }
    }

    #[test]
    fn isomorphism_decisions() {
        let d3 = dihedral_group(3);
        assert!(is_isomorphic(&d3, &d3).unwrap());
        assert!(is_isomorphic(&d3, &symmetric_group(3)).unwrap());
        assert!(!is_isomorphic(&cyclic_group(6), &d3).unwrap());
        assert!(!is_isomorphic(&cyclic_group(4), &dihedral_group(2)).unwrap());
        assert!(is_isomorphic(&abelian_group(&[2, 3]), &cyclic_group(6)).unwrap());
    }

    #[test]
    fn invariant_factor_examples() {
        let fp = fingerprint(&abelian_group(&[2, 4, 3])).unwrap();
        assert_eq!(invariant_factors(&fp.element_orders), vec![2, 12]);
        let fp = fingerprint(&abelian_group(&[3, 9, 3])).unwrap();
        assert_eq!(invariant_factors(&fp.element_orders), vec![3, 3, 9]);
    }
}
