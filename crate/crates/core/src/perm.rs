//! Permutations of `{0, …, n-1}` and the finite groups they generate.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `x` to `p(q(x))`, so a
//! product of column maps `β_i β_j` applies `β_j` first. Points are 0-based in
//! memory and 1-based in cycle notation.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Mul;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::text::{Cursor, RawCycle};

/// Largest supported degree.
pub const MAX_DEGREE: usize = 64;

/// Default cap on the number of elements [`PermGroup::closure`] will materialize.
pub const DEFAULT_ELEMENT_LIMIT: usize = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        assert!(degree <= MAX_DEGREE, "degree {degree} exceeds {MAX_DEGREE}");
        Perm {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its image list, `images[x]` being the image of `x`.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        let mut seen = vec![false; n];
        for &y in images {
            if y >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {y} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidPermutation(format!("image {y} repeated")));
            }
        }
        Ok(Perm {
            images: images.iter().map(|&y| y as u8).collect(),
        })
    }

    /// Builds a permutation of the given degree from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {x} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut moved[x], true) {
                    return Err(Error::InvalidPermutation(format!("point {x} repeated")));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm {
            images: images.into_iter().map(|y| y as u8).collect(),
        })
    }

    pub(crate) fn from_bytes_unchecked(images: Vec<u8>) -> Perm {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Perm { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&y| y as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &y)| i == y as usize)
    }

    /// `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            images: other
                .images
                .iter()
                .map(|&y| self.images[y as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Perm { images }
    }

    /// `f ∘ self ∘ f⁻¹`, the same permutation with points renamed by `f`.
    pub fn conjugate_by(&self, f: &Perm) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[f.images[x] as usize] = f.images[y as usize];
        }
        Perm { images }
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose_unchecked(&base);
            }
            base = base.compose_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.apply(x);
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| lcm(acc, len as u64))
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.images
            .iter()
            .zip(&other.images)
            .all(|(&a, &b)| self.images[b as usize] == other.images[a as usize])
    }
}

impl Mul<&Perm> for &Perm {
    type Output = Perm;

    /// Right-to-left composition. Panics on a degree mismatch.
    fn mul(self, rhs: &Perm) -> Perm {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(rhs)
    }
}

/// Canonical cycle notation, 1-based; the identity renders as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

pub fn format_cycles(p: &Perm) -> String {
    p.to_string()
}

/// Parses 1-based cycle notation such as `"(1,3,2)(4,5)"` or `"()"`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
    let mut cur = Cursor::new(text);
    let raw = cur.raw_perm()?;
    if !cur.at_end() {
        return Err(cur.unexpected("end of input"));
    }
    perm_from_raw(&raw, degree)
}

pub(crate) fn perm_from_raw(raw: &[RawCycle], degree: usize) -> Result<Perm> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(degree));
    }
    let mut moved = vec![false; degree];
    for &(point, pos) in raw.iter().flatten() {
        if point == 0 || point > degree {
            return Err(Cursor::error_at(
                pos,
                format!("point {point} out of range 1..={degree}"),
            ));
        }
        if std::mem::replace(&mut moved[point - 1], true) {
            return Err(Cursor::error_at(pos, format!("point {point} repeated")));
        }
    }
    let mut images: Vec<u8> = (0..degree as u8).collect();
    for cycle in raw {
        for (i, &(point, _)) in cycle.iter().enumerate() {
            images[point - 1] = (cycle[(i + 1) % cycle.len()].0 - 1) as u8;
        }
    }
    Ok(Perm { images })
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A permutation group with its full element set materialized.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: IndexSet<Perm>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        let mut elements = IndexSet::new();
        elements.insert(Perm::identity(degree));
        PermGroup {
            degree,
            generators: Vec::new(),
            elements,
        }
    }

    /// The group generated by `generators`, with the default element cap.
    pub fn closure(degree: usize, generators: &[Perm]) -> Result<PermGroup> {
        Self::closure_with_limit(degree, generators, DEFAULT_ELEMENT_LIMIT)
    }

    /// Breadth-first closure under left multiplication by the generators.
    /// Identity and duplicate generators are dropped; the element set does not
    /// depend on generator order.
    pub fn closure_with_limit(
        degree: usize,
        generators: &[Perm],
        limit: usize,
    ) -> Result<PermGroup> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(degree));
        }
        let mut gens: IndexSet<Perm> = IndexSet::new();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
            if !g.is_identity() {
                gens.insert(g.clone());
            }
        }
        let generators: Vec<Perm> = gens.into_iter().collect();
        let mut elements = IndexSet::new();
        elements.insert(Perm::identity(degree));
        let mut next = 0;
        while next < elements.len() {
            let e = elements[next].clone();
            next += 1;
            for g in &generators {
                let p = g.compose_unchecked(&e);
                if !elements.contains(&p) {
                    if elements.len() >= limit {
                        return Err(Error::ResourceLimit { limit });
                    }
                    elements.insert(p);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    /// Wraps an element set already known to be a group (closed, containing
    /// the identity). A generating set is extracted greedily.
    pub(crate) fn from_group_elements(degree: usize, elements: Vec<Perm>) -> Result<PermGroup> {
        let generators = small_generating_set(degree, &elements)?;
        let group = PermGroup::closure(degree, &generators)?;
        debug_assert_eq!(group.order(), elements.len());
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = &Perm> + '_ {
        self.elements.iter()
    }

    pub(crate) fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub(crate) fn index_of(&self, p: &Perm) -> Option<usize> {
        self.elements.get_index_of(p)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Same element set.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.elements.iter().all(|p| other.contains(p))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        self.check_degree(other)?;
        Ok(self.order() <= other.order()
            && other.order().is_multiple_of(self.order())
            && self.generators.iter().all(|p| other.contains(p)))
    }

    /// `self ⊴ other`: contained in `other` and closed under conjugation by
    /// its generators.
    pub fn is_normal_in(&self, other: &PermGroup) -> Result<bool> {
        if !self.is_subgroup_of(other)? {
            return Ok(false);
        }
        Ok(other.generators.iter().all(|g| {
            self.generators
                .iter()
                .all(|h| self.contains(&h.conjugate_by(g)))
        }))
    }

    /// The image of the group under renaming points by `f`.
    pub fn conjugate_by(&self, f: &Perm) -> PermGroup {
        PermGroup {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.conjugate_by(f)).collect(),
            elements: self.elements.iter().map(|g| g.conjugate_by(f)).collect(),
        }
    }

    /// Orbits of the natural action on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    fn check_degree(&self, other: &PermGroup) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Greedy generating set: walk elements by decreasing order, keeping any
/// element not already in the span of those kept.
pub(crate) fn small_generating_set(degree: usize, elements: &[Perm]) -> Result<Vec<Perm>> {
    let mut by_order: Vec<(u64, &Perm)> = elements.iter().map(|p| (p.order(), p)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
    let mut gens: Vec<Perm> = Vec::new();
    let mut span = PermGroup::trivial(degree);
    for (_, p) in by_order {
        if span.order() == elements.len() {
            break;
        }
        if !span.contains(p) {
            gens.push(p.clone());
            span = PermGroup::closure(degree, &gens)?;
        }
    }
    Ok(gens)
}
