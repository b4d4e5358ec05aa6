//! Parametric quandle families and the finite groups some of them are built on.
//!
//! Family spec strings, as accepted by [`parse_family`]:
//! `T:n`, `R:n`, `A:n:t`, `P:n:(cycles)`, `Conj:<group>`, `Core:<group>`,
//! `Tak:d1xd2x…`. Groups are written `Z4`, `D4` (order 8), `S3`, `A4`, `Q8`,
//! optionally with an underscore (`Z_4`) and joined by `x` for direct products.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::perm::{gcd, parse_cycles, Perm, PermGroup, MAX_DEGREE};
use crate::quandle::Quandle;

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    order: usize,
    product: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl CayleyGroup {
    /// Validates a multiplication table: closure, an identity, inverses, and
    /// (for order ≤ 64) associativity.
    pub fn from_table(product: Vec<Vec<usize>>) -> Result<CayleyGroup> {
        let m = product.len();
        if m == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if product
            .iter()
            .any(|row| row.len() != m || row.iter().any(|&v| v >= m))
        {
            return Err(Error::InvalidGroup(
                "table is not a square over 0..m".into(),
            ));
        }
        let flat: Vec<usize> = product.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * m + b];
        let identity = (0..m)
            .find(|&e| (0..m).all(|a| mul(e, a) == a && mul(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let mut inverse = Vec::with_capacity(m);
        for a in 0..m {
            let inv = (0..m)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        if m <= 64 {
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                            return Err(Error::InvalidGroup(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(CayleyGroup {
            order: m,
            product: flat,
            identity,
            inverse,
        })
    }

    /// Element `i` is the `i`-th element of the group's element list.
    pub fn from_perm_group(g: &PermGroup) -> CayleyGroup {
        let m = g.order();
        let mut product = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let p = g.element(i) * g.element(j);
                product.push(g.index_of(&p).expect("closed element set"));
            }
        }
        let identity = g
            .index_of(&Perm::identity(g.degree()))
            .expect("identity present");
        let inverse = (0..m)
            .map(|i| {
                g.index_of(&g.element(i).inverse())
                    .expect("closed under inverse")
            })
            .collect();
        CayleyGroup {
            order: m,
            product,
            identity,
            inverse,
        }
    }

    pub fn cyclic(n: usize) -> CayleyGroup {
        assert!(n >= 1);
        let product = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b) % n))
            .collect();
        CayleyGroup {
            order: n,
            product,
            identity: 0,
            inverse: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    /// Dihedral group of order `2m`. Element `k` is the rotation `r^k`,
    /// element `m + k` is `s r^k`.
    pub fn dihedral(m: usize) -> CayleyGroup {
        assert!(m >= 1);
        let decode = |e: usize| (e / m == 1, e % m);
        let encode = |refl: bool, k: usize| if refl { m + k } else { k };
        let order = 2 * m;
        let mut product = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let (sa, ka) = decode(a);
                let (sb, kb) = decode(b);
                // (s^sa r^ka)(s^sb r^kb) = s^(sa+sb) r^(±ka + kb)
                let k = if sb { (m - ka + kb) % m } else { (ka + kb) % m };
                product.push(encode(sa ^ sb, k));
            }
        }
        let inverse = (0..order)
            .map(|e| {
                let (s, k) = decode(e);
                if s {
                    e
                } else {
                    (m - k) % m
                }
            })
            .collect();
        CayleyGroup {
            order,
            product,
            identity: 0,
            inverse,
        }
    }

    pub fn symmetric(k: usize) -> CayleyGroup {
        Self::from_perm_group(&crate::groupid::catalog::symmetric_group(k))
    }

    pub fn alternating(k: usize) -> CayleyGroup {
        Self::from_perm_group(&crate::groupid::catalog::alternating_group(k))
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> CayleyGroup {
        // element = sign bit * 4 + unit, unit ∈ {1, i, j, k}
        const UNIT: [[(bool, usize); 4]; 4] = [
            [(false, 0), (false, 1), (false, 2), (false, 3)],
            [(false, 1), (true, 0), (false, 3), (true, 2)],
            [(false, 2), (true, 3), (true, 0), (false, 1)],
            [(false, 3), (false, 2), (true, 1), (true, 0)],
        ];
        let mut product = Vec::with_capacity(64);
        for a in 0..8 {
            for b in 0..8 {
                let (neg, u) = UNIT[a % 4][b % 4];
                let sign = (a >= 4) ^ (b >= 4) ^ neg;
                product.push(if sign { 4 + u } else { u });
            }
        }
        let inverse = (0..8)
            .map(|e| match e {
                0 | 4 => e,
                _ => (e + 4) % 8,
            })
            .collect();
        CayleyGroup {
            order: 8,
            product,
            identity: 0,
            inverse,
        }
    }

    /// `self × other`, element `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &CayleyGroup) -> CayleyGroup {
        let (m1, m2) = (self.order, other.order);
        let order = m1 * m2;
        let mut product = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let a = self.mul(x / m2, y / m2);
                let b = other.mul(x % m2, y % m2);
                product.push(a * m2 + b);
            }
        }
        let inverse = (0..order)
            .map(|x| self.inverse[x / m2] * m2 + other.inverse[x % m2])
            .collect();
        CayleyGroup {
            order,
            product,
            identity: self.identity * m2 + other.identity,
            inverse,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center_order(&self) -> usize {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn span(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.order];
        inside[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(s, x);
                if !inside[y] {
                    inside[y] = true;
                    queue.push_back(y);
                }
            }
        }
        inside
    }

    fn generating_set(&self) -> Vec<usize> {
        let mut elems: Vec<usize> = (0..self.order).collect();
        elems.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut inside = self.span(&gens);
        for a in elems {
            if !inside[a] {
                gens.push(a);
                inside = self.span(&gens);
            }
        }
        gens
    }

    /// `|Aut(G)|`, by trying every order-preserving assignment of images to a
    /// generating set and keeping those that extend to bijective homomorphisms.
    pub fn automorphism_count(&self) -> usize {
        let gens = self.generating_set();
        let candidates: Vec<Vec<usize>> = gens
            .iter()
            .map(|&s| {
                let k = self.element_order(s);
                (0..self.order)
                    .filter(|&a| self.element_order(a) == k)
                    .collect()
            })
            .collect();
        let mut count = 0;
        let mut images = vec![0usize; gens.len()];
        self.count_extensions(&gens, &candidates, &mut images, 0, &mut count);
        count
    }

    fn count_extensions(
        &self,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
        count: &mut usize,
    ) {
        if depth == gens.len() {
            if self.extends_to_automorphism(gens, images) {
                *count += 1;
            }
            return;
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            self.count_extensions(gens, candidates, images, depth + 1, count);
        }
    }

    fn extends_to_automorphism(&self, gens: &[usize], images: &[usize]) -> bool {
        let mut map = vec![usize::MAX; self.order];
        let mut hit = vec![false; self.order];
        map[self.identity] = self.identity;
        hit[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let y = self.mul(s, x);
                let w = self.mul(t, map[x]);
                if map[y] == usize::MAX {
                    if hit[w] {
                        return false;
                    }
                    hit[w] = true;
                    map[y] = w;
                    queue.push_back(y);
                } else if map[y] != w {
                    return false;
                }
            }
        }
        true
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::Family("order must be at least 1".into()));
    }
    if n > MAX_DEGREE {
        return Err(Error::Family(format!("order {n} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

fn build(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Quandle> {
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect();
    Quandle::from_table(&rows)
}

/// `T_n`: `x ▷ y = x`.
pub fn trivial(n: usize) -> Result<Quandle> {
    check_order(n)?;
    build(n, |x, _| x)
}

/// `R_n`: `x ▷ y = 2y − x mod n`.
pub fn dihedral(n: usize) -> Result<Quandle> {
    check_order(n)?;
    build(n, |x, y| (2 * y + n - x) % n)
}

/// Alexander quandle on `Z_n`: `x ▷ y = (1 − t)y + tx mod n`, `gcd(t, n) = 1`.
pub fn alexander(n: usize, t: usize) -> Result<Quandle> {
    check_order(n)?;
    let t = t % n;
    if gcd(t as u64, n as u64) != 1 {
        return Err(Error::Family(format!("gcd({t}, {n}) != 1")));
    }
    let one_minus_t = (1 + n - t) % n;
    build(n, |x, y| (one_minus_t * y + t * x) % n)
}

/// `Conj(G)`: `a ▷ b = b a b⁻¹`.
pub fn conj(g: &CayleyGroup) -> Result<Quandle> {
    check_order(g.order())?;
    build(g.order(), |a, b| g.mul(b, g.mul(a, g.inverse(b))))
}

/// `Core(G)`: `a ▷ b = b a⁻¹ b`.
pub fn core(g: &CayleyGroup) -> Result<Quandle> {
    check_order(g.order())?;
    build(g.order(), |a, b| g.mul(b, g.mul(g.inverse(a), b)))
}

/// Takasaki quandle of `Z_{d1} × … × Z_{dk}`: `a ▷ b = 2b − a`. Elements are
/// ranked in mixed radix, first factor most significant.
pub fn takasaki(factors: &[usize]) -> Result<Quandle> {
    if let Some(&d) = factors.iter().find(|&&d| d < 2) {
        return Err(Error::Family(format!("invariant factor {d} < 2")));
    }
    let n: usize = factors.iter().product();
    check_order(n)?;
    let digits = |mut x: usize| {
        let mut out = vec![0; factors.len()];
        for (i, &d) in factors.iter().enumerate().rev() {
            out[i] = x % d;
            x /= d;
        }
        out
    };
    build(n, |a, b| {
        let (da, db) = (digits(a), digits(b));
        factors
            .iter()
            .zip(da.iter().zip(&db))
            .fold(0, |acc, (&d, (&x, &y))| acc * d + (2 * y + d - x) % d)
    })
}

/// `P_n^σ`: column 0 is `σ`, every other column is the identity.
pub fn one_column(n: usize, sigma: &Perm) -> Result<Quandle> {
    check_order(n)?;
    if sigma.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: sigma.degree(),
        });
    }
    if sigma.apply(0) != 0 {
        return Err(Error::Family("σ must fix the first element".into()));
    }
    build(n, |x, y| if y == 0 { sigma.apply(x) } else { x })
}

/// Parses a group name such as `S3`, `Q_8` or `Z3xZ3`.
pub fn parse_group(spec: &str) -> Result<CayleyGroup> {
    let mut acc: Option<CayleyGroup> = None;
    for part in spec.split(['x', '×']) {
        let part = part.trim();
        let g = parse_group_atom(part)?;
        acc = Some(match acc {
            None => g,
            Some(h) => h.direct_product(&g),
        });
    }
    acc.ok_or_else(|| Error::Family(format!("empty group spec {spec:?}")))
}

fn parse_group_atom(atom: &str) -> Result<CayleyGroup> {
    let bad = || Error::Family(format!("unknown group {atom:?}"));
    let mut chars = atom.chars();
    let kind = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str().trim_start_matches('_');
    let k: usize = rest.parse().map_err(|_| bad())?;
    if k == 0 || k > MAX_DEGREE {
        return Err(bad());
    }
    match kind {
        'Z' | 'C' => Ok(CayleyGroup::cyclic(k)),
        'D' => Ok(CayleyGroup::dihedral(k)),
        'S' if k <= 5 => Ok(CayleyGroup::symmetric(k)),
        'A' if k <= 5 => Ok(CayleyGroup::alternating(k)),
        'Q' if k == 8 => Ok(CayleyGroup::quaternion()),
        _ => Err(bad()),
    }
}

/// Builds a quandle from a family spec string.
pub fn parse_family(spec: &str) -> Result<Quandle> {
    let spec = spec.trim();
    let (kind, args) = spec
        .split_once(':')
        .ok_or_else(|| Error::Family(format!("expected <family>:<params>, got {spec:?}")))?;
    let int = |s: &str| -> Result<usize> {
        s.trim()
            .parse()
            .map_err(|_| Error::Family(format!("expected an integer, got {s:?}")))
    };
    match kind {
        "T" => trivial(int(args)?),
        "R" => dihedral(int(args)?),
        "A" => {
            let (n, t) = args
                .split_once(':')
                .ok_or_else(|| Error::Family("expected A:n:t".into()))?;
            alexander(int(n)?, int(t)?)
        }
        "P" => {
            let (n, cycles) = args
                .split_once(':')
                .ok_or_else(|| Error::Family("expected P:n:(cycles)".into()))?;
            let n = int(n)?;
            check_order(n)?;
            one_column(n, &parse_cycles(cycles, n)?)
        }
        "Conj" => conj(&parse_group(args)?),
        "Core" => core(&parse_group(args)?),
        "Tak" => {
            let factors = args
                .split(['x', '×'])
                .filter(|s| !s.trim().is_empty())
                .map(int)
                .collect::<Result<Vec<_>>>()?;
            takasaki(&factors)
        }
        _ => Err(Error::Family(format!("unknown family {kind:?}"))),
    }
}
