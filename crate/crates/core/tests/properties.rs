mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use quandles::autcalc;
use quandles::enumerate;
use quandles::families::{self, CayleyGroup};
use quandles::gapio::{self, QuandleLibrary};
use quandles::groupid::{self, catalog};
use quandles::perm::{format_cycles, parse_cycles};
use quandles::quandle::{are_isomorphic, canonical_form};
use quandles::{Perm, PermGroup, Quandle};

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

fn sized_perm(max: usize) -> impl Strategy<Value = Perm> {
    (1..=max).prop_flat_map(perm)
}

fn perms(n: usize, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Perm>> {
    prop::collection::vec(perm(n), count)
}

/// All quandles of order at most 5, plus a few family members up to 9.
fn pool() -> &'static [Quandle] {
    static POOL: OnceLock<Vec<Quandle>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v: Vec<Quandle> = (1..=5)
            .flat_map(|n| enumerate::enumerate(n).unwrap().quandles)
            .collect();
        v.push(families::dihedral(7).unwrap());
        v.push(families::alexander(7, 3).unwrap());
        v.push(families::takasaki(&[3, 3]).unwrap());
        v.push(families::conj(&CayleyGroup::symmetric(3)).unwrap());
        v.push(families::core(&CayleyGroup::dihedral(3)).unwrap());
        v
    })
}

fn pooled() -> impl Strategy<Value = Quandle> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

/// A pooled quandle together with a relabeling of it.
fn relabeled() -> impl Strategy<Value = (Quandle, Perm, Quandle)> {
    pooled().prop_flat_map(|q| {
        let n = q.order();
        perm(n).prop_map(move |f| {
            let r = q.relabel(&f).unwrap();
            (q.clone(), f, r)
        })
    })
}

fn table(n: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0..n, n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // perm

    #[test]
    fn composition_is_associative(v in (1..9usize).prop_flat_map(|n| perms(n, 3..4))) {
        let ab_c = v[0].compose(&v[1]).unwrap().compose(&v[2]).unwrap();
        let a_bc = v[0].compose(&v[1].compose(&v[2]).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn composition_matches_image_vectors(v in (1..9usize).prop_flat_map(|n| perms(n, 2..3))) {
        let got = v[0].compose(&v[1]).unwrap();
        let expected = common::compose(&common::images(&v[0]), &common::images(&v[1]));
        prop_assert_eq!(common::images(&got), expected);
    }

    #[test]
    fn identity_and_inverse_laws(p in sized_perm(10)) {
        let id = Perm::identity(p.degree());
        prop_assert_eq!(&p.compose(&id).unwrap(), &p);
        prop_assert_eq!(&id.compose(&p).unwrap(), &p);
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        prop_assert_eq!(common::images(&p.inverse()), common::inverse(&common::images(&p)));
        prop_assert_eq!(p.order(), common::perm_order(&common::images(&p)) as u64);
    }

    #[test]
    fn cycle_text_round_trips(p in sized_perm(12)) {
        let text = format_cycles(&p);
        prop_assert_eq!(parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn closure_ignores_generator_order_and_repeats(
        (gens, shuffled) in (1..7usize)
            .prop_flat_map(|n| perms(n, 1..4))
            .prop_flat_map(|g| {
                let mut doubled = g.clone();
                doubled.extend(g.iter().cloned());
                (Just(g), Just(doubled).prop_shuffle())
            })
    ) {
        let n = gens[0].degree();
        let a = PermGroup::closure(n, &gens).unwrap();
        let b = PermGroup::closure(n, &shuffled).unwrap();
        prop_assert!(a.same_elements(&b));
        let oracle = common::closure(n, &gens.iter().map(common::images).collect::<Vec<_>>());
        prop_assert_eq!(common::to_set(a.elements()), oracle);
    }

    #[test]
    fn closure_order_divides_factorial(gens in (1..7usize).prop_flat_map(|n| perms(n, 1..4))) {
        let n = gens[0].degree();
        let g = PermGroup::closure(n, &gens).unwrap();
        prop_assert_eq!(common::factorial(n) % g.order(), 0);
        for p in &gens {
            prop_assert!(g.contains(p));
            prop_assert_eq!(g.order() as u64 % p.order(), 0);
        }
    }

    // groupid

    #[test]
    fn identification_is_conjugation_invariant(
        (g, f) in (0..8usize).prop_flat_map(|i| {
            let g = match i {
                0 => catalog::cyclic_group(6),
                1 => catalog::dihedral_group(4),
                2 => catalog::symmetric_group(4),
                3 => catalog::alternating_group(4),
                4 => catalog::abelian_group(&[2, 2]),
                5 => catalog::dihedral_group(5),
                6 => catalog::abelian_group(&[2, 4]),
                _ => catalog::cyclic_group(7),
            };
            let n = g.degree();
            (Just(g), perm(n))
        })
    ) {
        let h = g.conjugate_by(&f);
        prop_assert_eq!(groupid::identify(&g).unwrap(), groupid::identify(&h).unwrap());
        prop_assert!(groupid::is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn invariant_factors_reproduce_element_orders(factors in prop::collection::vec(1..6usize, 1..4)) {
        let g = catalog::abelian_group(&factors);
        let fp = groupid::fingerprint(&g).unwrap();
        let inv = groupid::invariant_factors(&fp.element_orders);
        let h = catalog::abelian_group(&inv);
        prop_assert_eq!(groupid::fingerprint(&h).unwrap().element_orders, fp.element_orders);
        prop_assert_eq!(inv.iter().product::<usize>(), g.order());
        for w in inv.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    // quandle

    #[test]
    fn columns_are_automorphisms(q in pooled()) {
        for b in q.columns() {
            prop_assert!(q.is_automorphism(&b));
        }
    }

    #[test]
    fn isomorphism_agrees_with_canonical_forms((q, _, r) in relabeled(), other in pooled()) {
        prop_assert!(are_isomorphic(&q, &r).is_some());
        prop_assert_eq!(canonical_form(&q), canonical_form(&r));
        let iso = are_isomorphic(&r, &other);
        prop_assert_eq!(iso.is_some(), canonical_form(&r) == canonical_form(&other));
        if let Some(f) = iso {
            prop_assert_eq!(r.relabel(&f).unwrap(), other);
        }
    }

    #[test]
    fn canonical_form_is_idempotent((q, _, r) in relabeled()) {
        let c = canonical_form(&r);
        prop_assert!(c.is_canonical());
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert!(c.rows() <= q.rows());
    }

    #[test]
    fn validation_agrees_with_triple_loop(t in (1..5usize).prop_flat_map(table)) {
        prop_assert_eq!(Quandle::from_table(&t).is_ok(), common::is_quandle(&t));
    }

    #[test]
    fn perturbed_tables_are_judged_correctly(
        (q, x, y, v) in pooled().prop_flat_map(|q| {
            let n = q.order();
            (Just(q), 0..n, 0..n, 0..n)
        })
    ) {
        let mut t = q.rows();
        t[x][y] = v;
        prop_assert_eq!(Quandle::from_table(&t).is_ok(), common::is_quandle(&t));
    }

    // families

    #[test]
    fn family_outputs_are_quandles(n in 1..=12usize) {
        prop_assert!(common::is_quandle(&families::trivial(n).unwrap().rows()));
        prop_assert!(common::is_quandle(&families::dihedral(n).unwrap().rows()));
        prop_assert!(common::is_quandle(&families::core(&CayleyGroup::dihedral(n.max(1))).unwrap().rows()));
        for t in (1..n).filter(|&t| common::gcd(t, n) == 1) {
            prop_assert!(common::is_quandle(&families::alexander(n, t).unwrap().rows()));
        }
    }

    #[test]
    fn one_column_outputs_are_quandles(sigma in (2..9usize).prop_flat_map(|n| {
        Just((1..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| {
            let mut images = vec![0];
            images.extend(v);
            Perm::from_images(&images).unwrap()
        })
    })) {
        let q = families::one_column(sigma.degree(), &sigma).unwrap();
        prop_assert!(common::is_quandle(&q.rows()));
        prop_assert_eq!(q.column_perm(0).unwrap(), sigma);
    }

    #[test]
    fn four_views_of_the_dihedral_quandle_agree(n in 3..=12usize) {
        let r = families::dihedral(n).unwrap();
        prop_assert_eq!(&families::alexander(n, n - 1).unwrap(), &r);
        prop_assert_eq!(&families::takasaki(&[n]).unwrap(), &r);
        prop_assert_eq!(&families::core(&CayleyGroup::cyclic(n)).unwrap(), &r);
    }

    #[test]
    fn conjugation_is_trivial_exactly_for_abelian_groups(i in 0..8usize) {
        let g = match i {
            0 => CayleyGroup::cyclic(6),
            1 => CayleyGroup::dihedral(3),
            2 => CayleyGroup::dihedral(4),
            3 => CayleyGroup::quaternion(),
            4 => CayleyGroup::cyclic(2).direct_product(&CayleyGroup::cyclic(4)),
            5 => CayleyGroup::alternating(4),
            6 => CayleyGroup::symmetric(3).direct_product(&CayleyGroup::cyclic(2)),
            _ => CayleyGroup::cyclic(1),
        };
        let q = families::conj(&g).unwrap();
        prop_assert_eq!(q == families::trivial(g.order()).unwrap(), g.is_abelian());
        // Inn of Conj(G) is G modulo its center
        let inn = autcalc::inner_group(&q).unwrap();
        prop_assert_eq!(inn.order(), g.order() / g.center_order());
    }

    // autcalc

    #[test]
    fn group_elements_preserve_the_operation(q in pooled()) {
        let triple = autcalc::group_triple(&q).unwrap();
        for g in [&triple.dis, &triple.inn, &triple.aut] {
            for f in g.elements() {
                prop_assert!(q.is_automorphism(f));
            }
        }
        prop_assert_eq!(common::to_set(triple.inn.elements()), common::inn(&q));
        prop_assert_eq!(common::to_set(triple.dis.elements()), common::dis(&q));
    }

    #[test]
    fn relabeling_conjugates_the_groups((q, f, r) in relabeled()) {
        let dq = autcalc::displacement_group(&q).unwrap();
        let dr = autcalc::displacement_group(&r).unwrap();
        prop_assert!(dq.conjugate_by(&f).same_elements(&dr));
        let aq = autcalc::automorphism_group(&q).unwrap();
        let ar = autcalc::automorphism_group(&r).unwrap();
        prop_assert!(aq.conjugate_by(&f).same_elements(&ar));
    }

    // gapio

    #[test]
    fn library_round_trip(qs in prop::collection::vec(pooled(), 0..6)) {
        let lib = QuandleLibrary::new(qs);
        prop_assert_eq!(gapio::parse_library(&gapio::emit_library(&lib)).unwrap(), lib.clone());
        if !lib.is_empty() {
            let text = gapio::emit_matrices(&lib.entries);
            prop_assert_eq!(gapio::parse_matrices(&text).unwrap(), lib.entries);
        }
    }

    #[test]
    fn library_whitespace_is_insignificant(
        q in pooled(),
        pads in prop::collection::vec(prop::sample::select(vec!["", " ", "\n", "\t", "  \n "]), 64)
    ) {
        let text = gapio::emit_library(&QuandleLibrary::new(vec![q.clone()]));
        let mut noisy = String::new();
        let mut k = 0;
        for ch in text.chars() {
            if ch == ' ' {
                noisy.push_str(pads[k % pads.len()]);
                k += 1;
            } else {
                noisy.push(ch);
                if matches!(ch, '[' | ']' | ',') {
                    noisy.push_str(pads[k % pads.len()]);
                    k += 1;
                }
            }
        }
        prop_assert_eq!(gapio::parse_library(&noisy).unwrap().entries, vec![q]);
    }

    #[test]
    fn points_beyond_the_order_are_rejected(n in 1..8usize, extra in 1..4usize) {
        let mut cols = vec!["()".to_string(); n];
        cols[0] = format!("(1,{})", n + extra);
        let text = format!("[ [ {} ] ]", cols.join(", "));
        prop_assert!(gapio::parse_library(&text).is_err());
    }
}
