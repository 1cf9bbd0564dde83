use std::sync::Arc;

use atomspec::gring::{ColumnSpec, GradedRing, Monomial, MonomialIdeal, PieceDim, PresentedModule, Term};
use atomspec::zlin::GroupElement;
use proptest::prelude::*;

fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

fn ideal(n: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(monomial(n, 3), 0..=5).prop_map(move |mut gens| {
        for g in &mut gens {
            if g.is_one() {
                *g = Monomial::var(n, 0);
            }
        }
        MonomialIdeal::new(n, gens).unwrap()
    })
}

fn ring_and_ideal() -> impl Strategy<Value = (Vec<i64>, MonomialIdeal)> {
    (1usize..=3).prop_flat_map(|n| (prop::collection::vec(1i64..=3, n), ideal(n)))
}

/// Every monomial with exponents in `0..=bound`.
fn box_monomials(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                (0..=bound).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::new).collect()
}

/// Monomials of weighted degree `d`, by direct enumeration.
fn count_of_degree(weights: &[i64], d: i64, keep: impl Fn(&Monomial) -> bool) -> usize {
    if d < 0 {
        return 0;
    }
    box_monomials(weights.len(), d as u32)
        .into_iter()
        .filter(|m| m.exponents().iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum::<i64>() == d)
        .filter(|m| keep(m))
        .count()
}

fn z(ring: &GradedRing, x: i64) -> GroupElement {
    ring.group().element_i64(&[x]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn colon_is_membership_of_the_product((n, i, m) in (1usize..=3).prop_flat_map(|n| (Just(n), ideal(n), monomial(n, 2)))) {
        let c = i.colon(&m);
        prop_assert!(c.contains_ideal(&i));
        for u in box_monomials(n, 4) {
            prop_assert_eq!(c.contains(&u), i.contains(&u.mul(&m)));
        }
        let coprime = i.generators().iter().all(|g| g.gcd(&m).is_one());
        prop_assert_eq!(c == i, coprime || i.is_zero());
    }

    #[test]
    fn saturation_is_stable_and_minimal((_n, i, m) in (1usize..=3).prop_flat_map(|n| (Just(n), ideal(n), monomial(n, 2)))) {
        let (sat, e) = i.saturate(&m);
        prop_assert_eq!(sat.colon(&m), sat.clone());
        prop_assert_eq!(i.colon(&m.pow(e)), sat.clone());
        if e > 0 {
            prop_assert_ne!(i.colon(&m.pow(e - 1)), sat.clone());
        }
        prop_assert_eq!(sat.saturate(&m), (sat.clone(), 0));
    }

    #[test]
    fn minimal_primes_are_minimal_transversals((n, i) in (1usize..=4).prop_flat_map(|n| (Just(n), ideal(n)))) {
        let covers: Vec<u64> = (0..1u64 << n)
            .filter(|s| i.generators().iter().all(|g| g.support() & s != 0))
            .collect();
        let mut brute: Vec<u64> = covers
            .iter()
            .copied()
            .filter(|s| !covers.iter().any(|t| t != s && t & s == *t))
            .collect();
        brute.sort();
        let mut got: Vec<u64> = i.minimal_primes().iter().map(|p| p.mask()).collect();
        got.sort();
        prop_assert_eq!(got, brute);
    }

    #[test]
    fn cyclic_pieces_count_standard_monomials((weights, i) in ring_and_ideal(), twist in -2i64..=2) {
        let ring = Arc::new(GradedRing::weighted(&weights));
        let m = PresentedModule::cyclic(ring.clone(), &i, &z(&ring, twist)).unwrap();
        for d in -3i64..=6 {
            let expected = count_of_degree(&weights, d + twist, |u| !i.contains(u));
            prop_assert_eq!(m.degree_piece_dimension(&z(&ring, d)).unwrap(), PieceDim::Finite(expected));
        }
    }

    #[test]
    fn free_pieces_count_monomials(weights in prop::collection::vec(1i64..=3, 1..=3), b in prop::collection::vec(-2i64..=2, 1..=3)) {
        let ring = Arc::new(GradedRing::weighted(&weights));
        let gens: Vec<GroupElement> = b.iter().map(|&x| z(&ring, x)).collect();
        let m = PresentedModule::free(ring.clone(), gens).unwrap();
        for d in -2i64..=6 {
            let expected: usize = b.iter().map(|&bk| count_of_degree(&weights, d - bk, |_| true)).sum();
            prop_assert_eq!(m.degree_piece_dimension(&z(&ring, d)).unwrap(), PieceDim::Finite(expected));
        }
    }

    #[test]
    fn scaling_a_relation_changes_nothing((weights, i) in ring_and_ideal(), k in 1i64..=7) {
        let ring = Arc::new(GradedRing::weighted(&weights));
        let gen = vec![z(&ring, 0)];
        let columns = |c: i64| -> Vec<ColumnSpec> {
            i.generators()
                .iter()
                .map(|g| ColumnSpec {
                    degree: None,
                    entries: vec![(0, Term::new(num_rational::BigRational::from_integer(c.into()), g.clone()).unwrap())],
                })
                .collect()
        };
        let a = PresentedModule::new(ring.clone(), gen.clone(), columns(1)).unwrap();
        let b = PresentedModule::new(ring.clone(), gen, columns(-k)).unwrap();
        for d in 0i64..=5 {
            let g = z(&ring, d);
            prop_assert_eq!(a.degree_piece_dimension(&g).unwrap(), b.degree_piece_dimension(&g).unwrap());
        }
    }
}

#[test]
fn bigraded_pieces_count_standard_monomials() {
    let ring = atomspec::corpus::p1xp1().ring().clone();
    let i = MonomialIdeal::new(4, vec![Monomial::new(vec![1, 0, 1, 0]), Monomial::new(vec![0, 2, 0, 0])]).unwrap();
    let m = PresentedModule::cyclic(ring.clone(), &i, &ring.group().zero()).unwrap();
    for a in 0..=3i64 {
        for b in 0..=3i64 {
            let g = ring.group().element_i64(&[a, b]).unwrap();
            let expected = box_monomials(4, 3)
                .into_iter()
                .filter(|u| {
                    let e = u.exponents();
                    (e[0] + e[1]) as i64 == a && (e[2] + e[3]) as i64 == b && !i.contains(u)
                })
                .count();
            assert_eq!(m.degree_piece_dimension(&g).unwrap(), PieceDim::Finite(expected));
        }
    }
}
