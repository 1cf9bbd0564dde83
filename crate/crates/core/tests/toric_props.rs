use std::collections::BTreeSet;
use std::sync::Arc;

use atomspec::error::Error;
use atomspec::gring::{GradedRing, MonomialIdeal};
use atomspec::toric::{cox_from_fan, irrelevant_ideal, CoxData, FanInput, SigmaComplex};
use atomspec::zlin::FgAbelianGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn family(ground: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..(1u64 << ground), 1..=5)
}

/// Distinct primitive rays in the plane, spanning it.
fn planar_rays() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((-4i64..=4, -4i64..=4), 2..=5).prop_filter_map("primitive spanning rays", |raw| {
        let mut rays: Vec<Vec<i64>> = Vec::new();
        for (a, b) in raw {
            if a.gcd(&b) == 1 && !rays.contains(&vec![a, b]) {
                rays.push(vec![a, b]);
            }
        }
        let spans = rays.iter().any(|u| rays.iter().any(|v| u[0] * v[1] - u[1] * v[0] != 0));
        (rays.len() >= 2 && spans).then_some(rays)
    })
}

fn abstract_cox(ground: usize, masks: &[u64]) -> CoxData {
    let ring = Arc::new(GradedRing::weighted(&vec![1; ground]));
    CoxData::new(ring, SigmaComplex::from_masks(ground, masks).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_is_idempotent((ground, masks) in (1usize..=5).prop_flat_map(|n| (Just(n), family(n)))) {
        let s = SigmaComplex::from_masks(ground, &masks).unwrap();
        let all: Vec<u64> = s.members().collect();
        let again = SigmaComplex::from_masks(ground, &all).unwrap();
        prop_assert_eq!(&again, &s);
        let from_max = SigmaComplex::from_masks(ground, &s.maximal()).unwrap();
        prop_assert_eq!(&from_max.maximal(), &s.maximal());
        prop_assert!(s.contains(0));
        // Maximal members of the closure are the maximal given masks.
        let given: BTreeSet<u64> = masks
            .iter()
            .copied()
            .filter(|m| !masks.iter().any(|t| t != m && t & m == *m))
            .collect();
        prop_assert_eq!(s.maximal().into_iter().collect::<BTreeSet<u64>>(), given);
    }

    #[test]
    fn irrelevant_ideal_needs_only_maximal_cones((ground, masks) in (1usize..=5).prop_flat_map(|n| (Just(n), family(n)))) {
        let c = abstract_cox(ground, &masks);
        let s = c.sigma();
        let every = MonomialIdeal::new(ground, s.members().map(|m| s.complement_monomial(m)).collect()).unwrap();
        prop_assert_eq!(irrelevant_ideal(&c), every);
        let full = (1u64 << ground) - 1;
        prop_assert_eq!(irrelevant_ideal(&c).is_unit(), s.contains(full));
    }

    #[test]
    fn degrees_kill_exactly_the_characters(rays in planar_rays(), probe in prop::collection::vec(-3i64..=3, 5)) {
        let n1 = rays.len();
        let f = FanInput::from_rays(&rays, vec![vec![0]]).unwrap();
        let c = cox_from_fan(&f).unwrap();
        let group: &FgAbelianGroup = c.ring().group();
        let degrees = c.ring().degrees();
        // Each dual basis vector gives a relation Σ ⟨e_j, v_i⟩ deg x_i = 0.
        for j in 0..2 {
            let coeffs: Vec<BigInt> = rays.iter().map(|r| BigInt::from(r[j])).collect();
            prop_assert!(group.combination(coeffs.into_iter().zip(degrees)).is_zero());
        }
        // A probe c lies in the kernel iff c = (⟨m, v_i⟩)_i for an integral m (Cramer).
        let probe = &probe[..n1];
        let (a, b) = (0..n1)
            .flat_map(|a| (a + 1..n1).map(move |b| (a, b)))
            .find(|&(a, b)| rays[a][0] * rays[b][1] - rays[a][1] * rays[b][0] != 0)
            .unwrap();
        let det = rays[a][0] * rays[b][1] - rays[a][1] * rays[b][0];
        let m0 = probe[a] * rays[b][1] - probe[b] * rays[a][1];
        let m1 = rays[a][0] * probe[b] - rays[b][0] * probe[a];
        let in_image = m0 % det == 0 && m1 % det == 0 && {
            let (m0, m1) = (m0 / det, m1 / det);
            rays.iter().zip(probe).all(|(r, &p)| r[0] * m0 + r[1] * m1 == p)
        };
        let coeffs: Vec<BigInt> = probe.iter().map(|&x| BigInt::from(x)).collect();
        prop_assert_eq!(group.combination(coeffs.into_iter().zip(degrees)).is_zero(), in_image);
    }
}

#[test]
fn rejected_fans() {
    let non_primitive = FanInput::from_rays(&[vec![2, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1]]).unwrap();
    assert!(matches!(cox_from_fan(&non_primitive), Err(Error::Input(_))));
    let repeated = FanInput::from_rays(&[vec![1, 0], vec![1, 0], vec![0, 1]], vec![vec![0, 2]]).unwrap();
    assert!(matches!(cox_from_fan(&repeated), Err(Error::Input(_))));
    let degenerate = FanInput::from_rays(&[vec![1, 0], vec![-1, 0]], vec![vec![0], vec![1]]).unwrap();
    assert!(matches!(cox_from_fan(&degenerate), Err(Error::TorusFactor { rank: 1, dim: 2 })));
}
