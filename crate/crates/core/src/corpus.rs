//! Small Cox data used throughout examples and tests.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::gring::GradedRing;
use crate::toric::{cox_from_fan, full_mask, CoxData, FanInput, SigmaComplex};
use crate::zlin::FgAbelianGroup;

/// Weighted projective space: `ℤ`-grading by `weights`, `Σ` all proper subsets.
pub fn weighted_projective(weights: &[i64]) -> CoxData {
    let n = weights.len();
    let ring = Arc::new(GradedRing::weighted(weights));
    let proper: Vec<u64> = (0..n).map(|i| full_mask(n) & !(1 << i)).collect();
    CoxData::new(ring, SigmaComplex::from_masks(n, &proper).expect("proper subsets")).expect("sizes match")
}

/// `ℙⁿ`.
pub fn projective(n: usize) -> CoxData {
    weighted_projective(&vec![1; n + 1])
}

pub fn p112() -> CoxData {
    weighted_projective(&[1, 1, 2])
}

/// `ℙ¹ × ℙ¹` with degrees `(1,0), (1,0), (0,1), (0,1)`.
pub fn p1xp1() -> CoxData {
    let g = FgAbelianGroup::free(2);
    let degrees = [[1, 0], [1, 0], [0, 1], [0, 1]]
        .iter()
        .map(|d| g.element_i64(d).expect("rank two"))
        .collect();
    let ring = Arc::new(GradedRing::with_degrees(g, degrees).expect("valid ring"));
    let sigma = SigmaComplex::new(4, &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]).expect("valid cones");
    CoxData::new(ring, sigma).expect("sizes match")
}

pub fn fan_121() -> FanInput {
    FanInput::from_rays(&[vec![1, 0], vec![0, 1], vec![-1, -2]], vec![vec![0, 1], vec![1, 2], vec![0, 2]])
        .expect("rays of equal length")
}

pub fn fan_p2() -> FanInput {
    FanInput::from_rays(&[vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]])
        .expect("rays of equal length")
}

/// The cone spanned by `(1,1), (1,−1)`: `G = ℤ/2`, a single maximal cone.
pub fn fan_affine_z2() -> FanInput {
    FanInput::from_rays(&[vec![1, 1], vec![1, -1]], vec![vec![0, 1]]).expect("rays of equal length")
}

pub fn weighted_121() -> CoxData {
    cox_from_fan(&fan_121()).expect("complete fan")
}

pub fn affine_z2() -> CoxData {
    cox_from_fan(&fan_affine_z2()).expect("full-dimensional cone")
}

/// `ℤ/2`-graded affine example built directly from degrees.
pub fn affine_z2_abstract() -> CoxData {
    let g = FgAbelianGroup::from_invariants(0, &[BigInt::from(2)]).expect("positive order");
    let one = g.element_i64(&[1]).expect("rank one");
    let ring = Arc::new(GradedRing::with_degrees(g, vec![one.clone(), one]).expect("valid ring"));
    CoxData::new(ring, SigmaComplex::new(2, &[vec![0, 1]]).expect("valid cone")).expect("sizes match")
}

/// The bundled corpus with short names.
pub fn corpus() -> Vec<(&'static str, CoxData)> {
    vec![
        ("p1", projective(1)),
        ("p2", projective(2)),
        ("p112", p112()),
        ("p1xp1", p1xp1()),
        ("fan121", weighted_121()),
        ("affine-z2", affine_z2()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::irrelevant_ideal;

    #[test]
    fn corpus_shapes() {
        let c = corpus();
        assert_eq!(c.len(), 6);
        assert!(irrelevant_ideal(&affine_z2()).is_unit());
        assert_eq!(affine_z2(), affine_z2_abstract());
        assert_eq!(irrelevant_ideal(&p1xp1()).generators().len(), 4);
    }
}
