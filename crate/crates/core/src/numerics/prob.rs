//! Probability vectors, stable softmax, and divergence-based similarity.

use serde::{Deserialize, Serialize};

use super::Real;
use crate::error::Error;

/// Discrete distribution: non-negative entries summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProbabilityVector<T>(Vec<T>);

impl<T: Real> ProbabilityVector<T> {
    /// Validates the simplex invariants (sum within `1e-9` of one, no
    /// negative entries).
    pub fn new(values: Vec<T>) -> Result<Self, Error> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Numeric("non-finite probability entry".into()));
        }
        if values.iter().any(|v| *v < T::zero()) {
            return Err(Error::Validation("negative probability entry".into()));
        }
        let sum: T = values.iter().copied().sum();
        if (sum - T::one()).abs() > T::of(1e-9) {
            return Err(Error::Validation(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest entry.
    pub fn max_value(&self) -> T {
        self.0.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Index of the largest entry; first index wins ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.0.iter().enumerate().skip(1) {
            if *v > self.0[best] {
                best = i;
            }
        }
        best
    }
}

/// Max-subtracted stable softmax.
pub fn softmax<T: Real>(logits: &[T]) -> Result<ProbabilityVector<T>, Error> {
    if logits.is_empty() {
        return Err(Error::Argument("softmax of empty vector".into()));
    }
    if logits.iter().any(|v| v.is_nan()) {
        return Err(Error::Numeric("NaN logit".into()));
    }
    let max = logits.iter().copied().fold(logits[0], |a, b| if b > a { b } else { a });
    let exps: Vec<T> = logits.iter().map(|v| (*v - max).exp()).collect();
    let sum: T = exps.iter().copied().sum();
    Ok(ProbabilityVector(exps.into_iter().map(|e| e / sum).collect()))
}

/// Shannon entropy in nats.
pub fn entropy<T: Real>(p: &ProbabilityVector<T>) -> T {
    p.values()
        .iter()
        .map(|&v| if v > T::zero() { -v * v.ln() } else { T::zero() })
        .sum()
}

fn kl_base2<T: Real>(p: &[T], m: &[T]) -> T {
    let ln2 = T::of(2.0).ln();
    p.iter()
        .zip(m)
        .map(|(&pi, &mi)| {
            if pi > T::zero() {
                pi * (pi / mi).ln() / ln2
            } else {
                T::zero()
            }
        })
        .sum()
}

/// Jensen-Shannon similarity with base-2 logarithms:
/// `1 - (KL(p||m) + KL(q||m)) / 2` with `m = (p + q) / 2`, so the result
/// lands in `[0, 1]` with 1 for identical distributions.
pub fn js_similarity<T: Real>(
    p: &ProbabilityVector<T>,
    q: &ProbabilityVector<T>,
) -> Result<T, Error> {
    if p.len() != q.len() {
        return Err(Error::Argument(format!(
            "dimension mismatch: {} vs {}",
            p.len(),
            q.len()
        )));
    }
    let half = T::of(0.5);
    let m: Vec<T> = p
        .values()
        .iter()
        .zip(q.values())
        .map(|(&a, &b)| half * (a + b))
        .collect();
    let d = half * (kl_base2(p.values(), &m) + kl_base2(q.values(), &m));
    let sim = T::one() - d;
    // guard against round-off spilling outside [0, 1]
    Ok(sim.max(T::zero()).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::SeedStream;
    use rand::Rng;

    #[test]
    fn softmax_symmetry() {
        let p = softmax(&[0.0f64, 0.0]).unwrap();
        assert_eq!(p.values(), &[0.5, 0.5]);
    }

    #[test]
    fn softmax_saturates_without_overflow() {
        let p = softmax(&[1000.0f64, 0.0]).unwrap();
        assert!((p.values()[0] - 1.0).abs() < 1e-12);
        assert!(p.values()[1] < 1e-12);
    }

    #[test]
    fn softmax_closed_form_ratio() {
        let p = softmax(&[2.0f64.ln(), 0.0]).unwrap();
        assert!((p.values()[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((p.values()[1] - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn softmax_rejects_nan() {
        assert!(softmax(&[f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn softmax_output_is_valid_distribution() {
        for seed in 0..50u64 {
            let mut rng = SeedStream::new(seed).rng("logits");
            let n = 2 + (seed as usize % 6);
            let logits: Vec<f64> = (0..n).map(|_| rng.gen_range(-30.0..30.0)).collect();
            let p = softmax(&logits).unwrap();
            assert!(ProbabilityVector::new(p.values().to_vec()).is_ok());
        }
    }

    #[test]
    fn js_identical_is_one() {
        let p = softmax(&[0.3f64, -1.0, 2.0]).unwrap();
        assert_eq!(js_similarity(&p, &p).unwrap(), 1.0);
    }

    #[test]
    fn js_disjoint_is_zero() {
        let p = ProbabilityVector::new(vec![1.0f64, 0.0]).unwrap();
        let q = ProbabilityVector::new(vec![0.0f64, 1.0]).unwrap();
        assert_eq!(js_similarity(&p, &q).unwrap(), 0.0);
    }

    #[test]
    fn js_hand_evaluated_case() {
        // p = [1/2, 1/2], q = [1, 0]; base-2 KL terms give 1 - 0.31128 = 0.68872
        let p = ProbabilityVector::new(vec![0.5f64, 0.5]).unwrap();
        let q = ProbabilityVector::new(vec![1.0f64, 0.0]).unwrap();
        let sim = js_similarity(&p, &q).unwrap();
        assert!((sim - 0.6887).abs() < 5e-5, "got {sim}");
    }

    #[test]
    fn js_symmetric() {
        for seed in 0..100u64 {
            let mut rng = SeedStream::new(seed).rng("js");
            let n = 2 + (seed as usize % 5);
            let a: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let b: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let p = softmax(&a).unwrap();
            let q = softmax(&b).unwrap();
            let pq = js_similarity(&p, &q).unwrap();
            let qp = js_similarity(&q, &p).unwrap();
            assert!((pq - qp).abs() <= 1e-12);
            assert!((0.0..=1.0).contains(&pq));
        }
    }

    #[test]
    fn js_dimension_mismatch() {
        let p = ProbabilityVector::new(vec![1.0f64]).unwrap();
        let q = ProbabilityVector::new(vec![0.5f64, 0.5]).unwrap();
        assert!(js_similarity(&p, &q).is_err());
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5f64, 0.5]).is_ok());
        assert!(ProbabilityVector::new(vec![0.6f64, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![-0.1f64, 1.1]).is_err());
    }
}
