//! Operation-count measurements and a least-squares fit of
//! `log(ops) = e · log(n) + c`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::adjoint::{adjoint, AdjointOptions, Strategy};
use crate::algebra::{Integers, OpCounts, PrimeField, Ring, SampleRing};
use crate::division_free::{adjoint_division_free, DivFreeOptions};
use crate::error::Result;
use crate::krylov::{det_with_retries, DetOptions};
use crate::matrix::Matrix;
use crate::minpoly::minpoly;

/// Random `n × n` matrix with entries drawn from `ring`.
pub fn random_matrix<R: SampleRing>(ring: &R, n: usize, seed: u64) -> Matrix<R::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(n, n, |_, _| ring.sample(&mut rng))
}

/// What to count in field mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    /// Det steps i–iv only (Krylov sequence, no minimum polynomial).
    KrylovSteps,
    Det,
    Adjoint,
}

/// Ring operations for one field-mode run on a random matrix over `GF(p)`.
pub fn count_field(p: u64, n: usize, seed: u64, op: FieldOp, strategy: Strategy) -> Result<OpCounts> {
    let f = PrimeField::new(p);
    let a = random_matrix(&f, n, seed);
    let counter = f.counter().clone();
    counter.reset();
    let opts = DetOptions {
        pow2_r: strategy == Strategy::Squaring,
    };
    let trace = det_with_retries(&f, &a, seed, 8, opts)?;
    match op {
        FieldOp::KrylovSteps => {
            let total = counter.snapshot();
            let before = counter.snapshot();
            minpoly(&f, &trace.h)?;
            // the sign multiplication that turns f(0) into det
            let _ = f.mul(&trace.det, &f.one());
            let euclid = counter.snapshot().since(&before);
            Ok(total.since(&euclid))
        }
        FieldOp::Det => Ok(counter.snapshot()),
        FieldOp::Adjoint => {
            adjoint(&f, &trace, AdjointOptions { strategy, ..Default::default() })?;
            Ok(counter.snapshot())
        }
    }
}

/// Ring operations for one division-free adjoint of a random integer matrix
/// with entries in `[-9, 9]`.
pub fn count_division_free(n: usize, seed: u64) -> Result<OpCounts> {
    let z = Integers::new();
    let a = random_matrix(&z, n, seed);
    z.counter().reset();
    adjoint_division_free(&z, &a, DivFreeOptions::default())?;
    Ok(z.counter().snapshot())
}

/// Fitted exponent `e`, or `None` with fewer than two distinct sizes.
pub fn fit_exponent(points: &[(usize, u64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, ops)| *n > 0 && *ops > 0)
        .map(|&(n, ops)| ((n as f64).ln(), (ops as f64).ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<_> = [4usize, 8, 16, 32].iter().map(|&n| (n, (n as u64).pow(3) * 7)).collect();
        assert!((fit_exponent(&pts).unwrap() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(fit_exponent(&[]), None);
        assert_eq!(fit_exponent(&[(8, 100)]), None);
        assert_eq!(fit_exponent(&[(8, 100), (8, 200)]), None);
    }
}
