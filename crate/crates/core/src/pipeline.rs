//! Field-mode entry points: random projections with retries, then Det and
//! optionally the adjoint pass.

use crate::adjoint::{adjoint, AdjointOptions, Strategy};
use crate::algebra::SampleRing;
use crate::error::Result;
use crate::krylov::{det_with_retries, DetOptions, DetTrace};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldOptions {
    pub seed: u64,
    pub retries: usize,
    pub strategy: Strategy,
    pub threads: usize,
}

impl Default for FieldOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            retries: 8,
            strategy: Strategy::Auto,
            threads: 1,
        }
    }
}

fn trace<R: SampleRing>(ring: &R, a: &Matrix<R::Elem>, opts: &FieldOptions) -> Result<DetTrace<R::Elem>> {
    let det_opts = DetOptions {
        pow2_r: opts.strategy == Strategy::Squaring,
    };
    det_with_retries(ring, a, opts.seed, opts.retries, det_opts)
}

pub fn field_determinant<R: SampleRing>(ring: &R, a: &Matrix<R::Elem>, opts: FieldOptions) -> Result<R::Elem> {
    Ok(trace(ring, a, &opts)?.det)
}

fn adjoint_or_inverse<R>(ring: &R, a: &Matrix<R::Elem>, opts: FieldOptions, inverse: bool) -> Result<(R::Elem, Matrix<R::Elem>)>
where
    R: SampleRing + Sync,
    R::Elem: Send + Sync,
{
    let t = trace(ring, a, &opts)?;
    let m = adjoint(
        ring,
        &t,
        AdjointOptions {
            strategy: opts.strategy,
            inverse,
            threads: opts.threads,
        },
    )?;
    Ok((t.det, m))
}

/// `(det A, A*)`.
pub fn field_adjoint<R>(ring: &R, a: &Matrix<R::Elem>, opts: FieldOptions) -> Result<(R::Elem, Matrix<R::Elem>)>
where
    R: SampleRing + Sync,
    R::Elem: Send + Sync,
{
    adjoint_or_inverse(ring, a, opts, false)
}

/// `(det A, A^{-1})`.
pub fn field_inverse<R>(ring: &R, a: &Matrix<R::Elem>, opts: FieldOptions) -> Result<(R::Elem, Matrix<R::Elem>)>
where
    R: SampleRing + Sync,
    R::Elem: Send + Sync,
{
    adjoint_or_inverse(ring, a, opts, true)
}
