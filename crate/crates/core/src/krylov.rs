//! Baby-steps/giant-steps determinant: the projected Krylov sequence
//! `h_k = u A^k v`, `0 <= k < 2n`, is assembled from `r` baby steps with `A`
//! and `s` giant steps with `B = A^r`, then its minimum polynomial `f` gives
//! `det A = (-1)^n f(0)`.
//!
//! Every intermediate value is kept in a [`DetTrace`] for the reverse pass.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{sign_elem, Poly, Ring, SampleRing};
use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::minpoly::minpoly;

/// Step counts: `s = ceil(sqrt n)` giant steps, `r = ceil(2n/s)` baby steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BsgsParams {
    pub n: usize,
    pub s: usize,
    pub r: usize,
}

impl BsgsParams {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        let mut s = (n as f64).sqrt().ceil() as usize;
        // guard against floating point rounding either way
        while s * s < n {
            s += 1;
        }
        while s > 1 && (s - 1) * (s - 1) >= n {
            s -= 1;
        }
        let r = (2 * n).div_ceil(s);
        Self { n, s, r }
    }

    /// Same `s`, with `r` rounded up to a power of two so that `B = A^r` comes
    /// out of a pure squaring chain.
    pub fn with_pow2_r(n: usize) -> Self {
        let p = Self::new(n);
        Self {
            r: p.r.next_power_of_two(),
            ..p
        }
    }

    pub fn r_is_power_of_two(&self) -> bool {
        self.r.is_power_of_two()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DetOptions {
    /// Round `r` up to a power of two (needed by the squaring form of the
    /// reverse power step).
    pub pow2_r: bool,
}

/// Everything Algorithm Det computed, in the order it computed it.
#[derive(Debug, Clone)]
pub struct DetTrace<E> {
    pub params: BsgsParams,
    pub a: Matrix<E>,
    pub u: Vec<E>,
    pub v: Vec<E>,
    /// `v_0 = v`, `v_i = A v_{i-1}` for `i < r`.
    pub v_list: Vec<Vec<E>>,
    /// `B = A^r`.
    pub b: Matrix<E>,
    /// `A, A^2, A^4, …, A^r` when `r` is a power of two.
    pub squaring_chain: Option<Vec<Matrix<E>>>,
    /// `u_0 = u`, `u_j = u_{j-1} B` for `j < s`.
    pub u_list: Vec<Vec<E>>,
    /// `h_{i+jr} = u_j · v_i` for `i + jr < 2n`.
    pub h: Vec<E>,
    pub f: Poly<E>,
    pub det: E,
}

impl<E: Clone> DetTrace<E> {
    pub fn n(&self) -> usize {
        self.params.n
    }
}

/// `A^r`, plus the chain `A^{2^k}` when `r` is a power of two. Other `r`
/// use square-and-multiply and return no chain.
pub fn matrix_power_chain<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
    r: usize,
) -> (Matrix<R::Elem>, Option<Vec<Matrix<R::Elem>>>) {
    assert!(r >= 1, "power must be positive");
    if r.is_power_of_two() {
        let mut chain = vec![a.clone()];
        for _ in 0..r.trailing_zeros() {
            let last = chain.last().unwrap();
            chain.push(last.mul(ring, last));
        }
        return (chain.last().unwrap().clone(), Some(chain));
    }
    let mut result: Option<Matrix<R::Elem>> = None;
    let mut base = a.clone();
    let mut e = r;
    loop {
        if e & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(m) => m.mul(ring, &base),
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = base.mul(ring, &base);
    }
    (result.unwrap(), None)
}

/// Runs Algorithm Det with fixed projections.
///
/// Fails with [`Error::DegenerateProjection`] when the sequence has a
/// generator of degree below `n`.
pub fn det_with_trace<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
    u: &[R::Elem],
    v: &[R::Elem],
    opts: DetOptions,
) -> Result<DetTrace<R::Elem>> {
    let n = a.rows();
    if n == 0 || !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a nonempty square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if u.len() != n || v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "projections of length {} and {} for n = {n}",
            u.len(),
            v.len()
        )));
    }
    let params = if opts.pow2_r {
        BsgsParams::with_pow2_r(n)
    } else {
        BsgsParams::new(n)
    };
    let BsgsParams { r, s, .. } = params;

    // step i
    let mut v_list = Vec::with_capacity(r);
    v_list.push(v.to_vec());
    for i in 1..r {
        let next = a.mul_vec(ring, &v_list[i - 1]);
        v_list.push(next);
    }

    // step ii
    let (b, squaring_chain) = matrix_power_chain(ring, a, r);

    // step iii
    let mut u_list = Vec::with_capacity(s);
    u_list.push(u.to_vec());
    for j in 1..s {
        let next = b.vec_mul(ring, &u_list[j - 1]);
        u_list.push(next);
    }

    // step iv
    let mut h = vec![ring.zero(); 2 * n];
    for (j, uj) in u_list.iter().enumerate() {
        for (i, vi) in v_list.iter().enumerate() {
            let k = i + j * r;
            if k < 2 * n {
                h[k] = dot(ring, uj, vi);
            }
        }
    }

    // step v
    let f = minpoly(ring, &h).map_err(|e| match e {
        Error::ShortRecurrence(degree) => Error::DegenerateProjection { degree, n },
        other => other,
    })?;
    let det = ring.mul(&sign_elem(ring, n), &f.coeff(ring, 0));

    Ok(DetTrace {
        params,
        a: a.clone(),
        u: u.to_vec(),
        v: v.to_vec(),
        v_list,
        b,
        squaring_chain,
        u_list,
        h,
        f,
        det,
    })
}

/// Uniformly random projections `(u, v)`.
pub fn choose_projections<R: SampleRing>(
    ring: &R,
    n: usize,
    rng: &mut dyn RngCore,
) -> (Vec<R::Elem>, Vec<R::Elem>) {
    let u = (0..n).map(|_| ring.sample(rng)).collect();
    let v = (0..n).map(|_| ring.sample(rng)).collect();
    (u, v)
}

pub fn choose_projections_seeded<R: SampleRing>(
    ring: &R,
    n: usize,
    seed: u64,
) -> (Vec<R::Elem>, Vec<R::Elem>) {
    choose_projections(ring, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Algorithm Det with random projections drawn from `seed`, retried up to
/// `retries` times on degenerate projections.
pub fn det_with_retries<R: SampleRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    seed: u64,
    retries: usize,
    opts: DetOptions,
) -> Result<DetTrace<R::Elem>> {
    det_with_retries_counted(ring, a, seed, retries, opts).map(|(t, _)| t)
}

/// As [`det_with_retries`], also returning how many projection pairs were
/// tried.
pub fn det_with_retries_counted<R: SampleRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    seed: u64,
    retries: usize,
    opts: DetOptions,
) -> Result<(DetTrace<R::Elem>, usize)> {
    let n = a.rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_degree = 0;
    for attempt in 1..=retries {
        let (u, v) = choose_projections(ring, n, &mut rng);
        match det_with_trace(ring, a, &u, &v, opts) {
            Err(Error::DegenerateProjection { degree, .. }) => last_degree = degree,
            other => return other.map(|t| (t, attempt)),
        }
    }
    Err(Error::RetriesExhausted {
        attempts: retries,
        last_degree,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use crate::oracle;

    #[test]
    fn params() {
        assert_eq!(BsgsParams::new(2), BsgsParams { n: 2, s: 2, r: 2 });
        assert_eq!(BsgsParams::new(1), BsgsParams { n: 1, s: 1, r: 2 });
        assert_eq!(BsgsParams::new(9), BsgsParams { n: 9, s: 3, r: 6 });
        assert_eq!(BsgsParams::new(10), BsgsParams { n: 10, s: 4, r: 5 });
        assert_eq!(BsgsParams::with_pow2_r(10).r, 8);
        for n in 1..200 {
            let p = BsgsParams::new(n);
            assert!(p.r * p.s >= 2 * n);
            assert!(p.s * p.s >= n && (p.s - 1) * (p.s - 1) < n);
        }
    }

    #[test]
    fn worked_instance() {
        let q = Rationals::new();
        let a = Matrix::from_i64(&q, &[vec![1, 2], vec![3, 4]]);
        let (u, v) = (vec![q.one(), q.zero()], vec![q.one(), q.zero()]);
        let t = det_with_trace(&q, &a, &u, &v, DetOptions::default()).unwrap();
        let expect: Vec<_> = [1, 1, 7, 37].iter().map(|&x| q.from_i64(x)).collect();
        assert_eq!(t.h, expect);
        assert_eq!(t.f.padded(&q, 3), vec![q.from_i64(-2), q.from_i64(-5), q.one()]);
        assert_eq!(t.det, q.from_i64(-2));
        assert_eq!(t.v_list.len(), 2);
        assert_eq!(t.u_list.len(), 2);
    }

    #[test]
    fn identity_is_degenerate() {
        let f = PrimeField::default();
        let a = Matrix::identity(&f, 3);
        let (u, v) = choose_projections_seeded(&f, 3, 5);
        assert!(matches!(
            det_with_trace(&f, &a, &u, &v, DetOptions::default()),
            Err(Error::DegenerateProjection { degree: 1, n: 3 })
        ));
        assert!(matches!(
            det_with_retries(&f, &a, 5, 8, DetOptions::default()),
            Err(Error::RetriesExhausted { attempts: 8, last_degree: 1, n: 3 })
        ));
    }

    #[test]
    fn power_chain() {
        let f = PrimeField::default();
        let a = Matrix::from_i64(&f, &[vec![1, 2], vec![3, 4]]);
        let (b, chain) = matrix_power_chain(&f, &a, 2);
        assert_eq!(b, Matrix::from_i64(&f, &[vec![7, 10], vec![15, 22]]));
        assert_eq!(chain.unwrap().len(), 2);
        let (b, chain) = matrix_power_chain(&f, &a, 1);
        assert_eq!(b, a);
        assert_eq!(chain.unwrap(), vec![a.clone()]);
        let (b5, chain) = matrix_power_chain(&f, &a, 5);
        assert!(chain.is_none());
        let mut direct = a.clone();
        for _ in 1..5 {
            direct = direct.mul(&f, &a);
        }
        assert_eq!(b5, direct);
        let i = Matrix::identity(&f, 3);
        assert_eq!(matrix_power_chain(&f, &i, 6).0, i);
    }

    #[test]
    fn seeded_projections_are_reproducible() {
        let f = PrimeField::default();
        assert_eq!(choose_projections_seeded(&f, 4, 9), choose_projections_seeded(&f, 4, 9));
        assert_ne!(choose_projections_seeded(&f, 4, 9), choose_projections_seeded(&f, 4, 10));
    }

    #[test]
    fn random_determinants_match_elimination() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=24 {
            let a = Matrix::from_fn(n, n, |_, _| f.sample(&mut rng));
            for pow2_r in [false, true] {
                let t = det_with_retries(&f, &a, n as u64, 8, DetOptions { pow2_r }).unwrap();
                assert_eq!(t.det, oracle::det_elimination(&f, &a).unwrap(), "n={n}");
                // the recurrence annihilates the sequence
                for k in 0..n {
                    let s = f.sum(
                        &(0..=n)
                            .map(|i| f.mul(&t.f.coeff(&f, i), &t.h[k + i]))
                            .collect::<Vec<_>>(),
                    );
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn trace_sequence_matches_direct_krylov() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=10 {
            let a = Matrix::from_fn(n, n, |_, _| f.sample(&mut rng));
            let t = det_with_retries(&f, &a, 1, 8, DetOptions::default()).unwrap();
            assert_eq!(t.h, oracle::krylov_sequence(&f, &a, &t.u, &t.v, 2 * n));
            let (_, verdict) = oracle::krylov_check(&f, &a, &t.u, &t.v).unwrap();
            assert!(verdict.holds());
        }
    }
}
