//! Minimum polynomial of a linearly generated sequence, and the last column
//! of the inverse of its Hankel matrix, from one extended Euclidean run on
//! `a = x^{2n}` and `b = h_0 x^{2n-1} + h_1 x^{2n-2} + … + h_{2n-1}`.
//!
//! With `s·a + t·b = c`, the coefficients of degree `n..2n-1` of `t·b` are
//! rows of Hankel systems in `t`:
//! - at the first remainder of degree `< n`, `t` annihilates the sequence,
//!   so its monic associate is the minimum polynomial `f`;
//! - at a remainder of degree exactly `n`, `H·t = lc(c)·e_n`, so
//!   `g = t / lc(c)` is the last column of `H^{-1}`.
//!
//! When no remainder of degree `n` occurs but `H` is nonsingular, `g` falls
//! back to Gaussian elimination (fields only).

use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};
use crate::matrix::{solve, Matrix};

/// One row of the extended Euclidean scheme: `s·a + t·b = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EuclidStep<E> {
    pub c: Poly<E>,
    pub s: Poly<E>,
    pub t: Poly<E>,
}

fn euclid<R: Ring>(
    ring: &R,
    a: Poly<R::Elem>,
    b: Poly<R::Elem>,
    stop_below: usize,
    with_s: bool,
) -> Result<Vec<EuclidStep<R::Elem>>> {
    let below = |p: &Poly<R::Elem>| p.degree().is_none_or(|d| d < stop_below);
    let mut steps = vec![
        EuclidStep {
            c: a,
            s: Poly::constant(ring, ring.one()),
            t: Poly::zero(),
        },
        EuclidStep {
            c: b,
            s: Poly::zero(),
            t: Poly::constant(ring, ring.one()),
        },
    ];
    if below(&steps[0].c) {
        steps.pop();
        return Ok(steps);
    }
    while !below(&steps[steps.len() - 1].c) {
        let (prev, cur) = (&steps[steps.len() - 2], &steps[steps.len() - 1]);
        let (q, r) = prev.c.divrem(ring, &cur.c)?;
        let s = if with_s {
            prev.s.sub(ring, &q.mul(ring, &cur.s))
        } else {
            Poly::zero()
        };
        let t = prev.t.sub(ring, &q.mul(ring, &cur.t));
        steps.push(EuclidStep { c: r, s, t });
    }
    Ok(steps)
}

/// Full extended Euclidean scheme on `(a, b)`, up to and including the first
/// remainder of degree below `stop_below`. The first two steps are `a` and
/// `b` themselves.
pub fn extended_euclid<R: Ring>(
    ring: &R,
    a: &Poly<R::Elem>,
    b: &Poly<R::Elem>,
    stop_below: usize,
) -> Result<Vec<EuclidStep<R::Elem>>> {
    euclid(ring, a.clone(), b.clone(), stop_below, true)
}

/// `Σ_k h_k x^{len-1-k}`.
pub fn sequence_poly<R: Ring>(ring: &R, h: &[R::Elem]) -> Poly<R::Elem> {
    Poly::new(ring, h.iter().rev().cloned().collect())
}

fn half_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "sequence length {len} is not a positive even number"
        )));
    }
    Ok(len / 2)
}

fn f_from_steps<R: Ring>(ring: &R, steps: &[EuclidStep<R::Elem>], n: usize) -> Result<Poly<R::Elem>> {
    let t = &steps.last().unwrap().t;
    let d = t.degree().unwrap_or(0);
    if d < n {
        return Err(Error::ShortRecurrence(d));
    }
    let lc_inv = ring.inv(t.leading().unwrap())?;
    Ok(t.scale(ring, &lc_inv))
}

fn g_from_steps<R: Ring>(
    ring: &R,
    steps: &[EuclidStep<R::Elem>],
    n: usize,
) -> Result<Option<Poly<R::Elem>>> {
    match steps[1..].iter().find(|st| st.c.degree() == Some(n)) {
        Some(st) => {
            let lc_inv = ring.inv(st.c.leading().unwrap())?;
            Ok(Some(st.t.scale(ring, &lc_inv)))
        }
        None => Ok(None),
    }
}

fn g_by_elimination<R: Ring>(ring: &R, h: &[R::Elem], n: usize) -> Result<Poly<R::Elem>> {
    if !ring.is_field() {
        return Err(Error::SingularHankel);
    }
    let hm = Matrix::from_fn(n, n, |i, j| h[i + j].clone());
    let mut e = vec![ring.zero(); n];
    e[n - 1] = ring.one();
    match solve(ring, &hm, &e)? {
        Some(g) => Ok(Poly::new(ring, g)),
        None => Err(Error::SingularHankel),
    }
}

/// Monic minimum polynomial of degree `n` of `h_0..h_{2n-1}`.
pub fn minpoly<R: Ring>(ring: &R, h: &[R::Elem]) -> Result<Poly<R::Elem>> {
    let n = half_len(h.len())?;
    let steps = euclid(ring, Poly::monomial(ring, 2 * n), sequence_poly(ring, h), n, false)?;
    f_from_steps(ring, &steps, n)
}

/// Minimum polynomial `f` and last column `g` of `H^{-1}` from a single
/// Euclidean run.
pub fn minpoly_and_g<R: Ring>(ring: &R, h: &[R::Elem]) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
    let n = half_len(h.len())?;
    let steps = euclid(ring, Poly::monomial(ring, 2 * n), sequence_poly(ring, h), n, false)?;
    let f = f_from_steps(ring, &steps, n)?;
    let g = match g_from_steps(ring, &steps, n)? {
        Some(g) => g,
        None => g_by_elimination(ring, h, n)?,
    };
    Ok((f, g))
}

/// Last column of `H^{-1}` for the `n×n` Hankel matrix of `h_0..h_{2n-2}`.
pub fn hankel_last_column_g<R: Ring>(ring: &R, h: &[R::Elem]) -> Result<Poly<R::Elem>> {
    if h.len() % 2 == 0 {
        return Err(Error::DimensionMismatch(format!(
            "expected 2n-1 Hankel entries, got {}",
            h.len()
        )));
    }
    let n = h.len().div_ceil(2);
    let mut padded = h.to_vec();
    padded.push(ring.zero());
    let steps = euclid(ring, Poly::monomial(ring, 2 * n), sequence_poly(ring, &padded), n, false)?;
    match g_from_steps(ring, &steps, n)? {
        Some(g) => Ok(g),
        None => g_by_elimination(ring, &padded, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Integers, PrimeField, Rationals, SampleRing};
    use crate::oracle;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q_seq(q: &Rationals, h: &[i64]) -> Vec<num_rational::BigRational> {
        h.iter().map(|&v| q.from_i64(v)).collect()
    }

    fn q_poly(q: &Rationals, c: &[i64]) -> Poly<num_rational::BigRational> {
        Poly::new(q, q_seq(q, c))
    }

    #[test]
    fn worked_instance() {
        let q = Rationals::new();
        let f = minpoly(&q, &q_seq(&q, &[1, 1, 7, 37])).unwrap();
        assert_eq!(f, q_poly(&q, &[-2, -5, 1]));
    }

    #[test]
    fn catalan_prefix() {
        let q = Rationals::new();
        let f = minpoly(&q, &q_seq(&q, &[1, 1, 2, 5])).unwrap();
        assert_eq!(f, q_poly(&q, &[1, -3, 1]));
    }

    #[test]
    fn geometric_sequence_is_short() {
        let q = Rationals::new();
        assert_eq!(
            minpoly(&q, &q_seq(&q, &[1, 1, 1, 1])),
            Err(Error::ShortRecurrence(1))
        );
    }

    #[test]
    fn last_column_examples() {
        let q = Rationals::new();
        let g = hankel_last_column_g(&q, &q_seq(&q, &[1, 1, 2])).unwrap();
        assert_eq!(g.padded(&q, 2), q_seq(&q, &[-1, 1]));
        let g = hankel_last_column_g(&q, &q_seq(&q, &[1, 0, 1])).unwrap();
        assert_eq!(g.padded(&q, 2), q_seq(&q, &[0, 1]));
        let g = hankel_last_column_g(&q, &q_seq(&q, &[1, 1, 7])).unwrap();
        assert_eq!(g.padded(&q, 2), vec![q.ratio(-1, 6), q.ratio(1, 6)]);
    }

    #[test]
    fn fallback_when_leading_minor_vanishes() {
        // H = [[0,1],[1,1]]: leading 1x1 minor is zero, H itself invertible.
        let q = Rationals::new();
        let h = q_seq(&q, &[0, 1, 1, 0]);
        let (f, g) = minpoly_and_g(&q, &h).unwrap();
        assert_eq!(f, q_poly(&q, &[1, -1, 1]));
        let hm = oracle::hankel_from::<Rationals>(&h, 2, 0);
        assert_eq!(hm.mul_vec(&q, &g.padded(&q, 2)), q_seq(&q, &[0, 1]));
    }

    #[test]
    fn singular_hankel_over_field() {
        let q = Rationals::new();
        assert_eq!(
            hankel_last_column_g(&q, &q_seq(&q, &[1, 1, 1])),
            Err(Error::SingularHankel)
        );
    }

    #[test]
    fn bezout_identity_holds_at_every_step() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=8 {
            let h: Vec<u64> = (0..2 * n).map(|_| f.sample(&mut rng)).collect();
            let a = Poly::monomial(&f, 2 * n);
            let b = sequence_poly(&f, &h);
            let steps = extended_euclid(&f, &a, &b, n).unwrap();
            for st in &steps {
                let lhs = st.s.mul(&f, &a).add(&f, &st.t.mul(&f, &b));
                assert!(lhs.equal(&f, &st.c));
            }
            for w in steps.windows(2) {
                assert!(w[1].c.degree() < w[0].c.degree());
            }
        }
    }

    #[test]
    fn catalan_scheme_is_normal_with_unit_leading_coefficients() {
        let z = Integers::new();
        for n in 1..=10 {
            let h = crate::division_free::catalan(2 * n);
            let a = Poly::monomial(&z, 2 * n);
            let b = sequence_poly(&z, &h);
            let steps = extended_euclid(&z, &a, &b, n).unwrap();
            // a, b, then one remainder for each degree 2n-2 down to n-1
            assert_eq!(steps.len(), n + 2);
            for (i, st) in steps.iter().enumerate() {
                assert_eq!(st.c.degree(), Some(2 * n - i), "n={n} step {i}");
                if st.c.degree().unwrap() >= n {
                    assert!(z.is_plus_minus_one(st.c.leading().unwrap()), "n={n} step {i}");
                }
            }
        }
    }
}
