//! Structured inverses of `H = (h_{i+j})` and `H_A = (h_{i+j+1})` and the
//! anti-diagonal sums of those inverses, from `f` (the minimum polynomial)
//! and the last columns `g`, `g*`.
//!
//! With `L_p` the upper-left triangular Hankel matrix with first row
//! `(p_1, …, p_{n-1}, p_n)` and `R_p` the upper triangular Toeplitz matrix
//! with first row `(p_0, …, p_{n-1})`:
//!
//! ```text
//! H^{-1}   = L_f R_g  - L_g R_f
//! H_A^{-1} = L_f R_g* - L_g* R_f
//! ```
//!
//! The anti-diagonal sums `σ_k` need only four truncated products each:
//! `f'g - g'f mod x^n` gives `σ_0..σ_{n-1}`, and the same expression on the
//! reversals `x^n f(1/x)`, `x^n g(1/x)` gives `σ_{2n-2}` down to `σ_{n-1}`.

use crate::algebra::{Poly, Ring};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::minpoly::minpoly_and_g;

/// A Hankel sequence with its minimum polynomial and the last columns of
/// `H^{-1}` and `H_A^{-1}`.
#[derive(Debug, Clone)]
pub struct HankelPair<E> {
    pub h: Vec<E>,
    pub f: Poly<E>,
    pub g: Poly<E>,
    pub g_star: Poly<E>,
}

impl<E: Clone> HankelPair<E> {
    pub fn n(&self) -> usize {
        self.h.len() / 2
    }

    /// Builds the pair from `h_0..h_{2n-1}`.
    pub fn from_sequence<R: Ring<Elem = E>>(ring: &R, h: &[E]) -> Result<Self> {
        let n = h.len() / 2;
        let (f, g) = minpoly_and_g(ring, h)?;
        let g_star = gstar_from_g(ring, &f, &g, n)?;
        Ok(Self {
            h: h.to_vec(),
            f,
            g,
            g_star,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    H,
    HA,
}

/// Last column of `H_A^{-1}`:
/// `g*_i = -(g_0/f_0) f_{i+1} + g_{i+1}` with `f_n = 1`, `g_n = 0`.
pub fn gstar_from_g<R: Ring>(
    ring: &R,
    f: &Poly<R::Elem>,
    g: &Poly<R::Elem>,
    n: usize,
) -> Result<Poly<R::Elem>> {
    let f0 = f.coeff(ring, 0);
    if !ring.is_unit(&f0) {
        return Err(Error::NonUnitF0);
    }
    let c = ring.neg(&ring.div(&g.coeff(ring, 0), &f0)?);
    let coeffs = (0..n)
        .map(|i| {
            let t = ring.mul(&c, &f.coeff(ring, i + 1));
            if i + 1 < n {
                ring.add(&t, &g.coeff(ring, i + 1))
            } else {
                t
            }
        })
        .collect();
    Ok(Poly::new(ring, coeffs))
}

/// `p'q - q'p mod x^n`, padded to `n` coefficients.
fn wronskian_low<R: Ring>(ring: &R, p: &Poly<R::Elem>, q: &Poly<R::Elem>, n: usize) -> Vec<R::Elem> {
    let a = p.derivative(ring).mul_trunc(ring, q, n);
    let b = q.derivative(ring).mul_trunc(ring, p, n);
    a.sub(ring, &b).padded(ring, n)
}

/// `x^n p(1/x)` for `p` of degree at most `n`.
fn rev<R: Ring>(ring: &R, p: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
    p.reversed(ring, n + 1)
}

/// `σ_0..σ_{2n-1}` of the inverse whose last column is `col` (`g` for `H`,
/// `g*` for `H_A`).
fn sigma_of<R: Ring>(ring: &R, f: &Poly<R::Elem>, col: &Poly<R::Elem>, n: usize) -> Vec<R::Elem> {
    let mut sig = vec![ring.zero(); 2 * n];
    for (k, s) in wronskian_low(ring, f, col, n).into_iter().enumerate() {
        sig[k] = s;
    }
    let high = wronskian_low(ring, &rev(ring, col, n), &rev(ring, f, n), n);
    for (k, s) in high.into_iter().enumerate() {
        sig[2 * n - 2 - k] = s;
    }
    sig
}

/// Anti-diagonal sums `σ_k(H^{-1})` and `σ_k(H_A^{-1})` for `0 <= k < 2n`;
/// `σ_{2n-1}` is the empty sum.
pub fn sigma_sums<R: Ring>(
    ring: &R,
    f: &Poly<R::Elem>,
    g: &Poly<R::Elem>,
    g_star: &Poly<R::Elem>,
    n: usize,
) -> (Vec<R::Elem>, Vec<R::Elem>) {
    (sigma_of(ring, f, g, n), sigma_of(ring, f, g_star, n))
}

/// `σ_k(M) = Σ_{i+j=k} m_ij` (zero-based), `0 <= k < 2n`.
pub fn antidiagonal_sums<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let n = m.rows();
    let mut sig = vec![ring.zero(); 2 * n];
    for i in 0..n {
        for j in 0..n {
            sig[i + j] = ring.add(&sig[i + j], m.get(i, j));
        }
    }
    sig
}

fn triangular_hankel<R: Ring>(ring: &R, first_row: &[R::Elem]) -> Matrix<R::Elem> {
    let n = first_row.len();
    Matrix::from_fn(n, n, |i, j| {
        if i + j < n {
            first_row[i + j].clone()
        } else {
            ring.zero()
        }
    })
}

fn triangular_toeplitz<R: Ring>(ring: &R, first_row: &[R::Elem]) -> Matrix<R::Elem> {
    let n = first_row.len();
    Matrix::from_fn(n, n, |i, j| {
        if j >= i {
            first_row[j - i].clone()
        } else {
            ring.zero()
        }
    })
}

/// Full `H^{-1}` or `H_A^{-1}` assembled from the pair.
pub fn hankel_inverse_structured<R: Ring>(
    ring: &R,
    pair: &HankelPair<R::Elem>,
    which: HankelKind,
) -> Matrix<R::Elem> {
    let n = pair.n();
    let col = match which {
        HankelKind::H => &pair.g,
        HankelKind::HA => &pair.g_star,
    };
    let shifted = |p: &Poly<R::Elem>| (1..=n).map(|i| p.coeff(ring, i)).collect::<Vec<_>>();
    let l_f = triangular_hankel(ring, &shifted(&pair.f));
    let l_c = triangular_hankel(ring, &shifted(col));
    let r_c = triangular_toeplitz(ring, &col.padded(ring, n));
    let r_f = triangular_toeplitz(ring, &pair.f.padded(ring, n));
    l_f.mul(ring, &r_c).sub(ring, &l_c.mul(ring, &r_f))
}

/// Companion matrix of a monic `f`: ones on the subdiagonal, last column
/// `-(f_0, …, f_{n-1})`.
pub fn companion<R: Ring>(ring: &R, f: &Poly<R::Elem>) -> Matrix<R::Elem> {
    let n = f.degree().unwrap_or(0);
    Matrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            ring.neg(&f.coeff(ring, i))
        } else if i == j + 1 {
            ring.one()
        } else {
            ring.zero()
        }
    })
}
