use super::Ring;
use crate::error::{Error, Result};

/// Dense univariate polynomial, lowest degree first, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> Poly<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::new(ring, vec![c])
    }

    /// `x^k`.
    pub fn monomial<R: Ring<Elem = E>>(ring: &R, k: usize) -> Self {
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = ring.one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    /// Exactly `len` coefficients, zero-padded or cut.
    pub fn padded<R: Ring<Elem = E>>(&self, ring: &R, len: usize) -> Vec<E> {
        (0..len).map(|i| self.coeff(ring, i)).collect()
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => ring.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(ring, coeffs)
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => ring.sub(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => ring.neg(b),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(ring, coeffs)
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        Self::new(ring, self.coeffs.iter().map(|c| ring.neg(c)).collect())
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        Self::new(ring, self.coeffs.iter().map(|a| ring.mul(a, c)).collect())
    }

    /// Schoolbook product.
    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.mul_trunc(ring, other, usize::MAX)
    }

    /// Product modulo `x^len`.
    pub fn mul_trunc<R: Ring<Elem = E>>(&self, ring: &R, other: &Self, len: usize) -> Self {
        if self.is_zero() || other.is_zero() || len == 0 {
            return Self::zero();
        }
        let full = self.coeffs.len() + other.coeffs.len() - 1;
        let out_len = full.min(len);
        let mut out: Vec<Option<E>> = vec![None; out_len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= out_len {
                break;
            }
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(out_len - i) {
                if ring.is_zero(b) {
                    continue;
                }
                let p = ring.mul(a, b);
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => ring.add(&acc, &p),
                    None => p,
                });
            }
        }
        Self::new(
            ring,
            out.into_iter()
                .map(|c| c.unwrap_or_else(|| ring.zero()))
                .collect(),
        )
    }

    /// Reduction modulo `x^len`.
    pub fn truncate<R: Ring<Elem = E>>(&self, ring: &R, len: usize) -> Self {
        Self::new(ring, self.coeffs.iter().take(len).cloned().collect())
    }

    /// Formal derivative.
    pub fn derivative<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                if k == 1 {
                    c.clone()
                } else {
                    ring.mul_i64(c, k as i64)
                }
            })
            .collect();
        Self::new(ring, coeffs)
    }

    /// Sum of the coefficients.
    pub fn eval_at_one<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        ring.sum(&self.coeffs)
    }

    pub fn eval<R: Ring<Elem = E>>(&self, ring: &R, x: &E) -> E {
        let mut acc = ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = ring.add(&ring.mul(&acc, x), c);
        }
        acc
    }

    /// Coefficients `c_0..c_{len-1}` reversed: `x^{len-1} p(1/x)`.
    pub fn reversed<R: Ring<Elem = E>>(&self, ring: &R, len: usize) -> Self {
        let mut c = self.padded(ring, len);
        c.reverse();
        Self::new(ring, c)
    }

    /// Euclidean division by a divisor with unit leading coefficient.
    pub fn divrem<R: Ring<Elem = E>>(&self, ring: &R, divisor: &Self) -> Result<(Self, Self)> {
        let d = divisor
            .degree()
            .ok_or_else(|| Error::NotUnit("zero polynomial".into()))?;
        let lead_inv = ring.inv(divisor.leading().unwrap())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((Self::zero(), self.clone()));
        }
        let qlen = rem.len() - d;
        let mut quot = vec![ring.zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + d];
            if ring.is_zero(top) {
                continue;
            }
            let q = ring.mul(top, &lead_inv);
            for (i, dc) in divisor.coeffs.iter().enumerate().take(d) {
                if ring.is_zero(dc) {
                    continue;
                }
                rem[k + i] = ring.sub(&rem[k + i], &ring.mul(&q, dc));
            }
            rem[k + d] = ring.zero();
            quot[k] = q;
        }
        rem.truncate(d);
        Ok((Self::new(ring, quot), Self::new(ring, rem)))
    }

    pub fn equal<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| ring.equal(a, b))
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| ring.render(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}
