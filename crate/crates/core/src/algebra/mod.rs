//! Commutative rings, dense polynomials, truncated power series and
//! operation counters.
//!
//! Elements do not carry their own arithmetic. Every operation goes through a
//! ring object implementing [`Ring`], which lets a ring hold context (a
//! modulus, a truncation order, an operation counter, a recording tape)
//! without threading it through each value.

mod counter;
mod dual;
mod fp;
mod integers;
mod poly;
mod rationals;
mod series;

pub use counter::{OpCounter, OpCounts};
pub use dual::{dual_lift, Dual, DualRing};
pub use fp::PrimeField;
pub use integers::Integers;
pub use poly::Poly;
pub use rationals::Rationals;
pub use series::{series_inv, GuardEvent, GuardLog, SeriesRing, TruncatedSeries};

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::RngCore;

use crate::error::Result;

/// A commutative ring with identity.
///
/// `inv` and `div` only succeed on units. Implementations that count
/// operations tally `add`/`sub`/`neg` as additions, `mul` as multiplications,
/// and `inv`/`div` as divisions (split by whether the divisor is ±1).
pub trait Ring {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_integer(&self, v: &BigInt) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// True for exactly `1` and `-1`. Never counted as an operation.
    fn is_plus_minus_one(&self, a: &Self::Elem) -> bool;

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let b_inv = self.inv(b)?;
        Ok(self.mul(a, &b_inv))
    }

    /// Exact division `a / b` when `b` divides `a`, even if `b` is not a unit.
    /// Used by fraction-free elimination.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.div(a, b)
    }

    /// Whether every nonzero element is a unit.
    fn is_field(&self) -> bool;

    fn render(&self, a: &Self::Elem) -> String;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(v))
    }

    fn mul_i64(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let k = self.from_i64(k);
        self.mul(a, &k)
    }

    /// Sum of a slice, `zero` when empty.
    fn sum(&self, items: &[Self::Elem]) -> Self::Elem {
        let mut it = items.iter();
        match it.next() {
            None => self.zero(),
            Some(first) => it.fold(first.clone(), |acc, x| self.add(&acc, x)),
        }
    }
}

/// Rings whose elements can be drawn at random (projections, test inputs).
pub trait SampleRing: Ring {
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem;
}

/// Rings that can embed an exact rational number (matrix file entries).
pub trait FromRational: Ring {
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
}

/// `(-1)^k` as a ring element.
pub(crate) fn sign_elem<R: Ring>(ring: &R, k: usize) -> R::Elem {
    if k.is_multiple_of(2) {
        ring.one()
    } else {
        ring.from_i64(-1)
    }
}
