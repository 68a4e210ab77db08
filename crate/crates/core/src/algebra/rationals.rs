use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{FromRational, OpCounter, Ring, SampleRing};
use crate::error::{Error, Result};

/// The field of rational numbers over arbitrary-precision integers.
#[derive(Debug, Clone, Default)]
pub struct Rationals {
    counter: Arc<OpCounter>,
}

impl Rationals {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn counter(&self) -> &Arc<OpCounter> {
        &self.counter
    }

    pub fn ratio(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Renders `p/q`, or just `p` for integers.
pub(crate) fn render_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_integer(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.counter.add();
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.counter.add();
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        self.counter.add();
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.counter.mul();
        a * b
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn equal(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }

    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }

    fn is_plus_minus_one(&self, a: &BigRational) -> bool {
        a.abs().is_one()
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::NotUnit("0".into()));
        }
        self.counter.div(self.is_plus_minus_one(a));
        Ok(a.recip())
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        if b.is_zero() {
            return Err(Error::NotUnit("0".into()));
        }
        self.counter.div(self.is_plus_minus_one(b));
        Ok(a / b)
    }

    fn is_field(&self) -> bool {
        true
    }

    fn render(&self, a: &BigRational) -> String {
        render_rational(a)
    }
}

impl SampleRing for Rationals {
    /// Small integers; projections and test matrices do not need fractions.
    fn sample(&self, rng: &mut dyn RngCore) -> BigRational {
        BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)))
    }
}

impl FromRational for Rationals {
    fn from_rational(&self, q: &BigRational) -> Result<BigRational> {
        Ok(q.clone())
    }
}
