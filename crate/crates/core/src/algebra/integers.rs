use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{FromRational, OpCounter, Ring, SampleRing};
use crate::error::{Error, Result};

/// Arbitrary-precision integers. The only units are ±1.
#[derive(Debug, Clone, Default)]
pub struct Integers {
    counter: Arc<OpCounter>,
    sample_bound: i64,
}

impl Integers {
    pub fn new() -> Self {
        Self {
            counter: Arc::new(OpCounter::new()),
            sample_bound: 9,
        }
    }

    /// Samples are drawn uniformly from `[-bound, bound]`.
    pub fn with_sample_bound(bound: i64) -> Self {
        Self {
            sample_bound: bound,
            ..Self::new()
        }
    }

    pub fn counter(&self) -> &Arc<OpCounter> {
        &self.counter
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_integer(&self, v: &BigInt) -> BigInt {
        v.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.counter.add();
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.counter.add();
        a - b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        self.counter.add();
        -a
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.counter.mul();
        a * b
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn equal(&self, a: &BigInt, b: &BigInt) -> bool {
        a == b
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }

    fn is_plus_minus_one(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }

    fn inv(&self, a: &BigInt) -> Result<BigInt> {
        if !self.is_unit(a) {
            return Err(Error::NotUnit(a.to_string()));
        }
        self.counter.div(true);
        Ok(a.clone())
    }

    fn div(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        if !self.is_unit(b) {
            return Err(Error::NotUnit(b.to_string()));
        }
        self.counter.div(true);
        Ok(a * b)
    }

    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Result<BigInt> {
        if b.is_zero() {
            return Err(Error::NotUnit("0".into()));
        }
        let (q, r) = a.div_rem(b);
        if !r.is_zero() {
            return Err(Error::NotUnit(format!("{b} does not divide {a}")));
        }
        self.counter.div(b.abs().is_one());
        Ok(q)
    }

    fn is_field(&self) -> bool {
        false
    }

    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl SampleRing for Integers {
    fn sample(&self, rng: &mut dyn RngCore) -> BigInt {
        BigInt::from(rng.gen_range(-self.sample_bound..=self.sample_bound))
    }
}

impl FromRational for Integers {
    fn from_rational(&self, q: &BigRational) -> Result<BigInt> {
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::NotUnit(format!("{q} is not an integer")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_plus_minus_one_invert() {
        let z = Integers::new();
        assert_eq!(z.inv(&BigInt::from(-1)).unwrap(), BigInt::from(-1));
        assert!(z.inv(&BigInt::from(2)).is_err());
        assert_eq!(z.counter().snapshot().divs, 0);
    }

    #[test]
    fn exact_division() {
        let z = Integers::new();
        assert_eq!(
            z.div_exact(&BigInt::from(12), &BigInt::from(-4)).unwrap(),
            BigInt::from(-3)
        );
        assert!(z.div_exact(&BigInt::from(7), &BigInt::from(2)).is_err());
    }
}
