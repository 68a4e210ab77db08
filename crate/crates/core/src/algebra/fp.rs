use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::{FromRational, OpCounter, Ring, SampleRing};
use crate::error::{Error, Result};

/// The prime field GF(p) with word-sized residues.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    counter: Arc<OpCounter>,
}

impl PrimeField {
    pub const DEFAULT_MODULUS: u64 = 10007;

    /// Panics unless `p` is a prime below 2^31 (products must fit in a u64).
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 31)).contains(&p), "modulus {p} out of range");
        assert!(is_prime(p), "modulus {p} is not prime");
        Self {
            p,
            counter: Arc::new(OpCounter::new()),
        }
    }

    /// `None` unless `p` is a prime below 2^31.
    pub fn try_new(p: u64) -> Option<Self> {
        ((2..(1 << 31)).contains(&p) && is_prime(p)).then(|| Self::new(p))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn counter(&self) -> &Arc<OpCounter> {
        &self.counter
    }

    /// Same field, fresh counter.
    pub fn fresh(&self) -> Self {
        Self::new(self.p)
    }

    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn inv_raw(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let (mut old_r, mut r) = (a as i64, self.p as i64);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        Some(old_s.rem_euclid(self.p as i64) as u64)
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MODULUS)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_integer(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    fn from_i64(&self, v: i64) -> u64 {
        self.elem(v)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.counter.add();
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        self.counter.add();
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        self.counter.add();
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.counter.mul();
        a * b % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn equal(&self, a: &u64, b: &u64) -> bool {
        a == b
    }

    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }

    fn is_plus_minus_one(&self, a: &u64) -> bool {
        *a == 1 || *a == self.p - 1
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        let r = self.inv_raw(*a).ok_or_else(|| Error::NotUnit("0".into()))?;
        self.counter.div(self.is_plus_minus_one(a));
        Ok(r)
    }

    fn div(&self, a: &u64, b: &u64) -> Result<u64> {
        let r = self.inv_raw(*b).ok_or_else(|| Error::NotUnit("0".into()))?;
        self.counter.div(self.is_plus_minus_one(b));
        Ok(a * r % self.p)
    }

    fn is_field(&self) -> bool {
        true
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl SampleRing for PrimeField {
    fn sample(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
}

impl FromRational for PrimeField {
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let num = self.from_integer(q.numer());
        let den = self.from_integer(q.denom());
        let den_inv = self
            .inv_raw(den)
            .ok_or_else(|| Error::NotUnit(format!("{} mod {}", q.denom(), self.p)))?;
        Ok(num * den_inv % self.p)
    }
}
