use num_bigint::BigInt;
use rand::RngCore;

use super::{Ring, SampleRing};
use crate::error::{Error, Result};

/// `re + eps·ε` with `ε² = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual<E> {
    pub re: E,
    pub eps: E,
}

/// Dual numbers over a base ring; evaluating a program over them yields a
/// directional derivative alongside the value.
#[derive(Debug, Clone)]
pub struct DualRing<R> {
    base: R,
}

impl<R: Ring> DualRing<R> {
    pub fn new(base: R) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn constant(&self, a: R::Elem) -> Dual<R::Elem> {
        Dual {
            re: a,
            eps: self.base.zero(),
        }
    }
}

/// `a + ε·direction`.
pub fn dual_lift<E>(a: E, direction: E) -> Dual<E> {
    Dual {
        re: a,
        eps: direction,
    }
}

impl<R: Ring> Ring for DualRing<R> {
    type Elem = Dual<R::Elem>;

    fn zero(&self) -> Self::Elem {
        self.constant(self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_integer(&self, v: &BigInt) -> Self::Elem {
        self.constant(self.base.from_integer(v))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            re: self.base.add(&a.re, &b.re),
            eps: self.base.add(&a.eps, &b.eps),
        }
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            re: self.base.sub(&a.re, &b.re),
            eps: self.base.sub(&a.eps, &b.eps),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Dual {
            re: self.base.neg(&a.re),
            eps: self.base.neg(&a.eps),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let cross = self.base.add(
            &self.base.mul(&a.re, &b.eps),
            &self.base.mul(&a.eps, &b.re),
        );
        Dual {
            re: self.base.mul(&a.re, &b.re),
            eps: cross,
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.re) && self.base.is_zero(&a.eps)
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.base.equal(&a.re, &b.re) && self.base.equal(&a.eps, &b.eps)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.base.is_unit(&a.re)
    }

    fn is_plus_minus_one(&self, a: &Self::Elem) -> bool {
        self.base.is_plus_minus_one(&a.re) && self.base.is_zero(&a.eps)
    }

    // (a + εb)^{-1} = a^{-1} - ε b a^{-2}
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let re_inv = self
            .base
            .inv(&a.re)
            .map_err(|_| Error::NotUnit(self.render(a)))?;
        let t = self.base.mul(&a.eps, &re_inv);
        let eps = self.base.neg(&self.base.mul(&t, &re_inv));
        Ok(Dual { re: re_inv, eps })
    }

    fn is_field(&self) -> bool {
        false
    }

    fn render(&self, a: &Self::Elem) -> String {
        format!("{}+{}e", self.base.render(&a.re), self.base.render(&a.eps))
    }
}

impl<R: SampleRing> SampleRing for DualRing<R> {
    fn sample(&self, rng: &mut dyn RngCore) -> Self::Elem {
        Dual {
            re: self.base.sample(rng),
            eps: self.base.sample(rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    #[test]
    fn lift_and_leibniz() {
        let d = DualRing::new(PrimeField::default());
        let x = dual_lift(5u64, 1u64);
        assert_eq!(x, Dual { re: 5, eps: 1 });
        let prod = d.mul(&dual_lift(2, 1), &d.from_i64(3));
        assert_eq!(prod, Dual { re: 6, eps: 3 });
    }

    #[test]
    fn inverse_of_unit_dual() {
        let d = DualRing::new(PrimeField::default());
        let x = dual_lift(7u64, 11u64);
        let xi = d.inv(&x).unwrap();
        assert!(d.equal(&d.mul(&x, &xi), &d.one()));
        assert!(d.inv(&dual_lift(0, 1)).is_err());
    }
}
