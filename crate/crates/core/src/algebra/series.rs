use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use super::{Poly, Ring};
use crate::error::{Error, Result};

/// Power series truncated at a fixed order: always `order + 1` coefficients,
/// arithmetic modulo `z^(order+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries<E> {
    coeffs: Vec<E>,
}

impl<E: Clone> TruncatedSeries<E> {
    /// Zero-pads or cuts `coeffs` to `order + 1` entries.
    pub fn new<R: Ring<Elem = E>>(base: &R, mut coeffs: Vec<E>, order: usize) -> Self {
        coeffs.resize(order + 1, base.zero());
        Self { coeffs }
    }

    pub fn constant<R: Ring<Elem = E>>(base: &R, c: E, order: usize) -> Self {
        Self::new(base, vec![c], order)
    }

    pub fn from_poly<R: Ring<Elem = E>>(base: &R, p: &Poly<E>, order: usize) -> Self {
        Self::new(base, p.coeffs().to_vec(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &E {
        &self.coeffs[0]
    }

    pub fn to_poly<R: Ring<Elem = E>>(&self, base: &R) -> Poly<E> {
        Poly::new(base, self.coeffs.clone())
    }

    pub fn eval_at_one<R: Ring<Elem = E>>(&self, base: &R) -> E {
        base.sum(&self.coeffs)
    }

    /// Index of the last nonzero coefficient.
    fn effective_len<R: Ring<Elem = E>>(&self, base: &R) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| !base.is_zero(c))
            .map_or(0, |i| i + 1)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn checked_add<R: Ring<Elem = E>>(&self, base: &R, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(add_series(base, self, other))
    }

    pub fn checked_mul<R: Ring<Elem = E>>(&self, base: &R, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(mul_series(base, self, other))
    }
}

fn add_series<R: Ring>(
    base: &R,
    a: &TruncatedSeries<R::Elem>,
    b: &TruncatedSeries<R::Elem>,
) -> TruncatedSeries<R::Elem> {
    let coeffs = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| {
            if base.is_zero(y) {
                x.clone()
            } else if base.is_zero(x) {
                y.clone()
            } else {
                base.add(x, y)
            }
        })
        .collect();
    TruncatedSeries { coeffs }
}

fn mul_series<R: Ring>(
    base: &R,
    a: &TruncatedSeries<R::Elem>,
    b: &TruncatedSeries<R::Elem>,
) -> TruncatedSeries<R::Elem> {
    let len = a.coeffs.len();
    let la = a.effective_len(base);
    let lb = b.effective_len(base);
    let mut out: Vec<Option<R::Elem>> = vec![None; len];
    for (i, x) in a.coeffs[..la].iter().enumerate() {
        if base.is_zero(x) {
            continue;
        }
        for (j, y) in b.coeffs[..lb.min(len - i)].iter().enumerate() {
            if base.is_zero(y) {
                continue;
            }
            let p = base.mul(x, y);
            out[i + j] = Some(match out[i + j].take() {
                Some(acc) => base.add(&acc, &p),
                None => p,
            });
        }
    }
    TruncatedSeries {
        coeffs: out
            .into_iter()
            .map(|c| c.unwrap_or_else(|| base.zero()))
            .collect(),
    }
}

/// Inverse of a series with unit constant term, by the recurrence
/// `t_k = -c0^{-1} Σ_{i=1..k} s_i t_{k-i}`. The only base-ring division is
/// the inversion of the constant term.
pub fn series_inv<R: Ring>(
    base: &R,
    s: &TruncatedSeries<R::Elem>,
) -> Result<TruncatedSeries<R::Elem>> {
    let c0 = s.constant_term();
    if !base.is_unit(c0) {
        return Err(Error::NonUnitConstantTerm(base.render(c0)));
    }
    let c0_inv = base.inv(c0)?;
    let neg_c0_inv = base.neg(&c0_inv);
    let len = s.coeffs.len();
    let ls = s.effective_len(base);
    let mut out = Vec::with_capacity(len);
    out.push(c0_inv);
    for k in 1..len {
        let mut acc: Option<R::Elem> = None;
        for i in 1..=k.min(ls.saturating_sub(1)) {
            if base.is_zero(&s.coeffs[i]) || base.is_zero(&out[k - i]) {
                continue;
            }
            let p = base.mul(&s.coeffs[i], &out[k - i]);
            acc = Some(match acc {
                Some(a) => base.add(&a, &p),
                None => p,
            });
        }
        out.push(match acc {
            Some(a) => base.mul(&neg_c0_inv, &a),
            None => base.zero(),
        });
    }
    Ok(TruncatedSeries { coeffs: out })
}

/// One series inversion observed by the division guard.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardEvent {
    pub constant_term: String,
    pub plus_minus_one: bool,
}

/// Shared log of series inversions.
pub type GuardLog = Arc<Mutex<Vec<GuardEvent>>>;

/// Truncated power series over a base ring as a ring in its own right.
///
/// All elements of one `SeriesRing` share its order; the [`Ring`] methods
/// panic on mismatched orders, the `checked_*` methods on
/// [`TruncatedSeries`] return [`Error::OrderMismatch`].
#[derive(Debug, Clone)]
pub struct SeriesRing<R> {
    base: R,
    order: usize,
    guard: Option<GuardLog>,
}

impl<R: Ring> SeriesRing<R> {
    pub fn new(base: R, order: usize) -> Self {
        Self {
            base,
            order,
            guard: None,
        }
    }

    /// Records every inversion's constant term into `log`.
    pub fn with_guard(mut self, log: GuardLog) -> Self {
        self.guard = Some(log);
        self
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn series(&self, coeffs: Vec<R::Elem>) -> TruncatedSeries<R::Elem> {
        TruncatedSeries::new(&self.base, coeffs, self.order)
    }

    pub fn constant(&self, c: R::Elem) -> TruncatedSeries<R::Elem> {
        TruncatedSeries::constant(&self.base, c, self.order)
    }

    pub fn eval_at_one(&self, s: &TruncatedSeries<R::Elem>) -> R::Elem {
        s.eval_at_one(&self.base)
    }

    fn assert_order(&self, s: &TruncatedSeries<R::Elem>) {
        assert_eq!(
            s.order(),
            self.order,
            "series of order {} used in ring of order {}",
            s.order(),
            self.order
        );
    }
}

impl<R: Ring> Ring for SeriesRing<R> {
    type Elem = TruncatedSeries<R::Elem>;

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
        self.assert_order(a);
        self.assert_order(b);
        add_series(&self.base, a, b)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.assert_order(a);
        self.assert_order(b);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| {
                if self.base.is_zero(y) {
                    x.clone()
                } else if self.base.is_zero(x) {
                    self.base.neg(y)
                } else {
                    self.base.sub(x, y)
                }
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let coeffs = a
            .coeffs
            .iter()
            .map(|x| {
                if self.base.is_zero(x) {
                    x.clone()
                } else {
                    self.base.neg(x)
                }
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.assert_order(a);
        self.assert_order(b);
        mul_series(&self.base, a, b)
    }

    fn mul_i64(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let k = self.base.from_i64(k);
        let coeffs = a
            .coeffs
            .iter()
            .map(|x| {
                if self.base.is_zero(x) {
                    x.clone()
                } else {
                    self.base.mul(x, &k)
                }
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.order() == b.order()
            && a.coeffs
                .iter()
                .zip(&b.coeffs)
                .all(|(x, y)| self.base.equal(x, y))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.base.is_unit(a.constant_term())
    }

    fn is_plus_minus_one(&self, a: &Self::Elem) -> bool {
        self.base.is_plus_minus_one(a.constant_term())
            && a.coeffs[1..].iter().all(|c| self.base.is_zero(c))
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.assert_order(a);
        if let Some(log) = &self.guard {
            log.lock().unwrap().push(GuardEvent {
                constant_term: self.base.render(a.constant_term()),
                plus_minus_one: self.base.is_plus_minus_one(a.constant_term()),
            });
        }
        series_inv(&self.base, a)
    }

    fn is_field(&self) -> bool {
        false
    }

    fn render(&self, a: &Self::Elem) -> String {
        let parts: Vec<String> = a.coeffs.iter().map(|c| self.base.render(c)).collect();
        format!("[{}]", parts.join(", "))
    }
}
