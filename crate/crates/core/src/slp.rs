//! Straight-line program recording and the reverse (Baur–Strassen) sweep.
//!
//! [`TapeRing`] wraps a base ring; every arithmetic operation performed
//! through it appends one instruction to a shared tape. Running Algorithm
//! Det over a `TapeRing` therefore records the algorithm itself, and the
//! reverse sweep over that tape yields every `∂det/∂a_ij` independently of
//! the hand-derived adjoint.
//!
//! Slots: the `n²` inputs occupy `-n²+1..=0` in row-major order, instruction
//! `i` (1-based) writes slot `i`.

use std::cell::RefCell;
use std::fmt::Write as _;
use std::rc::Rc;

use num_bigint::BigInt;

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::krylov::{det_with_trace, DetOptions};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instr<E> {
    Add(isize, isize),
    Sub(isize, isize),
    Mul(isize, isize),
    Div(isize, isize),
    Const(E),
}

/// A recorded program with its forward value log.
#[derive(Debug, Clone)]
pub struct SlpTape<E> {
    pub n: usize,
    /// Input values, slot `-n²+1+p` holds entry `p` in row-major order.
    pub inputs: Vec<E>,
    pub instrs: Vec<Instr<E>>,
    /// `values[i-1]` is the value of slot `i`.
    pub values: Vec<E>,
}

impl<E: Clone> SlpTape<E> {
    /// Number of instructions `L`.
    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    fn n2(&self) -> isize {
        (self.n * self.n) as isize
    }

    fn index(&self, slot: isize) -> usize {
        (slot + self.n2() - 1) as usize
    }

    pub fn value(&self, slot: isize) -> &E {
        if slot <= 0 {
            &self.inputs[self.index(slot)]
        } else {
            &self.values[slot as usize - 1]
        }
    }

    /// The program's result, `δ_L`.
    pub fn result(&self) -> &E {
        self.value(self.len() as isize)
    }
}

/// Element of a [`TapeRing`]: a slot and its value.
///
/// `live` marks values that depend on an input. A live value is never
/// reported as zero, even when it happens to vanish at the recorded point,
/// so zero-skipping shortcuts in the algorithms cannot drop a dependency
/// and the tape stays the generic program.
#[derive(Debug, Clone)]
pub struct Tracked<E> {
    pub slot: isize,
    pub value: E,
    pub live: bool,
}

/// Recording ring over `R`.
#[derive(Debug, Clone)]
pub struct TapeRing<R: Ring> {
    base: R,
    tape: Rc<RefCell<SlpTape<R::Elem>>>,
}

impl<R: Ring> TapeRing<R> {
    /// A fresh tape whose inputs are the entries of `a`.
    pub fn new(base: R, a: &Matrix<R::Elem>) -> (Self, Matrix<Tracked<R::Elem>>) {
        let n = a.rows();
        let n2 = (n * n) as isize;
        let tape = SlpTape {
            n,
            inputs: a.data().to_vec(),
            instrs: Vec::new(),
            values: Vec::new(),
        };
        let tracked = Matrix::from_fn(n, n, |i, j| Tracked {
            slot: (i * n + j) as isize - n2 + 1,
            value: a.get(i, j).clone(),
            live: true,
        });
        (
            Self {
                base,
                tape: Rc::new(RefCell::new(tape)),
            },
            tracked,
        )
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Snapshot of the tape recorded so far.
    pub fn tape(&self) -> SlpTape<R::Elem> {
        self.tape.borrow().clone()
    }

    fn push(&self, instr: Instr<R::Elem>, value: R::Elem, live: bool) -> Tracked<R::Elem> {
        let mut t = self.tape.borrow_mut();
        t.instrs.push(instr);
        t.values.push(value.clone());
        Tracked {
            slot: t.instrs.len() as isize,
            value,
            live,
        }
    }

    fn constant(&self, c: R::Elem) -> Tracked<R::Elem> {
        self.push(Instr::Const(c.clone()), c, false)
    }
}

impl<R: Ring> Ring for TapeRing<R> {
    type Elem = Tracked<R::Elem>;

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
        self.push(Instr::Add(a.slot, b.slot), self.base.add(&a.value, &b.value), a.live || b.live)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.push(Instr::Sub(a.slot, b.slot), self.base.sub(&a.value, &b.value), a.live || b.live)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let z = self.zero();
        self.sub(&z, a)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.push(Instr::Mul(a.slot, b.slot), self.base.mul(&a.value, &b.value), a.live || b.live)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        !a.live && self.base.is_zero(&a.value)
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.base.equal(&a.value, &b.value)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.base.is_unit(&a.value)
    }

    fn is_plus_minus_one(&self, a: &Self::Elem) -> bool {
        self.base.is_plus_minus_one(&a.value)
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        let one = self.one();
        self.div(&one, a)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        if b.live && self.base.is_zero(&b.value) {
            return Err(Error::DivisionInTapeAtZero(self.tape.borrow().len() + 1));
        }
        let v = self.base.div(&a.value, &b.value)?;
        Ok(self.push(Instr::Div(a.slot, b.slot), v, a.live || b.live))
    }

    fn is_field(&self) -> bool {
        self.base.is_field()
    }

    fn render(&self, a: &Self::Elem) -> String {
        self.base.render(&a.value)
    }
}

/// Records Algorithm Det on `a` with projections `u`, `v` (recorded as
/// constants). The tape ends at the instruction producing the determinant.
pub fn record_det<R: Ring + Clone>(
    base: &R,
    a: &Matrix<R::Elem>,
    u: &[R::Elem],
    v: &[R::Elem],
    opts: DetOptions,
) -> Result<SlpTape<R::Elem>> {
    let (ring, tracked) = TapeRing::new(base.clone(), a);
    let tu: Vec<_> = u.iter().map(|x| ring.constant(x.clone())).collect();
    let tv: Vec<_> = v.iter().map(|x| ring.constant(x.clone())).collect();
    let trace = det_with_trace(&ring, &tracked, &tu, &tv, opts)?;
    let mut tape = ring.tape();
    let last = trace.det.slot as usize;
    tape.instrs.truncate(last);
    tape.values.truncate(last);
    Ok(tape)
}

/// Gradient of the tape result with respect to its inputs.
#[derive(Debug, Clone)]
pub struct SweepOutput<E> {
    /// Entry `(i, j)` is `∂δ_L/∂a_ij`; its transpose is the adjoint.
    pub grads: Matrix<E>,
    /// Ring operations performed by the sweep.
    pub ops: u64,
    /// Tape length `L`.
    pub len: usize,
}

/// Reverse sweep from `∂δ_L/∂δ_L = 1` down to the inputs:
/// - `δ_i = δ_j ± δ_k`: `bar_j += bar_i`, `bar_k ±= bar_i`
/// - `δ_i = δ_j · δ_k`: `bar_j += bar_i δ_k`, `bar_k += bar_i δ_j`
/// - `δ_i = δ_j / δ_k`: `bar_j += bar_i/δ_k`, `bar_k -= (bar_i/δ_k) δ_i`
pub fn reverse_sweep<R: Ring>(ring: &R, tape: &SlpTape<R::Elem>) -> Result<SweepOutput<R::Elem>> {
    let n2 = tape.n * tape.n;
    let len = tape.len();
    let mut bar: Vec<Option<R::Elem>> = vec![None; n2 + len];
    let mut ops = 0u64;
    let idx = |slot: isize| tape.index(slot);
    if len > 0 {
        bar[idx(len as isize)] = Some(ring.one());
    }
    let accumulate = |bar: &mut Vec<Option<R::Elem>>, slot: isize, x: R::Elem, negate: bool, ops: &mut u64| {
        let k = idx(slot);
        *ops += 1;
        bar[k] = Some(match bar[k].take() {
            Some(acc) if negate => ring.sub(&acc, &x),
            Some(acc) => ring.add(&acc, &x),
            None if negate => ring.neg(&x),
            None => x,
        });
    };
    for i in (1..=len).rev() {
        let Some(bi) = bar[idx(i as isize)].clone() else {
            continue;
        };
        match &tape.instrs[i - 1] {
            Instr::Const(_) => {}
            Instr::Add(j, k) => {
                accumulate(&mut bar, *j, bi.clone(), false, &mut ops);
                accumulate(&mut bar, *k, bi, false, &mut ops);
            }
            Instr::Sub(j, k) => {
                accumulate(&mut bar, *j, bi.clone(), false, &mut ops);
                accumulate(&mut bar, *k, bi, true, &mut ops);
            }
            Instr::Mul(j, k) => {
                let dj = ring.mul(&bi, tape.value(*k));
                let dk = ring.mul(&bi, tape.value(*j));
                ops += 2;
                accumulate(&mut bar, *j, dj, false, &mut ops);
                accumulate(&mut bar, *k, dk, false, &mut ops);
            }
            Instr::Div(j, k) => {
                let dk = tape.value(*k);
                if ring.is_zero(dk) {
                    return Err(Error::DivisionInTapeAtZero(i));
                }
                let t = ring.div(&bi, dk)?;
                let tk = ring.mul(&t, tape.value(i as isize));
                ops += 2;
                accumulate(&mut bar, *j, t, false, &mut ops);
                accumulate(&mut bar, *k, tk, true, &mut ops);
            }
        }
    }
    debug_assert!(ops <= 5 * len as u64);
    let n = tape.n;
    let grads = Matrix::from_fn(n, n, |i, j| bar[i * n + j].clone().unwrap_or_else(|| ring.zero()));
    Ok(SweepOutput { grads, ops, len })
}

/// Re-executes the tape over another ring. `inputs` replace the input slots;
/// `lift` maps recorded constants. Returns the values of slots `1..=L`.
pub fn replay_with<S: Ring, E>(
    ring: &S,
    tape: &SlpTape<E>,
    inputs: &[S::Elem],
    lift: impl Fn(&E) -> S::Elem,
) -> Result<Vec<S::Elem>>
where
    E: Clone,
{
    let n2 = tape.n * tape.n;
    assert_eq!(inputs.len(), n2, "replay needs one value per input slot");
    let mut vals: Vec<S::Elem> = inputs.to_vec();
    vals.reserve(tape.len());
    let at = |vals: &Vec<S::Elem>, slot: isize| vals[(slot + n2 as isize - 1) as usize].clone();
    for (i, ins) in tape.instrs.iter().enumerate() {
        let v = match ins {
            Instr::Const(c) => lift(c),
            Instr::Add(j, k) => ring.add(&at(&vals, *j), &at(&vals, *k)),
            Instr::Sub(j, k) => ring.sub(&at(&vals, *j), &at(&vals, *k)),
            Instr::Mul(j, k) => ring.mul(&at(&vals, *j), &at(&vals, *k)),
            Instr::Div(j, k) => {
                let d = at(&vals, *k);
                if ring.is_zero(&d) {
                    return Err(Error::DivisionInTapeAtZero(i + 1));
                }
                ring.div(&at(&vals, *j), &d)?
            }
        };
        vals.push(v);
    }
    Ok(vals.split_off(n2))
}

/// Text form, one instruction per line: `i := j op k` or `i := const c`.
pub fn dump<R: Ring>(ring: &R, tape: &SlpTape<R::Elem>) -> String {
    let mut out = String::new();
    for (i, ins) in tape.instrs.iter().enumerate() {
        let i = i + 1;
        let _ = match ins {
            Instr::Const(c) => writeln!(out, "{i} := const {}", ring.render(c)),
            Instr::Add(j, k) => writeln!(out, "{i} := {j} + {k}"),
            Instr::Sub(j, k) => writeln!(out, "{i} := {j} - {k}"),
            Instr::Mul(j, k) => writeln!(out, "{i} := {j} * {k}"),
            Instr::Div(j, k) => writeln!(out, "{i} := {j} / {k}"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{DualRing, PrimeField, Rationals, SampleRing, Dual};
    use crate::krylov::choose_projections_seeded;
    use crate::oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn record<R: Ring + Clone + SampleRing>(ring: &R, a: &Matrix<R::Elem>, seed: u64) -> SlpTape<R::Elem> {
        let (u, v) = choose_projections_seeded(ring, a.rows(), seed);
        record_det(ring, a, &u, &v, DetOptions::default()).unwrap()
    }

    #[test]
    fn two_by_two() {
        let q = Rationals::new();
        let a = Matrix::from_i64(&q, &[vec![1, 2], vec![3, 4]]);
        let tape = record_det(&q, &a, &[q.one(), q.zero()], &[q.one(), q.zero()], DetOptions::default()).unwrap();
        assert_eq!(*tape.result(), q.from_i64(-2));
        let out = reverse_sweep(&q, &tape).unwrap();
        assert_eq!(out.grads.transpose(), Matrix::from_i64(&q, &[vec![4, -2], vec![-3, 1]]));
        assert!(out.ops <= 5 * out.len as u64);
    }

    #[test]
    fn one_by_one() {
        let f = PrimeField::default();
        let a = Matrix::from_i64(&f, &[vec![42]]);
        let tape = record(&f, &a, 1);
        assert_eq!(*tape.result(), 42);
        assert!(tape.len() < 64);
        let out = reverse_sweep(&f, &tape).unwrap();
        assert_eq!(out.grads, Matrix::from_i64(&f, &[vec![1]]));
    }

    #[test]
    fn replay_is_deterministic_and_reproduces_log() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = Matrix::from_fn(4, 4, |_, _| f.sample(&mut rng));
        let tape = record(&f, &a, 2);
        let r1 = replay_with(&f, &tape, &tape.inputs, |c| *c).unwrap();
        let r2 = replay_with(&f, &tape, &tape.inputs, |c| *c).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1, tape.values);
    }

    #[test]
    fn random_matches_cofactor() {
        let f = PrimeField::default();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let a = Matrix::from_fn(6, 6, |_, _| f.sample(&mut rng));
        let tape = record(&f, &a, 3);
        let out = reverse_sweep(&f, &tape).unwrap();
        assert_eq!(out.grads.transpose(), oracle::adjugate_cofactor(&f, &a).unwrap());
        assert!(out.ops <= 5 * out.len as u64);
    }

    #[test]
    fn division_rule_matches_dual_numbers() {
        let f = PrimeField::default();
        let d = DualRing::new(f.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for trial in 0..50 {
            let n = rng.gen_range(1..=5);
            let a = Matrix::from_fn(n, n, |_, _| f.sample(&mut rng));
            let tape = record(&f, &a, trial);
            assert!(tape.instrs.iter().any(|i| matches!(i, Instr::Div(..))));
            let grads = reverse_sweep(&f, &tape).unwrap().grads;
            let dir: Vec<u64> = (0..n * n).map(|_| f.sample(&mut rng)).collect();
            let inputs: Vec<Dual<u64>> = tape
                .inputs
                .iter()
                .zip(&dir)
                .map(|(x, e)| crate::algebra::dual_lift(*x, *e))
                .collect();
            let vals = replay_with(&d, &tape, &inputs, |c| d.constant(*c)).unwrap();
            let expect = f.sum(&grads.data().iter().zip(&dir).map(|(g, e)| f.mul(g, e)).collect::<Vec<_>>());
            assert_eq!(vals.last().unwrap().eps, expect, "trial {trial}");
        }
    }

    #[test]
    fn dump_format() {
        let f = PrimeField::default();
        let a = Matrix::from_i64(&f, &[vec![3]]);
        let tape = record(&f, &a, 1);
        let text = dump(&f, &tape);
        assert_eq!(text.lines().count(), tape.len());
        assert!(text.lines().any(|l| l.contains(":= const")));
        assert!(text.lines().any(|l| l.contains(" * ")));
    }
}
