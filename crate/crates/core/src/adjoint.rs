//! Algorithm Adjoint: the reverse-mode derivative of Algorithm Det, written
//! out step by step against a stored [`DetTrace`].
//!
//! Layout: derivatives of row vectors are stored as columns and vice versa,
//! so `∂u_j` is `n × 1`, `∂v_i` is `1 × n`, and the accumulated `∂A` is the
//! adjoint `A*` itself (its transpose holds `∂det/∂a_ij`).

use std::thread;

use crate::algebra::Ring;
use crate::error::{Error, Result};
use crate::hankel::{sigma_sums, HankelPair};
use crate::krylov::DetTrace;
use crate::matrix::Matrix;

/// Which form of the reverse power step to use.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Squaring when `r` is a power of two, the sum otherwise.
    #[default]
    Auto,
    /// `Σ_{k=1..r} A^{r-k} ∂B A^{k-1}`.
    Sum,
    /// Reverse of the squaring chain; needs `r` a power of two.
    Squaring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdjointOptions {
    pub strategy: Strategy,
    /// Omit the `det` factor in step i*, producing `A^{-1}`.
    pub inverse: bool,
    /// Worker threads for the sum form of step iv*.
    pub threads: usize,
}

impl Default for AdjointOptions {
    fn default() -> Self {
        Self {
            strategy: Strategy::Auto,
            inverse: false,
            threads: 1,
        }
    }
}

/// Derivative accumulators of the reverse pass.
#[derive(Debug, Clone)]
pub struct AdjointState<E> {
    /// `r × s`, entry `(i, j)` is `∂/∂h_{i+jr}`.
    pub dh: Matrix<E>,
    /// `n × s`, column `j` is `∂u_j`.
    pub du: Matrix<E>,
    /// `r × n`, row `i` is `∂v_i`.
    pub dv: Matrix<E>,
    pub db: Matrix<E>,
    pub a_star: Matrix<E>,
}

impl<E: Clone> AdjointState<E> {
    pub fn zeroed<R: Ring<Elem = E>>(ring: &R, trace: &DetTrace<E>) -> Self {
        let p = trace.params;
        Self {
            dh: Matrix::zeros(ring, p.r, p.s),
            du: Matrix::zeros(ring, p.n, p.s),
            dv: Matrix::zeros(ring, p.r, p.n),
            db: Matrix::zeros(ring, p.n, p.n),
            a_star: Matrix::zeros(ring, p.n, p.n),
        }
    }
}

/// Checks that the trace carries every intermediate the reverse pass reads.
pub fn check_trace<E: Clone>(trace: &DetTrace<E>) -> Result<()> {
    let p = trace.params;
    let n = p.n;
    let bad = |what: &str| Err(Error::TraceIncomplete(what.to_string()));
    if trace.a.rows() != n || trace.a.cols() != n {
        return bad("matrix has the wrong shape");
    }
    if trace.v_list.len() != p.r || trace.v_list.iter().any(|v| v.len() != n) {
        return bad("baby-step vectors missing");
    }
    if trace.u_list.len() != p.s || trace.u_list.iter().any(|u| u.len() != n) {
        return bad("giant-step vectors missing");
    }
    if trace.b.rows() != n || trace.b.cols() != n {
        return bad("giant-step matrix missing");
    }
    if trace.h.len() != 2 * n {
        return bad("sequence truncated");
    }
    if trace.f.degree() != Some(n) {
        return bad("minimum polynomial missing");
    }
    Ok(())
}

/// Step i*: `∂/∂h_k = (σ_{k-1}(H_A^{-1}) - σ_k(H^{-1})) · det`.
pub fn step1_dh<R: Ring>(ring: &R, trace: &DetTrace<R::Elem>, inverse: bool) -> Result<Matrix<R::Elem>> {
    let p = trace.params;
    let n = p.n;
    let pair = HankelPair::from_sequence(ring, &trace.h)?;
    let (sig_h, sig_ha) = sigma_sums(ring, &pair.f, &pair.g, &pair.g_star, n);
    let mut dh = Matrix::zeros(ring, p.r, p.s);
    for j in 0..p.s {
        for i in 0..p.r {
            let k = i + j * p.r;
            if k >= 2 * n {
                continue;
            }
            let d = if k == 0 {
                ring.neg(&sig_h[0])
            } else {
                ring.sub(&sig_ha[k - 1], &sig_h[k])
            };
            dh.set(i, j, if inverse { d } else { ring.mul(&d, &trace.det) });
        }
    }
    Ok(dh)
}

/// Step ii*: `∂u_j = Σ_i v_i ∂h_{i+jr}` and `∂v_i = Σ_j ∂h_{i+jr} u_j`.
pub fn step2_outer<R: Ring>(
    ring: &R,
    trace: &DetTrace<R::Elem>,
    dh: &Matrix<R::Elem>,
) -> (Matrix<R::Elem>, Matrix<R::Elem>) {
    let vm = Matrix::from_rows(trace.v_list.clone()).transpose();
    let um = Matrix::from_rows(trace.u_list.clone());
    (vm.mul(ring, dh), dh.mul(ring, &um))
}

/// Step iii*: for `j = s-1..1`, `∂u_{j-1} += B ∂u_j` and `∂B += ∂u_j u_{j-1}`.
pub fn step3_giant_reverse<R: Ring>(ring: &R, trace: &DetTrace<R::Elem>, state: &mut AdjointState<R::Elem>) {
    let n = trace.n();
    for j in (1..trace.params.s).rev() {
        let duj = state.du.col(j);
        let prop = trace.b.mul_vec(ring, &duj);
        for (row, x) in prop.iter().enumerate() {
            let cur = state.du.get(row, j - 1).clone();
            state.du.set(row, j - 1, ring.add(&cur, x));
        }
        state.db.add_outer(ring, &duj, &trace.u_list[j - 1]);
        debug_assert_eq!(state.db.rows(), n);
    }
}

/// `Σ_{k=1..r} A^{r-k} X A^{k-1}` by Horner's rule:
/// `T_1 = X`, `T_m = A T_{m-1} + X A^{m-1}`.
pub fn power_sum<R: Ring>(ring: &R, a: &Matrix<R::Elem>, x: &Matrix<R::Elem>, r: usize) -> Matrix<R::Elem> {
    let mut t = x.clone();
    let mut y = x.clone();
    for _ in 1..r {
        y = y.mul(ring, a);
        t = a.mul(ring, &t).add(ring, &y);
    }
    t
}

/// The same sum with the `r` terms split across `threads` workers, each
/// reading shared powers of `A`. Partial sums are reduced in term order.
pub fn power_sum_threaded<R>(
    ring: &R,
    a: &Matrix<R::Elem>,
    x: &Matrix<R::Elem>,
    r: usize,
    threads: usize,
) -> Matrix<R::Elem>
where
    R: Ring + Sync,
    R::Elem: Send + Sync,
{
    if threads <= 1 || r <= 1 {
        return power_sum(ring, a, x, r);
    }
    let mut powers = vec![Matrix::identity(ring, a.rows()), a.clone()];
    while powers.len() < r {
        let next = powers.last().unwrap().mul(ring, a);
        powers.push(next);
    }
    let powers = &powers;
    let chunk = r.div_ceil(threads);
    let partials: Vec<Matrix<R::Elem>> = thread::scope(|sc| {
        let handles: Vec<_> = (1..=r)
            .step_by(chunk)
            .map(|lo| {
                let hi = (lo + chunk - 1).min(r);
                sc.spawn(move || {
                    let mut acc: Option<Matrix<R::Elem>> = None;
                    for k in lo..=hi {
                        let left = if r - k == 0 { x.clone() } else { powers[r - k].mul(ring, x) };
                        let term = if k == 1 { left } else { left.mul(ring, &powers[k - 1]) };
                        acc = Some(match acc {
                            None => term,
                            Some(m) => m.add(ring, &term),
                        });
                    }
                    acc.unwrap()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut it = partials.into_iter();
    let first = it.next().unwrap();
    it.fold(first, |acc, m| acc.add(ring, &m))
}

/// Reverse of the squaring chain `A_1 = A, A_2, A_4, …, A_r`:
/// `∂A_r = ∂B`, `∂A_{2^{k-1}} = A_{2^{k-1}} ∂A_{2^k} + ∂A_{2^k} A_{2^{k-1}}`.
pub fn squaring_reverse<R: Ring>(ring: &R, chain: &[Matrix<R::Elem>], db: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let mut d = db.clone();
    for m in chain[..chain.len() - 1].iter().rev() {
        d = m.mul(ring, &d).add(ring, &d.mul(ring, m));
    }
    d
}

fn resolve_strategy<E: Clone>(trace: &DetTrace<E>, strategy: Strategy) -> Result<Strategy> {
    match strategy {
        Strategy::Sum => Ok(Strategy::Sum),
        Strategy::Squaring if trace.squaring_chain.is_none() => Err(Error::TraceIncomplete(
            "squaring chain missing; run Det with r a power of two".into(),
        )),
        Strategy::Squaring => Ok(Strategy::Squaring),
        Strategy::Auto if trace.squaring_chain.is_some() => Ok(Strategy::Squaring),
        Strategy::Auto => Ok(Strategy::Sum),
    }
}

/// Step iv*: `∂A` contribution of `B = A^r`.
pub fn step4_power_reverse<R>(
    ring: &R,
    trace: &DetTrace<R::Elem>,
    db: &Matrix<R::Elem>,
    strategy: Strategy,
    threads: usize,
) -> Result<Matrix<R::Elem>>
where
    R: Ring + Sync,
    R::Elem: Send + Sync,
{
    Ok(match resolve_strategy(trace, strategy)? {
        Strategy::Squaring => squaring_reverse(ring, trace.squaring_chain.as_ref().unwrap(), db),
        _ => power_sum_threaded(ring, &trace.a, db, trace.params.r, threads),
    })
}

/// Step v*: for `i = r-1..1`, `∂v_{i-1} += ∂v_i A` and `A* += v_{i-1} ∂v_i`.
pub fn step5_baby_reverse<R: Ring>(ring: &R, trace: &DetTrace<R::Elem>, state: &mut AdjointState<R::Elem>) {
    for i in (1..trace.params.r).rev() {
        let dvi = state.dv.row(i).to_vec();
        let prop = trace.a.vec_mul(ring, &dvi);
        for (col, x) in prop.iter().enumerate() {
            let cur = state.dv.get(i - 1, col).clone();
            state.dv.set(i - 1, col, ring.add(&cur, x));
        }
        state.a_star.add_outer(ring, &trace.v_list[i - 1], &dvi);
    }
}

/// Runs steps i* through v* and returns the final state; `a_star` holds
/// `A*` (or `A^{-1}` with `opts.inverse`).
pub fn adjoint_state<R>(ring: &R, trace: &DetTrace<R::Elem>, opts: AdjointOptions) -> Result<AdjointState<R::Elem>>
where
    R: Ring + Sync,
    R::Elem: Send + Sync,
{
    check_trace(trace)?;
    if ring.is_zero(&trace.det) {
        return Err(Error::SingularInput);
    }
    let strategy = resolve_strategy(trace, opts.strategy)?;
    let mut state = AdjointState::zeroed(ring, trace);
    state.dh = step1_dh(ring, trace, opts.inverse)?;
    let (du, dv) = step2_outer(ring, trace, &state.dh);
    state.du = du;
    state.dv = dv;
    step3_giant_reverse(ring, trace, &mut state);
    state.a_star = step4_power_reverse(ring, trace, &state.db, strategy, opts.threads)?;
    step5_baby_reverse(ring, trace, &mut state);
    Ok(state)
}

/// Adjoint `A*` of the matrix Det was run on.
pub fn adjoint<R>(ring: &R, trace: &DetTrace<R::Elem>, opts: AdjointOptions) -> Result<Matrix<R::Elem>>
where
    R: Ring + Sync,
    R::Elem: Send + Sync,
{
    Ok(adjoint_state(ring, trace, opts)?.a_star)
}
