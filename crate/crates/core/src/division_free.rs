//! Adjoint over a commutative ring without divisions.
//!
//! Det and the reverse pass run on `Z(z) = C + z(A - C)` over series
//! truncated at `z^{n+1}`, where `(C, φ, ψ)` is a fixed integer seed whose
//! Krylov sequence is the Catalan numbers. Every Hankel leading minor of that
//! sequence is 1, so every series inversion on the way has constant term ±1
//! and never needs a base-ring division. `Z(1) = A`, so evaluating the
//! result at `z = 1` gives `A*`.
//!
//! The reverse power step is evaluated lazily: each entry `b` of `∂B` is
//! split into its top `r-1` coefficients `b_H` and the sum `b_L` of the rest,
//! the `b_L` part is summed directly over the base ring, and the `b_H` part
//! only modulo `z^{r-1}`.

use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::adjoint::{
    check_trace, power_sum, power_sum_threaded, step1_dh, step2_outer, step3_giant_reverse, step5_baby_reverse,
    AdjointOptions, AdjointState,
};
use crate::algebra::{GuardEvent, GuardLog, Integers, Poly, Ring, SeriesRing, TruncatedSeries};
use crate::error::{Error, Result};
use crate::hankel::companion;
use crate::krylov::{det_with_trace, DetOptions, DetTrace};
use crate::matrix::Matrix;
use crate::minpoly::minpoly;
use crate::oracle::{det_bareiss, hankel_from, krylov_sequence};

/// `c_0..c_{len-1}`.
pub fn catalan(len: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigInt::from(1);
    for k in 0..len {
        out.push(c.clone());
        c = c * BigInt::from(2 * (2 * k + 1)) / BigInt::from(k + 2);
    }
    out
}

/// Integer seed `(C, φ, ψ)` and its sequence `h_k = φ C^k ψ`, `k < 2n`.
#[derive(Debug, Clone)]
pub struct StrassenSetup {
    pub n: usize,
    pub c: Matrix<BigInt>,
    pub phi: Vec<BigInt>,
    pub psi: Vec<BigInt>,
    pub h_seed: Vec<BigInt>,
}

impl StrassenSetup {
    /// A seed taken as given, without checking it.
    pub fn custom(c: Matrix<BigInt>, phi: Vec<BigInt>, psi: Vec<BigInt>) -> Self {
        let z = Integers::new();
        let n = c.rows();
        let h_seed = krylov_sequence(&z, &c, &phi, &psi, 2 * n);
        Self {
            n,
            c,
            phi,
            psi,
            h_seed,
        }
    }

    /// The seed mapped into `ring`.
    pub fn embed<R: Ring>(&self, ring: &R) -> (Matrix<R::Elem>, Vec<R::Elem>, Vec<R::Elem>) {
        (
            self.c.map(|x| ring.from_integer(x)),
            self.phi.iter().map(|x| ring.from_integer(x)).collect(),
            self.psi.iter().map(|x| ring.from_integer(x)).collect(),
        )
    }
}

/// Determinants of the leading principal `k × k` blocks, `k = 1..=n`.
fn leading_minors(z: &Integers, m: &Matrix<BigInt>) -> Result<Vec<BigInt>> {
    (1..=m.rows())
        .map(|k| det_bareiss(z, &Matrix::from_fn(k, k, |i, j| m.get(i, j).clone())))
        .collect()
}

/// Catalan seed: `h = c_0..c_{2n-1}`, `C` the companion matrix of its
/// minimum polynomial, `φ = (c_0..c_{n-1})`, `ψ = e_1`.
pub fn default_setup(n: usize) -> Result<StrassenSetup> {
    if n == 0 {
        return Err(Error::SetupInvariantViolation("dimension must be positive".into()));
    }
    let z = Integers::new();
    let h = catalan(2 * n);
    let violation = |what: String| Error::SetupInvariantViolation(what);
    for (name, shift) in [("H", 0), ("H_A", 1)] {
        let m = hankel_from::<Integers>(&h, n, shift);
        for (k, d) in leading_minors(&z, &m)?.iter().enumerate() {
            if !z.is_plus_minus_one(d) {
                return Err(violation(format!("leading {}x{} minor of {name} is {d}", k + 1, k + 1)));
            }
        }
    }
    let f = minpoly(&z, &h).map_err(|e| violation(format!("seed minimum polynomial: {e}")))?;
    if f.degree() != Some(n) {
        return Err(violation(format!("seed minimum polynomial has degree {:?}", f.degree())));
    }
    let c = companion(&z, &f);
    let phi = h[..n].to_vec();
    let mut psi = vec![BigInt::from(0); n];
    psi[0] = BigInt::from(1);
    let setup = StrassenSetup::custom(c, phi, psi);
    if setup.h_seed != h {
        return Err(violation("seed does not reproduce the Catalan sequence".into()));
    }
    Ok(setup)
}

/// Top/bottom split of a series entry for the lazy power step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazySplit<E> {
    /// `b_{n-r+2} + b_{n-r+3} z + … + b_n z^{r-2}`.
    pub b_h: Poly<E>,
    /// `b_0 + … + b_{n-r+1}`.
    pub b_l: E,
}

impl<E: Clone> LazySplit<E> {
    pub fn of<R: Ring<Elem = E>>(base: &R, b: &TruncatedSeries<E>, r: usize) -> Result<Self> {
        let n = b.order();
        if r < 2 || r > n + 2 {
            return Err(Error::DegreeContractViolation(format!(
                "split needs 2 <= r <= n + 2, got r = {r}, n = {n}"
            )));
        }
        let cut = n + 2 - r;
        Ok(Self {
            b_h: Poly::new(base, b.coeffs()[cut..].to_vec()),
            b_l: base.sum(&b.coeffs()[..cut]),
        })
    }
}

fn check_linear<R: Ring>(base: &R, z: &Matrix<TruncatedSeries<R::Elem>>) -> Result<()> {
    for s in z.data() {
        if s.coeffs().iter().skip(2).any(|c| !base.is_zero(c)) {
            return Err(Error::DegreeContractViolation(
                "entries of Z(z) must have degree at most 1".into(),
            ));
        }
    }
    Ok(())
}

fn sum_maybe_threaded<R>(ring: &R, a: &Matrix<R::Elem>, x: &Matrix<R::Elem>, r: usize, threads: usize) -> Matrix<R::Elem>
where
    R: Ring + Sync,
    R::Elem: Send + Sync,
{
    if threads > 1 {
        power_sum_threaded(ring, a, x, r, threads)
    } else {
        power_sum(ring, a, x, r)
    }
}

/// Lazily evaluated `(Σ_{k=1..r} Z^{r-k} ∂B Z^{k-1} mod z^{n+1})(1)`:
/// the `∂B_H` sum modulo `z^{r-1}` plus the `∂B_L` sum over the base ring.
pub fn lazy_step4<R>(
    series: &SeriesRing<R>,
    z: &Matrix<TruncatedSeries<R::Elem>>,
    db: &Matrix<TruncatedSeries<R::Elem>>,
    r: usize,
    threads: usize,
) -> Result<Matrix<R::Elem>>
where
    R: Ring + Clone + Sync,
    R::Elem: Send + Sync,
{
    let base = series.base();
    let n = series.order();
    check_linear(base, z)?;
    if db.data().iter().any(|s| s.order() != n) {
        return Err(Error::DegreeContractViolation(format!(
            "∂B entries must be series of order {n}"
        )));
    }
    if n + 2 < r {
        return Err(Error::DegreeContractViolation(format!("need n >= r - 2, got n = {n}, r = {r}")));
    }
    let splits = db.try_map(|b| LazySplit::of(base, b, r))?;

    let a = z.map(|s| s.eval_at_one(base));
    let db_l = splits.map(|s| s.b_l.clone());
    let low = sum_maybe_threaded(base, &a, &db_l, r, threads);

    let short = SeriesRing::new(base.clone(), r - 2);
    let z_short = z.map(|s| short.series(s.coeffs().to_vec()));
    let db_h = splits.map(|s| short.series(s.b_h.coeffs().to_vec()));
    let high = sum_maybe_threaded(&short, &z_short, &db_h, r, threads);

    Ok(low.add(base, &high.map(|s| s.eval_at_one(base))))
}

/// Reference for [`lazy_step4`]: the full sum modulo `z^{n+1}`, then `z = 1`.
pub fn eager_step4<R>(
    series: &SeriesRing<R>,
    z: &Matrix<TruncatedSeries<R::Elem>>,
    db: &Matrix<TruncatedSeries<R::Elem>>,
    r: usize,
) -> Matrix<R::Elem>
where
    R: Ring,
{
    power_sum(series, z, db, r).map(|s| s.eval_at_one(series.base()))
}

/// Inversions observed while a computation ran.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GuardReport {
    pub events: Vec<GuardEvent>,
}

impl GuardReport {
    pub fn passed(&self) -> bool {
        self.events.iter().all(|e| e.plus_minus_one)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GuardEvent> {
        self.events.iter().filter(|e| !e.plus_minus_one)
    }
}

/// Runs `computation` with a fresh inversion log and reports what it saw.
pub fn division_guard<T>(computation: impl FnOnce(&GuardLog) -> Result<T>) -> (Result<T>, GuardReport) {
    let log: GuardLog = Arc::new(Mutex::new(Vec::new()));
    let result = computation(&log);
    let events = log.lock().unwrap().clone();
    (result, GuardReport { events })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivFreeOptions {
    /// Lazy split for the power step; `false` runs the full series sum.
    pub lazy: bool,
    pub threads: usize,
}

impl Default for DivFreeOptions {
    fn default() -> Self {
        Self { lazy: true, threads: 1 }
    }
}

#[derive(Debug, Clone)]
pub struct DivFreeOutput<E> {
    pub det: E,
    pub adjoint: Matrix<E>,
    pub guard: GuardReport,
}

/// Det and steps i*–iii* over series for `Z(z)`.
pub struct SeriesRun<R: Ring> {
    pub series: SeriesRing<R>,
    pub z: Matrix<TruncatedSeries<R::Elem>>,
    pub trace: DetTrace<TruncatedSeries<R::Elem>>,
    pub state: AdjointState<TruncatedSeries<R::Elem>>,
}

fn as_setup_violation(e: Error) -> Error {
    match e {
        Error::SetupInvariantViolation(_) | Error::DegreeContractViolation(_) => e,
        other => Error::SetupInvariantViolation(format!("seed run failed: {other}")),
    }
}

/// Builds `Z(z)` and runs Det and the first three reverse steps over series.
pub fn series_run<R: Ring + Clone>(
    ring: &R,
    a: &Matrix<R::Elem>,
    setup: &StrassenSetup,
    log: &GuardLog,
) -> Result<SeriesRun<R>> {
    let n = a.rows();
    if !a.is_square() || n != setup.n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix with a seed of dimension {}",
            a.rows(),
            a.cols(),
            setup.n
        )));
    }
    let series = SeriesRing::new(ring.clone(), n).with_guard(log.clone());
    let (c, phi, psi) = setup.embed(ring);
    let z = Matrix::from_fn(n, n, |i, j| {
        let c0 = c.get(i, j).clone();
        let c1 = ring.sub(a.get(i, j), &c0);
        series.series(vec![c0, c1])
    });
    let phi: Vec<_> = phi.into_iter().map(|x| series.constant(x)).collect();
    let psi: Vec<_> = psi.into_iter().map(|x| series.constant(x)).collect();
    let trace = det_with_trace(&series, &z, &phi, &psi, DetOptions::default()).map_err(as_setup_violation)?;
    check_trace(&trace)?;
    let mut state = AdjointState::zeroed(&series, &trace);
    state.dh = step1_dh(&series, &trace, false).map_err(as_setup_violation)?;
    let (du, dv) = step2_outer(&series, &trace, &state.dh);
    state.du = du;
    state.dv = dv;
    step3_giant_reverse(&series, &trace, &mut state);
    Ok(SeriesRun { series, z, trace, state })
}

fn finish<R>(run: SeriesRun<R>, opts: DivFreeOptions) -> Result<(R::Elem, Matrix<R::Elem>)>
where
    R: Ring + Clone + Sync,
    R::Elem: Send + Sync,
{
    let SeriesRun {
        series,
        z,
        trace,
        mut state,
    } = run;
    let base = series.base().clone();
    let r = trace.params.r;
    let step4 = if opts.lazy {
        lazy_step4(&series, &z, &state.db, r, opts.threads)?
    } else {
        eager_step4(&series, &z, &state.db, r)
    };
    step5_baby_reverse(&series, &trace, &mut state);
    let step5 = state.a_star.map(|s| s.eval_at_one(&base));
    Ok((trace.det.eval_at_one(&base), step4.add(&base, &step5)))
}

/// `A*` over `ring` using only ring operations and ±1 inversions.
pub fn adjoint_division_free<R>(ring: &R, a: &Matrix<R::Elem>, opts: DivFreeOptions) -> Result<DivFreeOutput<R::Elem>>
where
    R: Ring + Clone + Sync,
    R::Elem: Send + Sync,
{
    let setup = default_setup(a.rows())?;
    adjoint_division_free_with_setup(ring, a, &setup, opts)
}

/// As [`adjoint_division_free`] with an explicit seed.
pub fn adjoint_division_free_with_setup<R>(
    ring: &R,
    a: &Matrix<R::Elem>,
    setup: &StrassenSetup,
    opts: DivFreeOptions,
) -> Result<DivFreeOutput<R::Elem>>
where
    R: Ring + Clone + Sync,
    R::Elem: Send + Sync,
{
    let (result, guard) = division_guard(|log| finish(series_run(ring, a, setup, log)?, opts));
    if !guard.passed() {
        let bad: Vec<_> = guard.failures().map(|e| e.constant_term.clone()).collect();
        return Err(Error::SetupInvariantViolation(format!(
            "series inversions with constant terms other than ±1: {}",
            bad.join(", ")
        )));
    }
    let (det, adjoint) = result?;
    Ok(DivFreeOutput { det, adjoint, guard })
}

/// Compares the constant terms of every series intermediate of the `Z(z)`
/// run with the same intermediate of a scalar run on `(C, φ, ψ)`. Returns
/// the names of the intermediates that differ.
pub fn shadow_mismatches(a: &Matrix<BigInt>) -> Result<Vec<String>> {
    let z = Integers::new();
    let n = a.rows();
    let setup = default_setup(n)?;
    let log: GuardLog = Arc::new(Mutex::new(Vec::new()));
    let run = series_run(&z, a, &setup, &log)?;

    let (c, phi, psi) = setup.embed(&z);
    let scalar = det_with_trace(&z, &c, &phi, &psi, DetOptions::default())?;
    let mut sstate = AdjointState::zeroed(&z, &scalar);
    sstate.dh = step1_dh(&z, &scalar, false)?;
    let (du, dv) = step2_outer(&z, &scalar, &sstate.dh);
    sstate.du = du;
    sstate.dv = dv;
    step3_giant_reverse(&z, &scalar, &mut sstate);

    let ct = |m: &Matrix<TruncatedSeries<BigInt>>| m.map(|s| s.constant_term().clone());
    let ctv = |v: &[TruncatedSeries<BigInt>]| v.iter().map(|s| s.constant_term().clone()).collect::<Vec<_>>();
    let t = &run.trace;
    let mut bad = Vec::new();
    let mut check = |name: String, same: bool| {
        if !same {
            bad.push(name);
        }
    };
    check("Z(0)".into(), ct(&run.z) == c);
    for (i, (x, y)) in t.v_list.iter().zip(&scalar.v_list).enumerate() {
        check(format!("v_{i}"), ctv(x) == *y);
    }
    check("B".into(), ct(&t.b) == scalar.b);
    for (j, (x, y)) in t.u_list.iter().zip(&scalar.u_list).enumerate() {
        check(format!("u_{j}"), ctv(x) == *y);
    }
    check("h".into(), ctv(&t.h) == scalar.h);
    let f_ct: Vec<BigInt> = t.f.padded(&run.series, n + 1).iter().map(|s| s.constant_term().clone()).collect();
    check("f".into(), f_ct == scalar.f.padded(&z, n + 1));
    check("det".into(), *t.det.constant_term() == scalar.det);
    check("dH".into(), ct(&run.state.dh) == sstate.dh);
    check("dU".into(), ct(&run.state.du) == sstate.du);
    check("dV".into(), ct(&run.state.dv) == sstate.dv);
    check("dB".into(), ct(&run.state.db) == sstate.db);

    let mut st5 = run.state.clone();
    step5_baby_reverse(&run.series, t, &mut st5);
    let full = power_sum(&run.series, &run.z, &run.state.db, t.params.r).add(&run.series, &st5.a_star);
    let scalar_adj = crate::adjoint::adjoint(&z, &scalar, AdjointOptions { strategy: crate::adjoint::Strategy::Sum, ..Default::default() })?;
    check("A*".into(), ct(&full) == scalar_adj);
    Ok(bad)
}
