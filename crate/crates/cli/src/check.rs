//! `check`: the adjoint against cofactors, the reverse sweep of a recorded
//! determinant, and dual-number derivatives, on random matrices.

use adjx_core::adjoint::{adjoint, AdjointOptions};
use adjx_core::algebra::{dual_lift, DualRing, Integers, PrimeField, Rationals, Ring, SampleRing};
use adjx_core::division_free::{adjoint_division_free, DivFreeOptions};
use adjx_core::krylov::{det_with_retries, det_with_trace, DetOptions, DetTrace};
use adjx_core::matrix::Matrix;
use adjx_core::oracle::adjugate_cofactor;
use adjx_core::scaling::random_matrix;
use adjx_core::slp::{record_det, reverse_sweep};
use adjx_core::{Error, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{CheckArgs, Oracle, RingSpec};
use crate::error::CliError;
use crate::run::resolve_seed;

/// Largest size the cofactor oracle accepts.
pub const COFACTOR_CAP: usize = 8;
/// Field used for the tape and dual oracles when checking over the integers.
const SHADOW_PRIME: u64 = 10007;

#[derive(Debug, Default)]
struct Tally {
    compared: usize,
    skipped: usize,
    mismatches: Vec<String>,
}

impl Tally {
    fn compare(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.compared += 1;
        if !ok {
            self.mismatches.push(what());
        }
    }
}

struct Wants {
    cofactor: bool,
    tape: bool,
    dual: bool,
}

impl Wants {
    fn of(o: Oracle) -> Self {
        Self {
            cofactor: matches!(o, Oracle::Cofactor | Oracle::All),
            tape: matches!(o, Oracle::Tape | Oracle::All),
            dual: matches!(o, Oracle::Dual | Oracle::All),
        }
    }
}

fn det_opts(strategy: Strategy) -> DetOptions {
    DetOptions {
        pow2_r: strategy == Strategy::Squaring,
    }
}

/// Trace over a field, or `None` when the run cannot produce an adjoint
/// (degenerate projections or a singular matrix).
fn field_trace<R: SampleRing>(
    ring: &R,
    a: &Matrix<R::Elem>,
    seed: u64,
    retries: usize,
    strategy: Strategy,
) -> Result<Option<DetTrace<R::Elem>>, CliError> {
    match det_with_retries(ring, a, seed, retries, det_opts(strategy)) {
        Ok(t) if !ring.is_zero(&t.det) => Ok(Some(t)),
        Ok(_) | Err(Error::RetriesExhausted { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Tape and dual checks of `expected` (the adjoint over `ring`) given the
/// trace whose projections are replayed.
#[allow(clippy::too_many_arguments)]
fn derivative_checks<R>(
    ring: &R,
    a: &Matrix<R::Elem>,
    trace: &DetTrace<R::Elem>,
    expected: &Matrix<R::Elem>,
    wants: &Wants,
    strategy: Strategy,
    rng: &mut ChaCha8Rng,
    label: &str,
    tally: &mut Tally,
) -> Result<(), CliError>
where
    R: Ring + Clone,
{
    let n = a.rows();
    if wants.tape {
        match record_det(ring, a, &trace.u, &trace.v, det_opts(strategy)) {
            Ok(tape) => {
                let sweep = reverse_sweep(ring, &tape)?;
                tally.compare(sweep.grads.transpose().equal(ring, expected), || format!("{label}: reverse sweep differs"));
                tally.compare(sweep.ops <= 5 * sweep.len as u64, || {
                    format!("{label}: sweep took {} ops on a tape of length {}", sweep.ops, sweep.len)
                });
            }
            Err(Error::DivisionInTapeAtZero(_)) => tally.skipped += 1,
            Err(e) => return Err(e.into()),
        }
    }
    if wants.dual {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let d = DualRing::new(ring.clone());
        let ad = Matrix::from_fn(n, n, |r, c| {
            let dir = if (r, c) == (i, j) { ring.one() } else { ring.zero() };
            dual_lift(a.get(r, c).clone(), dir)
        });
        let u: Vec<_> = trace.u.iter().map(|x| d.constant(x.clone())).collect();
        let v: Vec<_> = trace.v.iter().map(|x| d.constant(x.clone())).collect();
        let td = det_with_trace(&d, &ad, &u, &v, det_opts(strategy))?;
        tally.compare(ring.equal(&td.det.eps, expected.get(j, i)), || {
            format!("{label}: d det / d a[{i}][{j}] differs from adjoint[{j}][{i}]")
        });
    }
    Ok(())
}

fn check_field<R>(ring: &R, args: &CheckArgs, seed: u64, wants: &Wants, tally: &mut Tally) -> Result<(), CliError>
where
    R: SampleRing + Clone + Sync,
    R::Elem: Send + Sync,
{
    let strategy: Strategy = args.common.strategy.into();
    for t in 0..args.trials as u64 {
        let s = seed.wrapping_add(t);
        let label = format!("trial {t} (seed {s})");
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let a = random_matrix(ring, args.n, s);
        let Some(trace) = field_trace(ring, &a, s, args.common.retries, strategy)? else {
            tally.skipped += 1;
            continue;
        };
        let opts = AdjointOptions {
            strategy,
            inverse: false,
            threads: args.common.threads.max(1),
        };
        let adj = adjoint(ring, &trace, opts)?;
        if wants.cofactor {
            tally.compare(adj.equal(ring, &adjugate_cofactor(ring, &a)?), || format!("{label}: cofactor oracle differs"));
        }
        derivative_checks(ring, &a, &trace, &adj, wants, strategy, &mut rng, &label, tally)?;
    }
    Ok(())
}

/// Division-free adjoint over the integers, checked against cofactors and
/// the division guard; tape and dual checks run on its image mod a prime.
fn check_integers(args: &CheckArgs, seed: u64, wants: &Wants, tally: &mut Tally) -> Result<(), CliError> {
    let z = Integers::new();
    let f = PrimeField::new(SHADOW_PRIME);
    let strategy: Strategy = args.common.strategy.into();
    for t in 0..args.trials as u64 {
        let s = seed.wrapping_add(t);
        let label = format!("trial {t} (seed {s})");
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let a = random_matrix(&z, args.n, s);
        z.counter().reset();
        let opts = DivFreeOptions {
            lazy: true,
            threads: args.common.threads.max(1),
        };
        let out = adjoint_division_free(&z, &a, opts)?;
        let divs = z.counter().snapshot().divs;
        tally.compare(divs == 0 && out.guard.passed(), || format!("{label}: division guard tripped ({divs} divisions)"));
        if wants.cofactor {
            tally.compare(out.adjoint == adjugate_cofactor(&z, &a)?, || format!("{label}: cofactor oracle differs"));
        }
        if wants.tape || wants.dual {
            let ap = a.map(|x| f.from_integer(x));
            let expected = out.adjoint.map(|x| f.from_integer(x));
            match field_trace(&f, &ap, s, args.common.retries, strategy)? {
                Some(trace) => {
                    let label = format!("{label} mod {SHADOW_PRIME}");
                    derivative_checks(&f, &ap, &trace, &expected, wants, strategy, &mut rng, &label, tally)?;
                }
                None => tally.skipped += 1,
            }
        }
    }
    Ok(())
}

pub fn check(args: &CheckArgs) -> Result<String, CliError> {
    let seed = resolve_seed(args.common.seed)?;
    let wants = Wants::of(args.against);
    if args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if wants.cofactor && args.n > COFACTOR_CAP {
        return Err(CliError::Usage(format!(
            "the cofactor oracle is limited to n <= {COFACTOR_CAP}, got {}",
            args.n
        )));
    }
    if args.trials == 0 {
        eprintln!("warning: --trials 0 compares nothing; passing vacuously");
    }
    let mut tally = Tally::default();
    match args.ring {
        RingSpec::Zp(p) => check_field(&PrimeField::new(p), args, seed, &wants, &mut tally)?,
        RingSpec::Rational => check_field(&Rationals::new(), args, seed, &wants, &mut tally)?,
        RingSpec::Int => check_integers(args, seed, &wants, &mut tally)?,
    }
    let against = format!("{:?}", args.against).to_lowercase();
    let mut out = String::new();
    for (k, v) in [
        ("against", serde_json::to_string(&against).unwrap()),
        ("ring", serde_json::to_string(&args.ring.to_string()).unwrap()),
        ("n", args.n.to_string()),
        ("trials", args.trials.to_string()),
        ("seed", seed.to_string()),
        ("compared", tally.compared.to_string()),
        ("skipped", tally.skipped.to_string()),
        ("mismatches", tally.mismatches.len().to_string()),
    ] {
        out.push_str(&format!("{k}: {v}\n"));
    }
    if tally.mismatches.is_empty() {
        out.push_str("result: \"pass\"\n");
        Ok(out)
    } else {
        println!("{out}result: \"fail\"");
        Err(CliError::Mismatch(tally.mismatches.join("; ")))
    }
}
