//! `det`, `adjoint` and `inverse`.

use std::io::Read;
use std::sync::Arc;
use std::time::Instant;

use adjx_core::algebra::{FromRational, Integers, OpCounter, PrimeField, Rationals, Ring, SampleRing};
use adjx_core::division_free::{adjoint_division_free, DivFreeOptions};
use adjx_core::matrix::Matrix;
use adjx_core::{field_adjoint, field_determinant, field_inverse, Error, FieldOptions};
use num_rational::BigRational;

use crate::args::{Common, Mode, RingSpec, RunArgs};
use crate::envelope::{Counters, Envelope, Payload};
use crate::error::CliError;
use crate::matrix_file;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Det,
    Adjoint,
    Inverse,
}

pub fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("ADJX_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("ADJX_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(1),
    }
}

fn read_input(args: &RunArgs) -> Result<Matrix<BigRational>, CliError> {
    let text = if args.input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&args.input)
            .map_err(|e| CliError::Usage(format!("reading {}: {e}", args.input.display())))?
    };
    matrix_file::parse(&text).map_err(|e| CliError::Usage(e.0))
}

fn embed<R: FromRational>(ring: &R, a: &Matrix<BigRational>, spec: RingSpec) -> Result<Matrix<R::Elem>, CliError> {
    a.try_map(|q| ring.from_rational(q))
        .map_err(|_| CliError::Usage(format!("matrix has an entry outside {spec}")))
}

/// Determinant and optional matrix, rendered.
struct Outcome {
    det: String,
    matrix: Option<Vec<Vec<String>>>,
}

fn field_run<R>(ring: &R, a: &Matrix<R::Elem>, op: Op, opts: FieldOptions) -> Result<(R::Elem, Option<Matrix<R::Elem>>), Error>
where
    R: SampleRing + Sync,
    R::Elem: Send + Sync,
{
    Ok(match op {
        Op::Det => (field_determinant(ring, a, opts)?, None),
        Op::Adjoint => {
            let (d, m) = field_adjoint(ring, a, opts)?;
            (d, Some(m))
        }
        Op::Inverse => {
            let (d, m) = field_inverse(ring, a, opts)?;
            (d, Some(m))
        }
    })
}

fn render_with<R: Ring>(ring: &R, det: R::Elem, m: Option<Matrix<R::Elem>>) -> Outcome {
    Outcome {
        det: ring.render(&det),
        matrix: m.map(|m| m.render(ring)),
    }
}

fn division_free_run<R>(ring: &R, a: &Matrix<R::Elem>, op: Op, threads: usize) -> Result<(R::Elem, Option<Matrix<R::Elem>>), Error>
where
    R: Ring + Clone + Sync,
    R::Elem: Send + Sync,
{
    let out = adjoint_division_free(ring, a, DivFreeOptions { lazy: true, threads })?;
    Ok(match op {
        Op::Det => (out.det, None),
        Op::Adjoint => (out.det, Some(out.adjoint)),
        Op::Inverse => {
            if ring.is_zero(&out.det) {
                return Err(Error::SingularInput);
            }
            let inv = ring.inv(&out.det)?;
            let m = out.adjoint.scale(ring, &inv);
            (out.det, Some(m))
        }
    })
}

fn field_options(common: &Common, seed: u64) -> FieldOptions {
    FieldOptions {
        seed,
        retries: common.retries,
        strategy: common.strategy.into(),
        threads: common.threads.max(1),
    }
}

fn compute(args: &RunArgs, op: Op, a: &Matrix<BigRational>, seed: u64) -> Result<(Outcome, Arc<OpCounter>), CliError> {
    let opts = field_options(&args.common, seed);
    let threads = args.common.threads.max(1);
    Ok(match (args.mode, args.ring) {
        (Mode::Field, RingSpec::Zp(p)) => {
            let f = PrimeField::new(p);
            let a = embed(&f, a, args.ring)?;
            let (d, m) = field_run(&f, &a, op, opts)?;
            (render_with(&f, d, m), f.counter().clone())
        }
        (Mode::Field, RingSpec::Rational) => {
            let q = Rationals::new();
            let (d, m) = field_run(&q, a, op, opts)?;
            (render_with(&q, d, m), q.counter().clone())
        }
        (Mode::Field, RingSpec::Int) => {
            // integer input, computed over the rationals
            embed(&Integers::new(), a, args.ring)?;
            let q = Rationals::new();
            let (d, m) = field_run(&q, a, op, opts)?;
            (render_with(&q, d, m), q.counter().clone())
        }
        (Mode::DivisionFree, RingSpec::Zp(p)) => {
            let f = PrimeField::new(p);
            let a = embed(&f, a, args.ring)?;
            let (d, m) = division_free_run(&f, &a, op, threads)?;
            (render_with(&f, d, m), f.counter().clone())
        }
        (Mode::DivisionFree, RingSpec::Rational) => {
            let q = Rationals::new();
            let (d, m) = division_free_run(&q, a, op, threads)?;
            (render_with(&q, d, m), q.counter().clone())
        }
        (Mode::DivisionFree, RingSpec::Int) => {
            let z = Integers::new();
            let ai = embed(&z, a, args.ring)?;
            let adj_op = if op == Op::Inverse { Op::Adjoint } else { op };
            let (d, m) = division_free_run(&z, &ai, adj_op, threads)?;
            if op != Op::Inverse {
                (render_with(&z, d, m), z.counter().clone())
            } else {
                // the inverse leaves the integers; divide outside the ring
                if z.is_zero(&d) {
                    return Err(Error::SingularInput.into());
                }
                let det = BigRational::from_integer(d.clone());
                let m = m.expect("adjoint requested").map(|x| BigRational::from_integer(x.clone()) / &det);
                let outcome = Outcome {
                    det: d.to_string(),
                    matrix: Some(m.render(&Rationals::new())),
                };
                (outcome, z.counter().clone())
            }
        }
    })
}

pub fn run(args: &RunArgs, op: Op) -> Result<String, CliError> {
    let a = read_input(args)?;
    let seed = resolve_seed(args.common.seed)?;
    let start = Instant::now();
    let (outcome, counter) = compute(args, op, &a, seed)?;
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let payload = match op {
        Op::Det => None,
        Op::Adjoint => Some(Payload::Adjoint),
        Op::Inverse => Some(Payload::Inverse),
    };
    let env = Envelope {
        mode: args.mode.name().into(),
        ring: args.ring.to_string(),
        n: a.rows(),
        seed,
        det: outcome.det,
        matrix: payload.zip(outcome.matrix),
        counters: Counters::from(counter.snapshot()),
        timing_ms: (!args.no_timing).then_some(elapsed),
    };
    Ok(env.render())
}
