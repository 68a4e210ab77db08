//! `bench`: counted ring operations per size as CSV, plus a fitted log-log
//! exponent of the multiplication counts.

use std::time::Instant;

use adjx_core::scaling::{count_division_free, count_field, fit_exponent, FieldOp};

use crate::args::{BenchArgs, BenchOp, Mode, RingSpec};
use crate::error::CliError;
use crate::run::resolve_seed;

pub fn bench(args: &BenchArgs) -> Result<String, CliError> {
    if args.sizes.is_empty() {
        return Err(CliError::Usage("--sizes needs at least one size".into()));
    }
    if args.sizes.contains(&0) {
        return Err(CliError::Usage("sizes must be positive".into()));
    }
    let seed = resolve_seed(args.common.seed)?;
    let ring = args.ring.unwrap_or(match args.mode {
        Mode::Field => RingSpec::Zp(10007),
        Mode::DivisionFree => RingSpec::Int,
    });
    let p = match (args.mode, ring) {
        (Mode::Field, RingSpec::Zp(p)) => Some(p),
        (Mode::DivisionFree, RingSpec::Int) => None,
        (Mode::Field, other) => {
            return Err(CliError::Usage(format!("field-mode bench runs over zp:P, not {other}")))
        }
        (Mode::DivisionFree, other) => {
            return Err(CliError::Usage(format!("division-free bench runs over int, not {other}")))
        }
    };
    let op = match args.op {
        BenchOp::Det => FieldOp::Det,
        BenchOp::Adjoint => FieldOp::Adjoint,
    };

    let mut out = String::from("n,mode,adds,muls,divs,ms\n");
    let mut points = Vec::with_capacity(args.sizes.len());
    for &n in &args.sizes {
        let start = Instant::now();
        let counts = match p {
            Some(p) => count_field(p, n, seed, op, args.common.strategy.into())?,
            None => count_division_free(n, seed)?,
        };
        let ms = start.elapsed().as_secs_f64() * 1000.0;
        out.push_str(&format!(
            "{n},{},{},{},{},{ms:.3}\n",
            args.mode.name(),
            counts.adds,
            counts.muls,
            counts.divs
        ));
        points.push((n, counts.muls));
    }
    match fit_exponent(&points) {
        Some(e) => out.push_str(&format!("# exponent(muls) = {e:.3}\n")),
        None => out.push_str("# exponent(muls) = n/a (needs two distinct sizes)\n"),
    }
    Ok(out)
}
