//! Line-oriented result envelope: one `key: <json>` line per field, in a
//! fixed order.

use adjx_core::algebra::OpCounts;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub struct Counters {
    pub adds: u64,
    pub muls: u64,
    pub divs: u64,
    pub unit_divs: u64,
}

impl From<OpCounts> for Counters {
    fn from(c: OpCounts) -> Self {
        Self {
            adds: c.adds,
            muls: c.muls,
            divs: c.divs,
            unit_divs: c.unit_divs,
        }
    }
}

/// Which matrix the envelope carries besides the determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Payload {
    Adjoint,
    Inverse,
}

impl Payload {
    fn key(self) -> &'static str {
        match self {
            Payload::Adjoint => "adjoint",
            Payload::Inverse => "inverse",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub mode: String,
    pub ring: String,
    pub n: usize,
    pub seed: u64,
    pub det: String,
    pub matrix: Option<(Payload, Vec<Vec<String>>)>,
    pub counters: Counters,
    /// `None` prints `null`, for byte-identical output across runs.
    pub timing_ms: Option<f64>,
}

fn line<T: Serialize + ?Sized>(out: &mut String, key: &str, value: &T) {
    out.push_str(key);
    out.push_str(": ");
    out.push_str(&serde_json::to_string(value).expect("envelope values serialize"));
    out.push('\n');
}

impl Envelope {
    pub fn render(&self) -> String {
        let mut out = String::new();
        line(&mut out, "mode", &self.mode);
        line(&mut out, "ring", &self.ring);
        line(&mut out, "n", &self.n);
        line(&mut out, "seed", &self.seed);
        line(&mut out, "det", &self.det);
        if let Some((payload, rows)) = &self.matrix {
            line(&mut out, payload.key(), rows);
        }
        line(&mut out, "counters", &self.counters);
        line(&mut out, "timing_ms", &self.timing_ms.map(|t| (t * 1000.0).round() / 1000.0));
        out
    }
}
