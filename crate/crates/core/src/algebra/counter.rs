use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

/// Tallies of ring operations performed through a counting ring.
///
/// Shared between threads behind an `Arc`; increments are relaxed atomics, so
/// totals are exact once all workers have joined.
#[derive(Debug, Default)]
pub struct OpCounter {
    adds: AtomicU64,
    muls: AtomicU64,
    divs: AtomicU64,
    unit_divs: AtomicU64,
}

/// A plain snapshot of an [`OpCounter`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub adds: u64,
    pub muls: u64,
    /// Divisions by elements other than ±1.
    pub divs: u64,
    /// Divisions by ±1.
    pub unit_divs: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&self) {
        self.adds.fetch_add(1, Ordering::Relaxed);
    }

    #[inline]
    pub fn mul(&self) {
        self.muls.fetch_add(1, Ordering::Relaxed);
    }

    #[inline]
    pub fn div(&self, by_plus_minus_one: bool) {
        if by_plus_minus_one {
            self.unit_divs.fetch_add(1, Ordering::Relaxed);
        } else {
            self.divs.fetch_add(1, Ordering::Relaxed);
        }
    }

    pub fn snapshot(&self) -> OpCounts {
        OpCounts {
            adds: self.adds.load(Ordering::Relaxed),
            muls: self.muls.load(Ordering::Relaxed),
            divs: self.divs.load(Ordering::Relaxed),
            unit_divs: self.unit_divs.load(Ordering::Relaxed),
        }
    }

    pub fn reset(&self) {
        self.adds.store(0, Ordering::Relaxed);
        self.muls.store(0, Ordering::Relaxed);
        self.divs.store(0, Ordering::Relaxed);
        self.unit_divs.store(0, Ordering::Relaxed);
    }
}

impl OpCounts {
    pub fn total(&self) -> u64 {
        self.adds + self.muls + self.divs + self.unit_divs
    }

    /// Counts accumulated since `earlier`.
    pub fn since(&self, earlier: &OpCounts) -> OpCounts {
        OpCounts {
            adds: self.adds - earlier.adds,
            muls: self.muls - earlier.muls,
            divs: self.divs - earlier.divs,
            unit_divs: self.unit_divs - earlier.unit_divs,
        }
    }
}

impl fmt::Display for OpCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "adds={} muls={} divs={} unit_divs={}",
            self.adds, self.muls, self.divs, self.unit_divs
        )
    }
}
