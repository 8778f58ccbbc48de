//! Field-operation counting for the complexity metrics.
//!
//! Counting is off by default and enabled only by metrics-producing runs; the
//! counter is a process-wide relaxed atomic, so parallel inner loops attribute
//! their work correctly as long as only one party computes at a time (the
//! deterministic sequential scheduler guarantees this).

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

static ENABLED: AtomicBool = AtomicBool::new(false);
static COUNTER: AtomicU64 = AtomicU64::new(0);

/// Turn counting on or off. Runs that interleave multiple protocol instances
/// in parallel must leave counting off; the counter is process-global.
pub fn set_enabled(on: bool) {
    ENABLED.store(on, Ordering::Relaxed);
}

pub fn enabled() -> bool {
    ENABLED.load(Ordering::Relaxed)
}

/// Current total. Callers snapshot before/after a party's computation.
pub fn read() -> u64 {
    COUNTER.load(Ordering::Relaxed)
}

pub fn reset() {
    COUNTER.store(0, Ordering::Relaxed);
}

#[inline(always)]
pub(crate) fn bump(n: u64) {
    if ENABLED.load(Ordering::Relaxed) {
        COUNTER.fetch_add(n, Ordering::Relaxed);
    }
}
