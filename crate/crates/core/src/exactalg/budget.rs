//! Per-thread S-pair budget and step accounting for the Gröbner engine.

use std::cell::Cell;

/// Default cap on processed S-pairs per basis computation.
pub const DEFAULT_MAX_STEPS: u64 = 200_000;

thread_local! {
    static LIMIT: Cell<u64> = const { Cell::new(DEFAULT_MAX_STEPS) };
    static TOTAL: Cell<u64> = const { Cell::new(0) };
}

/// Sets the cap for basis computations started on this thread.
pub fn set_max_steps(limit: u64) {
    LIMIT.with(|l| l.set(limit));
}

pub fn max_steps() -> u64 {
    LIMIT.with(|l| l.get())
}

/// S-pairs processed on this thread since it started.
pub fn total_steps() -> u64 {
    TOTAL.with(|t| t.get())
}

pub(crate) fn record_steps(n: u64) {
    TOTAL.with(|t| t.set(t.get() + n));
}

/// Runs `f` with a temporary cap, restoring the previous one afterwards.
pub fn with_max_steps<T>(limit: u64, f: impl FnOnce() -> T) -> T {
    let prev = max_steps();
    set_max_steps(limit);
    let out = f();
    set_max_steps(prev);
    out
}
