//! Scalar-operation accounting for static cost analysis.
//!
//! Counts are derived analytically from operand shapes at op entry, never by
//! instrumenting inner loops, so a counted forward pass reports the same
//! totals regardless of thread count. A counter is installed per session on
//! the calling thread; nothing is global.

use std::cell::RefCell;

/// Multiply-accumulate and auxiliary scalar-op counts for one forward pass.
///
/// Reporting convention: 1 MAC is published as 1 "FLOP". The dense and
/// convolution counts below are exactly the textbook MAC formulas, which is
/// the only convention consistent with the reference cost figures this
/// engine reproduces.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct OpCounter {
    pub macs: u64,
    pub adds: u64,
    pub divs: u64,
    pub exps: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.macs + self.adds + self.divs + self.exps
    }
}

thread_local! {
    static ACTIVE: RefCell<Option<OpCounter>> = const { RefCell::new(None) };
}

/// Runs `f` with a fresh counter installed on this thread and returns the
/// result together with the accumulated counts.
pub fn count<T>(f: impl FnOnce() -> T) -> (T, OpCounter) {
    ACTIVE.with(|slot| {
        let prev = slot.borrow_mut().replace(OpCounter::default());
        let out = f();
        let counter = slot
            .borrow_mut()
            .take()
            .expect("counter removed while active");
        *slot.borrow_mut() = prev;
        (out, counter)
    })
}

pub(crate) fn record(f: impl FnOnce(&mut OpCounter)) {
    ACTIVE.with(|slot| {
        if let Some(counter) = slot.borrow_mut().as_mut() {
            f(counter);
        }
    });
}

pub(crate) fn macs(n: u64) {
    record(|c| c.macs += n);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scoped_and_nested() {
        let ((), outer) = count(|| {
            macs(10);
            let ((), inner) = count(|| macs(5));
            assert_eq!(inner.macs, 5);
        });
        // The inner session does not leak into the outer one.
        assert_eq!(outer.macs, 10);
    }

    #[test]
    fn no_counter_is_a_noop() {
        macs(99);
    }
}
