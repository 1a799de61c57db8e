//! Term-count guardrail shared by every expanding operation.
//!
//! The process-wide ceiling defaults to [`DEFAULT_TERM_CAP`] and can be set
//! through the `SINGULEX_TERM_CAP` environment variable. A thread can
//! temporarily override it with [`with_term_cap`].

use std::cell::Cell;
use std::sync::OnceLock;

pub const DEFAULT_TERM_CAP: usize = 1_000_000;
pub const TERM_CAP_ENV: &str = "SINGULEX_TERM_CAP";

static PROCESS_CAP: OnceLock<usize> = OnceLock::new();

thread_local! {
    static OVERRIDE: Cell<Option<usize>> = const { Cell::new(None) };
}

fn process_cap() -> usize {
    *PROCESS_CAP.get_or_init(|| {
        std::env::var(TERM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_TERM_CAP)
    })
}

/// The ceiling in effect on the current thread.
pub fn term_cap() -> usize {
    OVERRIDE.with(|o| o.get()).unwrap_or_else(process_cap)
}

/// Runs `f` with the ceiling set to `cap` on this thread.
pub fn with_term_cap<T>(cap: usize, f: impl FnOnce() -> T) -> T {
    struct Restore(Option<usize>);
    impl Drop for Restore {
        fn drop(&mut self) {
            OVERRIDE.with(|o| o.set(self.0));
        }
    }
    let _restore = Restore(OVERRIDE.with(|o| o.replace(Some(cap))));
    f()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn override_is_scoped() {
        let before = term_cap();
        let inner = with_term_cap(7, || {
            assert_eq!(term_cap(), 7);
            with_term_cap(3, term_cap)
        });
        assert_eq!(inner, 3);
        assert_eq!(term_cap(), before);
    }
}
