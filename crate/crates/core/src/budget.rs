//! Node budget shared by the exponential searches.

use std::env;

/// Default number of backtracking nodes an exhaustive search may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Environment variable that overrides [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "TILEPOT_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("search budget of {limit} nodes exhausted")]
pub struct BudgetExhausted {
    pub limit: u64,
}

/// Counts search nodes against a fixed limit.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    /// The default budget, or `TILEPOT_BUDGET` when set to a valid integer.
    pub fn from_env() -> Self {
        let limit = env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    #[inline]
    pub fn tick(&mut self) -> Result<(), BudgetExhausted> {
        self.used += 1;
        if self.used > self.limit {
            Err(BudgetExhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn remaining(&self) -> u64 {
        self.limit.saturating_sub(self.used)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhausts_after_limit() {
        let mut b = Budget::new(2);
        assert!(b.tick().is_ok());
        assert!(b.tick().is_ok());
        assert_eq!(b.tick(), Err(BudgetExhausted { limit: 2 }));
        assert_eq!(b.remaining(), 0);
    }
}
