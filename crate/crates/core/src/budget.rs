//! Step and wall-clock limits for the exponential searches.
//!
//! A search that runs out of budget reports [`Error::BudgetExceeded`]; it
//! never turns an unfinished search into a `false`.

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Limits shared by every search in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Budget {
    /// Maximum number of search steps (subset checks, DFS nodes).
    pub max_steps: Option<u64>,
    /// Wall-clock allowance, measured from the moment the search starts.
    pub time_limit: Option<Duration>,
}

impl Budget {
    pub const fn unlimited() -> Self {
        Budget { max_steps: None, time_limit: None }
    }

    pub const fn steps(max_steps: u64) -> Self {
        Budget { max_steps: Some(max_steps), time_limit: None }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_max_steps(mut self, steps: u64) -> Self {
        self.max_steps = Some(steps);
        self
    }

    pub(crate) fn meter(&self) -> Meter {
        Meter {
            max_steps: self.max_steps,
            deadline: self.time_limit.map(|d| Instant::now() + d),
            steps: Cell::new(0),
        }
    }
}

/// Running counter for one search invocation.
#[derive(Debug)]
pub(crate) struct Meter {
    max_steps: Option<u64>,
    deadline: Option<Instant>,
    steps: Cell<u64>,
}

impl Meter {
    #[inline]
    pub(crate) fn tick(&self) -> Result<()> {
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if let Some(max) = self.max_steps {
            if s > max {
                return Err(Error::BudgetExceeded);
            }
        }
        if s & 0x3ff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Error::BudgetExceeded);
                }
            }
        }
        Ok(())
    }
}
