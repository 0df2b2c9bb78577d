use std::time::{Duration, Instant};

use super::MonodromyError;

/// Wall-clock and size caps for a single check.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::unlimited()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None, max_terms: usize::MAX }
    }

    pub fn new(time: Option<Duration>, max_terms: Option<usize>) -> Self {
        Budget { deadline: time.map(|t| Instant::now() + t), max_terms: max_terms.unwrap_or(usize::MAX) }
    }

    pub fn check(&self, terms: usize) -> Result<(), MonodromyError> {
        if terms > self.max_terms {
            return Err(MonodromyError::BudgetExceeded(format!("{terms} terms > {}", self.max_terms)));
        }
        if self.deadline.is_some_and(|d| Instant::now() > d) {
            return Err(MonodromyError::BudgetExceeded("time".into()));
        }
        Ok(())
    }
}
