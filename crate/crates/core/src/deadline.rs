//! Cooperative wall-clock cancellation.

use std::time::{Duration, Instant};

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("deadline exceeded")]
pub struct Cancelled;

/// Point in time after which long-running constructions give up.
/// Algorithms poll [`Deadline::check`] at their loop checkpoints.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Deadline {
    at: Option<Instant>,
}

impl Deadline {
    pub fn never() -> Self {
        Deadline { at: None }
    }

    pub fn after(limit: Duration) -> Self {
        Deadline { at: Some(Instant::now() + limit) }
    }

    pub fn at(instant: Instant) -> Self {
        Deadline { at: Some(instant) }
    }

    pub fn expired(&self) -> bool {
        self.at.is_some_and(|t| Instant::now() >= t)
    }

    /// The earlier of two deadlines.
    pub fn min(self, other: Deadline) -> Deadline {
        match (self.at, other.at) {
            (Some(a), Some(b)) => Deadline { at: Some(a.min(b)) },
            (a, b) => Deadline { at: a.or(b) },
        }
    }

    /// Time left, `None` without a limit.
    pub fn remaining(&self) -> Option<Duration> {
        self.at.map(|t| t.saturating_duration_since(Instant::now()))
    }

    #[inline]
    pub fn check(&self) -> Result<(), Cancelled> {
        if self.expired() {
            Err(Cancelled)
        } else {
            Ok(())
        }
    }
}
