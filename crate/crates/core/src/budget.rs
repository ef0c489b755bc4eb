//! Node-count and wall-clock budgets for the exact searches.
//!
//! Exceeding a budget downgrades the result status; it never aborts the
//! process.

use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Resource limits for a search. `u64::MAX` means unlimited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_millis: u64,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: u64::MAX,
        max_millis: u64::MAX,
    };

    pub fn nodes(max_nodes: u64) -> Budget {
        Budget {
            max_nodes,
            max_millis: u64::MAX,
        }
    }

    pub fn millis(max_millis: u64) -> Budget {
        Budget {
            max_nodes: u64::MAX,
            max_millis,
        }
    }

    pub fn with_nodes(self, max_nodes: u64) -> Budget {
        Budget { max_nodes, ..self }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::UNLIMITED
    }
}

/// Whether a search ran to completion or was cut off by its budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Exact,
    LowerBound,
}

impl SearchStatus {
    pub fn is_exact(self) -> bool {
        matches!(self, SearchStatus::Exact)
    }
}

/// Running meter against a [`Budget`]. The clock is polled every 4096 nodes.
pub struct Meter {
    budget: Budget,
    start: Instant,
    nodes: u64,
    exhausted: bool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Counts one search node. Returns `false` once the budget is exhausted.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted = true;
            return false;
        }
        if self.budget.max_millis != u64::MAX
            && self.nodes.is_multiple_of(4096)
            && self.start.elapsed().as_millis() as u64 > self.budget.max_millis
        {
            self.exhausted = true;
            return false;
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn status(&self) -> SearchStatus {
        if self.exhausted {
            SearchStatus::LowerBound
        } else {
            SearchStatus::Exact
        }
    }
}
