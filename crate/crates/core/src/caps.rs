use serde::{Deserialize, Serialize};

use crate::exec::Execution;

/// Resource limits. Every field can be overridden from a caps file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Largest row count for which minors are expanded (m! terms).
    pub max_minor_rows: usize,
    /// Generator cap for the homology Betti oracle.
    pub max_oracle_gens: usize,
    /// Cap on distinct lcm multidegrees visited by the homology oracle.
    pub max_lcm_candidates: usize,
    /// Generator cap on the product ideal in non-exhaustive lemma verification.
    pub max_colon_gens: usize,
    /// S-pairs Buchberger may process before giving up.
    pub max_spairs: usize,
    pub conjecture_max_rows: usize,
    pub conjecture_max_cols: usize,
    pub conjecture_max_factors: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_minor_rows: 6,
            max_oracle_gens: 12,
            max_lcm_candidates: 4096,
            max_colon_gens: 5000,
            max_spairs: 200_000,
            conjecture_max_rows: 3,
            conjecture_max_cols: 6,
            conjecture_max_factors: 3,
        }
    }
}

/// Caps plus the execution strategy; threaded through the heavier operations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub caps: Caps,
    pub exec: Execution,
}

impl Options {
    pub fn sequential() -> Self {
        Options {
            caps: Caps::default(),
            exec: Execution::Sequential,
        }
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}
