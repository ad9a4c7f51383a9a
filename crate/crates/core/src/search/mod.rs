//! Numerical certificates.
//!
//! Two one-sided searches: a product-vector search for a negative positivity
//! gap (proves the map is not positive) and a search over a structured family
//! of PPT states for a negative trace pairing with the Choi matrix (proves the
//! map is indecomposable). Neither search ever proves the opposite statement:
//! finding nothing is inconclusive.
//!
//! Both searches are multi-start. Start `k` draws its randomness from its own
//! ChaCha stream keyed by `(seed, k)`, and the winner is the lexicographic
//! minimum of `(value, k)`, so results do not depend on thread scheduling.

mod gap;
mod optimize;
mod ppt;

use serde::{Deserialize, Serialize};

pub use gap::{
    block_positivity_value, find_positivity_violation, gap_decomposition, minimize_positivity_gap,
    positivity_gap, verify_counterexample, CounterexampleCheck, GapDecomposition, GapSearch,
    NonnegativeVector, ViolationCertificate,
};
pub use ppt::{
    indecomposability_probe, maximal_cross_terms, minimize_structured_value, structured_ppt_value,
    PptWitnessCertificate, ProbeSearch, StructuredPptState,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    /// Number of random starts; deterministic seeds are added on top.
    pub starts: usize,
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub violation_tolerance: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            starts: 64,
            max_iterations: 2000,
            step_tolerance: 1e-12,
            violation_tolerance: 1e-9,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> crate::Result<()> {
        if self.starts == 0 || self.max_iterations == 0 {
            return Err(crate::error::invalid(
                "starts and max_iterations must be positive",
            ));
        }
        if !(self.step_tolerance > 0.0) || !(self.violation_tolerance > 0.0) {
            return Err(crate::error::invalid("tolerances must be positive"));
        }
        Ok(())
    }
}

/// Index and value of the lexicographically smallest `(value, index)`.
pub(crate) fn best_start(values: impl IntoIterator<Item = f64>) -> Option<(usize, f64)> {
    values
        .into_iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.total_cmp(b).then(i.cmp(j)))
}
