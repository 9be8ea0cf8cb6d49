//! Division, Buchberger's algorithm and the ideal toolbox built on it: elimination,
//! kernels of algebra maps, membership, colon, saturation, intersection, initial
//! ideals and dimensions of monomial ideals.

mod buchberger;
mod division;
mod ideal;

use serde::{Deserialize, Serialize};

pub use buchberger::buchberger;
pub use division::{is_groebner, normal_form, s_polynomial};
pub use ideal::{
    eliminate, ideal_colon, ideal_intersection, ideal_saturation, initial_ideal, kernel_of_map,
    max_independent_set, membership, monomial_dim, AlgebraMap, Ideal,
};

/// Caps that turn runaway computations into explicit aborts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Guards {
    fn default() -> Self {
        Guards { max_pairs: 500_000, max_degree: 64 }
    }
}

#[derive(Clone, Debug)]
pub struct GbOptions {
    pub guards: Guards,
    /// Product and chain criteria (Gebauer-Moeller); off means every pair is reduced.
    pub criteria: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { guards: Guards::default(), criteria: true }
    }
}

impl GbOptions {
    pub fn with_guards(guards: Guards) -> Self {
        GbOptions { guards, criteria: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GbStatus {
    #[default]
    Running,
    Complete,
    Aborted,
}

/// Statistics of one Groebner basis computation.
///
/// `pairs_generated = pairs_skipped + pairs_processed + pairs_pending`, where
/// `pairs_pending` is nonzero only for aborted runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GbReport {
    pub basis_size: usize,
    pub max_degree: u32,
    pub pairs_generated: usize,
    pub pairs_skipped: usize,
    pub pairs_processed: usize,
    /// Processed pairs whose S-polynomial reduced to zero.
    pub pairs_reduced: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub pairs_pending: usize,
    pub elapsed_ms: u64,
    pub status: GbStatus,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl GbReport {
    pub fn counts_consistent(&self) -> bool {
        self.pairs_generated == self.pairs_skipped + self.pairs_processed + self.pairs_pending
    }
}
