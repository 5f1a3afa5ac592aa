//! Finding copies of `F^s` in host graphs.

mod certificate;
mod exact;
mod guided;
mod harvest;

pub use certificate::{verify_certificate, verify_embedded, EmbeddingCertificate};
pub use exact::{contains_subdivision, find_subdivision_exact, DEFAULT_SEARCH_BUDGET};
pub use guided::{
    exponent_sequence, find_subdivision_guided, near_walk_mask, non_distant_bound, not_distant_mask, FailureReport,
    GuidedOptions, GuidedOutcome, GuidedState, StageLog, StarvingStep,
};
pub use harvest::{check_poor_tuple, harvest_poor_tuples, HarvestReport};

#[cfg(test)]
mod tests;
