//! Local search for the core cover problem: find an independent `I_M` and `y ∈ P` with every
//! element in `I_M` or `y(i) >= b`, or certify that no cover of value about `4b` exists.

mod augment;
mod certificate;
mod driver;
mod state;

pub use augment::{
    augment, build_addable, compute_blocking, recurse_input, AddableSets, AugmentOutcome, AugmentResult,
};
pub use certificate::{
    certificate_excludes, exhaustive_soundness, property_alpha, required_hits, soundness_alpha, verify_certificate,
    verify_small_certificate, Certificate, CertificateReport, SmallCertificate,
};
pub use driver::{
    best_cover_level, recursion_exponent, solve_cover, within_recursion_bound, CoverOutcome, CoverReport, FailureRecord,
};
pub use state::SearchState;
