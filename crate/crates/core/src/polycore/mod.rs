//! Matroid and polymatroid oracles and the operations built on them.

mod matroid;
mod memo;
mod ops;
mod polymatroid;

pub use matroid::{Matroid, MatroidKind};
pub(crate) use ops::min_slack_containing;
pub use ops::{
    capped_marginal, dual_polymatroid, greedy_basis_above, is_basis, is_basis_rational, matroid_add_greedy, member,
    member_rational, scaled_indicator, sfm_min, support, try_member, vector_sum, CappedView, IntVector,
};
pub use polymatroid::{PolyKind, Polymatroid};
