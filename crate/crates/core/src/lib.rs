//! Allocation problems under matroid and polymatroid constraints.
//!
//! The crate covers max-min fair allocation (Santa Claus) and makespan minimization where each
//! item is spread over the players or machines as a basis of its own polymatroid. It provides:
//!
//! * [`polycore`]: rank and value oracles, capped marginals, duals, membership and greedy bases;
//! * [`intersect`]: matroid and polymatroid intersection and basis decomposition;
//! * [`localsearch`]: the local search for the core cover problem, with certificates of
//!   infeasibility;
//! * [`reductions`]: constructive reductions between the two objectives;
//! * [`rounding`]: the assignment LP and its rounding through polymatroid intersection;
//! * [`instances`] and [`oracle`]: the data model, JSON format, generators and brute force.

pub mod caps;
mod error;
pub mod instances;
pub mod intersect;
pub mod localsearch;
pub mod oracle;
pub mod polycore;
pub mod rational;
pub mod reductions;
pub mod rounding;
pub mod subset;

pub use error::{Error, Result};
pub use rational::Rational;
pub use subset::Subset;
