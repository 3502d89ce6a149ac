//! The assignment LP and its rounding through polymatroid intersection: Santa Claus loses at
//! most the largest value, makespan gains at most the largest size.

mod gadget;
mod lp;
mod simplex;

pub use gadget::{build_gadget, round_makespan, round_santa, GadgetEdge, RoundingGadget};
pub use lp::{allowed_pairs, check_fractional, optimal_assignment_lp, solve_assignment_lp};
pub use simplex::{solve as solve_lp, Constraint, LinearProgram, LpOutcome, Relation};

use crate::error::contract;
use crate::instances::{AllocInstance, Allocation, Fractional, Objective};
use crate::Result;

pub type FractionalAssignment = Fractional;

/// Makespan at most `T* + p_max`, with `T*` the smallest target the assignment LP admits.
/// Returns the allocation and `T*`.
pub fn lst_baseline(inst: &AllocInstance) -> Result<(Allocation, crate::Rational)> {
    contract!(
        inst.objective == Objective::Makespan,
        "lst_baseline needs a makespan instance"
    );
    let frac =
        optimal_assignment_lp(inst)?.ok_or_else(|| crate::Error::InvalidInput("some job fits on no machine".into()))?;
    let alloc = round_makespan(inst, &frac)?;
    Ok((alloc, frac.target))
}
