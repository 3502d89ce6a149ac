use num::{One, Zero};

use super::augment::{augment, AugmentOutcome};
use super::certificate::Certificate;
use super::state::SearchState;
use crate::error::contract;
use crate::instances::CoreCoverInstance;
use crate::polycore::{member, scaled_indicator, IntVector, Matroid};
use crate::rational::Rational;
use crate::subset::Subset;
use crate::{Error, Result};

/// A failed augmentation for one element, kept for diagnostics.
#[derive(Clone, Debug)]
pub struct FailureRecord {
    pub element: usize,
    pub state: SearchState,
    pub certificate: Certificate,
}

#[derive(Clone, Debug)]
pub enum CoverOutcome {
    Cover {
        i_m: Subset,
        y: IntVector,
    },
    /// `b·I_P` at (re)initialization is not in the polymatroid, with `I_P` the rank-zero
    /// elements after zeroing every element whose augmentation failed.
    Infeasible {
        i_p: Subset,
    },
}

#[derive(Clone, Debug)]
pub struct CoverReport {
    pub outcome: CoverOutcome,
    pub failures: Vec<FailureRecord>,
    pub restarts: usize,
    /// Largest recursion tree of a single augmentation.
    pub max_recursion_nodes: u64,
    pub recursion_nodes: u64,
    pub oracle_queries: u64,
}

impl CoverReport {
    pub fn is_cover(&self) -> bool {
        matches!(self.outcome, CoverOutcome::Cover { .. })
    }
}

/// `ℓ`, the smallest integer with `(1/(1-ε²))^ℓ >= n`; the recursion tree of one augmentation
/// has at most `2^ℓ` nodes.
pub fn recursion_exponent(n: usize, eps: &Rational) -> u32 {
    let ratio = Rational::one() / (Rational::one() - eps * eps);
    let target = Rational::from_integer(n.max(1).into());
    let mut power = Rational::one();
    let mut ell = 0u32;
    while power < target {
        power *= &ratio;
        ell += 1;
    }
    ell
}

/// `nodes <= 2^ℓ` for the exponent of [`recursion_exponent`].
pub fn within_recursion_bound(nodes: u64, n: usize, eps: &Rational) -> bool {
    let ell = recursion_exponent(n, eps);
    ell >= 64 || nodes <= 1u64 << ell
}

/// Runs augmentations from singletons until every element is covered by the matroid or by
/// `b` units of the polymatroid. An element whose augmentation fails has its rank zeroed, which
/// forces it onto the polymatroid side, and the procedure restarts.
pub fn solve_cover(inst: &CoreCoverInstance, b: i64, eps: &Rational) -> Result<CoverReport> {
    contract!(b >= 1, "b must be at least 1");
    contract!(
        *eps > Rational::zero() && *eps <= Rational::new(1.into(), 8.into()),
        "ε must lie in (0, 1/8]"
    );
    let n = inst.ground_size();
    let ground = Subset::full(n);
    let q0 = inst.matroid.queries() + inst.polymatroid.queries();
    let mut zeroed = Subset::EMPTY;
    let mut failures = Vec::new();
    let mut restarts = 0;
    let mut nodes = 0;
    let mut max_nodes = 0;
    let queries = |inst: &CoreCoverInstance| inst.matroid.queries() + inst.polymatroid.queries() - q0;
    loop {
        let matroid = Matroid::zeroed(&inst.matroid, zeroed);
        let mut i_p: Subset = ground
            .iter()
            .filter(|&i| matroid.rank(Subset::singleton(i)) == 0)
            .collect();
        if !member(&inst.polymatroid, &scaled_indicator(n, b, i_p)) {
            return Ok(CoverReport {
                outcome: CoverOutcome::Infeasible { i_p },
                failures,
                restarts,
                max_recursion_nodes: max_nodes,
                recursion_nodes: nodes,
                oracle_queries: queries(inst),
            });
        }
        let mut i_m = Subset::EMPTY;
        let mut failed = None;
        for i in ground.iter() {
            if i_m.contains(i) || i_p.contains(i) {
                continue;
            }
            let state = SearchState {
                ground,
                matroid: matroid.clone(),
                poly: inst.polymatroid.clone(),
                b,
                i_m,
                i_p,
                b0: Subset::singleton(i),
                order: vec![i],
                eps: eps.clone(),
            };
            let result = augment(&state)?;
            nodes += result.nodes;
            max_nodes = max_nodes.max(result.nodes);
            match result.outcome {
                AugmentOutcome::Success { i_m: m, i_p: p } => {
                    if !(i_m | i_p).is_subset(m | p) || !m.contains(i) {
                        return Err(Error::Internal(format!(
                            "augmentation for {i} lost coverage or missed its element"
                        )));
                    }
                    i_m = m;
                    i_p = p;
                }
                AugmentOutcome::Failure(certificate) => {
                    failed = Some(FailureRecord {
                        element: i,
                        state,
                        certificate,
                    });
                    break;
                }
            }
        }
        match failed {
            None => {
                return Ok(CoverReport {
                    outcome: CoverOutcome::Cover {
                        i_m,
                        y: scaled_indicator(n, b, i_p),
                    },
                    failures,
                    restarts,
                    max_recursion_nodes: max_nodes,
                    recursion_nodes: nodes,
                    oracle_queries: queries(inst),
                });
            }
            Some(record) => {
                zeroed = zeroed.with(record.element);
                failures.push(record);
                restarts += 1;
                if restarts > n {
                    return Err(Error::Internal(format!("more than {n} restarts")));
                }
            }
        }
    }
}

/// Largest `b` in `1..=b_max` at which [`solve_cover`] returns a cover, or 0.
pub fn best_cover_level(inst: &CoreCoverInstance, b_max: i64, eps: &Rational) -> Result<i64> {
    let mut best = 0;
    for b in 1..=b_max {
        if solve_cover(inst, b, eps)?.is_cover() {
            best = b;
        }
    }
    Ok(best)
}
