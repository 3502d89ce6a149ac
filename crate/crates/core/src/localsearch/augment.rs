use num::One;

use super::certificate::Certificate;
use super::state::{at_least, SearchState};
use crate::error::internal;
use crate::polycore::{scaled_indicator, CappedView, Matroid, Polymatroid};
use crate::rational::{qi, Rational};
use crate::subset::Subset;
use crate::Result;

/// Addable elements `A = A_1 ∪ … ∪ A_{ℓ-1}` and the surrounding set `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddableSets {
    pub a: Subset,
    /// `B_0 ∪ A ∪ {i ∈ I_M \ A : f(i | 2b·A) < 2b}`.
    pub c: Subset,
    pub layers: Vec<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AugmentOutcome {
    Success { i_m: Subset, i_p: Subset },
    Failure(Certificate),
}

#[derive(Clone, Debug)]
pub struct AugmentResult {
    pub outcome: AugmentOutcome,
    /// Nodes of the recursion tree, this call included.
    pub nodes: u64,
}

/// Builds the layers of addable elements, re-scanning candidates in index order after each
/// addition until a full pass adds nothing.
pub fn build_addable(state: &SearchState) -> AddableSets {
    let b2 = 2 * state.b;
    let mut layers: Vec<Subset> = Vec::new();
    let mut union = Subset::EMPTY;
    loop {
        let mut layer = Subset::EMPTY;
        loop {
            let view = CappedView::new(&state.poly, b2, union | layer);
            let base = (state.b0 | state.i_m) - layer;
            let pick = (state.i_m - union - layer)
                .iter()
                .find(|&i| state.rank_given(Subset::singleton(i), base.without(i)) == 0 && view.marginal_of(i) >= b2);
            match pick {
                Some(i) => layer = layer.with(i),
                None => break,
            }
        }
        if !at_least(layer.len(), &state.eps, state.b0.len()) {
            break;
        }
        union = union | layer;
        layers.push(layer);
    }
    let view = CappedView::new(&state.poly, b2, union);
    let rest: Subset = (state.i_m - union)
        .iter()
        .filter(|&i| view.marginal_of(i) < b2)
        .collect();
    AddableSets {
        a: union,
        c: state.b0 | union | rest,
        layers,
    }
}

/// Elements `i ∈ I_P` with `f(i | b·(I_P ∪ A - i)) < b`.
pub fn compute_blocking(state: &SearchState, i_p: Subset, a: Subset) -> Subset {
    let pool = i_p | a;
    i_p.iter()
        .filter(|&i| CappedView::new(&state.poly, state.b, pool.without(i)).marginal_of(i) < state.b)
        .collect()
}

/// Input of the recursive call: the part `K` of `C` inside `I_M` is contracted in the matroid,
/// `b·(A ∪ B)` in the polymatroid, and `B` joins `B_0` at lower priority.
pub fn recurse_input(
    state: &SearchState,
    i_m: Subset,
    i_p: Subset,
    addable: &AddableSets,
    blocking: Subset,
) -> Result<SearchState> {
    let kept = addable.c & i_m;
    let matroid = Matroid::contracted(&state.matroid, kept);
    let poly = Polymatroid::contracted(&state.poly, scaled_indicator(state.n(), state.b, addable.a | blocking))?;
    let b0 = (state.b0 - i_m) | blocking;
    let mut order: Vec<usize> = state.order.iter().copied().filter(|&i| b0.contains(i)).collect();
    order.extend(blocking.iter());
    Ok(SearchState {
        ground: state.ground - kept,
        matroid,
        poly,
        b: state.b,
        i_m: i_m - kept,
        i_p: i_p - blocking,
        b0,
        order,
        eps: state.eps.clone(),
    })
}

/// One augmentation: either at least `ε²|B_0|` elements of `B_0` join `I_M` while everything
/// previously covered stays covered, or a certificate of infeasibility is returned.
pub fn augment(state: &SearchState) -> Result<AugmentResult> {
    state.check_input()?;
    let mut nodes = 0;
    let outcome = run(state, &mut nodes)?;
    Ok(AugmentResult { outcome, nodes })
}

fn success_ok(state: &SearchState, i_m: Subset) -> bool {
    at_least((i_m & state.b0).len(), &state.eps_sq(), state.b0.len())
}

fn run(state: &SearchState, nodes: &mut u64) -> Result<AugmentOutcome> {
    *nodes += 1;
    let eps = &state.eps;
    let eps_sq = state.eps_sq();
    let b0_len = state.b0.len();
    let mut i_m = state.i_m;
    let mut i_p = state.i_p;

    if at_least(state.rank_given(state.b0, i_m), &eps_sq, b0_len) {
        let i_m = state.greedy_add_b0(i_m);
        internal!(success_ok(state, i_m), "greedy addition missed the ε² target");
        return Ok(AugmentOutcome::Success { i_m, i_p });
    }

    let addable = build_addable(state);
    let a = addable.a;
    let c_core = addable.c - state.b0;
    internal!(
        Rational::from_integer(state.rank_given(state.b0, c_core).into())
            <= qi(2) * eps * Rational::from_integer(b0_len.into()),
        "r(B_0 | C) exceeds 2ε|B_0|"
    );
    let mut blocking = compute_blocking(state, i_p, a);
    let mut a_i = Subset::EMPTY;
    loop {
        // (1) grow the immediately addable set
        let view = CappedView::new(&state.poly, state.b, i_p | a_i);
        if let Some(i) = (a - a_i).iter().find(|&i| view.marginal_of(i) >= state.b) {
            a_i = a_i.with(i);
            continue;
        }
        // (2) commit once a sizeable part of A is addable
        if !a_i.is_empty() && at_least(a_i.len(), eps, a.len()) {
            state.check_poly(i_p | a_i)?;
            let before = (i_m & state.b0).len() as i64;
            let freed = state.rank_given(state.b0, i_m - a_i) as i64;
            internal!(
                Rational::from_integer((freed + before).into()) >= &eps_sq * Rational::from_integer(b0_len.into()),
                "removing A_I frees too little rank for B_0"
            );
            let new_m = state.greedy_add_b0(i_m - a_i);
            let new_p = i_p | a_i;
            internal!(success_ok(state, new_m), "commit missed the ε² target");
            state.check_feasible(new_m, new_p)?;
            return Ok(AugmentOutcome::Success { i_m: new_m, i_p: new_p });
        }
        internal!(
            Rational::from_integer(blocking.len().into())
                > (Rational::one() - qi(2) * eps) * Rational::from_integer(a.len().into())
                || a.is_empty(),
            "fewer blocking elements than (1 - 2ε)|A|"
        );
        // (3) too few blocking elements: fail with a certificate
        if !at_least(blocking.len(), eps, b0_len) {
            return Ok(AugmentOutcome::Failure(Certificate {
                z1: c_core | blocking,
                z2: a | blocking,
            }));
        }
        // (4) recurse on the blocking elements
        let child = recurse_input(state, i_m, i_p, &addable, blocking)?;
        child
            .check_input()
            .map_err(|e| crate::Error::Internal(format!("child state: {e}")))?;
        match run(&child, nodes)? {
            AugmentOutcome::Failure(cert) => {
                return Ok(AugmentOutcome::Failure(Certificate {
                    z1: (cert.z1 | c_core | blocking) - state.b0,
                    z2: cert.z2 | a | blocking,
                }));
            }
            AugmentOutcome::Success { i_m: m2, i_p: p2 } => {
                let kept = addable.c & i_m;
                i_m = kept | m2;
                i_p = (blocking - m2) | p2;
                state.check_feasible(i_m, i_p)?;
                state.check_poly(i_p | a_i)?;
                if success_ok(state, i_m) {
                    return Ok(AugmentOutcome::Success { i_m, i_p });
                }
                let next = compute_blocking(state, i_p, a);
                let shrunk = Rational::from_integer(next.len().into())
                    <= (Rational::one() - &eps_sq) * Rational::from_integer(blocking.len().into());
                internal!(
                    next.is_subset(blocking) && shrunk,
                    "blocking set did not shrink after recursion"
                );
                blocking = next;
            }
        }
    }
}
