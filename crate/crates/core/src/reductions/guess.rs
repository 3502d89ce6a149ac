use std::collections::BTreeSet;

use num::Zero;

use crate::caps;
use crate::instances::AllocInstance;
use crate::rational::Rational;
use crate::{Error, Result};

/// Outcome of a binary search over a sorted grid of guesses.
#[derive(Clone, Debug)]
pub struct GuessResult<S> {
    /// The largest accepted guess and its solution, if any guess was accepted.
    pub best: Option<(Rational, S)>,
    /// Guesses tried, in order.
    pub tried: Vec<Rational>,
    /// Set when nothing was accepted.
    pub diagnostic: Option<String>,
}

/// Binary search for the largest guess on `grid` (ascending) that `solver` accepts, assuming
/// acceptance is monotone.
pub fn guess_loop<S>(
    grid: &[Rational],
    solver: &mut dyn FnMut(&Rational) -> Result<Option<S>>,
) -> Result<GuessResult<S>> {
    let mut tried = Vec::new();
    let mut best = None;
    let (mut lo, mut hi) = (0usize, grid.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let t = &grid[mid];
        tried.push(t.clone());
        match solver(t)? {
            Some(s) => {
                best = Some((t.clone(), s));
                lo = mid + 1;
            }
            None => hi = mid,
        }
    }
    let diagnostic = best.is_none().then(|| match grid.first() {
        Some(t) => format!("no guess accepted; the smallest, {t}, was rejected"),
        None => "no guesses to try".to_string(),
    });
    Ok(GuessResult {
        best,
        tried,
        diagnostic,
    })
}

/// Every value a player can reach: subset sums of the distinct finite values, times the
/// multiplicities an item may carry, including 0.
///
/// A superset of the values the optimum can take, for either objective.
pub fn value_grid(inst: &AllocInstance) -> Result<Vec<Rational>> {
    inst.validate()?;
    let limit = caps::global().guess_grid;
    let mut sums: BTreeSet<Rational> = BTreeSet::new();
    sums.insert(Rational::zero());
    let reach = |j: usize| -> i64 {
        let it = &inst.items[j];
        match &it.polymatroid {
            None => 1,
            Some(p) => (0..p.ground_size()).map(|e| p.singleton(e)).max().unwrap_or(0),
        }
    };
    for (j, it) in inst.items.iter().enumerate() {
        let mut values: BTreeSet<Rational> = BTreeSet::new();
        for i in 0..inst.entities {
            if let Some(v) = it.value(i) {
                if !v.is_zero() {
                    values.insert(v.clone());
                }
            }
        }
        let copies = reach(j);
        let mut next = sums.clone();
        for v in &values {
            for k in 1..=copies {
                let add = v * Rational::from_integer(k.into());
                for s in &sums {
                    next.insert(s + &add);
                    if next.len() > limit {
                        return Err(Error::cap("guess grid", next.len(), limit));
                    }
                }
            }
        }
        sums = next;
    }
    Ok(sums.into_iter().collect())
}
