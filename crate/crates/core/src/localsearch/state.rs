use num::Zero;

use crate::error::{contract, internal};
use crate::polycore::{member, scaled_indicator, Matroid, Polymatroid};
use crate::rational::Rational;
use crate::subset::Subset;
use crate::Result;

/// Input of one augmentation call.
#[derive(Clone, Debug)]
pub struct SearchState {
    /// Elements in play; everything else is ignored.
    pub ground: Subset,
    pub matroid: Matroid,
    pub poly: Polymatroid,
    pub b: i64,
    pub i_m: Subset,
    pub i_p: Subset,
    pub b0: Subset,
    /// Priority list over `b0`, highest first.
    pub order: Vec<usize>,
    pub eps: Rational,
}

/// `count >= coef · size`, exactly.
pub(crate) fn at_least(count: usize, coef: &Rational, size: usize) -> bool {
    Rational::from_integer(count.into()) >= coef * Rational::from_integer(size.into())
}

impl SearchState {
    pub fn n(&self) -> usize {
        self.matroid.ground_size()
    }

    /// `r(y | x)`.
    pub fn rank_given(&self, y: Subset, x: Subset) -> usize {
        self.matroid.rank(y | x) - self.matroid.rank(x)
    }

    pub fn eps_sq(&self) -> Rational {
        &self.eps * &self.eps
    }

    /// Input contract: disjoint sets inside the ground set, `I_M` independent, `b·I_P ∈ P`.
    pub fn check_input(&self) -> Result<()> {
        contract!(self.b >= 1, "b must be at least 1");
        contract!(
            self.eps > Rational::zero() && self.eps <= Rational::new(1.into(), 8.into()),
            "ε must lie in (0, 1/8]"
        );
        contract!(
            self.poly.ground_size() == self.n(),
            "matroid and polymatroid on different ground sets"
        );
        contract!(
            (self.i_m | self.i_p | self.b0).is_subset(self.ground),
            "state sets leave the ground set"
        );
        contract!(
            self.i_m.is_disjoint(self.i_p) && self.i_m.is_disjoint(self.b0) && self.i_p.is_disjoint(self.b0),
            "I_M, I_P and B_0 must be disjoint"
        );
        contract!(!self.b0.is_empty(), "B_0 must not be empty");
        contract!(
            self.order.len() == self.b0.len() && self.order.iter().all(|&i| self.b0.contains(i)),
            "the priority order must list B_0"
        );
        self.check_feasible(self.i_m, self.i_p)
    }

    /// `I_M` independent and `b·I_P` in the polymatroid.
    pub(crate) fn check_feasible(&self, i_m: Subset, i_p: Subset) -> Result<()> {
        internal!(i_m.is_disjoint(i_p), "I_M and I_P overlap");
        internal!(self.matroid.is_independent(i_m), "I_M is not independent");
        self.check_poly(i_p)
    }

    /// `b·s` in the polymatroid.
    pub(crate) fn check_poly(&self, s: Subset) -> Result<()> {
        internal!(
            member(&self.poly, &scaled_indicator(self.n(), self.b, s)),
            "b·I_P left the polymatroid"
        );
        Ok(())
    }

    /// Adds elements of `B_0` to `i_m` in priority order while independence allows.
    pub(crate) fn greedy_add_b0(&self, i_m: Subset) -> Subset {
        let mut cur = i_m;
        for &i in &self.order {
            if !cur.contains(i) && self.matroid.rank(cur.with(i)) == cur.len() + 1 {
                cur = cur.with(i);
            }
        }
        cur
    }
}
