use std::cmp::Ordering;

use super::matroid::Matroid;
use super::polymatroid::{capped_value, PolyKind, Polymatroid};
use crate::error::contract;
use crate::rational::Rational;
use crate::subset::Subset;
use crate::{caps, Error, Result};

/// Non-negative integer vector indexed by ground elements.
pub type IntVector = Vec<i64>;

/// `b·X`: value `b` on `X`, zero elsewhere.
pub fn scaled_indicator(n: usize, b: i64, x: Subset) -> IntVector {
    (0..n).map(|i| if x.contains(i) { b } else { 0 }).collect()
}

pub fn support(x: &[i64]) -> Subset {
    (0..x.len()).filter(|&i| x[i] > 0).collect()
}

pub fn vector_sum(x: &[i64], s: Subset) -> i64 {
    s.iter().map(|i| x[i]).sum()
}

/// Minimizes `g` over all subsets of `domain` by enumeration.
///
/// Ties go to the lexicographically smallest subset.
pub fn sfm_min<T: Ord>(domain: Subset, limit: usize, mut g: impl FnMut(Subset) -> T) -> Result<(Subset, T)> {
    if domain.len() > limit {
        return Err(Error::cap("submodular minimization ground", domain.len(), limit));
    }
    let mut best_set = Subset::EMPTY;
    let mut best = g(Subset::EMPTY);
    for s in domain.subsets().skip(1) {
        let v = g(s);
        match v.cmp(&best) {
            Ordering::Less => {
                best = v;
                best_set = s;
            }
            Ordering::Equal if s.lex_cmp(best_set) == Ordering::Less => best_set = s,
            _ => {}
        }
    }
    Ok((best_set, best))
}

fn check_vector(p: &Polymatroid, len: usize) -> Result<()> {
    contract!(
        len == p.ground_size(),
        "vector of length {len} for a ground set of size {}",
        p.ground_size()
    );
    Ok(())
}

/// `min_{S ⊆ domain} f(S) - x(S)`, split along the polymatroid's blocks.
fn min_slack(p: &Polymatroid, x: &[i64], domain: Subset) -> Result<i64> {
    let limit = caps::global().ground;
    let mut total = 0;
    for &block in p.blocks() {
        let d = block & domain;
        if d.is_empty() {
            continue;
        }
        let (_, v) = sfm_min(d, limit, |s| p.eval(s) - vector_sum(x, s))?;
        total += v;
    }
    Ok(total)
}

/// Membership of an integer vector, with the size cap surfaced as an error.
pub fn try_member(p: &Polymatroid, x: &[i64]) -> Result<bool> {
    check_vector(p, x.len())?;
    contract!(x.iter().all(|&v| v >= 0), "membership query with a negative entry");
    if let PolyKind::Modular { weights } = p.kind() {
        return Ok(x.iter().zip(weights).all(|(a, w)| a <= w));
    }
    // f is monotone, so a violated set can be shrunk into supp(x)
    Ok(min_slack(p, x, support(x))? >= 0)
}

/// `x ∈ P`, i.e. `x(S) <= f(S)` for every `S`.
pub fn member(p: &Polymatroid, x: &[i64]) -> bool {
    try_member(p, x).expect("membership query within caps")
}

pub fn is_basis(p: &Polymatroid, x: &[i64]) -> bool {
    member(p, x) && x.iter().sum::<i64>() == p.total()
}

/// Membership of a non-negative rational vector in the polytope of `p`.
pub fn member_rational(p: &Polymatroid, x: &[Rational]) -> Result<bool> {
    use num::{Signed, Zero};
    check_vector(p, x.len())?;
    contract!(
        x.iter().all(|v| !v.is_negative()),
        "membership query with a negative entry"
    );
    let supp: Subset = (0..x.len()).filter(|&i| !x[i].is_zero()).collect();
    let limit = caps::global().ground;
    for &block in p.blocks() {
        let d = block & supp;
        if d.is_empty() {
            continue;
        }
        let (_, v) = sfm_min(d, limit, |s| {
            Rational::from_integer(p.eval(s).into()) - s.iter().map(|i| &x[i]).sum::<Rational>()
        })?;
        if v.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fractional basis test: polytope membership and `x(E) = f(E)`.
pub fn is_basis_rational(p: &Polymatroid, x: &[Rational]) -> Result<bool> {
    Ok(member_rational(p, x)? && x.iter().sum::<Rational>() == Rational::from_integer(p.total().into()))
}

/// Smallest slack `f(S) - x(S)` over sets `S ∋ i`, with the intersection of all minimizers.
///
/// Assumes `x ∈ P`, so blocks other than `i`'s contribute nothing.
pub(crate) fn min_slack_containing(p: &Polymatroid, x: &[i64], i: usize) -> Result<(i64, Subset)> {
    let block = p.block_of(i);
    let rest = (block & support(x)).without(i);
    let limit = caps::global().ground;
    if rest.len() + 1 > limit {
        return Err(Error::cap("submodular minimization ground", rest.len() + 1, limit));
    }
    let mut best = i64::MAX;
    let mut meet = Subset::EMPTY;
    for s in rest.subsets() {
        let s = s.with(i);
        let v = p.eval(s) - vector_sum(x, s);
        match v.cmp(&best) {
            Ordering::Less => {
                best = v;
                meet = s;
            }
            Ordering::Equal => meet = meet & s,
            Ordering::Greater => {}
        }
    }
    Ok((best, meet))
}

/// Raises elements in index order as far as membership allows; the result is a basis `y >= x`.
pub fn greedy_basis_above(p: &Polymatroid, x: &[i64]) -> Result<IntVector> {
    contract!(
        try_member(p, x)?,
        "greedy_basis_above needs a member of the polymatroid"
    );
    let mut y = x.to_vec();
    for i in 0..y.len() {
        let (room, _) = min_slack_containing(p, &y, i)?;
        y[i] += room;
    }
    Ok(y)
}

/// Scans `candidates` in order, keeping each that stays independent together with `base`.
pub fn matroid_add_greedy(m: &Matroid, base: Subset, candidates: &[usize]) -> Result<Subset> {
    contract!(m.is_independent(base), "matroid_add_greedy needs an independent start");
    let mut cur = base;
    for &c in candidates {
        if !cur.contains(c) && m.rank(cur.with(c)) == cur.len() + 1 {
            cur = cur.with(c);
        }
    }
    Ok(cur)
}

/// The dual polymatroid `g(S) = z(S) + f(E \ S) - f(E)`.
pub fn dual_polymatroid(p: &Polymatroid, z: &[i64]) -> Result<Polymatroid> {
    Polymatroid::dual(p, z.to_vec())
}

/// `f(Y | b·X)`: the marginal of `Y \ X` over `X` once every element of `X` is capped at `b`.
pub fn capped_marginal(p: &Polymatroid, y: Subset, b: i64, x: Subset) -> i64 {
    CappedView::new(p, b, x).marginal(y)
}

/// `f` capped at `b` on `X`, with the value at `X` cached for repeated marginal queries.
pub struct CappedView<'a> {
    p: &'a Polymatroid,
    b: i64,
    x: Subset,
    at_x: i64,
}

impl<'a> CappedView<'a> {
    pub fn new(p: &'a Polymatroid, b: i64, x: Subset) -> CappedView<'a> {
        let at_x = capped_value(p, x, x, |_| b);
        CappedView { p, b, x, at_x }
    }

    /// Capped value `min_{T ⊆ S ∩ X} f(S \ T) + b|T|`.
    pub fn eval(&self, s: Subset) -> i64 {
        capped_value(self.p, s, self.x, |_| self.b)
    }

    pub fn marginal(&self, y: Subset) -> i64 {
        self.eval((y - self.x) | self.x) - self.at_x
    }

    pub fn marginal_of(&self, i: usize) -> i64 {
        self.marginal(Subset::singleton(i))
    }
}
