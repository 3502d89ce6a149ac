use crate::caps;
use crate::instances::CoreCoverInstance;
use crate::polycore::{scaled_indicator, IntVector, Matroid, Polymatroid};
use crate::rational::Rational;
use crate::subset::Subset;
use crate::{Error, Result};

/// Largest achievable cover value; `Unbounded` when the matroid alone covers everything.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoverValue {
    Finite(i64),
    Unbounded,
}

/// `h[S] = min_{∅ ≠ T ⊆ S} ⌊f(T)/|T|⌋`, the largest `b` with `b·S ∈ P` (`i64::MAX` at `∅`).
fn uniform_level_table(p: &Polymatroid) -> Result<Vec<i64>> {
    let n = p.ground_size();
    let size = 1u128 << n;
    let limit = caps::global().enum_classical;
    if size > limit {
        return Err(Error::cap("cover enumeration", size, limit));
    }
    let mut h = vec![i64::MAX; 1usize << n];
    for mask in 1..h.len() {
        let s = Subset::from_bits(mask as u64);
        let mut best = p.eval(s).div_euclid(s.len() as i64);
        for i in s {
            best = best.min(h[s.without(i).bits() as usize]);
        }
        h[mask] = best;
    }
    Ok(h)
}

fn independent_sets(inst: &CoreCoverInstance) -> impl Iterator<Item = Subset> + '_ {
    inst.matroid
        .ground()
        .subsets()
        .filter(|&s| inst.matroid.is_independent(s))
}

/// Largest `b` for which some independent `I_M` and `y ∈ P` cover every element.
pub fn brute_max_cover_b(inst: &CoreCoverInstance) -> Result<CoverValue> {
    let h = uniform_level_table(&inst.polymatroid)?;
    let ground = inst.matroid.ground();
    let mut best = 0;
    for i in independent_sets(inst) {
        let rest = ground - i;
        if rest.is_empty() {
            return Ok(CoverValue::Unbounded);
        }
        best = best.max(h[rest.bits() as usize]);
    }
    Ok(CoverValue::Finite(best))
}

/// A cover `(I_M, y)` at value `b`, choosing the lexicographically first independent set.
pub fn brute_cover(inst: &CoreCoverInstance, b: i64) -> Result<Option<(Subset, IntVector)>> {
    let h = uniform_level_table(&inst.polymatroid)?;
    let n = inst.ground_size();
    let ground = inst.matroid.ground();
    let mut found: Option<Subset> = None;
    for i in independent_sets(inst) {
        if h[(ground - i).bits() as usize] >= b && found.is_none_or(|f| i.lex_cmp(f) == std::cmp::Ordering::Less) {
            found = Some(i);
        }
    }
    Ok(found.map(|i| (i, scaled_indicator(n, b, ground - i))))
}

/// Whether some independent `I` with `|I ∩ b0| >= min_hits` leaves `ground \ (I ∪ b0)`
/// coverable at the rational level `level`, i.e. `level·|T| <= f(T)` for all `T` in the rest.
pub fn cover_exists_at_level(
    m: &Matroid,
    p: &Polymatroid,
    ground: Subset,
    level: &Rational,
    b0: Subset,
    min_hits: usize,
) -> Result<bool> {
    let n = p.ground_size();
    let size = 1u128 << n;
    let limit = caps::global().enum_classical;
    if size > limit {
        return Err(Error::cap("cover enumeration", size, limit));
    }
    // ok[S]: every non-empty T ⊆ S has f(T) >= level·|T|
    let mut ok = vec![true; 1usize << n];
    for mask in 1..ok.len() {
        let s = Subset::from_bits(mask as u64);
        ok[mask] = Rational::from_integer(p.eval(s).into()) >= level * Rational::from_integer((s.len() as i64).into())
            && s.iter().all(|i| ok[s.without(i).bits() as usize]);
    }
    for i in ground.subsets() {
        if (i & b0).len() < min_hits || !m.is_independent(i) {
            continue;
        }
        if ok[(ground - i - b0).bits() as usize] {
            return Ok(true);
        }
    }
    Ok(false)
}
