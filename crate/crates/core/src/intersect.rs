//! Matroid intersection, integer polymatroid intersection and basis decomposition.
//!
//! Everything runs on one augmenting-path engine. For a polymatroid with box caps the engine
//! works on element types instead of materialized copies: the exchange graph of the unit
//! expansion only depends on how many copies of each element are in the current set, so the
//! copies of an element collapse into one "in" node and one "out" node. Shortest paths in the
//! collapsed graph are shortest paths in the expanded one.

use std::collections::VecDeque;

use crate::error::contract;
use crate::polycore::{is_basis, member, min_slack_containing, support, IntVector, Matroid, Polymatroid};
use crate::subset::{Subset, MAX_GROUND};
use crate::{caps, Error, Result};

/// Parallel copies of a ground set; copy `c` stands for element `owner[c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedGround {
    pub multiplicity: Vec<usize>,
    pub owner: Vec<usize>,
}

impl ExpandedGround {
    pub fn new(multiplicity: Vec<usize>) -> ExpandedGround {
        let owner = multiplicity
            .iter()
            .enumerate()
            .flat_map(|(e, &k)| std::iter::repeat_n(e, k))
            .collect();
        ExpandedGround { multiplicity, owner }
    }

    pub fn size(&self) -> usize {
        self.owner.len()
    }

    pub fn copies_of(&self, e: usize) -> Subset {
        (0..self.owner.len()).filter(|&c| self.owner[c] == e).collect()
    }

    /// Per-element copy counts of a copy set.
    pub fn counts(&self, s: Subset) -> IntVector {
        let mut counts = vec![0; self.multiplicity.len()];
        for c in s {
            counts[self.owner[c]] += 1;
        }
        counts
    }
}

/// The matroid on `caps(i)` parallel copies of each element whose independent copy sets are
/// those with count vector in `p`.
pub fn unit_expand(p: &Polymatroid, caps: &[i64]) -> Result<(ExpandedGround, Matroid)> {
    contract!(caps.len() == p.ground_size(), "cap vector length mismatch");
    contract!(caps.iter().all(|&c| c >= 0), "negative cap");
    let size: i64 = caps.iter().sum();
    let limit = caps::global().expansion.min(MAX_GROUND);
    if size as usize > limit {
        return Err(Error::cap("unit expansion", size, limit));
    }
    let ground = ExpandedGround::new(caps.iter().map(|&c| c as usize).collect());
    let m = Matroid::expanded(p, ground.owner.clone());
    Ok((ground, m))
}

/// A vector in two polymatroids at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonVector {
    pub x: IntVector,
    /// Set when no augmenting path remains, i.e. `x(E)` is maximum.
    pub maximal: bool,
}

/// Exchange information of a downward-closed family at a member `x`.
trait Exchange {
    /// `None` when `x + χ_f` stays feasible, otherwise the elements `e` for which
    /// `x - χ_e + χ_f` is feasible.
    fn exchange(&self, x: &[i64], f: usize) -> Result<Option<Subset>>;
}

impl Exchange for Polymatroid {
    fn exchange(&self, x: &[i64], f: usize) -> Result<Option<Subset>> {
        let (slack, tight) = min_slack_containing(self, x, f)?;
        Ok((slack <= 0).then_some(tight))
    }
}

impl Exchange for Matroid {
    fn exchange(&self, x: &[i64], f: usize) -> Result<Option<Subset>> {
        let cur = support(x);
        if self.rank(cur.with(f)) > cur.len() {
            return Ok(None);
        }
        let circuit = cur
            .iter()
            .filter(|&e| self.rank(cur.without(e).with(f)) == cur.len())
            .collect::<Subset>()
            .with(f);
        Ok(Some(circuit))
    }
}

/// Grows `x` along shortest augmenting paths until none is left.
fn augment_to_max(caps: &[i64], first: &dyn Exchange, second: &dyn Exchange, x: &mut IntVector) -> Result<()> {
    let n = caps.len();
    loop {
        let open: Vec<bool> = (0..n).map(|f| x[f] < caps[f]).collect();
        let mut ex1 = vec![None; n];
        let mut ex2 = vec![None; n];
        for f in (0..n).filter(|&f| open[f]) {
            ex1[f] = Some(first.exchange(x, f)?);
            ex2[f] = Some(second.exchange(x, f)?);
        }
        // node f: a copy of f outside the set; node n + e: a copy of e inside it
        let mut parent = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        let mut queue = VecDeque::new();
        for f in (0..n).filter(|&f| open[f] && matches!(ex1[f], Some(None))) {
            seen[f] = true;
            queue.push_back(f);
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if v < n {
                let Some(Some(tight)) = &ex2[v] else {
                    end = Some(v);
                    break;
                };
                for e in tight.iter().filter(|&e| x[e] > 0) {
                    if !seen[n + e] {
                        seen[n + e] = true;
                        parent[n + e] = v;
                        queue.push_back(n + e);
                    }
                }
            } else {
                let e = v - n;
                for f in 0..n {
                    if seen[f] || !open[f] {
                        continue;
                    }
                    if let Some(Some(tight)) = &ex1[f] {
                        if tight.contains(e) {
                            seen[f] = true;
                            parent[f] = v;
                            queue.push_back(f);
                        }
                    }
                }
            }
        }
        let Some(mut v) = end else {
            return Ok(());
        };
        loop {
            if v < n {
                x[v] += 1;
            } else {
                x[v - n] -= 1;
            }
            if parent[v] == usize::MAX {
                break;
            }
            v = parent[v];
        }
    }
}

/// A maximum-cardinality common independent set.
pub fn matroid_intersection_max(m1: &Matroid, m2: &Matroid) -> Result<Subset> {
    contract!(
        m1.ground_size() == m2.ground_size(),
        "matroids on different ground sets"
    );
    let n = m1.ground_size();
    let mut x = vec![0; n];
    augment_to_max(&vec![1; n], m1, m2, &mut x)?;
    Ok(support(&x))
}

/// A vector `x <= caps` of maximum size in both polymatroids.
pub fn polymatroid_intersection_max(p1: &Polymatroid, p2: &Polymatroid, caps: &[i64]) -> Result<CommonVector> {
    contract!(
        p1.ground_size() == p2.ground_size() && caps.len() == p1.ground_size(),
        "polymatroids and caps on different ground sets"
    );
    contract!(caps.iter().all(|&c| c >= 0), "negative cap");
    let mut x = vec![0; caps.len()];
    augment_to_max(caps, p1, p2, &mut x)?;
    debug_assert!(member(p1, &x) && member(p2, &x));
    Ok(CommonVector { x, maximal: true })
}

/// Splits a basis `y` of `Σ parts` into bases `y_j` of the parts with `Σ y_j = y`.
///
/// Works on one copy of the ground set per part: the direct sum of the parts is intersected
/// with the polymatroid that lets the copies of `e` share `y(e)`.
pub fn decompose_merged_basis(parts: &[Polymatroid], y: &[i64]) -> Result<Vec<IntVector>> {
    let n = y.len();
    contract!(!parts.is_empty(), "nothing to decompose into");
    contract!(
        parts.iter().all(|p| p.ground_size() == n),
        "parts and vector on different ground sets"
    );
    let total = Polymatroid::sum(n, parts.to_vec())?;
    contract!(
        is_basis(&total, y),
        "vector {y:?} is not a basis of the summed polymatroid"
    );
    if parts.len() == 1 {
        return Ok(vec![y.to_vec()]);
    }
    let k = parts.len();
    if k * n > MAX_GROUND {
        return Err(Error::cap("decomposition copies", k * n, MAX_GROUND));
    }
    let copy = |j: usize, e: usize| j * n + e;
    let blocks = parts
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let map = (0..k * n).map(|c| (c / n == j).then_some(c % n)).collect();
            Polymatroid::mapped(p, map)
        })
        .collect::<Result<Vec<_>>>()?;
    let left = Polymatroid::sum(k * n, blocks)?;
    let right = Polymatroid::coverage((0..k * n).map(|c| vec![c % n]).collect(), y.to_vec())?;
    let caps: Vec<i64> = (0..k * n)
        .map(|c| y[c % n].min(parts[c / n].singleton(c % n)))
        .collect();
    let common = polymatroid_intersection_max(&left, &right, &caps)?;
    let found: i64 = common.x.iter().sum();
    contract!(
        found == y.iter().sum::<i64>(),
        "no decomposition reaches the full vector ({found} of {})",
        y.iter().sum::<i64>()
    );
    let out: Vec<IntVector> = (0..k).map(|j| (0..n).map(|e| common.x[copy(j, e)]).collect()).collect();
    for (j, (p, v)) in parts.iter().zip(&out).enumerate() {
        contract!(is_basis(p, v), "decomposed part {j} is not a basis");
    }
    Ok(out)
}
