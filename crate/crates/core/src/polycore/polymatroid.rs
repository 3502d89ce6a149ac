use std::fmt;
use std::sync::{Arc, OnceLock};

use super::matroid::{check_subset, Matroid};
use super::memo::Memo;
use crate::subset::{Subset, MAX_GROUND};
use crate::{Error, Result};

/// Integer polymatroid given by a monotone submodular value oracle.
#[derive(Clone)]
pub struct Polymatroid {
    node: Arc<Node>,
}

struct Node {
    n: usize,
    kind: PolyKind,
    memo: Memo,
    blocks: OnceLock<Vec<Subset>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PolyKind {
    Modular {
        weights: Vec<i64>,
    },
    /// Element `i` covers the items `covers[i]`; `f(S)` is the weight of the items covered by `S`.
    Coverage {
        covers: Vec<Vec<usize>>,
        weights: Vec<i64>,
    },
    ScaledRank {
        matroid: Matroid,
        scale: i64,
    },
    Explicit {
        table: Vec<i64>,
    },
    Sum {
        parts: Vec<Polymatroid>,
    },
    /// `c·f`.
    Scaled {
        inner: Polymatroid,
        scale: i64,
    },
    /// `f'(S) = min_{T ⊆ S} f(S \ T) + c(T)`; `None` leaves an element uncapped.
    Capped {
        inner: Polymatroid,
        caps: Vec<Option<i64>>,
    },
    /// Marginal above the base vector `y`: with `X = supp(y)` and `f^y` the cap of `f` at `y`
    /// on `X`, `f'(S) = f^y((S \ X) ∪ X) - f^y(X)`.
    Contracted {
        inner: Polymatroid,
        base: Vec<i64>,
    },
    /// `g(S) = z(S) + f(E \ S) - f(E)`.
    Dual {
        inner: Polymatroid,
        z: Vec<i64>,
    },
    /// `g(S) = f(π(S))` where `π(i) = map[i]`; unmapped elements contribute nothing.
    Mapped {
        inner: Polymatroid,
        map: Vec<Option<usize>>,
    },
}

impl Polymatroid {
    fn build(n: usize, kind: PolyKind) -> Polymatroid {
        assert!(n <= MAX_GROUND, "ground set of size {n} exceeds {MAX_GROUND}");
        Polymatroid {
            node: Arc::new(Node {
                n,
                kind,
                memo: Memo::new(n),
                blocks: OnceLock::new(),
            }),
        }
    }

    pub fn modular(weights: Vec<i64>) -> Result<Polymatroid> {
        check_len(weights.len())?;
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::InvalidInput("negative modular weight".into()));
        }
        Ok(Polymatroid::build(weights.len(), PolyKind::Modular { weights }))
    }

    pub fn zero(n: usize) -> Polymatroid {
        Polymatroid::build(n, PolyKind::Modular { weights: vec![0; n] })
    }

    pub fn coverage(covers: Vec<Vec<usize>>, weights: Vec<i64>) -> Result<Polymatroid> {
        check_len(covers.len())?;
        if covers.iter().flatten().any(|&item| item >= weights.len()) {
            return Err(Error::InvalidInput("coverage references an unknown item".into()));
        }
        if weights.iter().any(|&w| w < 0) {
            return Err(Error::InvalidInput("negative coverage weight".into()));
        }
        Ok(Polymatroid::build(covers.len(), PolyKind::Coverage { covers, weights }))
    }

    pub fn scaled_rank(matroid: &Matroid, scale: i64) -> Result<Polymatroid> {
        if scale < 0 {
            return Err(Error::InvalidInput("negative rank scale".into()));
        }
        Ok(Polymatroid::build(
            matroid.ground_size(),
            PolyKind::ScaledRank {
                matroid: matroid.clone(),
                scale,
            },
        ))
    }

    /// Value table indexed by bitmask.
    pub fn explicit(n: usize, table: Vec<i64>) -> Result<Polymatroid> {
        check_len(n)?;
        if n > 20 || table.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "explicit table for n = {n} has {} entries",
                table.len()
            )));
        }
        if table[0] != 0 || table.iter().any(|&v| v < 0) {
            return Err(Error::InvalidInput(
                "explicit table must be non-negative with f(∅) = 0".into(),
            ));
        }
        Ok(Polymatroid::build(n, PolyKind::Explicit { table }))
    }

    pub fn sum(n: usize, parts: Vec<Polymatroid>) -> Result<Polymatroid> {
        check_len(n)?;
        if parts.iter().any(|p| p.ground_size() != n) {
            return Err(Error::InvalidInput("summands disagree on the ground set".into()));
        }
        Ok(Polymatroid::build(n, PolyKind::Sum { parts }))
    }

    pub fn scaled(inner: &Polymatroid, scale: i64) -> Result<Polymatroid> {
        if scale < 0 {
            return Err(Error::InvalidInput("negative scale".into()));
        }
        Ok(Polymatroid::build(
            inner.ground_size(),
            PolyKind::Scaled {
                inner: inner.clone(),
                scale,
            },
        ))
    }

    pub fn capped(inner: &Polymatroid, caps: Vec<Option<i64>>) -> Result<Polymatroid> {
        if caps.len() != inner.ground_size() {
            return Err(Error::InvalidInput("cap vector length mismatch".into()));
        }
        if caps.iter().flatten().any(|&c| c < 0) {
            return Err(Error::InvalidInput("negative cap".into()));
        }
        Ok(Polymatroid::build(
            inner.ground_size(),
            PolyKind::Capped {
                inner: inner.clone(),
                caps,
            },
        ))
    }

    /// Caps every element at `c`.
    pub fn capped_uniform(inner: &Polymatroid, c: i64) -> Result<Polymatroid> {
        Polymatroid::capped(inner, vec![Some(c); inner.ground_size()])
    }

    pub fn contracted(inner: &Polymatroid, base: Vec<i64>) -> Result<Polymatroid> {
        if base.len() != inner.ground_size() {
            return Err(Error::InvalidInput("base vector length mismatch".into()));
        }
        if base.iter().any(|&c| c < 0) {
            return Err(Error::InvalidInput("negative base entry".into()));
        }
        Ok(Polymatroid::build(
            inner.ground_size(),
            PolyKind::Contracted {
                inner: inner.clone(),
                base,
            },
        ))
    }

    pub fn dual(inner: &Polymatroid, z: Vec<i64>) -> Result<Polymatroid> {
        if z.len() != inner.ground_size() {
            return Err(Error::InvalidInput("dual vector length mismatch".into()));
        }
        Ok(Polymatroid::build(
            inner.ground_size(),
            PolyKind::Dual {
                inner: inner.clone(),
                z,
            },
        ))
    }

    pub fn mapped(inner: &Polymatroid, map: Vec<Option<usize>>) -> Result<Polymatroid> {
        check_len(map.len())?;
        if map.iter().flatten().any(|&e| e >= inner.ground_size()) {
            return Err(Error::InvalidInput("map target out of range".into()));
        }
        Ok(Polymatroid::build(
            map.len(),
            PolyKind::Mapped {
                inner: inner.clone(),
                map,
            },
        ))
    }

    pub fn ground_size(&self) -> usize {
        self.node.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.node.n)
    }

    pub fn kind(&self) -> &PolyKind {
        &self.node.kind
    }

    /// Number of evaluations answered by this handle, cache hits included.
    pub fn queries(&self) -> u64 {
        self.node.memo.queries()
    }

    /// `f(s)`. Panics when `s` leaves the ground set; see [`Polymatroid::try_eval`].
    pub fn eval(&self, s: Subset) -> i64 {
        assert!(
            s.within(self.node.n),
            "subset {s:?} out of range for ground size {}",
            self.node.n
        );
        self.node.memo.get_or(s.bits(), || self.compute(s))
    }

    pub fn try_eval(&self, s: Subset) -> Result<i64> {
        check_subset(s, self.node.n)?;
        Ok(self.eval(s))
    }

    pub fn singleton(&self, i: usize) -> i64 {
        self.eval(Subset::singleton(i))
    }

    pub fn total(&self) -> i64 {
        self.eval(self.ground())
    }

    /// Partition of the ground set into blocks with `f(S) = Σ_B f(S ∩ B)`.
    pub fn blocks(&self) -> &[Subset] {
        self.node.blocks.get_or_init(|| self.compute_blocks())
    }

    /// Block containing `i`.
    pub fn block_of(&self, i: usize) -> Subset {
        *self
            .blocks()
            .iter()
            .find(|b| b.contains(i))
            .expect("blocks cover the ground set")
    }

    fn compute(&self, s: Subset) -> i64 {
        match &self.node.kind {
            PolyKind::Modular { weights } => s.iter().map(|i| weights[i]).sum(),
            PolyKind::Coverage { covers, weights } => {
                let mut hit = vec![false; weights.len()];
                let mut total = 0;
                for i in s {
                    for &item in &covers[i] {
                        if !hit[item] {
                            hit[item] = true;
                            total += weights[item];
                        }
                    }
                }
                total
            }
            PolyKind::ScaledRank { matroid, scale } => scale * matroid.rank(s) as i64,
            PolyKind::Explicit { table } => table[s.bits() as usize],
            PolyKind::Sum { parts } => parts.iter().map(|p| p.eval(s)).sum(),
            PolyKind::Scaled { inner, scale } => scale * inner.eval(s),
            PolyKind::Capped { inner, caps } => {
                let capped: Subset = (0..caps.len()).filter(|&i| caps[i].is_some()).collect();
                capped_value(inner, s, capped, |i| caps[i].unwrap_or(i64::MAX))
            }
            PolyKind::Contracted { inner, base } => {
                let x: Subset = (0..base.len()).filter(|&i| base[i] > 0).collect();
                let cap = |i: usize| base[i];
                capped_value(inner, (s - x) | x, x, cap) - capped_value(inner, x, x, cap)
            }
            PolyKind::Dual { inner, z } => {
                let e = self.ground();
                s.iter().map(|i| z[i]).sum::<i64>() + inner.eval(e - s) - inner.eval(e)
            }
            PolyKind::Mapped { inner, map } => inner.eval(s.iter().filter_map(|i| map[i]).collect()),
        }
    }

    fn compute_blocks(&self) -> Vec<Subset> {
        let n = self.node.n;
        let mut uf = UnionFind::new(n);
        match &self.node.kind {
            PolyKind::Modular { .. } => {}
            PolyKind::Coverage { covers, weights } => {
                let mut first: Vec<Option<usize>> = vec![None; weights.len()];
                for (i, items) in covers.iter().enumerate() {
                    for &item in items {
                        match first[item] {
                            Some(j) => uf.union(i, j),
                            None => first[item] = Some(i),
                        }
                    }
                }
            }
            PolyKind::ScaledRank { .. } | PolyKind::Explicit { .. } => {
                for i in 1..n {
                    uf.union(0, i);
                }
            }
            PolyKind::Sum { parts } => {
                for p in parts {
                    for b in p.blocks() {
                        join(&mut uf, *b);
                    }
                }
            }
            PolyKind::Scaled { inner, .. }
            | PolyKind::Capped { inner, .. }
            | PolyKind::Contracted { inner, .. }
            | PolyKind::Dual { inner, .. } => {
                for b in inner.blocks() {
                    join(&mut uf, *b);
                }
            }
            PolyKind::Mapped { inner, map } => {
                for b in inner.blocks() {
                    join(
                        &mut uf,
                        (0..n).filter(|&i| map[i].is_some_and(|e| b.contains(e))).collect(),
                    );
                }
            }
        }
        uf.classes()
    }
}

/// `min_{T ⊆ s ∩ capped} f(s \ T) + Σ_{t∈T} cap(t)`.
///
/// Elements whose cap is at least their singleton value never help and are skipped.
pub(crate) fn capped_value(f: &Polymatroid, s: Subset, capped: Subset, cap: impl Fn(usize) -> i64) -> i64 {
    let active: Subset = (s & capped).iter().filter(|&i| cap(i) < f.singleton(i)).collect();
    active
        .subsets()
        .map(|t| f.eval(s - t) + t.iter().map(&cap).sum::<i64>())
        .min()
        .unwrap_or(0)
}

impl PartialEq for Polymatroid {
    fn eq(&self, other: &Polymatroid) -> bool {
        Arc::ptr_eq(&self.node, &other.node) || (self.node.n == other.node.n && self.node.kind == other.node.kind)
    }
}

impl fmt::Debug for Polymatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polymatroid")
            .field("n", &self.node.n)
            .field("kind", &self.node.kind)
            .finish()
    }
}

fn check_len(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::cap("ground set", n, MAX_GROUND));
    }
    Ok(())
}

fn join(uf: &mut UnionFind, b: Subset) {
    if let Some(first) = b.min_element() {
        for i in b {
            uf.union(first, i);
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.0[v] != v {
            self.0[v] = self.0[self.0[v]];
            v = self.0[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self) -> Vec<Subset> {
        let n = self.0.len();
        let mut out: Vec<Subset> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.find(i);
            if index[r] == usize::MAX {
                index[r] = out.len();
                out.push(Subset::EMPTY);
            }
            out[index[r]] = out[index[r]].with(i);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[usize]) -> Subset {
        items.iter().collect()
    }

    #[test]
    fn modular_sums_weights() {
        let p = Polymatroid::modular(vec![2, 2, 2]).unwrap();
        assert_eq!(p.eval(s(&[0, 2])), 4);
        assert_eq!(p.blocks().len(), 3);
    }

    #[test]
    fn capped_step_function() {
        // f(S) = 3·[S ≠ ∅] on {a, b}, cap 2 on a
        let f = Polymatroid::coverage(vec![vec![0], vec![0]], vec![3]).unwrap();
        let c = Polymatroid::capped(&f, vec![Some(2), None]).unwrap();
        assert_eq!(c.eval(s(&[0])), 2);
        assert_eq!(c.eval(s(&[0, 1])), 3);
        assert_eq!(c.eval(s(&[1])), 3);
    }

    #[test]
    fn dual_formula() {
        let f = Polymatroid::scaled_rank(&Matroid::uniform(2, 1), 1).unwrap();
        let g = Polymatroid::dual(&f, vec![1, 1]).unwrap();
        assert_eq!(g.eval(s(&[0])), 1);
        assert_eq!(g.eval(s(&[1])), 1);
        assert_eq!(g.eval(s(&[0, 1])), 1);
        let tight = Polymatroid::dual(&Polymatroid::modular(vec![2]).unwrap(), vec![2]).unwrap();
        assert_eq!(tight.eval(s(&[0])), 0);
    }

    #[test]
    fn contracted_marginal_above_base() {
        let f = Polymatroid::coverage(vec![vec![0], vec![0]], vec![3]).unwrap();
        let c = Polymatroid::contracted(&f, vec![2, 0]).unwrap();
        assert_eq!(c.eval(s(&[1])), 1);
        assert_eq!(c.eval(s(&[0])), 0);
        assert_eq!(c.eval(s(&[0, 1])), 1);
    }

    #[test]
    fn coverage_blocks_follow_shared_items() {
        let f = Polymatroid::coverage(vec![vec![0], vec![0, 1], vec![2], vec![]], vec![1, 1, 1]).unwrap();
        assert_eq!(f.blocks(), &[s(&[0, 1]), s(&[2]), s(&[3])]);
        let sum = Polymatroid::sum(4, vec![f.clone(), Polymatroid::modular(vec![1; 4]).unwrap()]).unwrap();
        assert_eq!(sum.blocks(), f.blocks());
    }

    #[test]
    fn mapped_pulls_back_blocks() {
        let inner = Polymatroid::modular(vec![1, 1]).unwrap();
        let m = Polymatroid::mapped(&inner, vec![Some(0), Some(0), Some(1), None]).unwrap();
        assert_eq!(m.eval(s(&[0, 1])), 1);
        assert_eq!(m.eval(s(&[0, 2, 3])), 2);
        assert_eq!(m.blocks(), &[s(&[0, 1]), s(&[2]), s(&[3])]);
    }
}
