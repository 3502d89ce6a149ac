use std::fmt;
use std::sync::Arc;

use super::memo::Memo;
use super::polymatroid::{capped_value, Polymatroid};
use crate::subset::{Subset, MAX_GROUND};
use crate::{Error, Result};

/// Matroid given by its rank function.
#[derive(Clone)]
pub struct Matroid {
    node: Arc<Node>,
}

struct Node {
    n: usize,
    kind: MatroidKind,
    memo: Memo,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MatroidKind {
    Uniform {
        rank: usize,
    },
    /// Elements outside every block are loops.
    Partition {
        blocks: Vec<Subset>,
        capacities: Vec<usize>,
    },
    /// Element `i` is edge `edges[i]`.
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Element `i` may be matched to any right vertex in `adjacency[i]`.
    Transversal {
        right: usize,
        adjacency: Vec<Vec<usize>>,
    },
    Explicit {
        table: Vec<i64>,
    },
    /// `r'(Y) = r(Y ∪ C) - r(C)`.
    Contracted {
        inner: Matroid,
        contracted: Subset,
    },
    /// `r'(X) = r(X \ removed)`.
    Zeroed {
        inner: Matroid,
        removed: Subset,
    },
    /// Matroid union of the parts.
    Union {
        parts: Vec<Matroid>,
    },
    /// Independent sets are the `X` with `1·X` in the polymatroid.
    Induced {
        poly: Polymatroid,
    },
    /// Parallel copies of a polymatroid's elements; `owner[c]` is the element copy `c` stands for.
    Expanded {
        poly: Polymatroid,
        owner: Vec<usize>,
    },
}

impl Matroid {
    fn build(n: usize, kind: MatroidKind) -> Matroid {
        assert!(n <= MAX_GROUND, "ground set of size {n} exceeds {MAX_GROUND}");
        Matroid {
            node: Arc::new(Node {
                n,
                kind,
                memo: Memo::new(n),
            }),
        }
    }

    pub fn uniform(n: usize, rank: usize) -> Matroid {
        Matroid::build(n, MatroidKind::Uniform { rank })
    }

    pub fn free(n: usize) -> Matroid {
        Matroid::uniform(n, n)
    }

    pub fn partition(n: usize, blocks: Vec<Subset>, capacities: Vec<usize>) -> Result<Matroid> {
        check_ground(n)?;
        if blocks.len() != capacities.len() {
            return Err(Error::InvalidInput(format!(
                "partition matroid has {} blocks but {} capacities",
                blocks.len(),
                capacities.len()
            )));
        }
        let mut seen = Subset::EMPTY;
        for b in &blocks {
            check_subset(*b, n)?;
            if !b.is_disjoint(seen) {
                return Err(Error::InvalidInput("partition blocks overlap".into()));
            }
            seen = seen | *b;
        }
        Ok(Matroid::build(n, MatroidKind::Partition { blocks, capacities }))
    }

    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Matroid> {
        let n = edges.len();
        check_ground(n)?;
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= vertices || b >= vertices) {
            return Err(Error::InvalidInput(format!(
                "edge ({a}, {b}) references a vertex beyond {vertices}"
            )));
        }
        Ok(Matroid::build(n, MatroidKind::Graphic { vertices, edges }))
    }

    pub fn transversal(right: usize, adjacency: Vec<Vec<usize>>) -> Result<Matroid> {
        let n = adjacency.len();
        check_ground(n)?;
        if adjacency.iter().flatten().any(|&v| v >= right) {
            return Err(Error::InvalidInput(format!(
                "transversal adjacency references a right vertex beyond {right}"
            )));
        }
        Ok(Matroid::build(n, MatroidKind::Transversal { right, adjacency }))
    }

    /// Rank table indexed by bitmask.
    pub fn explicit(n: usize, table: Vec<i64>) -> Result<Matroid> {
        check_ground(n)?;
        if n > 20 || table.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "explicit table for n = {n} needs {} entries, got {}",
                1u64.checked_shl(n as u32).unwrap_or(0),
                table.len()
            )));
        }
        if table.iter().any(|&v| v < 0) {
            return Err(Error::InvalidInput("negative rank in explicit table".into()));
        }
        Ok(Matroid::build(n, MatroidKind::Explicit { table }))
    }

    pub fn contracted(inner: &Matroid, contracted: Subset) -> Matroid {
        let n = inner.ground_size();
        assert!(contracted.within(n));
        Matroid::build(
            n,
            MatroidKind::Contracted {
                inner: inner.clone(),
                contracted,
            },
        )
    }

    pub fn zeroed(inner: &Matroid, removed: Subset) -> Matroid {
        let n = inner.ground_size();
        assert!(removed.within(n));
        Matroid::build(
            n,
            MatroidKind::Zeroed {
                inner: inner.clone(),
                removed,
            },
        )
    }

    pub fn union(n: usize, parts: Vec<Matroid>) -> Result<Matroid> {
        if parts.iter().any(|p| p.ground_size() != n) {
            return Err(Error::InvalidInput("union parts disagree on the ground set".into()));
        }
        Ok(Matroid::build(n, MatroidKind::Union { parts }))
    }

    pub fn induced(poly: &Polymatroid) -> Matroid {
        Matroid::build(poly.ground_size(), MatroidKind::Induced { poly: poly.clone() })
    }

    pub(crate) fn expanded(poly: &Polymatroid, owner: Vec<usize>) -> Matroid {
        Matroid::build(
            owner.len(),
            MatroidKind::Expanded {
                poly: poly.clone(),
                owner,
            },
        )
    }

    pub fn ground_size(&self) -> usize {
        self.node.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.node.n)
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.node.kind
    }

    /// Number of rank queries answered by this handle, cache hits included.
    pub fn queries(&self) -> u64 {
        self.node.memo.queries()
    }

    /// Rank of `s`. Panics when `s` leaves the ground set; see [`Matroid::try_rank`].
    pub fn rank(&self, s: Subset) -> usize {
        assert!(
            s.within(self.node.n),
            "subset {s:?} out of range for ground size {}",
            self.node.n
        );
        self.node.memo.get_or(s.bits(), || self.compute(s) as i64) as usize
    }

    pub fn try_rank(&self, s: Subset) -> Result<usize> {
        check_subset(s, self.node.n)?;
        Ok(self.rank(s))
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank(s) == s.len()
    }

    /// `r(Y | X) = r(Y ∪ X) - r(X)`.
    pub fn marginal(&self, y: Subset, x: Subset) -> usize {
        self.rank(y | x) - self.rank(x)
    }

    fn compute(&self, s: Subset) -> usize {
        match &self.node.kind {
            MatroidKind::Uniform { rank } => s.len().min(*rank),
            MatroidKind::Partition { blocks, capacities } => {
                blocks.iter().zip(capacities).map(|(b, &c)| (s & *b).len().min(c)).sum()
            }
            MatroidKind::Graphic { vertices, edges } => forest_size(*vertices, edges, s),
            MatroidKind::Transversal { right, adjacency } => matching_size(*right, adjacency, s),
            MatroidKind::Explicit { table } => table[s.bits() as usize] as usize,
            MatroidKind::Contracted { inner, contracted } => inner.rank(s | *contracted) - inner.rank(*contracted),
            MatroidKind::Zeroed { inner, removed } => inner.rank(s - *removed),
            MatroidKind::Union { parts } => s
                .subsets()
                .map(|y| (s - y).len() + parts.iter().map(|p| p.rank(y)).sum::<usize>())
                .min()
                .unwrap_or(0),
            MatroidKind::Induced { poly } => capped_value(poly, s, s, |_| 1) as usize,
            MatroidKind::Expanded { poly, owner } => {
                let mut counts = vec![0i64; poly.ground_size()];
                for c in s {
                    counts[owner[c]] += 1;
                }
                let support: Subset = (0..counts.len()).filter(|&e| counts[e] > 0).collect();
                capped_value(poly, support, support, |e| counts[e]) as usize
            }
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Matroid) -> bool {
        Arc::ptr_eq(&self.node, &other.node) || (self.node.n == other.node.n && self.node.kind == other.node.kind)
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.node.n)
            .field("kind", &self.node.kind)
            .finish()
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::cap("ground set", n, MAX_GROUND));
    }
    Ok(())
}

pub(crate) fn check_subset(s: Subset, n: usize) -> Result<()> {
    match (s - Subset::full(n)).min_element() {
        Some(element) => Err(Error::OutOfRange { element, n }),
        None => Ok(()),
    }
}

fn forest_size(vertices: usize, edges: &[(usize, usize)], s: Subset) -> usize {
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut size = 0;
    for e in s {
        let (a, b) = edges[e];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            size += 1;
        }
    }
    size
}

fn matching_size(right: usize, adjacency: &[Vec<usize>], s: Subset) -> usize {
    let mut owner: Vec<Option<usize>> = vec![None; right];
    fn augment(u: usize, adjacency: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for &v in &adjacency[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adjacency, owner, seen)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    s.iter()
        .filter(|&u| augment(u, adjacency, &mut owner, &mut vec![false; right]))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_rank_saturates() {
        let m = Matroid::uniform(3, 1);
        assert_eq!(m.rank(Subset::from_iter([0, 1])), 1);
        assert_eq!(m.rank(Subset::EMPTY), 0);
    }

    #[test]
    fn triangle_has_rank_two() {
        let m = Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(m.rank(m.ground()), 2);
        assert_eq!(m.rank(Subset::from_iter([0, 1])), 2);
    }

    #[test]
    fn transversal_counts_matchings() {
        let m = Matroid::transversal(2, vec![vec![0], vec![0], vec![0, 1]]).unwrap();
        assert_eq!(m.rank(Subset::from_iter([0, 1])), 1);
        assert_eq!(m.rank(m.ground()), 2);
    }

    #[test]
    fn contraction_and_zeroing() {
        let m = Matroid::uniform(3, 2);
        let c = Matroid::contracted(&m, Subset::singleton(0));
        assert_eq!(c.rank(Subset::from_iter([1, 2])), 1);
        assert_eq!(c.rank(Subset::singleton(0)), 0);
        let z = Matroid::zeroed(&m, Subset::singleton(2));
        assert_eq!(z.rank(Subset::singleton(2)), 0);
        assert_eq!(z.rank(m.ground()), 2);
    }

    #[test]
    fn union_of_two_rank_one_matroids() {
        let a = Matroid::partition(3, vec![Subset::from_iter([0, 1])], vec![1]).unwrap();
        let b = Matroid::partition(3, vec![Subset::from_iter([0, 1])], vec![1]).unwrap();
        let u = Matroid::union(3, vec![a, b]).unwrap();
        assert_eq!(u.rank(Subset::full(3)), 2);
        assert_eq!(u.rank(Subset::singleton(2)), 0);
    }

    #[test]
    fn out_of_range_is_an_error() {
        let m = Matroid::uniform(2, 1);
        assert!(matches!(
            m.try_rank(Subset::singleton(3)),
            Err(Error::OutOfRange { element: 3, n: 2 })
        ));
    }
}
