use num::{One, Zero};

use super::lp::check_fractional;
use crate::error::internal;
use crate::instances::{AllocInstance, Allocation, Fractional, Objective};
use crate::intersect::polymatroid_intersection_max;
use crate::polycore::{IntVector, Polymatroid};
use crate::rational::{ceil_i64, floor_i64, to_i64_exact, Rational};
use crate::Result;

/// One edge `(w_j, u)` of the rounding graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetEdge {
    pub item: usize,
    pub entity: usize,
    pub node: usize,
}

/// The bipartite graph between items and per-entity positions, with degree bounds on the
/// position side.
#[derive(Clone, Debug)]
pub struct RoundingGadget {
    pub edges: Vec<GadgetEdge>,
    /// Degree bound of each position node.
    pub degree: Vec<i64>,
    /// Entity of each position node.
    pub node_entity: Vec<usize>,
    /// Remainders per entity, in position order.
    pub remainders: Vec<Vec<Rational>>,
}

/// Items with `x_j(i) > 0`, by decreasing value at `i`, ties by index.
fn order_for(inst: &AllocInstance, frac: &Fractional, i: usize) -> Vec<usize> {
    let mut items: Vec<usize> = (0..inst.items.len()).filter(|&j| !frac.x[j][i].is_zero()).collect();
    items.sort_by(|&a, &b| {
        let (va, vb) = (inst.items[a].value(i), inst.items[b].value(i));
        vb.cmp(&va).then(a.cmp(&b))
    });
    items
}

/// Builds the gadget. For Santa the item at position `k` reaches positions `k` and `k + 1`
/// with floor degrees; for Makespan it reaches `k` and `k - 1` with ceiling degrees.
pub fn build_gadget(inst: &AllocInstance, frac: &Fractional) -> Result<RoundingGadget> {
    let mut edges = Vec::new();
    let mut degree = Vec::new();
    let mut node_entity = Vec::new();
    let mut remainders = Vec::new();
    for i in 0..inst.entities {
        let order = order_for(inst, frac, i);
        let first = degree.len();
        let mut rem = Rational::zero();
        let mut rems = Vec::with_capacity(order.len());
        for (k, &j) in order.iter().enumerate() {
            let x = &frac.x[j][i];
            let d = match inst.objective {
                Objective::Santa => {
                    let s = &rem + x;
                    let d = floor_i64(&s);
                    rem = s - Rational::from_integer(d.into());
                    d
                }
                Objective::Makespan => {
                    let s = x - &rem;
                    let d = ceil_i64(&s);
                    rem = Rational::from_integer(d.into()) - s;
                    d
                }
            };
            internal!(
                rem >= Rational::zero() && rem < Rational::one(),
                "remainder left [0, 1) at entity {i}"
            );
            rems.push(rem.clone());
            degree.push(d);
            node_entity.push(i);
            edges.push(GadgetEdge {
                item: j,
                entity: i,
                node: first + k,
            });
            let neighbour = match inst.objective {
                Objective::Santa => (k + 1 < order.len()).then_some(first + k + 1),
                Objective::Makespan => (k > 0).then(|| first + k - 1),
            };
            if let Some(node) = neighbour {
                edges.push(GadgetEdge {
                    item: j,
                    entity: i,
                    node,
                });
            }
        }
        remainders.push(rems);
    }
    Ok(RoundingGadget {
        edges,
        degree,
        node_entity,
        remainders,
    })
}

/// The item-side polymatroid `Σ_j f_j(entities touched by the chosen edges of w_j)` and the
/// node-side one `Σ_{u touched} d(u)`.
fn gadget_polymatroids(inst: &AllocInstance, g: &RoundingGadget) -> Result<(Polymatroid, Polymatroid)> {
    let n = g.edges.len();
    let mut parts = Vec::new();
    for j in 0..inst.items.len() {
        let map: Vec<Option<usize>> = g.edges.iter().map(|e| (e.item == j).then_some(e.entity)).collect();
        if map.iter().any(Option::is_some) {
            parts.push(Polymatroid::mapped(&inst.item_polymatroid(j), map)?);
        }
    }
    let left = if parts.is_empty() {
        Polymatroid::zero(n)
    } else {
        Polymatroid::sum(n, parts)?
    };
    let right = Polymatroid::coverage(g.edges.iter().map(|e| vec![e.node]).collect(), g.degree.clone())?;
    Ok((left, right))
}

fn integral_fixpoint(inst: &AllocInstance, frac: &Fractional) -> Option<Allocation> {
    let x: Option<Vec<IntVector>> = frac
        .x
        .iter()
        .map(|row| row.iter().map(to_i64_exact).collect())
        .collect();
    let alloc = Allocation { x: x? };
    inst.validate_allocation(&alloc).ok().map(|_| alloc)
}

fn round(inst: &AllocInstance, frac: &Fractional) -> Result<Allocation> {
    check_fractional(inst, frac)?;
    if let Some(alloc) = integral_fixpoint(inst, frac) {
        return Ok(alloc);
    }
    let g = build_gadget(inst, frac)?;
    let (left, right) = gadget_polymatroids(inst, &g)?;
    let caps: Vec<i64> = g
        .edges
        .iter()
        .map(|e| g.degree[e.node].min(inst.item_polymatroid(e.item).singleton(e.entity)))
        .collect();
    let common = polymatroid_intersection_max(&left, &right, &caps)?;
    let size: i64 = common.x.iter().sum();
    match inst.objective {
        Objective::Santa => {
            internal!(
                size == g.degree.iter().sum::<i64>(),
                "no common vector saturates every position"
            );
        }
        Objective::Makespan => {
            let total: i64 = (0..inst.items.len()).map(|j| inst.item_polymatroid(j).total()).sum();
            internal!(size == total, "no common vector is a basis on the item side");
        }
    }
    let mut x = vec![vec![0i64; inst.entities]; inst.items.len()];
    for (e, &v) in g.edges.iter().zip(&common.x) {
        x[e.item][e.entity] += v;
    }
    let alloc = Allocation { x };
    inst.validate_allocation(&alloc)
        .map_err(|e| crate::Error::Internal(format!("rounded allocation invalid: {e}")))?;
    Ok(alloc)
}

/// Rounds a Santa Claus fractional assignment to an allocation in which every player gets at
/// least `T - v_max`.
pub fn round_santa(inst: &AllocInstance, frac: &Fractional) -> Result<Allocation> {
    crate::error::contract!(
        inst.objective == Objective::Santa,
        "round_santa needs a Santa Claus instance"
    );
    let alloc = round(inst, frac)?;
    let floor = &frac.target - inst.max_value();
    for i in 0..inst.entities {
        let v = inst.entity_total(&alloc, i);
        internal!(v.is_some_and(|v| v >= floor), "player {i} below T - v_max");
    }
    Ok(alloc)
}

/// Rounds a makespan fractional assignment to an allocation with every load at most
/// `T + p_max`.
pub fn round_makespan(inst: &AllocInstance, frac: &Fractional) -> Result<Allocation> {
    crate::error::contract!(
        inst.objective == Objective::Makespan,
        "round_makespan needs a makespan instance"
    );
    let alloc = round(inst, frac)?;
    let ceiling = &frac.target + inst.max_value();
    for i in 0..inst.entities {
        let v = inst.entity_total(&alloc, i);
        internal!(v.is_some_and(|v| v <= ceiling), "machine {i} above T + p_max");
    }
    Ok(alloc)
}
