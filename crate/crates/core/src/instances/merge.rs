use super::model::{AllocInstance, Allocation, Item, Objective};
use crate::error::contract;
use crate::intersect::decompose_merged_basis;
use crate::polycore::{greedy_basis_above, Polymatroid};
use crate::Result;

/// An instance with equal-value items merged, and the grouping needed to split solutions back.
#[derive(Clone, Debug)]
pub struct MergedInstance {
    pub merged: AllocInstance,
    /// Original item indices behind each merged item, in first-occurrence order.
    pub groups: Vec<Vec<usize>>,
    pub original: AllocInstance,
}

/// Replaces every set of items with identical values by one item whose polymatroid is the sum.
pub fn merge_equal_value(inst: &AllocInstance) -> Result<MergedInstance> {
    contract!(inst.is_matroid_flavor(), "merging needs a matroid-flavor instance");
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (j, it) in inst.items.iter().enumerate() {
        match groups.iter_mut().find(|g| inst.items[g[0]].values == it.values) {
            Some(g) => g.push(j),
            None => groups.push(vec![j]),
        }
    }
    let items = groups
        .iter()
        .map(|g| {
            let first = &inst.items[g[0]];
            if g.len() == 1 {
                return Ok(first.clone());
            }
            let parts = g.iter().map(|&j| inst.item_polymatroid(j)).collect();
            Ok(Item {
                values: first.values.clone(),
                polymatroid: Some(Polymatroid::sum(inst.entities, parts)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MergedInstance {
        merged: AllocInstance {
            objective: inst.objective,
            entities: inst.entities,
            items,
        },
        groups,
        original: inst.clone(),
    })
}

impl MergedInstance {
    /// Splits an allocation of the merged instance into one for the original items.
    ///
    /// Santa vectors are first raised to bases, which never lowers a player's value.
    pub fn split(&self, alloc: &Allocation) -> Result<Allocation> {
        self.merged.validate_allocation(alloc)?;
        let mut out = Allocation::empty(self.original.items.len(), self.original.entities);
        for (g, (group, y)) in self.groups.iter().zip(&alloc.x).enumerate() {
            let p = self.merged.item_polymatroid(g);
            let y = match self.original.objective {
                Objective::Santa => greedy_basis_above(&p, y)?,
                Objective::Makespan => y.clone(),
            };
            if group.len() == 1 {
                out.x[group[0]] = y;
                continue;
            }
            let parts: Vec<Polymatroid> = group.iter().map(|&j| self.original.item_polymatroid(j)).collect();
            for (&j, xj) in group.iter().zip(decompose_merged_basis(&parts, &y)?) {
                out.x[j] = xj;
            }
        }
        Ok(out)
    }
}
