use num::{One, Zero};

use crate::error::contract;
use crate::polycore::{is_basis, member, IntVector, Matroid, Polymatroid};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Maximize the minimum value received by a player.
    Santa,
    /// Minimize the maximum load of a machine.
    Makespan,
}

/// Value (Santa) or size (Makespan) of an item.
#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    /// The same number for every entity.
    Single(Rational),
    /// One number per entity; `None` is an infinite size.
    PerEntity(Vec<Option<Rational>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Item {
    pub values: Values,
    /// Present in the matroid flavors: the item is spread as a basis of this polymatroid.
    pub polymatroid: Option<Polymatroid>,
}

impl Item {
    pub fn single(v: Rational) -> Item {
        Item {
            values: Values::Single(v),
            polymatroid: None,
        }
    }

    pub fn per_entity(values: Vec<Option<Rational>>) -> Item {
        Item {
            values: Values::PerEntity(values),
            polymatroid: None,
        }
    }

    pub fn with_polymatroid(mut self, p: Polymatroid) -> Item {
        self.polymatroid = Some(p);
        self
    }

    /// Value or size at entity `i`; `None` means infinite.
    pub fn value(&self, i: usize) -> Option<&Rational> {
        match &self.values {
            Values::Single(v) => Some(v),
            Values::PerEntity(vs) => vs[i].as_ref(),
        }
    }

    /// Largest finite value over the entities.
    pub fn max_finite(&self, entities: usize) -> Rational {
        (0..entities)
            .filter_map(|i| self.value(i))
            .fold(Rational::zero(), |a, v| if *v > a { v.clone() } else { a })
    }
}

/// An allocation problem: Santa Claus or Makespan, classical or matroid flavor.
///
/// Classical items (no polymatroid) go to exactly one entity, never to one where the size is
/// infinite. Matroid items go to a basis of their polymatroid (for Santa, any member suffices,
/// since it extends to a basis without lowering anyone's value).
#[derive(Clone, Debug, PartialEq)]
pub struct AllocInstance {
    pub objective: Objective,
    pub entities: usize,
    pub items: Vec<Item>,
}

/// Per-item integer vectors over the entities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allocation {
    pub x: Vec<IntVector>,
}

impl Allocation {
    pub fn empty(items: usize, entities: usize) -> Allocation {
        Allocation {
            x: vec![vec![0; entities]; items],
        }
    }

    /// Classical allocation from an owner per item.
    pub fn from_owners(owners: &[usize], entities: usize) -> Allocation {
        let mut a = Allocation::empty(owners.len(), entities);
        for (j, &i) in owners.iter().enumerate() {
            a.x[j][i] = 1;
        }
        a
    }
}

impl AllocInstance {
    pub fn santa(players: usize, items: Vec<Item>) -> AllocInstance {
        AllocInstance {
            objective: Objective::Santa,
            entities: players,
            items,
        }
    }

    pub fn makespan(machines: usize, items: Vec<Item>) -> AllocInstance {
        AllocInstance {
            objective: Objective::Makespan,
            entities: machines,
            items,
        }
    }

    pub fn is_matroid_flavor(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|it| it.polymatroid.is_some())
    }

    /// Checks shapes, signs and flavor consistency.
    pub fn validate(&self) -> Result<()> {
        let with_poly = self.items.iter().filter(|it| it.polymatroid.is_some()).count();
        if with_poly != 0 && with_poly != self.items.len() {
            return Err(Error::InvalidInput(
                "either every item or no item carries a polymatroid".into(),
            ));
        }
        for (j, it) in self.items.iter().enumerate() {
            match &it.values {
                Values::Single(v) => {
                    if *v < Rational::zero() {
                        return Err(Error::InvalidInput(format!("item {j} has a negative value")));
                    }
                }
                Values::PerEntity(vs) => {
                    if vs.len() != self.entities {
                        return Err(Error::InvalidInput(format!(
                            "item {j} lists {} values for {} entities",
                            vs.len(),
                            self.entities
                        )));
                    }
                    for v in vs {
                        match v {
                            None if self.objective == Objective::Santa => {
                                return Err(Error::InvalidInput(format!("item {j} has an infinite value")))
                            }
                            Some(v) if *v < Rational::zero() => {
                                return Err(Error::InvalidInput(format!("item {j} has a negative value")))
                            }
                            _ => {}
                        }
                    }
                }
            }
            if let Some(p) = &it.polymatroid {
                if p.ground_size() != self.entities {
                    return Err(Error::InvalidInput(format!(
                        "item {j}'s polymatroid has ground size {} instead of {}",
                        p.ground_size(),
                        self.entities
                    )));
                }
            }
        }
        Ok(())
    }

    /// Polymatroid governing item `j`. Classical items get the rank-one polymatroid over the
    /// entities where they may go.
    pub fn item_polymatroid(&self, j: usize) -> Polymatroid {
        let it = &self.items[j];
        if let Some(p) = &it.polymatroid {
            return p.clone();
        }
        let covers = (0..self.entities)
            .map(|i| if it.value(i).is_some() { vec![0] } else { vec![] })
            .collect();
        Polymatroid::coverage(covers, vec![1]).expect("valid rank-one coverage")
    }

    /// Total value (Santa) or load (Makespan) at entity `i`; `None` when infinite.
    pub fn entity_total(&self, alloc: &Allocation, i: usize) -> Option<Rational> {
        let mut total = Rational::zero();
        for (it, x) in self.items.iter().zip(&alloc.x) {
            if x[i] == 0 {
                continue;
            }
            total += it.value(i)? * Rational::from_integer(x[i].into());
        }
        Some(total)
    }

    /// Minimum value (Santa) or maximum load (Makespan); `None` for an infinite load.
    pub fn objective_value(&self, alloc: &Allocation) -> Option<Rational> {
        let mut totals = (0..self.entities).map(|i| self.entity_total(alloc, i));
        match self.objective {
            Objective::Santa => totals
                .try_fold(None::<Rational>, |acc, t| {
                    let t = t?;
                    Some(Some(match acc {
                        Some(a) if a <= t => a,
                        _ => t,
                    }))
                })
                .map(|v| v.unwrap_or_else(Rational::zero)),
            Objective::Makespan => totals.try_fold(Rational::zero(), |acc, t| {
                let t = t?;
                Some(if t > acc { t } else { acc })
            }),
        }
    }

    /// Checks that `alloc` respects every item's constraint.
    pub fn validate_allocation(&self, alloc: &Allocation) -> Result<()> {
        contract!(
            alloc.x.len() == self.items.len(),
            "allocation covers {} items, instance has {}",
            alloc.x.len(),
            self.items.len()
        );
        for (j, (it, x)) in self.items.iter().zip(&alloc.x).enumerate() {
            contract!(x.len() == self.entities, "item {j}: vector length mismatch");
            contract!(x.iter().all(|&v| v >= 0), "item {j}: negative entry");
            if self.objective == Objective::Makespan {
                contract!(
                    (0..self.entities).all(|i| x[i] == 0 || it.value(i).is_some()),
                    "item {j} placed where its size is infinite"
                );
            }
            match &it.polymatroid {
                None => {
                    let total: i64 = x.iter().sum();
                    let ok = match self.objective {
                        Objective::Santa => total <= 1,
                        Objective::Makespan => total == 1,
                    };
                    contract!(ok, "item {j} is not assigned to exactly one entity");
                }
                Some(p) => match self.objective {
                    Objective::Santa => contract!(member(p, x), "item {j} is not in its polymatroid"),
                    Objective::Makespan => {
                        contract!(is_basis(p, x), "item {j} is not a basis of its polymatroid")
                    }
                },
            }
        }
        Ok(())
    }

    /// The two distinct non-zero finite values `(u, w)` with `u <= w`, if there are at most two.
    pub fn two_values(&self) -> Option<(Rational, Rational)> {
        let mut distinct: Vec<Rational> = Vec::new();
        for it in &self.items {
            for i in 0..self.entities {
                if let Some(v) = it.value(i) {
                    if !v.is_zero() && !distinct.contains(v) {
                        distinct.push(v.clone());
                    }
                }
            }
        }
        distinct.sort();
        match distinct.len() {
            0 => Some((Rational::one(), Rational::one())),
            1 => Some((distinct[0].clone(), distinct[0].clone())),
            2 => Some((distinct[0].clone(), distinct[1].clone())),
            _ => None,
        }
    }

    /// Largest finite value or size over all items and entities.
    pub fn max_value(&self) -> Rational {
        self.items
            .iter()
            .map(|it| it.max_finite(self.entities))
            .fold(Rational::zero(), |a, v| if v > a { v } else { a })
    }
}

/// Core cover: cover every element by an independent set of the matroid or by at least `b`
/// units of a polymatroid vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CoreCoverInstance {
    pub matroid: Matroid,
    pub polymatroid: Polymatroid,
    pub b: Option<i64>,
}

impl CoreCoverInstance {
    pub fn new(matroid: Matroid, polymatroid: Polymatroid, b: Option<i64>) -> Result<Self> {
        if matroid.ground_size() != polymatroid.ground_size() {
            return Err(Error::InvalidInput(
                "matroid and polymatroid on different ground sets".into(),
            ));
        }
        if b.is_some_and(|b| b < 1) {
            return Err(Error::InvalidInput("b must be at least 1".into()));
        }
        Ok(CoreCoverInstance {
            matroid,
            polymatroid,
            b,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.matroid.ground_size()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Alloc(AllocInstance),
    CoreCover(CoreCoverInstance),
}

impl From<AllocInstance> for Instance {
    fn from(a: AllocInstance) -> Instance {
        Instance::Alloc(a)
    }
}

impl From<CoreCoverInstance> for Instance {
    fn from(c: CoreCoverInstance) -> Instance {
        Instance::CoreCover(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn objective_values() {
        let inst = AllocInstance::santa(
            2,
            vec![
                Item::per_entity(vec![Some(qi(1)), Some(qi(2))]),
                Item::per_entity(vec![Some(qi(3)), Some(qi(0))]),
            ],
        );
        let a = Allocation::from_owners(&[1, 0], 2);
        assert_eq!(inst.objective_value(&a), Some(qi(2)));
        inst.validate_allocation(&a).unwrap();
    }

    #[test]
    fn infinite_loads() {
        let inst = AllocInstance::makespan(2, vec![Item::per_entity(vec![Some(q(1, 2)), None])]);
        assert!(inst.validate_allocation(&Allocation::from_owners(&[1], 2)).is_err());
        assert_eq!(inst.objective_value(&Allocation::from_owners(&[1], 2)), None);
        assert_eq!(inst.objective_value(&Allocation::from_owners(&[0], 2)), Some(q(1, 2)));
    }

    #[test]
    fn two_value_detection() {
        let inst = AllocInstance::makespan(
            2,
            vec![
                Item::per_entity(vec![Some(qi(1)), Some(qi(3))]),
                Item::per_entity(vec![None, Some(qi(1))]),
            ],
        );
        assert_eq!(inst.two_values(), Some((qi(1), qi(3))));
    }
}
