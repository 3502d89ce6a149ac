use std::collections::HashMap;
use std::time::Instant;

use num::Zero;

use super::opt::OptReport;
use crate::caps;
use crate::instances::{AllocInstance, Allocation, Objective};
use crate::rational::Rational;
use crate::reductions::ConfigCollection;
use crate::{Error, Result};

/// Best allocation in which every player's received counts per value type equal one of its
/// configurations; the objective is the smallest configuration value.
///
/// Resources may stay unassigned. Returns value 0 with an empty witness when some player can
/// match no configuration at all.
pub fn brute_opt_with_configs(inst: &AllocInstance, collection: &ConfigCollection) -> Result<OptReport> {
    inst.validate()?;
    if inst.objective != Objective::Santa {
        return Err(Error::InvalidInput("expected a Santa Claus instance".into()));
    }
    if collection.per_player.len() != inst.entities {
        return Err(Error::InvalidInput(
            "collection and instance disagree on the players".into(),
        ));
    }
    let start = Instant::now();
    let (m, n) = (inst.entities, inst.items.len());
    // candidate owners per resource: players that see it as one of the types
    let kind: Vec<Vec<Option<usize>>> = inst
        .items
        .iter()
        .map(|it| {
            (0..m)
                .map(|i| it.value(i).and_then(|v| collection.type_index(v)))
                .collect()
        })
        .collect();
    let owners: Vec<Vec<usize>> = kind
        .iter()
        .map(|k| (0..m).filter(|&i| k[i].is_some()).collect())
        .collect();
    let space = owners
        .iter()
        .fold(1u128, |acc, o| acc.saturating_mul(o.len() as u128 + 1));
    let limit = caps::global().enum_classical;
    if space > limit {
        return Err(Error::cap("configuration brute force", space, limit));
    }
    let lookup: Vec<HashMap<&[usize], &Rational>> = collection
        .per_player
        .iter()
        .map(|cs| {
            let mut map: HashMap<&[usize], &Rational> = HashMap::new();
            for c in cs {
                let e = map.entry(&c.counts[..]).or_insert(&c.total);
                if c.total > **e {
                    *e = &c.total;
                }
            }
            map
        })
        .collect();

    struct Walk<'a> {
        kind: &'a [Vec<Option<usize>>],
        owners: &'a [Vec<usize>],
        lookup: &'a [HashMap<&'a [usize], &'a Rational>],
        counts: Vec<Vec<usize>>,
        pick: Vec<Option<usize>>,
        best: Option<(Rational, Vec<Option<usize>>)>,
    }
    impl Walk<'_> {
        fn run(&mut self, r: usize) {
            if r == self.owners.len() {
                let mut value: Option<Rational> = None;
                for (i, c) in self.counts.iter().enumerate() {
                    let Some(&v) = self.lookup[i].get(&c[..]) else {
                        return;
                    };
                    if value.as_ref().is_none_or(|cur| v < cur) {
                        value = Some(v.clone());
                    }
                }
                let value = value.unwrap_or_else(Rational::zero);
                if self.best.as_ref().is_none_or(|(b, _)| value > *b) {
                    self.best = Some((value, self.pick.clone()));
                }
                return;
            }
            self.run(r + 1);
            for k in 0..self.owners[r].len() {
                let i = self.owners[r][k];
                let t = self.kind[r][i].expect("owner sees a type");
                self.counts[i][t] += 1;
                self.pick[r] = Some(i);
                self.run(r + 1);
                self.pick[r] = None;
                self.counts[i][t] -= 1;
            }
        }
    }
    let mut walk = Walk {
        kind: &kind,
        owners: &owners,
        lookup: &lookup,
        counts: vec![vec![0; collection.types.len()]; m],
        pick: vec![None; n],
        best: None,
    };
    walk.run(0);
    let (value, pick) = walk.best.unwrap_or_else(|| (Rational::zero(), vec![None; n]));
    let mut witness = Allocation::empty(n, m);
    for (r, o) in pick.iter().enumerate() {
        if let Some(i) = o {
            witness.x[r][*i] = 1;
        }
    }
    Ok(OptReport {
        value,
        witness,
        search_space: space,
        elapsed: start.elapsed(),
    })
}
