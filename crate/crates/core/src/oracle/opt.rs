use std::time::{Duration, Instant};

use num::Zero;

use crate::caps;
use crate::instances::{AllocInstance, Allocation, Objective};
use crate::polycore::{member, IntVector, Polymatroid};
use crate::rational::Rational;
use crate::{Error, Result};

/// Exact optimum with a witness.
#[derive(Clone, Debug)]
pub struct OptReport {
    pub value: Rational,
    pub witness: Allocation,
    /// Size of the unpruned search space.
    pub search_space: u128,
    pub elapsed: Duration,
}

/// All integer bases of `p`, in lexicographic order.
pub fn enumerate_bases(p: &Polymatroid, limit: u128) -> Result<Vec<IntVector>> {
    let n = p.ground_size();
    let total = p.total();
    let upper: Vec<i64> = (0..n).map(|i| p.singleton(i)).collect();
    let mut suffix = vec![0i64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + upper[i];
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(
        p: &Polymatroid,
        i: usize,
        sum: i64,
        total: i64,
        upper: &[i64],
        suffix: &[i64],
        x: &mut IntVector,
        out: &mut Vec<IntVector>,
        limit: u128,
    ) -> Result<()> {
        if sum + suffix[i] < total {
            return Ok(());
        }
        if i == x.len() {
            if sum == total {
                if out.len() as u128 >= limit {
                    return Err(Error::cap("basis enumeration", out.len() + 1, limit));
                }
                out.push(x.clone());
            }
            return Ok(());
        }
        for v in 0..=upper[i].min(total - sum) {
            x[i] = v;
            // P is down-closed, so a prefix outside it cannot be completed
            if v > 0 && !member(p, x) {
                break;
            }
            rec(p, i + 1, sum + v, total, upper, suffix, x, out, limit)?;
        }
        x[i] = 0;
        Ok(())
    }
    rec(p, 0, 0, total, &upper, &suffix, &mut x, &mut out, limit)?;
    Ok(out)
}

struct Search<'a> {
    inst: &'a AllocInstance,
    /// Per item: candidate vectors and their contribution to each entity.
    choices: Vec<Vec<(IntVector, Vec<Option<Rational>>)>>,
    /// Per item and entity: the largest contribution any choice of a later item can add.
    remaining_best: Vec<Vec<Rational>>,
    loads: Vec<Rational>,
    infinite: Vec<u32>,
    pick: Vec<usize>,
    best: Option<(Rational, Vec<usize>)>,
}

impl Search<'_> {
    fn current_objective(&self) -> Option<Rational> {
        match self.inst.objective {
            Objective::Santa => self.loads.iter().min().cloned(),
            Objective::Makespan => {
                if self.infinite.iter().any(|&c| c > 0) {
                    None
                } else {
                    Some(self.loads.iter().max().cloned().unwrap_or_else(Rational::zero))
                }
            }
        }
    }

    fn pruned(&self, j: usize) -> bool {
        let Some((best, _)) = &self.best else {
            return false;
        };
        match self.inst.objective {
            Objective::Santa => {
                let potential = (0..self.inst.entities)
                    .map(|i| &self.loads[i] + &self.remaining_best[j][i])
                    .min()
                    .unwrap_or_else(Rational::zero);
                potential <= *best
            }
            Objective::Makespan => self.infinite.iter().any(|&c| c > 0) || self.loads.iter().any(|l| l >= best),
        }
    }

    fn run(&mut self, j: usize) {
        if j == self.choices.len() {
            let Some(v) = self.current_objective() else {
                return;
            };
            let better = match (&self.best, self.inst.objective) {
                (None, _) => true,
                (Some((b, _)), Objective::Santa) => v > *b,
                (Some((b, _)), Objective::Makespan) => v < *b,
            };
            if better {
                self.best = Some((v, self.pick.clone()));
            }
            return;
        }
        if self.pruned(j) {
            return;
        }
        for c in 0..self.choices[j].len() {
            for i in 0..self.inst.entities {
                match &self.choices[j][c].1[i] {
                    Some(v) => self.loads[i] += v,
                    None => self.infinite[i] += 1,
                }
            }
            self.pick.push(c);
            self.run(j + 1);
            self.pick.pop();
            for i in 0..self.inst.entities {
                match &self.choices[j][c].1[i] {
                    Some(v) => self.loads[i] -= v,
                    None => self.infinite[i] -= 1,
                }
            }
        }
    }
}

fn contribution(inst: &AllocInstance, j: usize, x: &[i64]) -> Vec<Option<Rational>> {
    (0..inst.entities)
        .map(|i| {
            if x[i] == 0 {
                Some(Rational::zero())
            } else {
                inst.items[j].value(i).map(|v| v * Rational::from_integer(x[i].into()))
            }
        })
        .collect()
}

fn brute_opt(inst: &AllocInstance) -> Result<OptReport> {
    inst.validate()?;
    let start = Instant::now();
    let caps = caps::global();
    let matroid = inst.is_matroid_flavor();
    let limit = if matroid {
        caps.enum_matroid
    } else {
        caps.enum_classical
    };
    let mut choices = Vec::with_capacity(inst.items.len());
    let mut space: u128 = 1;
    for j in 0..inst.items.len() {
        let vectors: Vec<IntVector> = if matroid {
            let p = inst.item_polymatroid(j);
            let bases = enumerate_bases(&p, limit)?;
            match inst.objective {
                // a basis on an infinite entry can never be used
                Objective::Makespan => bases
                    .into_iter()
                    .filter(|x| (0..inst.entities).all(|i| x[i] == 0 || inst.items[j].value(i).is_some()))
                    .collect(),
                Objective::Santa => bases,
            }
        } else {
            (0..inst.entities)
                .filter(|&i| inst.items[j].value(i).is_some())
                .map(|i| {
                    let mut x = vec![0; inst.entities];
                    x[i] = 1;
                    x
                })
                .collect()
        };
        if vectors.is_empty() {
            return Err(Error::InvalidInput(format!("item {j} has no feasible placement")));
        }
        space = space.saturating_mul(vectors.len() as u128);
        if space > limit {
            return Err(Error::cap("brute-force search space", space, limit));
        }
        let with_values: Vec<(IntVector, Vec<Option<Rational>>)> = vectors
            .into_iter()
            .map(|x| {
                let c = contribution(inst, j, &x);
                (x, c)
            })
            .collect();
        choices.push(with_values);
    }
    let k = choices.len();
    let mut remaining_best = vec![vec![Rational::zero(); inst.entities]; k + 1];
    for j in (0..k).rev() {
        for i in 0..inst.entities {
            let here = choices[j]
                .iter()
                .filter_map(|(_, c)| c[i].clone())
                .max()
                .unwrap_or_else(Rational::zero);
            remaining_best[j][i] = &remaining_best[j + 1][i] + here;
        }
    }
    let mut search = Search {
        inst,
        choices,
        remaining_best,
        loads: vec![Rational::zero(); inst.entities],
        infinite: vec![0; inst.entities],
        pick: Vec::with_capacity(k),
        best: None,
    };
    search.run(0);
    let (value, pick) = search
        .best
        .ok_or_else(|| Error::InvalidInput("no allocation with finite objective".into()))?;
    let witness = Allocation {
        x: pick
            .iter()
            .enumerate()
            .map(|(j, &c)| search.choices[j][c].0.clone())
            .collect(),
    };
    Ok(OptReport {
        value,
        witness,
        search_space: space,
        elapsed: start.elapsed(),
    })
}

/// Maximum over allocations of the minimum player value.
pub fn brute_opt_santa(inst: &AllocInstance) -> Result<OptReport> {
    if inst.objective != Objective::Santa {
        return Err(Error::InvalidInput("expected a Santa Claus instance".into()));
    }
    brute_opt(inst)
}

/// Minimum over allocations of the maximum machine load.
pub fn brute_opt_makespan(inst: &AllocInstance) -> Result<OptReport> {
    if inst.objective != Objective::Makespan {
        return Err(Error::InvalidInput("expected a makespan instance".into()));
    }
    brute_opt(inst)
}
