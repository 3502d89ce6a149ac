use num::{One, Zero};

use super::configs::{ConfigCollection, Configuration};
use super::gadget::{santa_from_makespan_solution, santa_to_makespan, SantaGadget};
use crate::error::{contract, internal};
use crate::instances::{AllocInstance, Allocation, Item, Objective};
use crate::rational::{ceil_i64, floor_i64, Rational};
use crate::rounding::{round_santa, solve_assignment_lp};
use crate::{Error, Result};

/// Checks a classical two-value instance and returns `(u, w)` with `u <= w`.
fn two_value_pair(inst: &AllocInstance, objective: Objective) -> Result<(Rational, Rational)> {
    inst.validate()?;
    contract!(inst.objective == objective, "wrong objective for this reduction");
    contract!(
        inst.items.iter().all(|it| it.polymatroid.is_none()),
        "two-value reductions need a classical instance"
    );
    let (u, w) = inst
        .two_values()
        .ok_or_else(|| Error::InvalidInput("instance has more than two distinct values".into()))?;
    if objective == Objective::Makespan {
        for (j, it) in inst.items.iter().enumerate() {
            for i in 0..inst.entities {
                if let Some(p) = it.value(i) {
                    if *p != u && *p != w {
                        return Err(Error::InvalidInput(format!("job {j} has size {p} on machine {i}")));
                    }
                }
            }
        }
    }
    Ok((u, w))
}

/// Owner machine of a gadget resource and whether it is the large one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MachineResource {
    pub machine: usize,
    pub large: bool,
}

/// Santa Claus instance built from a two-value makespan instance.
///
/// Players `0..m` are the machine-players, players `m..m+n` the job-players. Machine `i` owns
/// one large resource and `k` small ones.
#[derive(Clone, Debug)]
pub struct TwoValueMakespanGadget {
    pub instance: AllocInstance,
    pub resources: Vec<MachineResource>,
    pub u: Rational,
    pub w: Rational,
    pub k: usize,
    /// `t = w + k·u - 1`.
    pub t: Rational,
    pub source: AllocInstance,
}

impl TwoValueMakespanGadget {
    pub fn job_player(&self, job: usize) -> usize {
        self.source.entities + job
    }
}

/// `k = min(⌊1/u⌋, n)`; `n` when `u = 0`.
pub fn small_slots(u: &Rational, n: usize) -> usize {
    if u.is_zero() {
        return n;
    }
    usize::try_from(floor_i64(&u.recip())).map_or(n, |k| k.min(n))
}

/// Builds the Santa Claus gadget of a two-value makespan instance with a big size `w > 1/2`.
///
/// With `w <= 1/2` the list-scheduling baseline already has makespan at most `OPT + 1/2`, and
/// this construction is not needed.
pub fn twovalue_makespan_to_santa(inst: &AllocInstance) -> Result<TwoValueMakespanGadget> {
    let (u, w) = two_value_pair(inst, Objective::Makespan)?;
    let half = Rational::new(1.into(), 2.into());
    contract!(
        w > half,
        "the big size {w} must exceed 1/2; use the LP baseline instead"
    );
    let (m, n) = (inst.entities, inst.items.len());
    let k = small_slots(&u, n);
    let t = &w + &u * Rational::from_integer(k.into()) - Rational::one();
    let players = m + n;
    let zero = Rational::zero();
    let mut resources = Vec::new();
    let mut items = Vec::new();
    for i in 0..m {
        for slot in 0..=k {
            let large = slot == 0;
            let mut values = vec![Some(zero.clone()); players];
            values[i] = Some(if large { w.clone() } else { u.clone() });
            let matching = if large { &w } else { &u };
            for (j, job) in inst.items.iter().enumerate() {
                if job.value(i) == Some(matching) {
                    values[m + j] = Some(w.clone());
                }
            }
            resources.push(MachineResource { machine: i, large });
            items.push(Item::per_entity(values));
        }
    }
    Ok(TwoValueMakespanGadget {
        instance: AllocInstance::santa(players, items),
        resources,
        u,
        w,
        k,
        t,
        source: inst.clone(),
    })
}

/// A schedule read back from the Santa Claus gadget.
#[derive(Clone, Debug)]
pub struct TwoValueTranslation {
    pub schedule: Allocation,
    /// Minimum player value of the given Santa Claus solution.
    pub santa_value: Rational,
    pub makespan: Rational,
    /// `1 + t - santa_value`, the load bound every machine was checked against.
    pub bound: Rational,
}

/// Turns a gadget allocation into a schedule: each job-player keeps its most valuable resource
/// (ties by index), everything else returns to the machine-players, and each job goes to the
/// machine owning the resource its player kept.
pub fn twovalue_santa_from_makespan(
    gadget: &TwoValueMakespanGadget,
    alloc: &Allocation,
) -> Result<TwoValueTranslation> {
    let santa = &gadget.instance;
    santa.validate_allocation(alloc)?;
    let santa_value = santa.objective_value(alloc).expect("Santa values are finite");
    let m = gadget.source.entities;
    let mut owners = Vec::with_capacity(gadget.source.items.len());
    for j in 0..gadget.source.items.len() {
        let q = gadget.job_player(j);
        let mut best: Option<(usize, &Rational)> = None;
        for (r, x) in alloc.x.iter().enumerate() {
            let v = santa.items[r].value(q).expect("finite");
            if x[q] > 0 && !v.is_zero() && best.is_none_or(|(_, b)| v > b) {
                best = Some((r, v));
            }
        }
        let (r, _) =
            best.ok_or_else(|| Error::InvalidInput(format!("job-player of job {j} holds no valuable resource")))?;
        owners.push(gadget.resources[r].machine);
    }
    let schedule = Allocation::from_owners(&owners, m);
    gadget.source.validate_allocation(&schedule)?;
    let makespan = gadget
        .source
        .objective_value(&schedule)
        .ok_or_else(|| Error::Internal("translated schedule uses an infinite size".into()))?;
    let bound = Rational::one() + &gadget.t - &santa_value;
    internal!(makespan <= bound, "makespan {makespan} exceeds 1 + t - value = {bound}");
    if santa_value > Rational::zero() && santa_value <= gadget.t {
        let alpha_bound = Rational::from_integer(2.into()) - &santa_value / &gadget.t;
        internal!(
            makespan <= alpha_bound,
            "makespan {makespan} exceeds 2 - 1/α = {alpha_bound}"
        );
    }
    Ok(TwoValueTranslation {
        schedule,
        santa_value,
        makespan,
        bound,
    })
}

/// Maximum bipartite matching by augmenting paths; `adj[l]` lists the right vertices of `l`.
/// Returns the partner of every left vertex.
pub fn bipartite_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn try_augment(l: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[l] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|o| try_augment(o, adj, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        try_augment(l, adj, &mut seen, &mut owner);
    }
    let mut partner = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            partner[*l] = Some(r);
        }
    }
    partner
}

/// Which argument produced a two-value Santa Claus solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoValueCase {
    /// `w < 1/α`: assignment LP at target 1 and rounding.
    Additive,
    /// Every player matched to a resource of value `w`.
    Matching,
    /// Two configurations per player, solved through the makespan gadget.
    Configurations,
}

#[derive(Clone, Debug)]
pub struct TwoValueSantaSolution {
    pub allocation: Allocation,
    pub case: TwoValueCase,
    /// Present in the configuration case.
    pub gadget: Option<SantaGadget>,
}

/// Solves a two-value Santa Claus instance normalized to `OPT >= 1` to value at least `1/α`,
/// using `solver` as a `(2 - 1/α)`-approximation for two-value makespan.
///
/// Returns `None` when the run proves `OPT < 1`: the LP at target 1 is infeasible, no case
/// applies, or the solver's schedule exceeds `2 - 1/α`, which its guarantee rules out when the
/// gadget has optimum at most 1.
pub fn twovalue_santa_to_makespan(
    inst: &AllocInstance,
    alpha: &Rational,
    solver: &mut dyn FnMut(&AllocInstance) -> Result<Allocation>,
) -> Result<Option<TwoValueSantaSolution>> {
    let (u, w) = two_value_pair(inst, Objective::Santa)?;
    let two = Rational::from_integer(2.into());
    contract!(*alpha >= two, "α must be at least 2, got {alpha}");
    let target = alpha.recip();
    let m = inst.entities;
    let check = |alloc: &Allocation| -> Result<()> {
        inst.validate_allocation(alloc)?;
        for i in 0..m {
            let v = inst.entity_total(alloc, i).expect("finite");
            internal!(v >= target, "player {i} gets {v}, below 1/α = {target}");
        }
        Ok(())
    };

    if w < target {
        let Some(frac) = solve_assignment_lp(inst, &Rational::one())? else {
            return Ok(None);
        };
        let allocation = round_santa(inst, &frac)?;
        check(&allocation)?;
        return Ok(Some(TwoValueSantaSolution {
            allocation,
            case: TwoValueCase::Additive,
            gadget: None,
        }));
    }

    let adj: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..inst.items.len())
                .filter(|&j| inst.items[j].value(i) == Some(&w))
                .collect()
        })
        .collect();
    let partner = bipartite_matching(&adj, inst.items.len());
    if partner.iter().all(Option::is_some) {
        let mut allocation = Allocation::empty(inst.items.len(), m);
        for (i, r) in partner.iter().enumerate() {
            allocation.x[r.expect("perfect")][i] = 1;
        }
        check(&allocation)?;
        return Ok(Some(TwoValueSantaSolution {
            allocation,
            case: TwoValueCase::Matching,
            gadget: None,
        }));
    }
    if u == w {
        return Ok(None);
    }

    let b = ceil_i64(&u.recip());
    let small = Rational::new(1.into(), b.into());
    let rescaled = AllocInstance::santa(
        m,
        inst.items
            .iter()
            .map(|it| {
                Item::per_entity(
                    (0..m)
                        .map(|i| {
                            let v = it.value(i).expect("finite");
                            Some(if *v == w {
                                Rational::one()
                            } else if *v == u {
                                small.clone()
                            } else {
                                Rational::zero()
                            })
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    let mut types = vec![Rational::one()];
    if small != types[0] {
        types.push(small.clone());
    }
    let mut configs = vec![Configuration::new(vec![1, 0][..types.len()].to_vec(), &types)];
    if types.len() == 2 {
        configs.push(Configuration::new(vec![0, b as usize], &types));
    }
    let collection = ConfigCollection {
        types,
        per_player: vec![configs; m],
    };
    let gadget = santa_to_makespan(&rescaled, &collection)?;
    let sched = solver(&gadget.instance)?;
    gadget
        .instance
        .validate_allocation(&sched)
        .map_err(|e| Error::Contract(format!("makespan solver returned an invalid schedule: {e}")))?;
    let makespan = gadget.instance.objective_value(&sched).expect("validated");
    if makespan > &two - &target {
        return Ok(None);
    }
    let translated = santa_from_makespan_solution(&gadget, &sched)?;
    check(&translated.allocation)?;
    Ok(Some(TwoValueSantaSolution {
        allocation: translated.allocation,
        case: TwoValueCase::Configurations,
        gadget: Some(gadget),
    }))
}
