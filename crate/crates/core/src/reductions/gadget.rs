use num::{One, Zero};

use super::configs::{ConfigCollection, Configuration};
use crate::error::{contract, internal};
use crate::instances::{AllocInstance, Allocation, Item, Objective};
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetMachine {
    /// `m_c^i`: configuration `config` of `player`, indexed into the kept configurations.
    Config {
        player: usize,
        config: usize,
    },
    Resource {
        resource: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetJob {
    /// `j_i`.
    Player { player: usize },
    /// One of the `c(v)` jobs of value type `value_type` in configuration `config` of `player`.
    Config {
        player: usize,
        config: usize,
        value_type: usize,
    },
}

/// The makespan instance built from a Santa Claus instance and its configurations, with the
/// maps needed to read a schedule back as an allocation.
#[derive(Clone, Debug)]
pub struct SantaGadget {
    pub instance: AllocInstance,
    pub machines: Vec<GadgetMachine>,
    pub jobs: Vec<GadgetJob>,
    /// Configurations with `|c| >= 1`, per player.
    pub configs: Vec<Vec<Configuration>>,
    pub types: Vec<Rational>,
    /// The Santa Claus instance the gadget was built from.
    pub source: AllocInstance,
}

impl SantaGadget {
    pub fn config_machine(&self, player: usize, config: usize) -> usize {
        self.machines
            .iter()
            .position(|m| *m == GadgetMachine::Config { player, config })
            .expect("every kept configuration has a machine")
    }

    pub fn resource_machine(&self, resource: usize) -> usize {
        self.machines
            .iter()
            .position(|m| *m == GadgetMachine::Resource { resource })
            .expect("every resource has a machine")
    }
}

/// Builds the makespan gadget: per player a unit player-job for its configuration machines,
/// and per configuration `c(v)` jobs of size 1 on resource machines of value `v` and size
/// `v/|c|` on the configuration's own machine.
pub fn santa_to_makespan(inst: &AllocInstance, collection: &ConfigCollection) -> Result<SantaGadget> {
    inst.validate()?;
    contract!(
        inst.objective == Objective::Santa,
        "the gadget needs a Santa Claus instance"
    );
    contract!(
        inst.items.iter().all(|it| it.polymatroid.is_none()),
        "the gadget needs a classical instance"
    );
    contract!(
        collection.per_player.len() == inst.entities,
        "configuration collection covers {} players, instance has {}",
        collection.per_player.len(),
        inst.entities
    );
    let one = Rational::one();
    let configs: Vec<Vec<Configuration>> = collection
        .per_player
        .iter()
        .map(|cs| cs.iter().filter(|c| c.total >= one).cloned().collect())
        .collect();
    if let Some(i) = configs.iter().position(Vec::is_empty) {
        return Err(Error::InvalidInput(format!(
            "player {i} has no configuration of value at least 1"
        )));
    }

    let mut machines = Vec::new();
    for (i, cs) in configs.iter().enumerate() {
        for c in 0..cs.len() {
            machines.push(GadgetMachine::Config { player: i, config: c });
        }
    }
    let first_resource = machines.len();
    machines.extend((0..inst.items.len()).map(|r| GadgetMachine::Resource { resource: r }));
    let mm = machines.len();

    let mut jobs = Vec::new();
    let mut items = Vec::new();
    let mut offset = 0;
    for (i, cs) in configs.iter().enumerate() {
        let mut sizes = vec![None; mm];
        for c in 0..cs.len() {
            sizes[offset + c] = Some(one.clone());
        }
        jobs.push(GadgetJob::Player { player: i });
        items.push(Item::per_entity(sizes));
        for (c, conf) in cs.iter().enumerate() {
            for (k, &count) in conf.counts.iter().enumerate() {
                let v = &collection.types[k];
                let mut sizes = vec![None; mm];
                sizes[offset + c] = Some(v / &conf.total);
                for (r, it) in inst.items.iter().enumerate() {
                    if it.value(i) == Some(v) {
                        sizes[first_resource + r] = Some(one.clone());
                    }
                }
                for _ in 0..count {
                    jobs.push(GadgetJob::Config {
                        player: i,
                        config: c,
                        value_type: k,
                    });
                    items.push(Item::per_entity(sizes.clone()));
                }
            }
        }
        offset += cs.len();
    }
    Ok(SantaGadget {
        instance: AllocInstance::makespan(mm, items),
        machines,
        jobs,
        configs,
        types: collection.types.clone(),
        source: inst.clone(),
    })
}

/// An allocation read back from a gadget schedule, with the guarantee it was checked against.
#[derive(Clone, Debug)]
pub struct GadgetTranslation {
    pub allocation: Allocation,
    pub makespan: Rational,
    /// `2 - makespan`, i.e. `1/α` for the schedule's makespan `2 - 1/α`.
    pub guaranteed: Rational,
}

/// Reads a gadget schedule of makespan below 2 back as an allocation in which every player
/// gets at least `2 - makespan`.
///
/// Player `i` takes the resources whose machines hold jobs of the configuration chosen by its
/// player-job.
pub fn santa_from_makespan_solution(gadget: &SantaGadget, sched: &Allocation) -> Result<GadgetTranslation> {
    gadget
        .instance
        .validate_allocation(sched)
        .map_err(|e| Error::InvalidInput(format!("schedule does not fit the gadget: {e}")))?;
    let makespan = gadget
        .instance
        .objective_value(sched)
        .ok_or_else(|| Error::InvalidInput("schedule has an infinite load".into()))?;
    let two = Rational::from_integer(2.into());
    contract!(makespan < two, "schedule makespan {makespan} is not below 2");
    let guaranteed = &two - &makespan;
    let machine_of = |j: usize| sched.x[j].iter().position(|&v| v == 1).expect("validated assignment");

    let src = &gadget.source;
    let mut owners: Vec<Option<usize>> = vec![None; src.items.len()];
    for (j, job) in gadget.jobs.iter().enumerate() {
        let GadgetJob::Player { player } = *job else {
            continue;
        };
        let chosen = match gadget.machines[machine_of(j)] {
            GadgetMachine::Config { config, .. } => config,
            GadgetMachine::Resource { .. } => {
                return Err(Error::Internal(format!("player-job {j} sits on a resource machine")))
            }
        };
        for (jj, other) in gadget.jobs.iter().enumerate() {
            let GadgetJob::Config { player: p, config, .. } = *other else {
                continue;
            };
            if p != player || config != chosen {
                continue;
            }
            if let GadgetMachine::Resource { resource } = gadget.machines[machine_of(jj)] {
                internal!(owners[resource].is_none(), "resource machine {resource} holds two jobs");
                owners[resource] = Some(player);
            }
        }
    }
    let mut allocation = Allocation::empty(src.items.len(), src.entities);
    for (r, o) in owners.iter().enumerate() {
        if let Some(i) = o {
            allocation.x[r][*i] = 1;
        }
    }
    src.validate_allocation(&allocation)?;
    for i in 0..src.entities {
        let v = src.entity_total(&allocation, i).unwrap_or_else(Rational::zero);
        internal!(
            v >= guaranteed,
            "player {i} gets {v}, below the guaranteed {guaranteed}"
        );
    }
    Ok(GadgetTranslation {
        allocation,
        makespan,
        guaranteed,
    })
}
