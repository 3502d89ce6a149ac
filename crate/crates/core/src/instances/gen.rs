//! Seeded random instance families and the small named instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::{AllocInstance, Allocation, CoreCoverInstance, Instance, Item};
use crate::polycore::{Matroid, Polymatroid};
use crate::rational::{qi, Rational};
use crate::subset::Subset;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    RestrictedSanta,
    UnrelatedSanta,
    TwoValueSanta,
    SantaMatroid,
    RestrictedMakespan,
    TwoValueMakespan,
    MakespanMatroid,
    CoreCover,
    TwoValueCore,
    Gap,
}

impl Flavor {
    pub const ALL: [Flavor; 10] = [
        Flavor::RestrictedSanta,
        Flavor::UnrelatedSanta,
        Flavor::TwoValueSanta,
        Flavor::SantaMatroid,
        Flavor::RestrictedMakespan,
        Flavor::TwoValueMakespan,
        Flavor::MakespanMatroid,
        Flavor::CoreCover,
        Flavor::TwoValueCore,
        Flavor::Gap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flavor::RestrictedSanta => "restricted-santa",
            Flavor::UnrelatedSanta => "unrelated-santa",
            Flavor::TwoValueSanta => "two-value-santa",
            Flavor::SantaMatroid => "santa-matroid",
            Flavor::RestrictedMakespan => "restricted-makespan",
            Flavor::TwoValueMakespan => "two-value-makespan",
            Flavor::MakespanMatroid => "makespan-matroid",
            Flavor::CoreCover => "core-cover",
            Flavor::TwoValueCore => "two-value-core",
            Flavor::Gap => "gap",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        Flavor::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown flavor `{s}`")))
    }
}

/// Size parameters for [`gen_random`].
#[derive(Clone, Debug)]
pub struct GenParams {
    /// Players or machines; the ground size for core-cover flavors.
    pub m: usize,
    /// Resources or jobs.
    pub n: usize,
    /// The two values of the two-value flavors, `u < w`.
    pub u: Rational,
    pub w: Rational,
    /// Upper bound on random integer values, weights and scales.
    pub max_weight: i64,
}

impl Default for GenParams {
    fn default() -> GenParams {
        GenParams {
            m: 4,
            n: 6,
            u: qi(1),
            w: qi(3),
            max_weight: 3,
        }
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_subset(rng: &mut impl Rng, n: usize, p: f64) -> Subset {
    (0..n).filter(|_| rng.gen_bool(p)).collect()
}

/// A random uniform, partition, graphic or transversal matroid on `n` elements.
pub fn random_matroid(rng: &mut impl Rng, n: usize) -> Matroid {
    match rng.gen_range(0..4) {
        0 => Matroid::uniform(n, rng.gen_range(0..=n)),
        1 => {
            let k = rng.gen_range(1..=n.max(1));
            let mut blocks = vec![Subset::EMPTY; k];
            for e in 0..n {
                let b = rng.gen_range(0..k);
                blocks[b] = blocks[b].with(e);
            }
            let caps = blocks.iter().map(|b| rng.gen_range(0..=b.len())).collect();
            Matroid::partition(n, blocks, caps).expect("valid partition")
        }
        2 => {
            let v = rng.gen_range(2..=n.max(2));
            let edges = (0..n).map(|_| (rng.gen_range(0..v), rng.gen_range(0..v))).collect();
            Matroid::graphic(v, edges).expect("valid graph")
        }
        _ => {
            let right = rng.gen_range(1..=n.max(1));
            let adjacency = (0..n)
                .map(|_| (0..right).filter(|_| rng.gen_bool(0.4)).collect())
                .collect();
            Matroid::transversal(right, adjacency).expect("valid bipartite graph")
        }
    }
}

/// A random modular, coverage or scaled matroid rank polymatroid on `n` elements.
pub fn random_polymatroid(rng: &mut impl Rng, n: usize, max_weight: i64) -> Polymatroid {
    let max_weight = max_weight.max(1);
    match rng.gen_range(0..3) {
        0 => Polymatroid::modular((0..n).map(|_| rng.gen_range(0..=max_weight)).collect()).expect("valid weights"),
        1 => {
            let items = rng.gen_range(1..=3);
            let covers = (0..n)
                .map(|_| (0..items).filter(|_| rng.gen_bool(0.5)).collect())
                .collect();
            let weights = (0..items).map(|_| rng.gen_range(1..=max_weight)).collect();
            Polymatroid::coverage(covers, weights).expect("valid coverage")
        }
        _ => {
            let m = random_matroid(rng, n);
            Polymatroid::scaled_rank(&m, rng.gen_range(1..=max_weight)).expect("valid scale")
        }
    }
}

/// Like [`random_polymatroid`] but with `f(E) > 0`, so the item must be placed somewhere.
fn random_nonzero_polymatroid(rng: &mut impl Rng, n: usize, max_weight: i64) -> Polymatroid {
    loop {
        let p = random_polymatroid(rng, n, max_weight);
        if p.total() > 0 {
            return p;
        }
    }
}

/// Small instance where the integral cover value is 1 though the fractional one is larger:
/// the uniform matroid of rank `m - 1` against `f(X) = |X|`.
pub fn gen_gap_instance(m: usize) -> Result<CoreCoverInstance> {
    if m < 2 {
        return Err(Error::InvalidInput("the gap instance needs m >= 2".into()));
    }
    let table = (0..1u64 << m)
        .map(|mask| {
            let k = mask.count_ones() as i64;
            if k as usize == m {
                k - 1
            } else {
                k
            }
        })
        .collect();
    let matroid = Matroid::explicit(m, table)?;
    let polymatroid = Polymatroid::modular(vec![1; m])?;
    CoreCoverInstance::new(matroid, polymatroid, None)
}

fn two_value(rng: &mut impl Rng, params: &GenParams) -> Rational {
    if rng.gen_bool(0.5) {
        params.u.clone()
    } else {
        params.w.clone()
    }
}

/// Draws a random instance of `flavor`; the same seed always yields the same instance.
pub fn gen_random(flavor: Flavor, seed: u64, params: &GenParams) -> Result<Instance> {
    let mut rng = rng_for(seed);
    let rng = &mut rng;
    let (m, n, maxw) = (params.m, params.n, params.max_weight.max(1));
    if m == 0 {
        return Err(Error::InvalidInput("need at least one entity".into()));
    }
    let restricted_support = |rng: &mut ChaCha8Rng| loop {
        let s = random_subset(rng, m, 0.5);
        if !s.is_empty() {
            return s;
        }
    };
    let inst: Instance = match flavor {
        Flavor::RestrictedSanta | Flavor::TwoValueSanta => {
            let items = (0..n)
                .map(|_| {
                    let v = if flavor == Flavor::TwoValueSanta {
                        two_value(rng, params)
                    } else {
                        qi(rng.gen_range(1..=maxw))
                    };
                    let s = restricted_support(rng);
                    Item::per_entity(
                        (0..m)
                            .map(|i| Some(if s.contains(i) { v.clone() } else { qi(0) }))
                            .collect(),
                    )
                })
                .collect();
            AllocInstance::santa(m, items).into()
        }
        Flavor::UnrelatedSanta => {
            let items = (0..n)
                .map(|_| Item::per_entity((0..m).map(|_| Some(qi(rng.gen_range(0..=maxw)))).collect()))
                .collect();
            AllocInstance::santa(m, items).into()
        }
        Flavor::RestrictedMakespan | Flavor::TwoValueMakespan => {
            let items = (0..n)
                .map(|_| {
                    let p = if flavor == Flavor::TwoValueMakespan {
                        None
                    } else {
                        Some(qi(rng.gen_range(1..=maxw)))
                    };
                    let s = restricted_support(rng);
                    Item::per_entity(
                        (0..m)
                            .map(|i| {
                                s.contains(i)
                                    .then(|| p.clone().unwrap_or_else(|| two_value(rng, params)))
                            })
                            .collect(),
                    )
                })
                .collect();
            AllocInstance::makespan(m, items).into()
        }
        Flavor::SantaMatroid | Flavor::MakespanMatroid => {
            let items = (0..n)
                .map(|_| {
                    let v = qi(rng.gen_range(1..=maxw));
                    Item::single(v).with_polymatroid(random_nonzero_polymatroid(rng, m, maxw))
                })
                .collect();
            if flavor == Flavor::SantaMatroid {
                AllocInstance::santa(m, items).into()
            } else {
                AllocInstance::makespan(m, items).into()
            }
        }
        Flavor::CoreCover => {
            let matroid = random_matroid(rng, m);
            let poly = random_polymatroid(rng, m, maxw);
            CoreCoverInstance::new(matroid, poly, None)?.into()
        }
        Flavor::TwoValueCore => {
            // players are the ground set; big resources form the matroid, small ones the
            // polymatroid
            let mut big = Vec::new();
            let mut small = Vec::new();
            for _ in 0..n {
                let p = random_nonzero_polymatroid(rng, m, 1);
                if rng.gen_bool(0.5) {
                    big.push(p);
                } else {
                    small.push(p);
                }
            }
            let matroid = if big.is_empty() {
                Matroid::uniform(m, 0)
            } else {
                Matroid::induced(&Polymatroid::sum(m, big)?)
            };
            let poly = if small.is_empty() {
                Polymatroid::zero(m)
            } else {
                Polymatroid::sum(m, small)?
            };
            CoreCoverInstance::new(matroid, poly, None)?.into()
        }
        Flavor::Gap => gen_gap_instance(m)?.into(),
    };
    Ok(inst)
}

/// Unrelated Santa Claus instance with a planted allocation of value at least 1.
///
/// Resources are split into `m` non-empty groups; a player values the resources of its own group
/// high enough to reach 1 and everything else at random. All values are multiples of `1/20`.
pub fn gen_planted_unrelated_santa(seed: u64, m: usize, n: usize) -> Result<(AllocInstance, Allocation)> {
    if m == 0 || n < m {
        return Err(Error::InvalidInput(format!(
            "planting needs 1 <= m <= n, got m={m}, n={n}"
        )));
    }
    let mut rng = rng_for(seed);
    let perm = random_permutation(&mut rng, n);
    let mut owner = vec![0usize; n];
    for (k, &r) in perm.iter().enumerate() {
        owner[r] = if k < m { k } else { rng.gen_range(0..m) };
    }
    let group = |i: usize| owner.iter().filter(|&&o| o == i).count() as i64;
    let items = (0..n)
        .map(|r| {
            let low = (20 + group(owner[r]) - 1) / group(owner[r]);
            Item::per_entity(
                (0..m)
                    .map(|i| {
                        let k = if i == owner[r] {
                            rng.gen_range(low..=low.max(30))
                        } else {
                            rng.gen_range(0..=20)
                        };
                        Some(Rational::new(k.into(), 20.into()))
                    })
                    .collect(),
            )
        })
        .collect();
    Ok((AllocInstance::santa(m, items), Allocation::from_owners(&owner, m)))
}

/// Shuffled copy of `0..n`; used by generators that plant solutions.
pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}
