use num::{One, Zero};

use crate::caps;
use crate::error::contract;
use crate::instances::{AllocInstance, Item, Objective};
use crate::rational::{ceil_i64, floor_i64, log_ceil, pow, Rational};
use crate::{Error, Result};

/// A multiset of value types: `counts[k]` resources of the collection's type `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Configuration {
    pub counts: Vec<usize>,
    /// `|c| = Σ_k counts[k]·types[k]`.
    pub total: Rational,
}

impl Configuration {
    pub fn new(counts: Vec<usize>, types: &[Rational]) -> Configuration {
        let total = counts
            .iter()
            .zip(types)
            .map(|(&c, v)| v * Rational::from_integer(c.into()))
            .sum();
        Configuration { counts, total }
    }

    /// Whether `have[k] >= counts[k]` for every type.
    pub fn fits(&self, have: &[usize]) -> bool {
        self.counts.iter().zip(have).all(|(c, h)| c <= h)
    }
}

/// Configurations per player over a shared list of non-zero value types.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigCollection {
    /// Value types in decreasing order.
    pub types: Vec<Rational>,
    pub per_player: Vec<Vec<Configuration>>,
}

impl ConfigCollection {
    pub fn type_index(&self, v: &Rational) -> Option<usize> {
        self.types.iter().position(|t| t == v)
    }
}

/// `v` rounded down to a power of `1/(1+ε)`, clamped to 1 from above and zeroed below
/// `1/((1+ε)n)`.
pub fn round_value(v: &Rational, eps: &Rational, n: usize) -> Rational {
    let one = Rational::one();
    let base = &one + eps;
    if *v >= one {
        return one;
    }
    let floor = (&base * Rational::from_integer(n.max(1).into())).recip();
    if v.is_zero() || *v < floor {
        return Rational::zero();
    }
    pow(&base, log_ceil(&base, &v.recip())).recip()
}

/// Counts `⌈(1+ε)^ℓ⌉` and `⌊(1+ε)^ℓ⌋` for every `ℓ >= 0` with `(1+ε)^ℓ <= n`, ascending.
pub fn allowed_counts(eps: &Rational, n: usize) -> Vec<usize> {
    let base = Rational::one() + eps;
    let limit = Rational::from_integer(n.into());
    let mut out = Vec::new();
    let mut p = Rational::one();
    while p <= limit {
        out.push(floor_i64(&p) as usize);
        out.push(ceil_i64(&p) as usize);
        p *= &base;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of value classes, `⌈1/ε³⌉`.
pub fn class_count(eps: &Rational) -> usize {
    let k = ceil_i64(&(eps * eps * eps).recip());
    usize::try_from(k).unwrap_or(usize::MAX)
}

/// Rounds the values of a classical Santa Claus instance and lists, per player, the
/// configurations with allowed counts that are increasing within each value class.
///
/// Counts never exceed the number of resources of that type the player values, since larger
/// ones cannot be matched. The empty configuration is left out.
pub fn config_round(inst: &AllocInstance, eps: &Rational) -> Result<(AllocInstance, ConfigCollection)> {
    if *eps <= Rational::zero() {
        return Err(Error::InvalidInput(format!("ε must be positive, got {eps}")));
    }
    inst.validate()?;
    contract!(
        inst.objective == Objective::Santa,
        "configuration rounding needs a Santa Claus instance"
    );
    contract!(
        inst.items.iter().all(|it| it.polymatroid.is_none()),
        "configuration rounding needs a classical instance"
    );
    let n = inst.items.len();
    let m = inst.entities;
    let rounded: Vec<Vec<Rational>> = inst
        .items
        .iter()
        .map(|it| {
            (0..m)
                .map(|i| round_value(it.value(i).expect("Santa values are finite"), eps, n))
                .collect()
        })
        .collect();
    let mut types: Vec<Rational> = rounded.iter().flatten().filter(|v| !v.is_zero()).cloned().collect();
    types.sort_by(|a, b| b.cmp(a));
    types.dedup();

    let counts = allowed_counts(eps, n);
    let kappa = class_count(eps);
    let limit = caps::global().configs;
    let mut per_player = Vec::with_capacity(m);
    for i in 0..m {
        let available: Vec<usize> = types
            .iter()
            .map(|t| rounded.iter().filter(|row| row[i] == *t).count())
            .collect();
        let options: Vec<Vec<usize>> = available
            .iter()
            .map(|&a| {
                std::iter::once(0)
                    .chain(counts.iter().copied().filter(|&c| c <= a))
                    .collect()
            })
            .collect();
        let mut found = Vec::new();
        let mut cur = vec![0usize; types.len()];
        enumerate(&options, kappa, 0, &mut cur, &mut found, limit)?;
        per_player.push(
            found
                .into_iter()
                .filter(|c| c.iter().any(|&k| k > 0))
                .map(|c| Configuration::new(c, &types))
                .collect(),
        );
    }
    let items = rounded
        .into_iter()
        .map(|row| Item::per_entity(row.into_iter().map(Some).collect()))
        .collect();
    Ok((AllocInstance::santa(m, items), ConfigCollection { types, per_player }))
}

fn enumerate(
    options: &[Vec<usize>],
    kappa: usize,
    k: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<()> {
    if k == options.len() {
        if out.len() >= limit {
            return Err(Error::cap("configurations per player", out.len() + 1, limit));
        }
        out.push(cur.clone());
        return Ok(());
    }
    // the nearest larger type of the same class that is in use bounds this count from below
    let floor = (0..k)
        .rev()
        .skip(kappa - 1)
        .step_by(kappa)
        .map(|p| cur[p])
        .find(|&c| c > 0);
    for &c in &options[k] {
        if c > 0 && floor.is_some_and(|f| c <= f) {
            continue;
        }
        cur[k] = c;
        enumerate(options, kappa, k + 1, cur, out, limit)?;
    }
    cur[k] = 0;
    Ok(())
}
