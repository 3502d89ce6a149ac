use num::{One, Zero};

use crate::error::{contract, internal};
use crate::instances::{AllocInstance, Allocation, Item, Objective, Values};
use crate::polycore::{greedy_basis_above, is_basis, IntVector, Polymatroid};
use crate::rational::{floor_i64, to_i64_exact, Rational};
use crate::{Error, Result};

/// An instance of the other objective over the same ground set, built item by item from the
/// dual of each capped polymatroid.
#[derive(Clone, Debug)]
pub struct DualBundle {
    pub instance: AllocInstance,
    /// Per item: the cap `k_j` and the dualizing vector `k_j·E`.
    pub caps: Vec<i64>,
    /// Per item: the source polymatroid capped at `k_j`.
    pub capped: Vec<Polymatroid>,
    pub values: Vec<Rational>,
    /// `Σ_j k_j·v_j - 1`.
    pub t: Rational,
    pub source: AllocInstance,
}

impl DualBundle {
    /// `Σ_j v_j·(x_j(e) + x̄_j(e))`, which is `1 + t` for every `e` on translated pairs.
    pub fn dual_sum(&self, x: &Allocation, xbar: &Allocation, e: usize) -> Rational {
        self.values
            .iter()
            .enumerate()
            .map(|(j, v)| v * Rational::from_integer((x.x[j][e] + xbar.x[j][e]).into()))
            .sum()
    }
}

fn single_values(inst: &AllocInstance) -> Result<Vec<Rational>> {
    inst.validate()?;
    contract!(
        inst.is_matroid_flavor(),
        "dual reductions need a matroid-flavor instance"
    );
    contract!(
        (1..=2).contains(&inst.items.len()),
        "dual reductions take one or two items, got {}",
        inst.items.len()
    );
    inst.items
        .iter()
        .enumerate()
        .map(|(j, it)| match &it.values {
            Values::Single(v) => Ok(v.clone()),
            Values::PerEntity(_) => Err(Error::Contract(format!("item {j} needs a single value"))),
        })
        .collect()
}

fn build(inst: &AllocInstance, values: Vec<Rational>, caps: Vec<i64>, objective: Objective) -> Result<DualBundle> {
    let n = inst.entities;
    let mut capped = Vec::new();
    let mut items = Vec::new();
    for (j, (&k, v)) in caps.iter().zip(&values).enumerate() {
        let c = Polymatroid::capped_uniform(&inst.item_polymatroid(j), k)?;
        let dual = Polymatroid::dual(&c, vec![k; n])?;
        items.push(Item::single(v.clone()).with_polymatroid(dual));
        capped.push(c);
    }
    let t = caps
        .iter()
        .zip(&values)
        .map(|(&k, v)| v * Rational::from_integer(k.into()))
        .sum::<Rational>()
        - Rational::one();
    let instance = AllocInstance {
        objective,
        entities: n,
        items,
    };
    Ok(DualBundle {
        instance,
        caps,
        capped,
        values,
        t,
        source: inst.clone(),
    })
}

/// `x_j(e) = k_j - x̄_j(e)` for every item and element.
fn complement(bundle: &DualBundle, xbar: &Allocation) -> Allocation {
    Allocation {
        x: xbar
            .x
            .iter()
            .zip(&bundle.caps)
            .map(|(row, &k)| row.iter().map(|&v| k - v).collect())
            .collect(),
    }
}

/// `k = ⌊1/p⌋`, or the largest singleton value when `p = 0`, where no cap binds.
fn size_cap(p: &Rational, poly: &Polymatroid) -> i64 {
    if p.is_zero() {
        (0..poly.ground_size()).map(|e| poly.singleton(e)).max().unwrap_or(0)
    } else {
        floor_i64(&p.recip())
    }
}

/// Builds the Santa Claus instance of a job-matroid makespan instance with one or two jobs:
/// job `j` is capped at `k_j = ⌊1/p_j⌋` and dualized with respect to `k_j·E`.
///
/// Returns `None` when some cap lowers `f_j(E)`, which proves `OPT > 1`.
pub fn matroid_makespan_to_santa(inst: &AllocInstance) -> Result<Option<DualBundle>> {
    contract!(inst.objective == Objective::Makespan, "expected a makespan instance");
    let values = single_values(inst)?;
    let caps: Vec<i64> = values
        .iter()
        .enumerate()
        .map(|(j, p)| size_cap(p, &inst.item_polymatroid(j)))
        .collect();
    let bundle = build(inst, values, caps, Objective::Santa)?;
    for (j, c) in bundle.capped.iter().enumerate() {
        if c.total() != inst.item_polymatroid(j).total() {
            return Ok(None);
        }
    }
    Ok(Some(bundle))
}

/// A translated solution together with the raised dual vectors it came from.
#[derive(Clone, Debug)]
pub struct DualTranslation {
    pub allocation: Allocation,
    /// The solution of the built instance, raised to bases where needed.
    pub dual: Allocation,
    /// Objective value of the built solution.
    pub built_value: Rational,
    pub value: Rational,
}

/// Turns a Santa Claus solution `ȳ` of the dual instance into the schedule `y_j = k_j - ȳ_j`,
/// checking the identity `Σ_j p_j(y_j(e) + ȳ_j(e)) = 1 + t` and the makespan bound
/// `1 + t - value(ȳ)`.
pub fn matroid_santa_solution_to_schedule(bundle: &DualBundle, ybar: &Allocation) -> Result<DualTranslation> {
    contract!(
        bundle.instance.objective == Objective::Santa,
        "bundle was not built from a makespan instance"
    );
    bundle.instance.validate_allocation(ybar)?;
    let built_value = bundle.instance.objective_value(ybar).expect("finite values");
    let raised = Allocation {
        x: ybar
            .x
            .iter()
            .enumerate()
            .map(|(j, y)| greedy_basis_above(&bundle.instance.item_polymatroid(j), y))
            .collect::<Result<Vec<IntVector>>>()?,
    };
    let y = complement(bundle, &raised);
    for (j, yj) in y.x.iter().enumerate() {
        internal!(
            is_basis(&bundle.capped[j], yj),
            "job {j}: complement is not a basis of the capped polymatroid"
        );
    }
    bundle.source.validate_allocation(&y)?;
    let one_t = Rational::one() + &bundle.t;
    for e in 0..bundle.source.entities {
        internal!(bundle.dual_sum(&y, &raised, e) == one_t, "dual identity fails at {e}");
    }
    let value = bundle.source.objective_value(&y).expect("finite sizes");
    let bound = &one_t - &built_value;
    internal!(value <= bound, "makespan {value} exceeds 1 + t - value = {bound}");
    Ok(DualTranslation {
        allocation: y,
        dual: raised,
        built_value,
        value,
    })
}

/// Builds the makespan instance of a resource-matroid Santa Claus instance normalized to the
/// values `1` and `1/b`: the resources are capped at `1` and `b` and dualized with respect to
/// `1·E` and `b·E`.
pub fn matroid_santa_to_makespan(inst: &AllocInstance) -> Result<DualBundle> {
    contract!(inst.objective == Objective::Santa, "expected a Santa Claus instance");
    let values = single_values(inst)?;
    let caps = values
        .iter()
        .map(|v| {
            let ok = !v.is_zero() && *v <= Rational::one() && v.recip().is_integer();
            contract!(ok, "resource values must be 1 or 1/b for an integer b, got {v}");
            Ok(to_i64_exact(&v.recip()).expect("integral"))
        })
        .collect::<Result<Vec<i64>>>()?;
    build(inst, values, caps, Objective::Makespan)
}

/// Turns a schedule `ȳ` of the dual makespan instance into the allocation `y'_j = k_j - ȳ_j`
/// raised to bases of the source polymatroids, checking the identity
/// `Σ_j v_j(y'_j(e) + ȳ_j(e)) = 1 + t` and the value bound `1 + t - makespan(ȳ)`.
pub fn matroid_schedule_to_santa(bundle: &DualBundle, ybar: &Allocation) -> Result<DualTranslation> {
    contract!(
        bundle.instance.objective == Objective::Makespan,
        "bundle was not built from a Santa Claus instance"
    );
    bundle.instance.validate_allocation(ybar)?;
    let built_value = bundle.instance.objective_value(ybar).expect("finite sizes");
    let y_prime = complement(bundle, ybar);
    let one_t = Rational::one() + &bundle.t;
    for (j, yj) in y_prime.x.iter().enumerate() {
        internal!(
            is_basis(&bundle.capped[j], yj),
            "resource {j}: complement is not a basis of the capped polymatroid"
        );
    }
    for e in 0..bundle.source.entities {
        internal!(
            bundle.dual_sum(&y_prime, ybar, e) == one_t,
            "dual identity fails at {e}"
        );
    }
    let y = Allocation {
        x: y_prime
            .x
            .iter()
            .enumerate()
            .map(|(j, v)| greedy_basis_above(&bundle.source.item_polymatroid(j), v))
            .collect::<Result<Vec<IntVector>>>()?,
    };
    bundle.source.validate_allocation(&y)?;
    let value = bundle.source.objective_value(&y).expect("finite values");
    let bound = &one_t - &built_value;
    internal!(value >= bound, "value {value} below 1 + t - makespan = {bound}");
    Ok(DualTranslation {
        allocation: y,
        dual: ybar.clone(),
        built_value,
        value,
    })
}
