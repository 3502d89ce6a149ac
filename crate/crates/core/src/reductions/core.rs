use num::{Integer, One, Zero};

use crate::error::{contract, internal};
use crate::instances::{AllocInstance, Allocation, CoreCoverInstance, Fractional, Item, Objective, Values};
use crate::intersect::decompose_merged_basis;
use crate::localsearch::{solve_cover, CoverOutcome, CoverReport};
use crate::polycore::{greedy_basis_above, member, IntVector, Matroid, Polymatroid};
use crate::rational::{ceil_i64, common_denominator, Rational};
use crate::rounding::round_santa;
use crate::Result;

/// Which argument of the reduction produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreCase {
    /// `T/α <= u`: one unit of any resource per player suffices.
    OneEach,
    /// `u < T/α <= w`: matroid of players coverable by `w`-resources against the `u`-polymatroid.
    Cover,
    /// `T/α > w`: fractional solution from `f_3 = u·f_u + w·f_w`, then rounding.
    Fractional,
    /// Several values: heavy resources form the matroid, light ones the weighted polymatroid.
    HeavyLight,
}

/// `T/α` against `u <= w`.
pub fn two_value_case(u: &Rational, w: &Rational, guess: &Rational, alpha: &Rational) -> CoreCase {
    let share = guess / alpha;
    if share <= *u {
        CoreCase::OneEach
    } else if share <= *w {
        CoreCase::Cover
    } else {
        CoreCase::Fractional
    }
}

#[derive(Clone, Debug)]
pub struct CoreRun {
    pub case: CoreCase,
    pub allocation: Allocation,
    pub value: Rational,
    /// The core cover instance handed to the local search, when there was one.
    pub core: Option<CoreCoverInstance>,
    pub report: Option<CoverReport>,
}

fn single_values(inst: &AllocInstance) -> Result<Vec<Rational>> {
    inst.validate()?;
    contract!(inst.objective == Objective::Santa, "expected a Santa Claus instance");
    contract!(inst.is_matroid_flavor(), "expected a resource-matroid instance");
    inst.items
        .iter()
        .enumerate()
        .map(|(j, it)| match &it.values {
            Values::Single(v) => Ok(v.clone()),
            Values::PerEntity(_) => Err(crate::Error::Contract(format!("resource {j} needs a single value"))),
        })
        .collect()
}

/// The unit `g` with every light value an integer multiple `c_j·g`, and the multiples.
pub fn value_unit(values: &[Rational]) -> (Rational, Vec<i64>) {
    let nonzero: Vec<&Rational> = values.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return (Rational::one(), vec![0; values.len()]);
    }
    let l = common_denominator(nonzero.iter().copied());
    let scaled: Vec<_> = values
        .iter()
        .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = scaled.iter().fold(num::BigInt::zero(), |acc, s| acc.gcd(s));
    let unit = Rational::new(g.clone(), l);
    let mult = scaled
        .iter()
        .map(|s| i64::try_from(s / &g).expect("multiple fits in i64"))
        .collect();
    (unit, mult)
}

/// `Σ_{j ∈ light} c_j·f_j` with `v_j = c_j·g`, and `g`.
pub fn light_polymatroid(inst: &AllocInstance, light: &[usize]) -> Result<(Polymatroid, Rational, Vec<i64>)> {
    let values: Vec<Rational> = light
        .iter()
        .map(|&j| inst.items[j].value(0).cloned().unwrap_or_else(Rational::zero))
        .collect();
    let (unit, mult) = value_unit(&values);
    let parts = light
        .iter()
        .zip(&mult)
        .filter(|(_, &c)| c > 0)
        .map(|(&j, &c)| Polymatroid::scaled(&inst.item_polymatroid(j), c))
        .collect::<Result<Vec<_>>>()?;
    Ok((sum_or_zero(inst.entities, parts)?, unit, mult))
}

fn sum_or_zero(n: usize, parts: Vec<Polymatroid>) -> Result<Polymatroid> {
    if parts.is_empty() {
        Ok(Polymatroid::zero(n))
    } else {
        Polymatroid::sum(n, parts)
    }
}

/// Splits a member `y` of `Σ parts` into members of the parts whose sum dominates `y`.
fn split_among(parts: &[Polymatroid], y: &[i64]) -> Result<Vec<IntVector>> {
    let n = y.len();
    if parts.is_empty() {
        internal!(y.iter().all(|&v| v == 0), "nothing to split a non-zero vector into");
        return Ok(Vec::new());
    }
    let total = Polymatroid::sum(n, parts.to_vec())?;
    let basis = greedy_basis_above(&total, y)?;
    peel(parts, basis)
}

/// One part at a time against the sum of the rest, so each step uses two copies of the ground set.
fn peel(parts: &[Polymatroid], basis: IntVector) -> Result<Vec<IntVector>> {
    if parts.len() == 1 {
        return Ok(vec![basis]);
    }
    let rest = Polymatroid::sum(basis.len(), parts[1..].to_vec())?;
    let mut two = decompose_merged_basis(&[parts[0].clone(), rest], &basis)?;
    let tail = two.pop().expect("two parts");
    let mut out = vec![two.pop().expect("two parts")];
    out.extend(peel(&parts[1..], tail)?);
    Ok(out)
}

/// One unit of any valuable resource for every player, or `None` when some player cannot get one.
fn one_each(inst: &AllocInstance, values: &[Rational]) -> Result<Option<Allocation>> {
    let n = inst.entities;
    let useful: Vec<usize> = (0..inst.items.len()).filter(|&j| !values[j].is_zero()).collect();
    let parts: Vec<Polymatroid> = useful.iter().map(|&j| inst.item_polymatroid(j)).collect();
    let all = sum_or_zero(n, parts.clone())?;
    if !member(&all, &vec![1; n]) {
        return Ok(None);
    }
    let mut alloc = Allocation::empty(inst.items.len(), n);
    for (&j, x) in useful.iter().zip(split_among(&parts, &vec![1; n])?) {
        alloc.x[j] = x;
    }
    Ok(Some(alloc))
}

/// The core cover run: players covered by a heavy resource form the matroid side, the others
/// need `target` from the light resources, counted in units of their common value unit.
fn heavy_light(
    inst: &AllocInstance,
    heavy: &[usize],
    light: &[usize],
    target: &Rational,
    eps: &Rational,
) -> Result<(Option<Allocation>, CoreCoverInstance, CoverReport)> {
    let n = inst.entities;
    let heavy_parts: Vec<Polymatroid> = heavy.iter().map(|&j| inst.item_polymatroid(j)).collect();
    let matroid = if heavy_parts.is_empty() {
        Matroid::uniform(n, 0)
    } else {
        Matroid::induced(&Polymatroid::sum(n, heavy_parts.clone())?)
    };
    let (poly, unit, mult) = light_polymatroid(inst, light)?;
    let b = ceil_i64(&(target / &unit)).max(1);
    let core = CoreCoverInstance::new(matroid, poly, Some(b))?;
    let report = solve_cover(&core, b, eps)?;
    let CoverOutcome::Cover { i_m, y } = &report.outcome else {
        return Ok((None, core, report));
    };

    let mut alloc = Allocation::empty(inst.items.len(), n);
    let indicator: Vec<i64> = (0..n).map(|e| i64::from(i_m.contains(e))).collect();
    for (&j, x) in heavy.iter().zip(split_among(&heavy_parts, &indicator)?) {
        alloc.x[j] = x;
    }

    let used: Vec<(usize, i64)> = light
        .iter()
        .zip(&mult)
        .filter(|(_, &c)| c > 0)
        .map(|(&j, &c)| (j, c))
        .collect();
    let scaled: Vec<Polymatroid> = used
        .iter()
        .map(|&(j, c)| Polymatroid::scaled(&inst.item_polymatroid(j), c))
        .collect::<Result<_>>()?;
    let z = split_among(&scaled, y)?;
    let rest: Vec<usize> = (0..n).filter(|&e| !i_m.contains(e)).collect();
    let integral = used.iter().zip(&z).all(|(&(_, c), zj)| zj.iter().all(|v| v % c == 0));
    if integral {
        for (&(j, c), zj) in used.iter().zip(&z) {
            alloc.x[j] = zj.iter().map(|v| v / c).collect();
        }
    } else if !rest.is_empty() {
        // round the light part on the players outside I_M
        let map: Vec<Option<usize>> = rest.iter().map(|&e| Some(e)).collect();
        let items = used
            .iter()
            .map(|&(j, _)| {
                let v = inst.items[j].value(0).expect("finite").clone();
                Ok(Item::single(v).with_polymatroid(Polymatroid::mapped(&inst.item_polymatroid(j), map.clone())?))
            })
            .collect::<Result<Vec<_>>>()?;
        let sub = AllocInstance::santa(rest.len(), items);
        let frac = Fractional {
            target: &unit * Rational::from_integer(b.into()),
            x: used
                .iter()
                .zip(&z)
                .map(|(&(_, c), zj)| rest.iter().map(|&e| Rational::new(zj[e].into(), c.into())).collect())
                .collect(),
        };
        let rounded = round_santa(&sub, &frac)?;
        for (k, &(j, _)) in used.iter().enumerate() {
            for (r, &e) in rest.iter().enumerate() {
                alloc.x[j][e] = rounded.x[k][r];
            }
        }
    }
    inst.validate_allocation(&alloc)?;
    Ok((Some(alloc), core, report))
}

/// Largest `β` with `β·E ∈ P`, by binary search over membership.
pub fn max_uniform_level(p: &Polymatroid) -> Result<i64> {
    let n = p.ground_size();
    let (mut lo, mut hi) = (0i64, (0..n).map(|e| p.singleton(e)).min().unwrap_or(0));
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if member(p, &vec![mid; n]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// The fractional route: the largest uniform level of `Σ_j c_j·f_j`, split into per-resource
/// fractions and rounded. `None` when that level is below `guess`.
fn fractional(inst: &AllocInstance, guess: &Rational) -> Result<Option<Allocation>> {
    let n = inst.entities;
    let all: Vec<usize> = (0..inst.items.len()).collect();
    let (p3, unit, mult) = light_polymatroid(inst, &all)?;
    let beta = max_uniform_level(&p3)?;
    let level = &unit * Rational::from_integer(beta.into());
    if level < *guess {
        return Ok(None);
    }
    let used: Vec<usize> = all.iter().copied().filter(|&j| mult[j] > 0).collect();
    let scaled: Vec<Polymatroid> = used
        .iter()
        .map(|&j| Polymatroid::scaled(&inst.item_polymatroid(j), mult[j]))
        .collect::<Result<_>>()?;
    let z = split_among(&scaled, &vec![beta; n])?;
    let mut x = vec![vec![Rational::zero(); n]; inst.items.len()];
    for (&j, zj) in used.iter().zip(&z) {
        x[j] = zj.iter().map(|&v| Rational::new(v.into(), mult[j].into())).collect();
    }
    let frac = Fractional { target: level, x };
    Ok(Some(round_santa(inst, &frac)?))
}

/// Solves a restricted resource-matroid Santa Claus instance for the guess `T` through the core
/// cover problem.
///
/// With at most two distinct values the two-value cases apply and the result has value at least
/// `T/α`; otherwise resources are split at `T/(2α)` and the result has value at least
/// `T/(2α)`. `None` rejects the guess: the local search certified that no cover of the
/// required level exists, or the fractional level stays below `T`.
pub fn reduce_to_core(
    inst: &AllocInstance,
    guess: &Rational,
    alpha: &Rational,
    eps: &Rational,
) -> Result<Option<CoreRun>> {
    let values = single_values(inst)?;
    let two = Rational::from_integer(2.into());
    contract!(*alpha >= two, "α must be at least 2, got {alpha}");
    contract!(*guess > Rational::zero(), "the guess must be positive");
    let share = guess / alpha;
    let finish = |case, alloc: Allocation, core, report, floor: Rational| -> Result<Option<CoreRun>> {
        let value = inst.objective_value(&alloc).expect("finite");
        internal!(value >= floor, "value {value} below the guaranteed {floor}");
        Ok(Some(CoreRun {
            case,
            allocation: alloc,
            value,
            core,
            report,
        }))
    };
    let m = inst.items.len();

    if let Some((u, w)) = inst.two_values() {
        let case = two_value_case(&u, &w, guess, alpha);
        return match case {
            CoreCase::OneEach => match one_each(inst, &values)? {
                Some(alloc) => finish(case, alloc, None, None, u.min(share)),
                None => Ok(None),
            },
            CoreCase::Cover => {
                let heavy: Vec<usize> = (0..m).filter(|&j| values[j] == w).collect();
                let light: Vec<usize> = (0..m).filter(|&j| values[j] == u).collect();
                match heavy_light(inst, &heavy, &light, &share, eps)? {
                    (Some(alloc), core, report) => finish(case, alloc, Some(core), Some(report), share),
                    _ => Ok(None),
                }
            }
            _ => match fractional(inst, guess)? {
                Some(alloc) => finish(case, alloc, None, None, share),
                None => Ok(None),
            },
        };
    }

    let threshold = &share / &two;
    let heavy: Vec<usize> = (0..m).filter(|&j| values[j] >= threshold).collect();
    let light: Vec<usize> = (0..m).filter(|&j| values[j] < threshold).collect();
    match heavy_light(inst, &heavy, &light, &share, eps)? {
        (Some(alloc), core, report) => finish(CoreCase::HeavyLight, alloc, Some(core), Some(report), threshold),
        _ => Ok(None),
    }
}
