use num::{One, Signed, Zero};

use super::simplex::{solve, LinearProgram, LpOutcome, Relation};
use crate::caps;
use crate::instances::{AllocInstance, Fractional, Objective};
use crate::polycore::{is_basis_rational, member_rational};
use crate::rational::Rational;
use crate::subset::Subset;
use crate::{Error, Result};

/// Rows allowed per LP variable before the constraint system counts as too large.
const ROWS_PER_VAR: usize = 16;

/// Item-entity pairs that may carry a positive amount: finite value and `f_j({i}) > 0`.
pub fn allowed_pairs(inst: &AllocInstance) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for j in 0..inst.items.len() {
        let p = inst.item_polymatroid(j);
        for i in 0..inst.entities {
            if inst.items[j].value(i).is_some() && p.singleton(i) > 0 {
                pairs.push((j, i));
            }
        }
    }
    pairs
}

/// The assignment LP with the target either fixed or free (`None`), in which case it is the
/// last variable and optimized.
fn build(inst: &AllocInstance, target: Option<&Rational>) -> Result<Option<(LinearProgram, Vec<(usize, usize)>)>> {
    inst.validate()?;
    let pairs = allowed_pairs(inst);
    let limit = caps::global().lp_vars;
    if pairs.len() > limit {
        return Err(Error::cap("assignment LP variables", pairs.len(), limit));
    }
    let vars = pairs.len() + usize::from(target.is_none());
    let mut lp = LinearProgram::new(vars);
    let one = Rational::one();
    for j in 0..inst.items.len() {
        let p = inst.item_polymatroid(j);
        let cols: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(jj, _))| jj == j)
            .map(|(v, &(_, i))| (v, i))
            .collect();
        let allowed: Subset = cols.iter().map(|&(_, i)| i).collect();
        if p.eval(allowed) < p.total() {
            return Ok(None);
        }
        let total = Rational::from_integer(p.total().into());
        lp.add(
            cols.iter().map(|&(v, _)| (v, one.clone())).collect(),
            Relation::Eq,
            total,
        );
        if inst.items[j].polymatroid.is_some() {
            let proper: Vec<Subset> = allowed.subsets().skip(1).filter(|&s| s != allowed).collect();
            for s in proper {
                let bound = p.eval(s);
                // implied by the singleton rows
                if s.len() > 1 && bound >= s.iter().map(|i| p.singleton(i)).sum::<i64>() {
                    continue;
                }
                let coefs = cols
                    .iter()
                    .filter(|&&(_, i)| s.contains(i))
                    .map(|&(v, _)| (v, one.clone()))
                    .collect();
                lp.add(coefs, Relation::Le, Rational::from_integer(bound.into()));
            }
        }
        if lp.constraints.len() > ROWS_PER_VAR * limit {
            return Err(Error::cap(
                "assignment LP constraints",
                lp.constraints.len(),
                ROWS_PER_VAR * limit,
            ));
        }
    }
    for i in 0..inst.entities {
        let mut coefs: Vec<(usize, Rational)> = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(_, ii))| ii == i)
            .map(|(v, &(j, _))| (v, inst.items[j].value(i).expect("allowed pairs are finite").clone()))
            .collect();
        let (relation, rhs) = match (inst.objective, target) {
            (Objective::Santa, Some(t)) => (Relation::Ge, t.clone()),
            (Objective::Makespan, Some(t)) => (Relation::Le, t.clone()),
            (Objective::Santa, None) => {
                coefs.push((vars - 1, -one.clone()));
                (Relation::Ge, Rational::zero())
            }
            (Objective::Makespan, None) => {
                coefs.push((vars - 1, -one.clone()));
                (Relation::Le, Rational::zero())
            }
        };
        lp.add(coefs, relation, rhs);
    }
    if target.is_none() {
        let sign = match inst.objective {
            Objective::Santa => -one,
            Objective::Makespan => one,
        };
        lp.objective = vec![(vars - 1, sign)];
    }
    Ok(Some((lp, pairs)))
}

fn unpack(inst: &AllocInstance, pairs: &[(usize, usize)], x: &[Rational], target: Rational) -> Fractional {
    let mut out = vec![vec![Rational::zero(); inst.entities]; inst.items.len()];
    for (v, &(j, i)) in pairs.iter().enumerate() {
        out[j][i] = x[v].clone();
    }
    Fractional { target, x: out }
}

/// A feasible point of the assignment LP at target `T`, or `None` when there is none.
pub fn solve_assignment_lp(inst: &AllocInstance, target: &Rational) -> Result<Option<Fractional>> {
    let Some((lp, pairs)) = build(inst, Some(target))? else {
        return Ok(None);
    };
    Ok(match solve(&lp) {
        LpOutcome::Optimal { x, .. } => Some(unpack(inst, &pairs, &x, target.clone())),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => return Err(Error::Internal("feasibility LP reported unbounded".into())),
    })
}

/// The best target the assignment LP admits (largest for Santa, smallest for Makespan) with a
/// solution attaining it.
pub fn optimal_assignment_lp(inst: &AllocInstance) -> Result<Option<Fractional>> {
    let Some((lp, pairs)) = build(inst, None)? else {
        return Ok(None);
    };
    Ok(match solve(&lp) {
        LpOutcome::Optimal { x, .. } => {
            let t = x[lp.vars - 1].clone();
            Some(unpack(inst, &pairs, &x, t))
        }
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => return Err(Error::Internal("assignment LP reported unbounded".into())),
    })
}

/// Checks that `frac` is feasible for the assignment LP of `inst` at its own target. Santa items
/// need only lie in their polytope.
pub fn check_fractional(inst: &AllocInstance, frac: &Fractional) -> Result<()> {
    let contract = |msg: String| Err(Error::Contract(msg));
    if frac.x.len() != inst.items.len() || frac.x.iter().any(|r| r.len() != inst.entities) {
        return contract("fractional assignment has the wrong shape".into());
    }
    for (j, row) in frac.x.iter().enumerate() {
        if row.iter().any(|v| v.is_negative()) {
            return contract(format!("item {j}: negative entry"));
        }
        if (0..inst.entities).any(|i| inst.items[j].value(i).is_none() && !row[i].is_zero()) {
            return contract(format!("item {j}: amount on a forbidden entity"));
        }
        let p = inst.item_polymatroid(j);
        let ok = match inst.objective {
            Objective::Santa => member_rational(&p, row)?,
            Objective::Makespan => is_basis_rational(&p, row)?,
        };
        if !ok {
            return contract(format!("item {j}: vector outside its polytope"));
        }
    }
    for i in 0..inst.entities {
        let total: Rational = (0..inst.items.len())
            .filter(|&j| !frac.x[j][i].is_zero())
            .map(|j| inst.items[j].value(i).expect("checked above") * &frac.x[j][i])
            .sum();
        let ok = match inst.objective {
            Objective::Santa => total >= frac.target,
            Objective::Makespan => total <= frac.target,
        };
        if !ok {
            return contract(format!("entity {i}: total {total} misses the target {}", frac.target));
        }
    }
    Ok(())
}
