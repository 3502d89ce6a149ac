use rand::Rng;

use crate::instances::rng_for;
use crate::polycore::{member, IntVector, Matroid, Polymatroid};
use crate::subset::Subset;
use crate::{Error, Result};

/// Largest ground set checked exhaustively.
pub const AXIOM_GROUND_LIMIT: usize = 12;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: u64,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn note(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        // a handful of examples is enough to diagnose a broken oracle
        if !ok && self.violations.len() < 20 {
            self.violations.push(msg());
        }
    }
}

fn check_ground(n: usize) -> Result<()> {
    if n > AXIOM_GROUND_LIMIT {
        return Err(Error::cap("axiom check ground", n, AXIOM_GROUND_LIMIT));
    }
    Ok(())
}

/// Local submodularity `g(S+i) + g(S+j) >= g(S+i+j) + g(S)` over all `S` and `i, j ∉ S`.
fn check_submodular(n: usize, g: impl Fn(Subset) -> i64, report: &mut AxiomReport) {
    for s in Subset::full(n).subsets() {
        let outside: Vec<usize> = (0..n).filter(|&i| !s.contains(i)).collect();
        for (a, &i) in outside.iter().enumerate() {
            for &j in &outside[a + 1..] {
                let lhs = g(s.with(i)) + g(s.with(j));
                let rhs = g(s.with(i).with(j)) + g(s);
                report.note(lhs >= rhs, || {
                    format!("submodularity fails at S={s:?}, i={i}, j={j}: {lhs} < {rhs}")
                });
            }
        }
    }
}

/// Normalization, unit increase and submodularity of a rank function.
pub fn check_matroid_axioms(m: &Matroid) -> Result<AxiomReport> {
    let n = m.ground_size();
    check_ground(n)?;
    let mut report = AxiomReport::default();
    let r = |s: Subset| m.rank(s) as i64;
    report.note(r(Subset::EMPTY) == 0, || "rank of the empty set is not 0".into());
    for s in Subset::full(n).subsets() {
        for i in (0..n).filter(|&i| !s.contains(i)) {
            let d = r(s.with(i)) - r(s);
            report.note(d == 0 || d == 1, || {
                format!("adding {i} to S={s:?} changes the rank by {d}")
            });
        }
    }
    check_submodular(n, r, &mut report);
    Ok(report)
}

/// Random member of `p` built by unit steps in random order.
fn random_member(p: &Polymatroid, rng: &mut impl Rng) -> IntVector {
    let n = p.ground_size();
    let mut x = vec![0; n];
    if n == 0 {
        return x;
    }
    let steps = rng.gen_range(0..=p.total().max(0) as usize);
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        x[i] += 1;
        if !member(p, &x) {
            x[i] -= 1;
        }
    }
    x
}

/// Polymatroid axioms checked exhaustively, plus the augmentation property on `samples`
/// random pairs drawn with `seed`.
pub fn check_polymatroid_axioms(p: &Polymatroid, samples: usize, seed: u64) -> Result<AxiomReport> {
    let n = p.ground_size();
    check_ground(n)?;
    let mut report = AxiomReport::default();
    let f = |s: Subset| p.eval(s);
    report.note(f(Subset::EMPTY) == 0, || "value of the empty set is not 0".into());
    for s in Subset::full(n).subsets() {
        for i in (0..n).filter(|&i| !s.contains(i)) {
            let (a, b) = (f(s), f(s.with(i)));
            report.note(b >= a, || format!("not monotone: f(S={s:?}) = {a} > f(S+{i}) = {b}"));
        }
    }
    check_submodular(n, f, &mut report);
    let mut rng = rng_for(seed);
    for _ in 0..samples {
        let x = random_member(p, &mut rng);
        let y = random_member(p, &mut rng);
        let (x, y) = if x.iter().sum::<i64>() <= y.iter().sum::<i64>() {
            (x, y)
        } else {
            (y, x)
        };
        if x.iter().sum::<i64>() == y.iter().sum::<i64>() {
            continue;
        }
        let ok = (0..n).any(|i| {
            if x[i] >= y[i] {
                return false;
            }
            let mut z = x.clone();
            z[i] += 1;
            member(p, &z)
        });
        report.note(ok, || format!("augmentation fails for x={x:?}, y={y:?}"));
    }
    Ok(report)
}
