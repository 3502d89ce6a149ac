//! Exhaustive ground truth: optima, cover values and axiom checks.

mod axioms;
mod configs;
mod cover;
mod opt;

pub use axioms::{check_matroid_axioms, check_polymatroid_axioms, AxiomReport, AXIOM_GROUND_LIMIT};
pub use configs::brute_opt_with_configs;
pub use cover::{brute_cover, brute_max_cover_b, cover_exists_at_level, CoverValue};
pub use opt::{brute_opt_makespan, brute_opt_santa, enumerate_bases, OptReport};

use crate::instances::Instance;
use crate::Result;

/// Axiom checks for every oracle in an instance, labelled by where the oracle sits.
pub fn check_instance_axioms(inst: &Instance, samples: usize, seed: u64) -> Result<Vec<(String, AxiomReport)>> {
    let mut out = Vec::new();
    match inst {
        Instance::CoreCover(c) => {
            out.push(("matroid".to_string(), check_matroid_axioms(&c.matroid)?));
            out.push((
                "polymatroid".to_string(),
                check_polymatroid_axioms(&c.polymatroid, samples, seed)?,
            ));
        }
        Instance::Alloc(a) => {
            for (j, it) in a.items.iter().enumerate() {
                if let Some(p) = &it.polymatroid {
                    out.push((format!("items[{j}]"), check_polymatroid_axioms(p, samples, seed)?));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{gen_gap_instance, AllocInstance, CoreCoverInstance, Item};
    use crate::polycore::{Matroid, Polymatroid};
    use crate::rational::qi;

    #[test]
    fn santa_takes_everything() {
        let inst = AllocInstance::santa(1, vec![Item::single(qi(1)), Item::single(qi(2))]);
        assert_eq!(brute_opt_santa(&inst).unwrap().value, qi(3));
    }

    #[test]
    fn identical_machines() {
        let jobs = [3, 3, 2].iter().map(|&p| Item::single(qi(p))).collect();
        let inst = AllocInstance::makespan(2, jobs);
        let r = brute_opt_makespan(&inst).unwrap();
        assert_eq!(r.value, qi(5));
        assert_eq!(r.search_space, 8);
        inst.validate_allocation(&r.witness).unwrap();
    }

    #[test]
    fn cover_values() {
        let c =
            CoreCoverInstance::new(Matroid::uniform(2, 0), Polymatroid::modular(vec![5, 5]).unwrap(), None).unwrap();
        assert_eq!(brute_max_cover_b(&c).unwrap(), CoverValue::Finite(5));
        assert_eq!(
            brute_max_cover_b(&gen_gap_instance(2).unwrap()).unwrap(),
            CoverValue::Finite(1)
        );
        let c = CoreCoverInstance::new(Matroid::free(3), Polymatroid::zero(3), None).unwrap();
        assert_eq!(brute_max_cover_b(&c).unwrap(), CoverValue::Unbounded);
    }

    #[test]
    fn bases_of_rank_one() {
        let p = Polymatroid::scaled_rank(&Matroid::uniform(3, 1), 2).unwrap();
        let bases = enumerate_bases(&p, 100).unwrap();
        assert_eq!(
            bases,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
    }
}
