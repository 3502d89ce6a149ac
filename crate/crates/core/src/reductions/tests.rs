use num::{One, Zero};

use super::*;
use crate::instances::{gen_gap_instance, gen_random, AllocInstance, Allocation, Flavor, GenParams, Instance, Item};
use crate::localsearch::soundness_alpha;
use crate::oracle::{brute_opt_makespan, brute_opt_santa, check_polymatroid_axioms, cover_exists_at_level};
use crate::polycore::{Matroid, Polymatroid};
use crate::rational::{pow, q, qi};
use crate::{Error, Rational, Subset};

fn alloc_of(inst: Instance) -> AllocInstance {
    match inst {
        Instance::Alloc(a) => a,
        Instance::CoreCover(_) => unreachable!(),
    }
}

fn restricted(values: &[&[i64]], den: i64) -> AllocInstance {
    let players = values.len();
    let items = (0..values[0].len())
        .map(|j| Item::per_entity((0..players).map(|i| Some(q(values[i][j], den))).collect()))
        .collect();
    AllocInstance::santa(players, items)
}

// configuration rounding

#[test]
fn rounds_down_to_a_power() {
    let eps = q(1, 10);
    // smallest power of 1/1.1 not above 0.3, by walking the powers
    let mut p = Rational::one();
    let mut steps = 0;
    while p > q(3, 10) {
        p *= q(10, 11);
        steps += 1;
    }
    assert_eq!(steps, 13);
    assert_eq!(round_value(&q(3, 10), &eps, 10), p);
    assert_eq!(round_value(&q(3, 10), &eps, 10), pow(&q(10, 11), 13));
}

#[test]
fn clamps_large_values_to_one() {
    assert_eq!(round_value(&q(17, 10), &q(1, 10), 5), qi(1));
    assert_eq!(round_value(&qi(1), &q(1, 10), 5), qi(1));
}

#[test]
fn zeroes_tiny_values() {
    let eps = q(1, 10);
    let n = 7;
    let v = (qi(2 * n) * (qi(1) + &eps)).recip();
    assert_eq!(round_value(&v, &eps, n as usize), qi(0));
    assert_eq!(round_value(&qi(0), &eps, 3), qi(0));
}

#[test]
fn rounding_is_within_one_factor() {
    let eps = q(1, 4);
    for k in 1..60 {
        let v = q(k, 40);
        let r = round_value(&v, &eps, 8);
        if r.is_zero() {
            assert!(v < (qi(8) * q(5, 4)).recip());
        } else {
            assert!(r <= v);
            assert!(v.clone().min(qi(1)) < &r * q(5, 4));
        }
    }
}

#[test]
fn allowed_counts_match_float_powers() {
    for (eps, n) in [(q(1, 4), 6usize), (q(1, 10), 12), (qi(1), 9)] {
        let base =
            1.0 + eps.numer().to_string().parse::<f64>().unwrap() / eps.denom().to_string().parse::<f64>().unwrap();
        let mut expect = std::collections::BTreeSet::new();
        let mut p = 1.0f64;
        while p <= n as f64 + 1e-9 {
            expect.insert(p.floor() as usize);
            expect.insert(p.ceil() as usize);
            p *= base;
        }
        assert_eq!(allowed_counts(&eps, n), expect.into_iter().collect::<Vec<_>>());
    }
}

#[test]
fn class_count_is_inverse_cube() {
    assert_eq!(class_count(&q(1, 2)), 8);
    assert_eq!(class_count(&q(1, 4)), 64);
    assert_eq!(class_count(&q(2, 3)), 4);
}

#[test]
fn config_round_rejects_bad_eps() {
    let inst = restricted(&[&[1]], 1);
    assert!(matches!(config_round(&inst, &qi(0)), Err(Error::InvalidInput(_))));
}

#[test]
fn configurations_respect_counts_classes_and_supply() {
    let params = GenParams {
        m: 3,
        n: 5,
        max_weight: 4,
        ..GenParams::default()
    };
    let eps = q(1, 2);
    let kappa = class_count(&eps);
    for seed in 0..20 {
        let mut inst = alloc_of(gen_random(Flavor::UnrelatedSanta, seed, &params).unwrap());
        for it in &mut inst.items {
            if let crate::instances::Values::PerEntity(vs) = &mut it.values {
                for v in vs.iter_mut().flatten() {
                    *v = &*v / qi(4);
                }
            }
        }
        let (rounded, coll) = config_round(&inst, &eps).unwrap();
        let counts = allowed_counts(&eps, inst.items.len());
        for w in coll.types.windows(2) {
            assert!(w[0] > w[1]);
        }
        for (i, cs) in coll.per_player.iter().enumerate() {
            for c in cs {
                assert!(c.counts.iter().any(|&k| k > 0));
                for (k, &cnt) in c.counts.iter().enumerate() {
                    if cnt == 0 {
                        continue;
                    }
                    assert!(counts.contains(&cnt));
                    let have = rounded
                        .items
                        .iter()
                        .filter(|it| it.value(i) == Some(&coll.types[k]))
                        .count();
                    assert!(cnt <= have);
                    let mut p = k;
                    while p >= kappa {
                        p -= kappa;
                        if c.counts[p] > 0 {
                            assert!(c.counts[p] < cnt, "class order broken in {:?}", c.counts);
                            break;
                        }
                    }
                }
            }
        }
    }
}

// configuration gadget

fn one_type_collection(players: usize, counts: Vec<usize>) -> ConfigCollection {
    let types = vec![qi(1)];
    ConfigCollection {
        per_player: vec![vec![Configuration::new(counts, &types)]; players],
        types,
    }
}

#[test]
fn smallest_gadget() {
    let inst = restricted(&[&[1]], 1);
    let g = santa_to_makespan(&inst, &one_type_collection(1, vec![1])).unwrap();
    assert_eq!(g.machines.len(), 2);
    assert_eq!(g.jobs.len(), 2);
    assert_eq!(g.config_machine(0, 0), 0);
    assert_eq!(g.resource_machine(0), 1);
}

#[test]
fn gadget_counts_follow_the_construction() {
    // two players, three resources
    let inst = restricted(&[&[2, 2, 1], &[0, 2, 2]], 2);
    let (_, coll) = config_round(&inst, &q(1, 2)).unwrap();
    let g = santa_to_makespan(&inst, &coll).unwrap();
    let kept: Vec<Vec<&Configuration>> = coll
        .per_player
        .iter()
        .map(|cs| cs.iter().filter(|c| c.total >= qi(1)).collect())
        .collect();
    let machines: usize = kept.iter().map(Vec::len).sum::<usize>() + 3;
    let jobs: usize = 2 + kept
        .iter()
        .flatten()
        .map(|c| c.counts.iter().sum::<usize>())
        .sum::<usize>();
    assert_eq!(g.machines.len(), machines);
    assert_eq!(g.jobs.len(), jobs);
    assert_eq!(g.instance.entities, machines);
}

#[test]
fn config_job_size_is_value_over_total() {
    let inst = restricted(&[&[1, 1]], 1);
    let g = santa_to_makespan(&inst, &one_type_collection(1, vec![2])).unwrap();
    let m = g.config_machine(0, 0);
    for (j, job) in g.jobs.iter().enumerate() {
        let size = g.instance.items[j].value(m).cloned();
        match job {
            GadgetJob::Player { .. } => assert_eq!(size, Some(qi(1))),
            GadgetJob::Config { .. } => {
                assert_eq!(size, Some(q(1, 2)));
                assert_eq!(g.instance.items[j].value(g.resource_machine(0)), Some(&qi(1)));
            }
        }
    }
}

#[test]
fn gadget_rejects_players_without_configurations() {
    let inst = restricted(&[&[1]], 2);
    let types = vec![q(1, 2)];
    let coll = ConfigCollection {
        per_player: vec![vec![Configuration::new(vec![1], &types)]],
        types,
    };
    assert!(matches!(santa_to_makespan(&inst, &coll), Err(Error::InvalidInput(_))));
}

#[test]
fn optimal_gadget_schedule_gives_full_configurations() {
    let inst = restricted(&[&[2, 1, 1, 0], &[0, 1, 1, 2]], 2);
    let (_, coll) = config_round(&inst, &q(1, 2)).unwrap();
    let g = santa_to_makespan(&inst, &coll).unwrap();
    let opt = brute_opt_makespan(&g.instance).unwrap();
    assert!(opt.value <= qi(1));
    let back = santa_from_makespan_solution(&g, &opt.witness).unwrap();
    assert!(back.guaranteed >= qi(1));
    assert!(inst.objective_value(&back.allocation).unwrap() >= qi(1));
}

#[test]
fn config_jobs_at_home_give_nothing() {
    let inst = restricted(&[&[1, 1]], 1);
    let g = santa_to_makespan(&inst, &one_type_collection(1, vec![2])).unwrap();
    let home = g.config_machine(0, 0);
    let owners = vec![home; g.jobs.len()];
    let sched = Allocation::from_owners(&owners, g.instance.entities);
    assert_eq!(g.instance.objective_value(&sched), Some(qi(2)));
    assert!(matches!(
        santa_from_makespan_solution(&g, &sched),
        Err(Error::Contract(_))
    ));
}

#[test]
fn player_job_on_a_resource_machine_is_invalid() {
    let inst = restricted(&[&[1]], 1);
    let g = santa_to_makespan(&inst, &one_type_collection(1, vec![1])).unwrap();
    let sched = Allocation::from_owners(&[g.resource_machine(0), g.config_machine(0, 0)], 2);
    assert!(matches!(
        santa_from_makespan_solution(&g, &sched),
        Err(Error::InvalidInput(_))
    ));
}

// two-value equivalences

fn two_value_makespan(sizes: &[&[Option<(i64, i64)>]]) -> AllocInstance {
    let m = sizes.len();
    let items = (0..sizes[0].len())
        .map(|j| Item::per_entity((0..m).map(|i| sizes[i][j].map(|(a, b)| q(a, b))).collect()))
        .collect();
    AllocInstance::makespan(m, items)
}

#[test]
fn slots_and_threshold() {
    let s = Some((4, 10));
    let b = Some((7, 10));
    let g = twovalue_makespan_to_santa(&two_value_makespan(&[&[s, b], &[b, s]])).unwrap();
    assert_eq!((g.k, g.t.clone()), (2, q(1, 2)));

    let one = Some((1, 1));
    let g = twovalue_makespan_to_santa(&two_value_makespan(&[&[one]])).unwrap();
    assert_eq!((g.k, g.t.clone()), (1, qi(1)));

    assert_eq!(small_slots(&q(1, 5), 3), 3);
    assert_eq!(small_slots(&q(1, 5), 9), 5);
    assert_eq!(small_slots(&qi(0), 4), 4);
}

#[test]
fn small_big_size_goes_to_the_baseline() {
    let s = Some((1, 2));
    assert!(matches!(
        twovalue_makespan_to_santa(&two_value_makespan(&[&[s]])),
        Err(Error::Contract(_))
    ));
}

#[test]
fn single_machine_single_job() {
    let inst = two_value_makespan(&[&[Some((1, 1))]]);
    let g = twovalue_makespan_to_santa(&inst).unwrap();
    assert_eq!(g.instance.entities, 2);
    let opt = brute_opt_santa(&g.instance).unwrap();
    let back = twovalue_santa_from_makespan(&g, &opt.witness).unwrap();
    assert_eq!(back.schedule.x, vec![vec![1]]);
    assert_eq!(back.makespan, qi(1));
}

#[test]
fn job_player_without_resources_is_rejected() {
    let inst = two_value_makespan(&[&[Some((1, 1))]]);
    let g = twovalue_makespan_to_santa(&inst).unwrap();
    let mut alloc = Allocation::empty(g.instance.items.len(), 2);
    for x in &mut alloc.x {
        x[0] = 1;
    }
    assert!(matches!(
        twovalue_santa_from_makespan(&g, &alloc),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn gadget_threshold_is_at_most_one_and_big_size() {
    let params = GenParams {
        m: 3,
        n: 4,
        u: q(1, 4),
        w: q(3, 4),
        ..GenParams::default()
    };
    for seed in 0..30 {
        let inst = alloc_of(gen_random(Flavor::TwoValueMakespan, seed, &params).unwrap());
        if inst.two_values().is_some_and(|(_, w)| w > q(1, 2)) {
            let g = twovalue_makespan_to_santa(&inst).unwrap();
            assert!(g.t <= qi(1) && g.w >= g.t);
        }
    }
}

#[test]
fn optimal_santa_solution_gives_bounded_makespan() {
    let params = GenParams {
        m: 2,
        n: 3,
        u: q(1, 3),
        w: q(2, 3),
        ..GenParams::default()
    };
    let mut checked = 0;
    for seed in 0..40 {
        let inst = alloc_of(gen_random(Flavor::TwoValueMakespan, seed, &params).unwrap());
        if !inst.two_values().is_some_and(|(_, w)| w > q(1, 2)) {
            continue;
        }
        if brute_opt_makespan(&inst).unwrap().value > qi(1) {
            continue;
        }
        let g = twovalue_makespan_to_santa(&inst).unwrap();
        let opt = brute_opt_santa(&g.instance).unwrap();
        assert!(opt.value >= g.t);
        let back = twovalue_santa_from_makespan(&g, &opt.witness).unwrap();
        assert!(back.makespan <= qi(1));
        checked += 1;
    }
    assert!(checked >= 5);
}

fn brute_solver(inst: &AllocInstance) -> crate::Result<Allocation> {
    Ok(brute_opt_makespan(inst)?.witness)
}

#[test]
fn unit_values_use_a_matching() {
    let inst = restricted(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]], 1);
    let sol = twovalue_santa_to_makespan(&inst, &qi(2), &mut brute_solver)
        .unwrap()
        .unwrap();
    assert_eq!(sol.case, TwoValueCase::Matching);
    assert_eq!(inst.objective_value(&sol.allocation), Some(qi(1)));
}

#[test]
fn third_values_use_two_configurations() {
    // player 0 only gets the big resource, player 1 needs the three small ones
    let inst = restricted(&[&[3, 0, 0, 0], &[3, 1, 1, 1]], 3);
    assert_eq!(inst.two_values(), Some((q(1, 3), qi(1))));
    let sol = twovalue_santa_to_makespan(&inst, &qi(2), &mut brute_solver)
        .unwrap()
        .unwrap();
    assert_eq!(sol.case, TwoValueCase::Configurations);
    let g = sol.gadget.unwrap();
    assert_eq!(g.types, vec![qi(1), q(1, 3)]);
    assert_eq!(
        g.configs[0].iter().map(|c| c.counts.clone()).collect::<Vec<_>>(),
        vec![vec![1, 0], vec![0, 3]]
    );
    assert!(inst.objective_value(&sol.allocation).unwrap() >= q(1, 2));
}

#[test]
fn small_big_value_uses_the_additive_route() {
    let inst = AllocInstance::santa(2, (0..8).map(|_| Item::single(q(1, 4))).collect());
    let sol = twovalue_santa_to_makespan(&inst, &qi(2), &mut brute_solver)
        .unwrap()
        .unwrap();
    assert_eq!(sol.case, TwoValueCase::Additive);
    assert!(inst.objective_value(&sol.allocation).unwrap() > q(1, 2));
}

#[test]
fn infeasible_guess_is_rejected() {
    let inst = restricted(&[&[1, 1], &[1, 1], &[1, 1]], 3);
    assert!(twovalue_santa_to_makespan(&inst, &qi(2), &mut brute_solver)
        .unwrap()
        .is_none());
}

#[test]
fn invalid_solver_output_is_a_contract_error() {
    let inst = restricted(&[&[3, 0, 0, 0], &[3, 1, 1, 1]], 3);
    let mut bad = |i: &AllocInstance| Ok(Allocation::empty(i.items.len(), i.entities));
    assert!(matches!(
        twovalue_santa_to_makespan(&inst, &qi(2), &mut bad),
        Err(Error::Contract(_))
    ));
}

#[test]
fn matching_finds_a_perfect_one() {
    let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
    let p = bipartite_matching(&adj, 3);
    assert_eq!(p, vec![Some(1), Some(0), Some(2)]);
    assert_eq!(bipartite_matching(&[vec![0], vec![0]], 1).iter().flatten().count(), 1);
}

// matroid duals

fn uniform_rank(n: usize, r: usize, scale: i64) -> Polymatroid {
    Polymatroid::scaled_rank(&Matroid::uniform(n, r), scale).unwrap()
}

#[test]
fn size_caps_and_threshold() {
    let inst = AllocInstance::makespan(
        3,
        vec![
            Item::single(q(6, 10)).with_polymatroid(uniform_rank(3, 1, 1)),
            Item::single(q(1, 4)).with_polymatroid(uniform_rank(3, 2, 2)),
        ],
    );
    let b = matroid_makespan_to_santa(&inst).unwrap().unwrap();
    assert_eq!(b.caps, vec![1, 4]);
    assert_eq!(b.t, q(6, 10));

    let unit = AllocInstance::makespan(
        2,
        vec![
            Item::single(qi(1)).with_polymatroid(uniform_rank(2, 1, 1)),
            Item::single(qi(1)).with_polymatroid(uniform_rank(2, 1, 1)),
        ],
    );
    let b = matroid_makespan_to_santa(&unit).unwrap().unwrap();
    assert_eq!((b.caps.clone(), b.t.clone()), (vec![1, 1], qi(1)));
}

#[test]
fn binding_cap_rejects() {
    // one job needing two units on a single machine cannot fit below 1
    let inst = AllocInstance::makespan(
        1,
        vec![Item::single(q(3, 4)).with_polymatroid(Polymatroid::modular(vec![2]).unwrap())],
    );
    assert!(matroid_makespan_to_santa(&inst).unwrap().is_none());
}

#[test]
fn three_items_are_refused() {
    let inst = AllocInstance::makespan(
        2,
        (0..3)
            .map(|_| Item::single(qi(1)).with_polymatroid(uniform_rank(2, 1, 1)))
            .collect(),
    );
    assert!(matches!(matroid_makespan_to_santa(&inst), Err(Error::Contract(_))));
}

#[test]
fn dual_of_dual_is_the_capped_polymatroid() {
    let params = GenParams {
        m: 5,
        n: 2,
        ..GenParams::default()
    };
    for seed in 0..40 {
        let inst = alloc_of(gen_random(Flavor::MakespanMatroid, seed, &params).unwrap());
        for j in 0..inst.items.len() {
            let k = 2;
            let capped = Polymatroid::capped_uniform(&inst.item_polymatroid(j), k).unwrap();
            let z = vec![k; 5];
            let back = Polymatroid::dual(&Polymatroid::dual(&capped, z.clone()).unwrap(), z).unwrap();
            for mask in 0..32u64 {
                let s = Subset::from_bits(mask);
                assert_eq!(back.eval(s), capped.eval(s));
            }
        }
    }
}

fn random_job_matroid(seed: u64, n: usize) -> AllocInstance {
    let params = GenParams {
        m: n,
        n: 2,
        max_weight: 2,
        ..GenParams::default()
    };
    let mut inst = alloc_of(gen_random(Flavor::MakespanMatroid, seed, &params).unwrap());
    let sizes = [q(1, 2), q(1, 3), q(2, 3), qi(1), q(1, 4)];
    for (j, it) in inst.items.iter_mut().enumerate() {
        it.values = crate::instances::Values::Single(sizes[(seed as usize + 2 * j) % sizes.len()].clone());
    }
    inst
}

#[test]
fn makespan_dual_round_trip() {
    let mut checked = 0;
    for seed in 0..60 {
        let inst = random_job_matroid(seed, 3);
        let Some(bundle) = matroid_makespan_to_santa(&inst).unwrap() else {
            continue;
        };
        let opt = brute_opt_santa(&bundle.instance).unwrap();
        let tr = matroid_santa_solution_to_schedule(&bundle, &opt.witness).unwrap();
        assert!(tr.value <= qi(1) + &bundle.t - &opt.value);
        for e in 0..3 {
            assert_eq!(bundle.dual_sum(&tr.allocation, &tr.dual, e), qi(1) + &bundle.t);
        }
        checked += 1;
    }
    assert!(checked >= 20);
}

#[test]
fn santa_dual_caps() {
    let inst = AllocInstance::santa(
        3,
        vec![
            Item::single(qi(1)).with_polymatroid(uniform_rank(3, 1, 1)),
            Item::single(q(1, 3)).with_polymatroid(uniform_rank(3, 3, 3)),
        ],
    );
    let b = matroid_santa_to_makespan(&inst).unwrap();
    assert_eq!(b.caps, vec![1, 3]);
    assert_eq!(b.capped[1].eval(Subset::full(3)), 9);
    assert_eq!(b.instance.item_polymatroid(1).eval(Subset::full(3)), 0);
    let opt = brute_opt_makespan(&b.instance).unwrap();
    let tr = matroid_schedule_to_santa(&b, &opt.witness).unwrap();
    assert!(tr.value >= qi(1) + &b.t - &opt.value);

    let both_one = AllocInstance::santa(
        2,
        vec![
            Item::single(qi(1)).with_polymatroid(uniform_rank(2, 1, 1)),
            Item::single(qi(1)).with_polymatroid(uniform_rank(2, 1, 1)),
        ],
    );
    let b = matroid_santa_to_makespan(&both_one).unwrap();
    assert_eq!((b.caps.clone(), b.t.clone()), (vec![1, 1], qi(1)));
}

#[test]
fn santa_dual_refuses_other_values() {
    let inst = AllocInstance::santa(2, vec![Item::single(q(2, 3)).with_polymatroid(uniform_rank(2, 1, 1))]);
    assert!(matches!(matroid_santa_to_makespan(&inst), Err(Error::Contract(_))));
}

// core reduction

#[test]
fn case_thresholds() {
    assert_eq!(two_value_case(&qi(1), &qi(3), &qi(8), &qi(4)), CoreCase::Cover);
    assert_eq!(two_value_case(&qi(1), &qi(3), &qi(4), &qi(4)), CoreCase::OneEach);
    assert_eq!(two_value_case(&qi(1), &qi(3), &qi(16), &qi(4)), CoreCase::Fractional);
    assert_eq!(two_value_case(&qi(1), &qi(3), &qi(12), &qi(4)), CoreCase::Cover);
}

#[test]
fn equal_values_need_one_resource_each() {
    let inst = AllocInstance::santa(
        3,
        vec![
            Item::single(qi(2)).with_polymatroid(uniform_rank(3, 2, 1)),
            Item::single(qi(2)).with_polymatroid(uniform_rank(3, 1, 1)),
        ],
    );
    let run = reduce_to_core(&inst, &qi(4), &qi(2), &q(1, 10)).unwrap().unwrap();
    assert_eq!(run.case, CoreCase::OneEach);
    assert_eq!(run.value, qi(2));

    let short = AllocInstance::santa(3, vec![Item::single(qi(2)).with_polymatroid(uniform_rank(3, 2, 1))]);
    assert!(reduce_to_core(&short, &qi(4), &qi(2), &q(1, 10)).unwrap().is_none());
}

#[test]
fn light_polymatroid_is_the_weighted_sum() {
    let parts = [uniform_rank(4, 2, 1), uniform_rank(4, 1, 2), uniform_rank(4, 4, 1)];
    let values = [q(1, 2), qi(1), q(3, 2)];
    let inst = AllocInstance::santa(
        4,
        parts
            .iter()
            .zip(&values)
            .map(|(p, v)| Item::single(v.clone()).with_polymatroid(p.clone()))
            .collect(),
    );
    let (f, unit, mult) = light_polymatroid(&inst, &[0, 1, 2]).unwrap();
    assert_eq!(unit, q(1, 2));
    assert_eq!(mult, vec![1, 2, 3]);
    for mask in 0..16u64 {
        let s = Subset::from_bits(mask);
        let expect: i64 = parts.iter().zip(&mult).map(|(p, c)| c * p.eval(s)).sum();
        assert_eq!(f.eval(s), expect);
    }
    assert!(check_polymatroid_axioms(&f, 0, 0).unwrap().passed());
}

#[test]
fn uniform_level_by_search() {
    let p = Polymatroid::modular(vec![3, 5, 4]).unwrap();
    assert_eq!(max_uniform_level(&p).unwrap(), 3);
    assert_eq!(max_uniform_level(&uniform_rank(4, 2, 3)).unwrap(), 1);
    assert_eq!(max_uniform_level(&Polymatroid::zero(2)).unwrap(), 0);
}

#[test]
fn value_unit_divides_every_value() {
    let (g, c) = value_unit(&[q(1, 2), q(3, 4), qi(0), qi(2)]);
    assert_eq!(g, q(1, 4));
    assert_eq!(c, vec![2, 3, 0, 8]);
}

fn random_santa_matroid(seed: u64, m: usize, n: usize, values: &[Rational]) -> AllocInstance {
    let params = GenParams {
        m,
        n,
        max_weight: 2,
        ..GenParams::default()
    };
    let mut inst = alloc_of(gen_random(Flavor::SantaMatroid, seed, &params).unwrap());
    for (j, it) in inst.items.iter_mut().enumerate() {
        it.values = crate::instances::Values::Single(values[(seed as usize + j) % values.len()].clone());
    }
    inst
}

#[test]
fn accepted_guesses_meet_their_guarantee() {
    let eps = q(1, 10);
    let alpha = soundness_alpha(&eps);
    let mut accepted = 0;
    for seed in 0..40 {
        let values = if seed % 2 == 0 {
            vec![qi(1), qi(3)]
        } else {
            vec![qi(1), qi(2), qi(5)]
        };
        let inst = random_santa_matroid(seed, 3, 3, &values);
        let opt = brute_opt_santa(&inst).unwrap().value;
        for t in [qi(1), qi(2), qi(4), qi(8), qi(16)] {
            if let Some(run) = reduce_to_core(&inst, &t, &alpha, &eps).unwrap() {
                inst.validate_allocation(&run.allocation).unwrap();
                let floor = if inst.two_values().is_some() {
                    &t / &alpha
                } else {
                    &t / (&alpha * qi(2))
                };
                assert!(run.value >= floor);
                assert!(run.value <= opt);
                accepted += 1;
            }
        }
    }
    assert!(accepted > 0);
}

#[test]
fn fractional_route_rounds() {
    // three players, plenty of unit resources spread evenly
    let inst = AllocInstance::santa(
        3,
        vec![
            Item::single(qi(1)).with_polymatroid(uniform_rank(3, 3, 2)),
            Item::single(qi(2)).with_polymatroid(uniform_rank(3, 3, 2)),
        ],
    );
    let run = reduce_to_core(&inst, &qi(6), &qi(2), &q(1, 10)).unwrap().unwrap();
    assert_eq!(run.case, CoreCase::Fractional);
    assert!(run.value >= qi(3));
}

#[test]
fn core_reduction_contracts() {
    let inst = AllocInstance::santa(1, vec![Item::single(qi(1)).with_polymatroid(uniform_rank(1, 1, 1))]);
    assert!(matches!(
        reduce_to_core(&inst, &qi(1), &qi(1), &q(1, 10)),
        Err(Error::Contract(_))
    ));
    let classical = AllocInstance::santa(1, vec![Item::single(qi(1))]);
    assert!(matches!(
        reduce_to_core(&classical, &qi(1), &qi(2), &q(1, 10)),
        Err(Error::Contract(_))
    ));
}

// guessing

#[test]
fn binary_search_finds_the_last_success() {
    let grid: Vec<Rational> = (1..=10).map(qi).collect();
    let res = guess_loop(&grid, &mut |t: &Rational| Ok((*t <= qi(5)).then(|| t.clone()))).unwrap();
    assert_eq!(res.best.unwrap().0, qi(5));
    assert!(res.tried.len() <= 4);
}

#[test]
fn nothing_accepted_leaves_a_diagnostic() {
    let grid: Vec<Rational> = (1..=4).map(qi).collect();
    let res = guess_loop(&grid, &mut |_: &Rational| Ok(None::<()>)).unwrap();
    assert!(res.best.is_none());
    assert!(res.diagnostic.is_some());
}

#[test]
fn gap_instance_settles_at_one() {
    let g = gen_gap_instance(2).unwrap();
    let grid: Vec<Rational> = (1..=4).map(qi).collect();
    let res = guess_loop(&grid, &mut |b: &Rational| {
        Ok(cover_exists_at_level(&g.matroid, &g.polymatroid, g.matroid.ground(), b, Subset::EMPTY, 0)?.then_some(()))
    })
    .unwrap();
    assert_eq!(res.best.unwrap().0, qi(1));
}

#[test]
fn empty_instance_succeeds_at_zero() {
    let inst = AllocInstance::santa(2, Vec::new());
    let grid = value_grid(&inst).unwrap();
    assert_eq!(grid, vec![qi(0)]);
    let res = guess_loop(&grid, &mut |t: &Rational| {
        let alloc = Allocation::empty(0, 2);
        Ok((inst.objective_value(&alloc).unwrap() >= *t).then_some(alloc))
    })
    .unwrap();
    assert_eq!(res.best.unwrap().0, qi(0));
}

#[test]
fn grid_contains_the_optimum() {
    let params = GenParams {
        m: 2,
        n: 4,
        ..GenParams::default()
    };
    for seed in 0..10 {
        let inst = alloc_of(gen_random(Flavor::RestrictedSanta, seed, &params).unwrap());
        let grid = value_grid(&inst).unwrap();
        assert!(grid.contains(&brute_opt_santa(&inst).unwrap().value));
        let inst = alloc_of(gen_random(Flavor::RestrictedMakespan, seed, &params).unwrap());
        let grid = value_grid(&inst).unwrap();
        assert!(grid.contains(&brute_opt_makespan(&inst).unwrap().value));
    }
}

#[test]
fn planted_instances_keep_most_of_their_value_in_configurations() {
    let eps = q(1, 4);
    let floor = pow(&q(4, 5), 4);
    for seed in 0..8 {
        let (inst, _) = crate::instances::gen_planted_unrelated_santa(seed, 3, 5).unwrap();
        let (rounded, coll) = config_round(&inst, &eps).unwrap();
        let opt = crate::oracle::brute_opt_with_configs(&rounded, &coll).unwrap();
        assert!(opt.value >= floor, "seed {seed}: {}", opt.value);
    }
}
