use std::path::Path;

use anyhow::{anyhow, bail, Context};
use clap::ValueEnum;
use matroid_alloc::instances::{
    allocation_from_value, allocation_to_value, fractional_to_value, gen_random, instance_to_value, parse_instance,
    serialize_instance, AllocInstance, CoreCoverInstance, Flavor, GenParams, Instance, Objective,
};
use matroid_alloc::localsearch::{
    recursion_exponent, solve_cover as run_cover, soundness_alpha, verify_certificate, within_recursion_bound,
    CoverOutcome, CoverReport,
};
use matroid_alloc::oracle::check_instance_axioms;
use matroid_alloc::reductions::{
    config_round, guess_loop, matroid_makespan_to_santa, matroid_santa_to_makespan, reduce_to_core, santa_to_makespan,
    twovalue_makespan_to_santa, value_grid, ConfigCollection, CoreCase, CoreRun, DualBundle, GadgetJob, GadgetMachine,
};
use matroid_alloc::rounding::{optimal_assignment_lp, round_makespan, round_santa, solve_assignment_lp};
use matroid_alloc::Rational;
use num::Zero;
use serde_json::{json, Value};

use crate::output::{emit, parse_rational, rat, subset, write_out};
use crate::{Format, Io};

/// How a command ended when it did not fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Done,
    /// A certificate, an infeasible LP or a rejected guess.
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReduceKind {
    /// Round values and list configurations (unrelated Santa Claus).
    Config,
    /// Configuration rounding followed by the makespan gadget.
    SantaGadget,
    /// Two-value makespan to Santa Claus.
    TwovalueMakespan,
    /// Job-matroid makespan with two jobs to Santa Claus via duals.
    MatroidMakespan,
    /// Resource-matroid Santa Claus with values 1 and 1/b to makespan via duals.
    MatroidSanta,
    /// Restricted resource-matroid Santa Claus through the core cover problem.
    Core,
}

pub fn load(path: &Path) -> anyhow::Result<Instance> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&bytes).with_context(|| format!("parsing {}", path.display()))
}

fn load_alloc(path: &Path) -> anyhow::Result<AllocInstance> {
    match load(path)? {
        Instance::Alloc(a) => Ok(a),
        Instance::CoreCover(_) => bail!("expected an allocation instance, found a core cover instance"),
    }
}

fn load_core(path: &Path) -> anyhow::Result<CoreCoverInstance> {
    match load(path)? {
        Instance::CoreCover(c) => Ok(c),
        Instance::Alloc(_) => bail!("expected a core cover instance"),
    }
}

/// `ε` in `(0, 1/8]`.
pub fn search_eps(s: &str) -> anyhow::Result<Rational> {
    check_search_eps(parse_rational(s)?)
}

fn check_search_eps(eps: Rational) -> anyhow::Result<Rational> {
    if eps <= Rational::zero() || eps > Rational::new(1.into(), 8.into()) {
        bail!("ε must lie in (0, 1/8], got {eps}");
    }
    Ok(eps)
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Done
    } else {
        Status::Negative
    }
}

pub fn cover_report_json(inst: &CoreCoverInstance, b: i64, eps: &Rational, report: &CoverReport) -> Value {
    let n = inst.ground_size();
    let certificates: Vec<Value> = report
        .failures
        .iter()
        .map(|f| {
            let r = verify_certificate(&f.certificate, &f.state);
            json!({
                "element": f.element,
                "z1": subset(f.certificate.z1),
                "z2": subset(f.certificate.z2),
                "b0": subset(f.state.b0),
                "i_m": subset(f.state.i_m),
                "i_p": subset(f.state.i_p),
                "properties": {
                    "well_formed": r.well_formed,
                    "rank_gap": r.rank_gap,
                    "low_rank": r.low_rank,
                    "small_margins": r.small_margins,
                    "saturated": r.saturated,
                },
                "excluded_multiple": r.excluded_multiple,
            })
        })
        .collect();
    let mut v = json!({
        "b": b,
        "eps": rat(eps),
        "restarts": report.restarts,
        "recursion_nodes": report.recursion_nodes,
        "max_recursion_nodes": report.max_recursion_nodes,
        "recursion_exponent": recursion_exponent(n, eps),
        "within_recursion_bound": within_recursion_bound(report.max_recursion_nodes, n, eps),
        "oracle_queries": report.oracle_queries,
        "certificates": certificates,
    });
    match &report.outcome {
        CoverOutcome::Cover { i_m, y } => {
            v["outcome"] = json!("cover");
            v["i_m"] = subset(*i_m);
            v["y"] = json!(y);
        }
        CoverOutcome::Infeasible { i_p } => {
            v["outcome"] = json!("infeasible");
            v["i_p"] = subset(*i_p);
        }
    }
    v
}

pub fn solve_cover(io: &Io, b: Option<i64>, eps: &str, format: Format) -> anyhow::Result<Status> {
    let inst = load_core(&io.input)?;
    let b = b
        .or(inst.b)
        .ok_or_else(|| anyhow!("no cover level: pass --b or set `b` in the instance"))?;
    if b < 1 {
        bail!("--b must be at least 1");
    }
    let eps = search_eps(eps)?;
    let report = run_cover(&inst, b, &eps)?;
    emit(&cover_report_json(&inst, b, &eps, &report), io.out.as_deref(), format)?;
    Ok(status(report.is_cover()))
}

fn collection_json(coll: &ConfigCollection) -> Value {
    json!({
        "types": coll.types.iter().map(rat).collect::<Vec<_>>(),
        "configurations": coll.per_player.iter().map(|cs| {
            cs.iter().map(|c| json!({"counts": c.counts, "total": rat(&c.total)})).collect::<Vec<_>>()
        }).collect::<Vec<_>>(),
    })
}

fn dual_json(b: &DualBundle) -> Value {
    json!({
        "instance": instance_to_value(&Instance::Alloc(b.instance.clone())),
        "caps": b.caps,
        "values": b.values.iter().map(rat).collect::<Vec<_>>(),
        "t": rat(&b.t),
    })
}

fn case_name(c: CoreCase) -> &'static str {
    match c {
        CoreCase::OneEach => "one-each",
        CoreCase::Cover => "cover",
        CoreCase::Fractional => "fractional",
        CoreCase::HeavyLight => "heavy-light",
    }
}

fn core_run_json(guess: &Rational, alpha: &Rational, run: &CoreRun) -> Value {
    json!({
        "outcome": "accepted",
        "guess": rat(guess),
        "alpha": rat(alpha),
        "case": case_name(run.case),
        "value": rat(&run.value),
        "allocation": allocation_to_value(&run.allocation),
        "cover_b": run.core.as_ref().and_then(|c| c.b),
        "recursion_nodes": run.report.as_ref().map(|r| r.recursion_nodes),
    })
}

pub fn reduce(
    io: &Io,
    kind: ReduceKind,
    eps: &str,
    alpha: Option<&str>,
    guess: Option<&str>,
    format: Format,
) -> anyhow::Result<Status> {
    let inst = load_alloc(&io.input)?;
    let eps = parse_rational(eps)?;
    let (value, ok) = match kind {
        ReduceKind::Config => {
            let (rounded, coll) = config_round(&inst, &eps)?;
            let mut v = collection_json(&coll);
            v["instance"] = instance_to_value(&Instance::Alloc(rounded));
            (v, true)
        }
        ReduceKind::SantaGadget => {
            let (rounded, coll) = config_round(&inst, &eps)?;
            let g = santa_to_makespan(&rounded, &coll)?;
            let machines: Vec<Value> = g
                .machines
                .iter()
                .map(|m| match m {
                    GadgetMachine::Config { player, config } => json!({"config": {"player": player, "config": config}}),
                    GadgetMachine::Resource { resource } => json!({"resource": resource}),
                })
                .collect();
            let jobs: Vec<Value> = g
                .jobs
                .iter()
                .map(|j| match j {
                    GadgetJob::Player { player } => json!({"player": player}),
                    GadgetJob::Config {
                        player,
                        config,
                        value_type,
                    } => json!({"config": {"player": player, "config": config, "type": value_type}}),
                })
                .collect();
            let mut v = collection_json(&ConfigCollection {
                types: g.types.clone(),
                per_player: g.configs.clone(),
            });
            v["instance"] = instance_to_value(&Instance::Alloc(g.instance.clone()));
            v["machines"] = json!(machines);
            v["jobs"] = json!(jobs);
            v["source"] = instance_to_value(&Instance::Alloc(rounded));
            (v, true)
        }
        ReduceKind::TwovalueMakespan => {
            let g = twovalue_makespan_to_santa(&inst)?;
            let v = json!({
                "instance": instance_to_value(&Instance::Alloc(g.instance.clone())),
                "resources": g.resources.iter().map(|r| json!({"machine": r.machine, "large": r.large})).collect::<Vec<_>>(),
                "u": rat(&g.u),
                "w": rat(&g.w),
                "k": g.k,
                "t": rat(&g.t),
            });
            (v, true)
        }
        ReduceKind::MatroidMakespan => match matroid_makespan_to_santa(&inst)? {
            Some(b) => (dual_json(&b), true),
            None => (
                json!({"outcome": "rejected", "reason": "a size cap lowers f_j(E), so the optimum exceeds 1"}),
                false,
            ),
        },
        ReduceKind::MatroidSanta => (dual_json(&matroid_santa_to_makespan(&inst)?), true),
        ReduceKind::Core => {
            if inst.objective != Objective::Santa {
                bail!("the core reduction needs a Santa Claus instance");
            }
            let eps = check_search_eps(eps)?;
            let alpha = match alpha {
                Some(a) => parse_rational(a)?,
                None => soundness_alpha(&eps),
            };
            match guess {
                Some(g) => {
                    let g = parse_rational(g)?;
                    match reduce_to_core(&inst, &g, &alpha, &eps)? {
                        Some(run) => (core_run_json(&g, &alpha, &run), true),
                        None => (
                            json!({"outcome": "rejected", "guess": rat(&g), "alpha": rat(&alpha)}),
                            false,
                        ),
                    }
                }
                None => {
                    let grid: Vec<Rational> = value_grid(&inst)?.into_iter().filter(|t| !t.is_zero()).collect();
                    let res = guess_loop(&grid, &mut |t: &Rational| reduce_to_core(&inst, t, &alpha, &eps))?;
                    let tried: Vec<Value> = res.tried.iter().map(rat).collect();
                    match res.best {
                        Some((g, run)) => {
                            let mut v = core_run_json(&g, &alpha, &run);
                            v["tried"] = json!(tried);
                            (v, true)
                        }
                        None => (
                            json!({
                                "outcome": "rejected",
                                "alpha": rat(&alpha),
                                "tried": tried,
                                "diagnostic": res.diagnostic,
                            }),
                            false,
                        ),
                    }
                }
            }
        }
    };
    emit(&value, io.out.as_deref(), format)?;
    Ok(status(ok))
}

pub fn round(io: &Io, target: Option<&str>, format: Format) -> anyhow::Result<Status> {
    let inst = load_alloc(&io.input)?;
    let frac = match target {
        Some(t) => solve_assignment_lp(&inst, &parse_rational(t)?)?,
        None => optimal_assignment_lp(&inst)?,
    };
    let Some(frac) = frac else {
        emit(&json!({"outcome": "infeasible"}), io.out.as_deref(), format)?;
        return Ok(Status::Negative);
    };
    let vmax = inst.max_value();
    let (alloc, guarantee) = match inst.objective {
        Objective::Santa => (round_santa(&inst, &frac)?, &frac.target - &vmax),
        Objective::Makespan => (round_makespan(&inst, &frac)?, &frac.target + &vmax),
    };
    let value = inst
        .objective_value(&alloc)
        .ok_or_else(|| anyhow!("rounded allocation uses an infinite size"))?;
    let v = json!({
        "outcome": "rounded",
        "objective": match inst.objective { Objective::Santa => "santa", Objective::Makespan => "makespan" },
        "target": rat(&frac.target),
        "value": rat(&value),
        "guarantee": rat(&guarantee),
        "fractional": fractional_to_value(&frac),
        "allocation": allocation_to_value(&alloc),
    });
    emit(&v, io.out.as_deref(), format)?;
    Ok(Status::Done)
}

pub fn verify(io: &Io, alloc: Option<&Path>, samples: usize, seed: u64, format: Format) -> anyhow::Result<Status> {
    let inst = load(&io.input)?;
    let reports = check_instance_axioms(&inst, samples, seed)?;
    let mut ok = reports.iter().all(|(_, r)| r.passed());
    let mut v = json!({
        "axioms": reports.iter().map(|(name, r)| json!({
            "oracle": name,
            "checks": r.checks,
            "passed": r.passed(),
            "violations": r.violations,
        })).collect::<Vec<_>>(),
    });
    if let Some(path) = alloc {
        let Instance::Alloc(a) = &inst else {
            bail!("--alloc needs an allocation instance");
        };
        let text = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        let x = allocation_from_value(&serde_json::from_slice(&text)?)?;
        match a.validate_allocation(&x) {
            Ok(()) => {
                v["allocation"] = json!({
                    "valid": true,
                    "objective_value": a.objective_value(&x).map(|r| rat(&r)),
                });
            }
            Err(e) => {
                ok = false;
                v["allocation"] = json!({"valid": false, "error": e.to_string()});
            }
        }
    }
    v["passed"] = json!(ok);
    emit(&v, io.out.as_deref(), format)?;
    Ok(status(ok))
}

#[allow(clippy::too_many_arguments)]
pub fn gen(
    flavor: &str,
    m: usize,
    n: usize,
    seed: u64,
    u: &str,
    w: &str,
    max_weight: i64,
    out: Option<&Path>,
) -> anyhow::Result<Status> {
    let flavor: Flavor = flavor.parse()?;
    let params = GenParams {
        m,
        n,
        u: parse_rational(u)?,
        w: parse_rational(w)?,
        max_weight,
    };
    eprintln!("gen: flavor={} seed={seed} m={m} n={n}", flavor.name());
    let inst = gen_random(flavor, seed, &params)?;
    write_out(out, &serialize_instance(&inst))?;
    Ok(Status::Done)
}
