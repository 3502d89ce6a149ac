use std::path::Path;

use anyhow::Context;
use matroid_alloc::instances::{AllocInstance, CoreCoverInstance, Instance, Objective, Values};
use matroid_alloc::localsearch::{recursion_exponent, solve_cover, soundness_alpha, within_recursion_bound};
use matroid_alloc::oracle::{brute_max_cover_b, brute_opt_makespan, brute_opt_santa, CoverValue};
use matroid_alloc::reductions::{guess_loop, reduce_to_core, value_grid};
use matroid_alloc::rounding::{optimal_assignment_lp, round_makespan, round_santa};
use matroid_alloc::{Error, Rational};
use num::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::commands::{load, search_eps, Status};
use crate::output::{rat, show, write_out};
use crate::Format;

#[derive(Clone, Debug, Default)]
struct Row {
    file: String,
    method: String,
    opt: Option<Rational>,
    alg: Option<Rational>,
    /// `OPT/ALG` for maximization, `ALG/OPT` for minimization; `None` when undefined.
    ratio: Option<Rational>,
    within: Option<bool>,
    recursion_nodes: Option<u64>,
    recursion_exponent: Option<u32>,
    recursion_ok: Option<bool>,
    oracle_queries: Option<u64>,
    status: String,
}

fn ratio(num: &Rational, den: &Rational) -> Option<Rational> {
    if den.is_zero() {
        num.is_zero().then(|| Rational::from_integer(1.into()))
    } else {
        Some(num / den)
    }
}

fn core_row(inst: &CoreCoverInstance, eps: &Rational, b_max: i64, row: &mut Row) -> matroid_alloc::Result<()> {
    row.method = "local-search".into();
    let alpha = soundness_alpha(eps);
    let opt = match brute_max_cover_b(inst)? {
        CoverValue::Finite(b) => b,
        CoverValue::Unbounded => b_max,
    };
    let (mut best, mut nodes, mut queries) = (0i64, 0u64, 0u64);
    for b in 1..=opt.min(b_max) {
        let r = solve_cover(inst, b, eps)?;
        nodes = nodes.max(r.max_recursion_nodes);
        queries += r.oracle_queries;
        if r.is_cover() {
            best = b;
        }
    }
    let n = inst.ground_size();
    let (opt, alg) = (Rational::from_integer(opt.into()), Rational::from_integer(best.into()));
    row.within = Some(alg.clone() * &alpha >= opt);
    row.ratio = ratio(&opt, &alg);
    row.opt = Some(opt);
    row.alg = Some(alg);
    row.recursion_nodes = Some(nodes);
    row.recursion_exponent = Some(recursion_exponent(n, eps));
    row.recursion_ok = Some(within_recursion_bound(nodes, n, eps));
    row.oracle_queries = Some(queries);
    Ok(())
}

fn core_reduction_applies(inst: &AllocInstance) -> bool {
    inst.objective == Objective::Santa
        && inst.is_matroid_flavor()
        && inst.items.iter().all(|it| matches!(it.values, Values::Single(_)))
}

fn alloc_row(inst: &AllocInstance, eps: &Rational, row: &mut Row) -> matroid_alloc::Result<()> {
    let opt = match inst.objective {
        Objective::Santa => brute_opt_santa(inst)?.value,
        Objective::Makespan => brute_opt_makespan(inst)?.value,
    };
    if core_reduction_applies(inst) {
        row.method = "core-reduction".into();
        let alpha = soundness_alpha(eps);
        let grid: Vec<Rational> = value_grid(inst)?.into_iter().filter(|t| !t.is_zero()).collect();
        let res = guess_loop(&grid, &mut |t: &Rational| reduce_to_core(inst, t, &alpha, eps))?;
        let alg = res.best.as_ref().map_or_else(Rational::zero, |(_, r)| r.value.clone());
        let factor = if inst.two_values().is_some() {
            alpha.clone()
        } else {
            alpha * Rational::from_integer(2.into())
        };
        row.within = Some(&alg * &factor >= opt);
        row.ratio = ratio(&opt, &alg);
        row.recursion_nodes = res
            .best
            .as_ref()
            .and_then(|(_, r)| r.report.as_ref().map(|c| c.max_recursion_nodes));
        row.opt = Some(opt);
        row.alg = Some(alg);
        return Ok(());
    }
    row.method = "lp-rounding".into();
    let Some(frac) = optimal_assignment_lp(inst)? else {
        return Err(Error::InvalidInput("assignment LP infeasible".into()));
    };
    let vmax = inst.max_value();
    match inst.objective {
        Objective::Santa => {
            let a = round_santa(inst, &frac)?;
            let alg = inst.objective_value(&a).unwrap_or_else(Rational::zero);
            row.within = Some(alg >= &frac.target - &vmax);
            row.ratio = ratio(&opt, &alg);
            row.alg = Some(alg);
        }
        Objective::Makespan => {
            let a = round_makespan(inst, &frac)?;
            let alg = inst
                .objective_value(&a)
                .ok_or_else(|| Error::Internal("rounded schedule has an infinite load".into()))?;
            row.within = Some(alg <= &frac.target + &vmax);
            row.ratio = ratio(&alg, &opt);
            row.alg = Some(alg);
        }
    }
    row.opt = Some(opt);
    Ok(())
}

fn bench_file(path: &Path, eps: &Rational, b_max: i64) -> Row {
    let mut row = Row {
        file: path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default(),
        ..Row::default()
    };
    let inst = match load(path) {
        Ok(i) => i,
        Err(e) => {
            row.status = format!("error: {e:#}");
            return row;
        }
    };
    let res = match &inst {
        Instance::CoreCover(c) => core_row(c, eps, b_max, &mut row),
        Instance::Alloc(a) => alloc_row(a, eps, &mut row),
    };
    row.status = match res {
        Ok(()) => "ok".into(),
        Err(Error::CapExceeded { .. }) => {
            let file = std::mem::take(&mut row.file);
            row = Row {
                file,
                method: row.method,
                ..Row::default()
            };
            "skipped (cap)".into()
        }
        Err(e) => format!("error: {e}"),
    };
    row
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".into(), ToString::to_string)
}

fn row_json(r: &Row) -> Value {
    json!({
        "file": r.file,
        "method": r.method,
        "opt": r.opt.as_ref().map(rat),
        "alg": r.alg.as_ref().map(rat),
        "ratio": r.ratio.as_ref().map(rat),
        "within_guarantee": r.within,
        "recursion_nodes": r.recursion_nodes,
        "recursion_exponent": r.recursion_exponent,
        "recursion_within_bound": r.recursion_ok,
        "oracle_queries": r.oracle_queries,
        "status": r.status,
    })
}

pub fn run(corpus: &Path, out: Option<&Path>, eps: &str, b_max: i64, format: Format) -> anyhow::Result<Status> {
    let eps = search_eps(eps)?;
    let mut files: Vec<_> = std::fs::read_dir(corpus)
        .with_context(|| format!("reading {}", corpus.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let rows: Vec<Row> = files.par_iter().map(|p| bench_file(p, &eps, b_max)).collect();

    let ran: Vec<&Row> = rows.iter().filter(|r| r.status == "ok").collect();
    let worst = ran.iter().filter_map(|r| r.ratio.clone()).max();
    let all_within = ran.iter().all(|r| r.within != Some(false));
    let skipped = rows.iter().filter(|r| r.status.starts_with("skipped")).count();
    let errors = rows.iter().filter(|r| r.status.starts_with("error")).count();

    let bytes = match format {
        Format::Json => {
            let v = json!({
                "eps": rat(&eps),
                "rows": rows.iter().map(row_json).collect::<Vec<_>>(),
                "summary": {
                    "instances": rows.len(),
                    "ran": ran.len(),
                    "skipped": skipped,
                    "errors": errors,
                    "worst_ratio": worst.as_ref().map(rat),
                    "all_within_guarantee": all_within,
                },
            });
            let mut b = serde_json::to_vec_pretty(&v)?;
            b.push(b'\n');
            b
        }
        Format::Tsv => {
            let mut s = String::from(
                "file\tmethod\topt\talg\tratio\twithin\trec_nodes\trec_exponent\trec_ok\toracle_queries\tstatus\n",
            );
            for r in &rows {
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    r.file,
                    if r.method.is_empty() { "-" } else { &r.method },
                    r.opt.as_ref().map_or_else(|| "-".into(), show),
                    r.alg.as_ref().map_or_else(|| "-".into(), show),
                    r.ratio.as_ref().map_or_else(|| "-".into(), show),
                    opt_str(&r.within),
                    opt_str(&r.recursion_nodes),
                    opt_str(&r.recursion_exponent),
                    opt_str(&r.recursion_ok),
                    opt_str(&r.oracle_queries),
                    r.status
                ));
            }
            s.push_str(&format!(
                "summary\t{} rows, {} ran, {skipped} skipped, {errors} errors\t-\t-\t{}\t{all_within}\t-\t-\t-\t-\t-\n",
                rows.len(),
                ran.len(),
                worst.as_ref().map_or_else(|| "-".into(), show)
            ));
            s.into_bytes()
        }
    };
    write_out(out, &bytes)?;
    if errors > 0 {
        anyhow::bail!("{errors} of {} rows failed", rows.len());
    }
    Ok(Status::Done)
}
