use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use matroid_alloc::instances::rational_to_json;
use matroid_alloc::{Rational, Subset};
use num::BigInt;
use serde_json::Value;

use crate::Format;

/// Parses `3`, `-2/5` or `0.125` exactly.
pub fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let s = s.trim();
    let bad = || anyhow!("`{s}` is not a rational number");
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(anyhow!("`{s}` has a zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        return Ok(Rational::new(n, BigInt::from(10).pow(frac.len() as u32)));
    }
    Ok(Rational::from_integer(s.parse().map_err(|_| bad())?))
}

pub fn rat(r: &Rational) -> Value {
    rational_to_json(r)
}

pub fn subset(s: Subset) -> Value {
    Value::from(s.iter().collect::<Vec<usize>>())
}

/// Human-readable rational for tables: `3`, `1/2`.
pub fn show(r: &Rational) -> String {
    r.to_string()
}

fn tsv_cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(o) if o.len() == 2 && o.contains_key("num") && o.contains_key("den") => {
            format!("{}/{}", o["num"], o["den"])
        }
        other => other.to_string(),
    }
}

/// Top-level fields as `key<TAB>value` lines.
pub fn to_tsv(v: &Value) -> String {
    match v {
        Value::Object(o) => o.iter().map(|(k, v)| format!("{k}\t{}\n", tsv_cell(v))).collect(),
        other => format!("{}\n", tsv_cell(other)),
    }
}

pub fn write_out(path: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            Ok(())
        }
    }
}

pub fn emit(v: &Value, path: Option<&Path>, format: Format) -> anyhow::Result<()> {
    let bytes = match format {
        Format::Json => {
            let mut b = serde_json::to_vec_pretty(v)?;
            b.push(b'\n');
            b
        }
        Format::Tsv => to_tsv(v).into_bytes(),
    };
    write_out(path, &bytes)
}
