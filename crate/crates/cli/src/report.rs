//! JSON reports for `geom-info`, `analyze` and `fixture`.

use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use pg_incidence::bounds::{secant_spectrum, theta, BoundContext};
use pg_incidence::codes::{combine, Decomposition};
use pg_incidence::ff::prime_power;
use pg_incidence::minimality::{decompose, verdict, verdict_for_decomposition, VerdictOptions};
use pg_incidence::{Error, VERSION};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::spec::{self, FixtureName};
use crate::Caps;

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

fn header(spec_hash: String) -> Value {
    json!({ "tool": "pgcode", "version": VERSION, "spec_sha256": spec_hash })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

pub fn emit(json: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(json)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("cannot write to stdout"),
    }
}

fn as_u64(x: u128) -> Result<u64> {
    u64::try_from(x).map_err(|_| anyhow!("value {x} does not fit the report format"))
}

pub fn geom_info(n: usize, p: u32, h: u32) -> Result<(Value, u8)> {
    let ctx = BoundContext::new(n, p, h)?;
    let q = ctx.q;
    let theta_table: Vec<Value> = (-1..=n as i64)
        .map(|m| Ok(json!({ "m": m, "value": as_u64(theta(m, q)?)? })))
        .collect::<Result<_>>()?;
    let points = theta(n as i64, q)?;
    let lines = points * theta(n as i64 - 1, q)? / (q as u128 + 1);
    let flags = ctx.regime_flags();

    let bounds = (|| -> pg_incidence::Result<Value> {
        let mut delta = Vec::new();
        let mut w = Vec::new();
        let mut u = Vec::new();
        for i in 0..=n {
            delta.push(json!({ "i": i, "value": ctx.delta(i)? }));
            w.push(json!({ "i": i, "value": ctx.weight_bound(i)? as i64 }));
            if i >= 1 {
                u.push(json!({ "i": i, "value": ctx.thick_bound(i)? as i64 }));
            }
        }
        Ok(json!({ "delta": delta, "W": w, "U": u }))
    })();
    let (bounds, bounds_error) = match bounds {
        Ok(b) => (b, Value::Null),
        Err(e @ Error::PrimeFieldBounds(_)) => (Value::Null, json!(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let canonical = format!("geom-info n={n} p={p} h={h}");
    let body = json!({
        "parameters": { "n": n, "p": p, "h": h, "q": q },
        "theta": theta_table,
        "num_points": as_u64(points)?,
        "num_lines": as_u64(lines)?,
        "bounds": bounds,
        "bounds_error": bounds_error,
        "regime_flags": flags,
    });
    let code = if flags.is_empty() { 0 } else { 2 };
    Ok((merge(header(sha256_hex(canonical.as_bytes())), body), code))
}

#[derive(Debug, Clone, Copy)]
pub struct Sections {
    pub decompose: bool,
    pub spectrum: bool,
    pub minimality: bool,
    pub oracle: bool,
}

/// Returns the report and whether the input is outside the regime.
pub fn analyze(bytes: &[u8], mut sections: Sections, caps: Caps) -> Result<(Value, bool)> {
    let spec = spec::parse(bytes)?;
    let built = spec.build(caps.cap_points)?;
    let space = &built.space;
    if !(sections.decompose || sections.spectrum || sections.minimality) {
        sections.decompose = true;
        sections.minimality = true;
    }
    let input = Decomposition::new(space.p(), built.terms.iter().copied())?;
    let c = combine(space, &built.terms)?.codeword;
    let ctx = BoundContext::of(space);
    let flags = ctx.codeword_flags(c.weight());

    let mut body = json!({
        "parameters": {
            "n": space.n(), "p": space.p(), "h": space.h(), "q": space.q(),
            "modulus": space.field().modulus(),
        },
        "input": {
            "terms": input,
            "labels": built.labels.iter().map(|(l, h)| (l.clone(), h.0)).collect::<std::collections::BTreeMap<_, _>>(),
            "points": built.points,
        },
        "weight": c.weight(),
        "regime_flags": flags,
    });
    let obj = body.as_object_mut().expect("object");

    if sections.decompose {
        let section = match decompose(space, &c) {
            Ok(d) => json!({
                "terms": d.decomposition,
                "expected_terms": d.expected_terms,
                "term_count_matches": d.term_count_matches(),
                "matches_input": d.decomposition == input,
                "best_effort": d.best_effort,
                "peels": d.peels,
            }),
            Err(e @ Error::NoDecomposition { .. }) => json!({ "error": e.to_string() }),
            Err(e) => return Err(e.into()),
        };
        obj.insert("decomposition".into(), section);
    }
    if sections.spectrum {
        let spectrum = secant_spectrum(space, &c, caps.cap_lines)?;
        let (max_thin, classes) = match (spectrum.max_thin_secant(&ctx), spectrum.class_counts(&ctx)) {
            (Ok(m), Ok(k)) => (json!(m), json!(k)),
            _ => (Value::Null, Value::Null),
        };
        obj.insert(
            "spectrum".into(),
            json!({
                "histogram": spectrum.histogram().iter().map(|(&s, &k)| (s, k)).collect::<Vec<_>>(),
                "total_lines": spectrum.total(),
                "max_thin_secant": max_thin,
                "line_classes": classes,
            }),
        );
    }
    if sections.minimality {
        let opts = VerdictOptions {
            oracle: sections.oracle,
            oracle_cap: caps.cap_oracle,
            peel_limit: None,
        };
        let report = match verdict(space, &c, &opts) {
            Err(Error::NoDecomposition { .. }) => verdict_for_decomposition(space, &input, &opts)?,
            r => r?,
        };
        obj.insert("minimality".into(), serde_json::to_value(report)?);
    }
    let flagged = !flags.is_empty();
    Ok((merge(header(sha256_hex(bytes)), body), flagged))
}

pub fn fixture(name: FixtureName, n: usize, q: u64, j: Option<usize>, seed: Option<u64>, caps: Caps) -> Result<Value> {
    let (p, h) = prime_power(q).ok_or_else(|| anyhow!("{q} is not a prime power"))?;
    let space = spec::make_space(n, p, h, None, caps.cap_points)?;
    let fx = spec::fixture(&space, name, j, seed)?;
    Ok(serde_json::to_value(spec::explicit_spec(&space, None, &fx))?)
}
