use std::fmt::Write as _;

use serde_json::Value;

use crate::commands::{CheckEntry, Payload, Record};
use crate::Format;

pub fn render(record: &Record, format: Format) -> Result<String, Box<dyn std::error::Error>> {
    let mut record = record.clone();
    record.format = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => "text",
    }
    .into();
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&record)? + "\n"),
        Format::Csv => csv(&record),
        Format::Text => Ok(text(&record)),
    }
}

/// `key,value` rows. Nested objects and arrays of objects extend the key
/// with `.field` and `.index`; arrays of scalars (polynomials included)
/// become `;`-separated lists, low degree first.
fn csv(record: &Record) -> Result<String, Box<dyn std::error::Error>> {
    let mut rows = Vec::new();
    flatten("", &serde_json::to_value(record)?, &mut rows);
    let mut w = ::csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"])?;
    for (k, v) in rows {
        w.write_record([k, v])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some(String::new()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&join(prefix, k), x, rows);
            }
        }
        Value::Array(items) => match items.iter().map(scalar).collect::<Option<Vec<String>>>() {
            Some(parts) => rows.push((prefix.to_string(), parts.join(";"))),
            None => {
                for (i, x) in items.iter().enumerate() {
                    flatten(&join(prefix, &i.to_string()), x, rows);
                }
            }
        },
        _ => rows.push((prefix.to_string(), scalar(v).unwrap_or_default())),
    }
}

fn poly(coeffs: &[i64]) -> String {
    shi_core::poly::IntPolynomial::new(coeffs.to_vec()).to_string()
}

fn set(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

fn check_line(out: &mut String, c: &CheckEntry, timing: Option<std::time::Duration>) {
    let _ = write!(out, "{:<40} {}", c.name, status(c.passed));
    if let Some(r) = c.regions {
        let _ = write!(out, "  regions={r}");
    }
    if let Some(f) = c.flats {
        let _ = write!(out, "  flats={f}");
    }
    if let Some(n) = c.count {
        let _ = write!(out, "  count={n}");
    }
    if let Some(p) = &c.poincare {
        let _ = write!(out, "  poincare={}", poly(p));
    }
    if let Some(t) = timing {
        let _ = write!(out, "  ({:.2} ms)", t.as_secs_f64() * 1e3);
    }
    out.push('\n');
    if let Some(e) = &c.error {
        let _ = writeln!(out, "    {e}");
    }
}

fn text(record: &Record) -> String {
    let mut out = String::new();
    let ctype = record.cartan_type.as_deref().unwrap_or("poset");
    match &record.payload {
        Payload::Roots(r) => {
            let _ = writeln!(out, "{ctype}: {} positive roots", r.roots.len());
            for root in &r.roots {
                let coords: Vec<String> = root.coords.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  {:>2}  ({})  height {}", root.index, coords.join(","), root.height);
            }
            let covers: Vec<String> = r.covers.iter().map(|[i, j]| format!("{i}<{j}")).collect();
            let _ = writeln!(out, "covers: {}", covers.join(" "));
            let _ = writeln!(out, "h = {}", r.coxeter_number);
            let degrees: Vec<String> = r.degrees.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "degrees: {}", degrees.join(" "));
            let _ = writeln!(out, "|W| = {}", r.weyl_order);
            let _ = writeln!(out, "catalan = {}", r.catalan);
            let _ = writeln!(out, "parking = {}", r.parking);
            let _ = writeln!(out, "narayana = {}", poly(&r.narayana));
        }
        Payload::Cone(c) => {
            match &c.e {
                Some(e) => {
                    let _ = writeln!(out, "{ctype} Shi(E) in the dominant cone, E = {}", set(e));
                }
                None => {
                    let _ = writeln!(out, "{ctype} cone w = {}, Inv(w) = {}", c.word, set(&c.inversions));
                }
            }
            let _ = writeln!(out, "{} regions", c.regions.len());
            for r in &c.regions {
                let _ = writeln!(
                    out,
                    "  ideal {}  ceiling {}  witness ({})",
                    set(&r.ideal),
                    set(&r.ceiling),
                    r.witness.join(", ")
                );
            }
            let _ = writeln!(out, "{} flats", c.flats.len());
            for f in &c.flats {
                let _ = writeln!(out, "  generators {}  codim {}  mobius {}", set(&f.generators), f.codim, f.mobius);
            }
            let _ = writeln!(out, "poincare = {}", poly(&c.poincare));
        }
        Payload::Verify(v) => {
            let _ = writeln!(out, "{ctype} verify theorem={} m={}", v.theorem, v.m);
            let timing = |name: &str| {
                record.timings.iter().find(|(n, _)| n == name).map(|&(_, t)| t)
            };
            for c in &v.cones {
                check_line(&mut out, c, timing(&c.name));
            }
            for c in &v.checks {
                check_line(&mut out, c, timing(&c.name).or_else(|| timing("fuss")));
            }
            if let Some(f) = &v.fuss {
                let _ = writeln!(
                    out,
                    "dominant cone of Shi^({}): {} flats, {} regions, max |mu| = {}, {} flats with |mu| != 1",
                    v.m, f.flats, f.regions, f.max_abs_mobius, f.exceptional_flats
                );
                let _ = writeln!(out, "poincare = {}", poly(&f.poincare));
                if f.flats != f.regions {
                    let _ = writeln!(out, "flats and regions differ ({} vs {})", f.flats, f.regions);
                }
            }
            if let Some(t) = &v.total_poincare {
                let _ = writeln!(out, "sum of poincare polynomials = {}", poly(t));
            }
            let _ = writeln!(out, "result: {}", if v.passed { "PASS" } else { "FAIL" });
        }
        Payload::OrderRing(o) => {
            let ids: Vec<String> = o.elements.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{ctype}: elements {}", ids.join(" "));
            let _ = writeln!(out, "{} vertices (filter indicators in element order)", o.vertices.len());
            for v in &o.vertices {
                let _ = writeln!(out, "  {v}");
            }
            let _ = writeln!(out, "{} generators", o.generators.len());
            for g in &o.generators {
                let _ = writeln!(out, "  {g}");
            }
            let _ = writeln!(out, "standard monomials");
            for (d, group) in o.standard_monomials.iter().enumerate() {
                let _ = writeln!(out, "  degree {d}: {}", group.join(" "));
            }
            let _ = writeln!(out, "hilbert = {}", poly(&o.hilbert));
        }
    }
    out
}
