//! Plain-text forms of command results.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| x.is_array()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn walk(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        walk(out, x, depth + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{i}]");
                        walk(out, x, depth + 1);
                    }
                }
            }
        }
        _ => {
            let _ = writeln!(out, "{pad}{}", scalar(v).unwrap_or_default());
        }
    }
}

/// Indented `key: value` listing.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    walk(&mut out, v, 0);
    out
}

fn table(out: &mut String, title: &str, header: &[&str], rows: &[Vec<String>]) {
    let _ = writeln!(out, "{title}");
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "  {}", line(header.to_vec()));
    for r in rows {
        let _ = writeln!(out, "  {}", line(r.iter().map(String::as_str).collect()));
    }
    out.push('\n');
}

fn list(v: &Value) -> String {
    scalar(v).unwrap_or_default()
}

/// Face counts, weights and homology as aligned tables.
pub fn report(v: &Value) -> String {
    let mut out = String::new();
    if let Some(counts) = v.pointer("/skeleton/dim_counts").and_then(Value::as_array) {
        let rows: Vec<Vec<String>> = counts
            .iter()
            .enumerate()
            .map(|(d, c)| vec![d.to_string(), c.to_string()])
            .collect();
        table(&mut out, "Skeleton faces", &["dim", "count"], &rows);
    }
    if let Some(counts) = v.pointer("/complex/counts").and_then(Value::as_array) {
        let rows: Vec<Vec<String>> = counts
            .iter()
            .enumerate()
            .map(|(d, c)| vec![d.to_string(), c.to_string()])
            .collect();
        table(&mut out, "Bounded cells", &["dim", "count"], &rows);
    }
    if let Some(divs) = v.get("divisors").and_then(Value::as_object) {
        for (name, d) in divs {
            let rows: Vec<Vec<String>> = d["weights"]
                .as_array()
                .into_iter()
                .flatten()
                .map(|r| vec![list(&r["point"]), list(&r["vertex_values"]), list(&r["ray_slopes"])])
                .collect();
            table(&mut out, &format!("Weights of {name}"), &["face", "vertex values", "ray slopes"], &rows);
            let _ = writeln!(out, "Minimality locus of {name}: {}\n", list(&d["ks"]["cells"]));
        }
    }
    if let Some(h) = v.get("homology") {
        let betti = h["betti"].as_array().cloned().unwrap_or_default();
        let torsion = h["torsion"].as_array().cloned().unwrap_or_default();
        let rows: Vec<Vec<String>> = betti
            .iter()
            .zip(&torsion)
            .enumerate()
            .map(|(d, (b, t))| vec![d.to_string(), b.to_string(), list(t)])
            .collect();
        table(&mut out, "Homology", &["dim", "betti", "torsion"], &rows);
        let _ = writeln!(out, "Euler characteristic: {}", h["euler_characteristic"]);
    }
    out
}
