use std::collections::BTreeSet;

use katoskel::fan::{n_monotonicity_check, KatoFan};
use katoskel::io::{complex_action, skeleton_action, ActionSpec, Document};
use katoskel::lattice::{qvec_to_strings, rational_string};
use katoskel::skeleton::{check_product_homeomorphism, product_skeleton, skeleton_of_fan, subdivide_complex};
use katoskel::subdivision::resolve;
use katoskel::topology::{
    circle_kernel, classify_closed_surface, group_quotient, homology, orbit_complex, symmetric_product, torus_kernel,
    kummer_kernel, CellComplex, DeltaComplex, QuotientOptions, SimplicialComplex,
};
use katoskel::weight::{
    essential_skeleton, minimality_locus, product_divisor, product_weight_check, weight_function, LogDivisor,
    MinimalityLocus,
};
use katoskel::{HomologyResult, PolyhedralComplex};
use serde_json::{json, Value};

use crate::input::{load_divisor, CliError, CliResult};

pub struct Options {
    pub n: Option<usize>,
    pub divisor: Option<String>,
    pub action: Option<String>,
    pub homology: bool,
    pub classify: bool,
    pub cap_simplices: usize,
    pub cap_steps: usize,
}

impl Options {
    fn quotient(&self) -> QuotientOptions {
        QuotientOptions {
            max_subdivisions: 3,
            max_simplices: self.cap_simplices,
        }
    }
}

fn counts_json(counts: &[usize]) -> Value {
    json!(counts)
}

pub fn homology_json(h: &HomologyResult) -> Value {
    json!({
        "betti": h.betti(),
        "torsion": h.groups.iter().map(|g| g.torsion.clone()).collect::<Vec<_>>(),
        "euler_characteristic": h.euler_characteristic(),
        "describe": h.describe(),
    })
}

fn fan_json(f: &KatoFan) -> Value {
    let points: Vec<Value> = f
        .points
        .iter()
        .map(|p| {
            json!({
                "id": p.id,
                "rank": p.rank(),
                "vertical": p.is_vertical(),
                "generators": p.stalk.generators(),
                "pi": p.pi,
                "free": p.stalk.is_free(),
            })
        })
        .collect();
    json!({
        "points": points,
        "rank_counts": f.rank_counts(),
        "regular": f.is_regular(),
        "semistable": f.is_semistable(),
    })
}

fn dim_counts(sk: &PolyhedralComplex) -> Value {
    json!(sk.dim_counts().values().collect::<Vec<_>>())
}

fn skeleton_json(sk: &PolyhedralComplex) -> Value {
    let faces: Vec<Value> = sk
        .faces
        .iter()
        .map(|f| {
            json!({
                "point": f.point,
                "dim": f.dim,
                "bounded": f.is_bounded(),
                "vertices": f.vertices.iter().map(|v| qvec_to_strings(v)).collect::<Vec<_>>(),
                "rays": f.rays,
            })
        })
        .collect();
    json!({ "faces": faces, "dim_counts": dim_counts(sk), "dim": sk.dim() })
}

fn cells_json(sk: &PolyhedralComplex, cells: &BTreeSet<usize>) -> Value {
    let mut by_dim = vec![0usize; sk.dim() + 1];
    for &c in cells {
        by_dim[sk.faces[c].dim] += 1;
    }
    json!({
        "cells": cells.iter().map(|&c| sk.faces[c].point.clone()).collect::<Vec<_>>(),
        "dim_counts": by_dim,
    })
}

fn cells_complex_json(c: &CellComplex) -> Value {
    json!({ "counts": counts_json(&c.counts()), "euler_characteristic": c.euler_characteristic() })
}

fn order_homology(k: &SimplicialComplex) -> HomologyResult {
    homology(&DeltaComplex::from_simplicial(k))
}

/// The fan of a model document, or the product fan of a product document.
fn document_fan(doc: &Document) -> CliResult<KatoFan> {
    match doc {
        Document::Model(m) => Ok(m.fan()?),
        Document::Product(p) => Ok(p.build()?.product.fan),
        Document::Complex(_) => Err(CliError::usage("complex documents carry no fan")),
    }
}

/// The skeleton of a model, or the product skeleton of a product.
fn document_skeleton(doc: &Document) -> CliResult<PolyhedralComplex> {
    match doc {
        Document::Model(m) => Ok(skeleton_of_fan(&m.fan()?)),
        Document::Product(p) => {
            let b = p.build()?;
            Ok(product_skeleton(&b.left, &b.right, &b.product)?.complex)
        }
        Document::Complex(_) => Err(CliError::usage("complex documents carry no skeleton")),
    }
}

/// The bounded part of a skeleton, or the complex itself.
pub fn document_cells(doc: &Document) -> CliResult<CellComplex> {
    match doc {
        Document::Complex(c) => Ok(c.complex.clone()),
        _ => Ok(document_skeleton(doc)?.bounded_cell_complex().0),
    }
}

fn action_spec<'a>(doc: &'a Document, name: Option<&str>) -> CliResult<(&'a str, &'a ActionSpec)> {
    let actions = doc.actions();
    let found = match name {
        Some(n) => actions.get_key_value(n),
        None => actions.iter().next(),
    };
    found
        .map(|(k, v)| (k.as_str(), v))
        .ok_or_else(|| CliError::usage(format!("no action {}", name.unwrap_or("in the document"))))
}

pub fn fan(doc: &Document) -> CliResult<Value> {
    let f = document_fan(doc)?;
    let mut out = json!({ "fan": fan_json(&f) });
    if let Document::Product(p) = doc {
        let b = p.build()?;
        let m = n_monotonicity_check(&b.product);
        out["monotone"] = json!(m.monotone);
        out["copy_counts"] = json!(b.product.count);
    }
    Ok(out)
}

pub fn skeleton(doc: &Document) -> CliResult<Value> {
    let sk = document_skeleton(doc)?;
    let (cells, _) = sk.bounded_cell_complex();
    Ok(json!({ "skeleton": skeleton_json(&sk), "bounded": cells_complex_json(&cells) }))
}

pub fn product(doc: &Document, opts: &Options) -> CliResult<Value> {
    let Document::Product(p) = doc else {
        return Err(CliError::usage("product needs a product document"));
    };
    let b = p.build()?;
    let ps = product_skeleton(&b.left, &b.right, &b.product)?;
    let check = check_product_homeomorphism(&ps);
    let mono = n_monotonicity_check(&b.product);
    let (cells, _) = ps.complex.bounded_cell_complex();
    let mut out = json!({
        "fan": { "rank_counts": b.product.fan.rank_counts(), "regular": b.product.fan.is_regular() },
        "semistable": ps.semistable,
        "monotone": mono.monotone,
        "homeomorphism": { "holds": check.holds, "witness": check.witness },
        "factors": { "left": dim_counts(&ps.factor_x), "right": dim_counts(&ps.factor_y) },
        "complex": cells_complex_json(&cells),
    });
    if opts.homology {
        out["homology"] = homology_json(&order_homology(&cells.order_complex()));
    }
    Ok(out)
}

fn weight_table(sk: &PolyhedralComplex, w: &katoskel::PLWeight) -> Value {
    let rows: Vec<Value> = (0..sk.faces.len())
        .map(|i| {
            let f = &sk.faces[i];
            json!({
                "point": f.point,
                "vertex_values": w.vertex_values(sk, i).iter().map(rational_string).collect::<Vec<_>>(),
                "ray_slopes": f.rays.iter().map(|r| rational_string(&w.slope(i, r))).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!(rows)
}

pub fn weight(doc: &Document, opts: &Options) -> CliResult<Value> {
    match doc {
        Document::Product(p) => {
            let (name, pair) = match opts.divisor.as_deref() {
                Some(n) => p.divisors.get_key_value(n),
                None => p.divisors.iter().next(),
            }
            .ok_or_else(|| CliError::usage("no divisor pair in the product document"))?;
            let b = p.build()?;
            let ps = product_skeleton(&b.left, &b.right, &b.product)?;
            let dz = product_divisor(&b.left, &b.right, &b.product, &pair.left, &pair.right)?;
            let wx = weight_function(&b.left, &ps.factor_x, &pair.left)?;
            let wy = weight_function(&b.right, &ps.factor_y, &pair.right)?;
            let wz = weight_function(&b.product.fan, &ps.complex, &dz)?;
            let r = product_weight_check(&ps, &wx, &wy, &wz);
            Ok(json!({
                "divisor": name,
                "weights": weight_table(&ps.complex, &wz),
                "identity_holds": r.identity_holds,
                "ks_bijection": r.ks_bijection,
                "witness": r.witness,
            }))
        }
        _ => {
            let (name, d) = load_divisor(doc, opts.divisor.as_deref())?;
            let f = document_fan(doc)?;
            let sk = skeleton_of_fan(&f);
            let w = weight_function(&f, &sk, &d)?;
            Ok(json!({
                "divisor": name,
                "m": w.m,
                "continuous": w.is_continuous(&sk),
                "weights": weight_table(&sk, &w),
            }))
        }
    }
}

fn locus_json(sk: &PolyhedralComplex, locus: &MinimalityLocus, opts: &Options) -> Value {
    match locus {
        MinimalityLocus::Attained { min, cells } => {
            let mut out = cells_json(sk, cells);
            out["min"] = json!(rational_string(min));
            if opts.homology {
                let ids: Vec<usize> = cells.iter().copied().collect();
                let (c, _) = sk.cell_complex_of(&ids);
                out["homology"] = homology_json(&order_homology(&c.order_complex()));
            }
            out
        }
        MinimalityLocus::MinusInfinity { face, ray } => json!({ "unbounded": { "face": face, "ray": ray } }),
    }
}

pub fn ks(doc: &Document, opts: &Options) -> CliResult<Value> {
    let (name, d) = load_divisor(doc, opts.divisor.as_deref())?;
    let f = document_fan(doc)?;
    let sk = skeleton_of_fan(&f);
    let w = weight_function(&f, &sk, &d)?;
    let mut out = locus_json(&sk, &minimality_locus(&sk, &w), opts);
    out["divisor"] = json!(name);
    Ok(out)
}

pub fn essential(doc: &Document, opts: &Options) -> CliResult<Value> {
    let forms: Vec<(String, LogDivisor)> = match (doc, opts.divisor.as_deref()) {
        (Document::Model(m), None) => m.divisors.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        (_, Some(n)) => vec![load_divisor(doc, Some(n))?],
        _ => return Err(CliError::usage("essential needs a model document")),
    };
    let f = document_fan(doc)?;
    let sk = skeleton_of_fan(&f);
    let ds: Vec<LogDivisor> = forms.iter().map(|(_, d)| d.clone()).collect();
    let cells = essential_skeleton(&f, &sk, &ds)?;
    let mut out = cells_json(&sk, &cells);
    out["forms"] = json!(forms.iter().map(|(k, _)| k).collect::<Vec<_>>());
    Ok(out)
}

fn classify_json(k: &SimplicialComplex) -> Value {
    json!(classify_closed_surface(k).to_string())
}

pub fn quotient(doc: &Document, opts: &Options) -> CliResult<Value> {
    let (name, spec) = action_spec(doc, opts.action.as_deref())?;
    let (cells, k, a) = match doc {
        Document::Complex(c) => complex_action(c.complex.clone(), &spec.generators)?,
        _ => skeleton_action(&document_skeleton(doc)?, spec)?,
    };
    a.validate(&k)?;
    let q = group_quotient(&k, &a, &opts.quotient())?;
    Ok(json!({
        "action": name,
        "order": a.order(),
        "complex": cells_complex_json(&cells),
        "quotient": { "counts": q.counts(), "euler_characteristic": q.euler_characteristic() },
        "homology": homology_json(&order_homology(&q)),
        "classify": classify_json(&q),
    }))
}

fn need_n(opts: &Options) -> CliResult<usize> {
    match opts.n {
        Some(n) if n >= 1 => Ok(n),
        _ => Err(CliError::usage("--n must be a positive integer")),
    }
}

pub fn sym(doc: &Document, opts: &Options) -> CliResult<Value> {
    let n = need_n(opts)?;
    let c = document_cells(doc)?;
    let s = symmetric_product(&c, n, &opts.quotient())?;
    let mut out = json!({
        "n": n,
        "dim": s.dim,
        "flags": s.flags,
        "counts": s.complex.counts(),
        "euler_characteristic": s.complex.euler_characteristic(),
    });
    if opts.homology {
        out["homology"] = homology_json(&homology(&s.complex));
    }
    Ok(out)
}

pub fn kummer(opts: &Options) -> CliResult<Value> {
    let n = need_n(opts)?;
    let q = opts.quotient();
    let circle = circle_kernel(n, n)?;
    let circle_q = orbit_complex(&circle.order_complex(), &circle.action, &q)?;
    let mut out = json!({
        "n": n,
        "circle": {
            "kernel": cells_complex_json(&circle.complex),
            "quotient_counts": circle_q.counts(),
            "homology": homology_json(&homology(&circle_q)),
        },
    });
    let t = torus_kernel(n, n, opts.cap_simplices)?;
    out["torus"] = json!({ "kernel": cells_complex_json(&t.complex) });
    if opts.homology {
        let (k, a) = kummer_kernel(n, opts.cap_simplices)?;
        out["torus"]["homology"] = homology_json(&homology(&orbit_complex(&k, &a, &q)?));
    }
    if opts.classify {
        let qk = group_quotient(&t.order_complex(), &t.action, &q)?;
        out["torus"]["classify"] = classify_json(&qk);
    }
    Ok(out)
}

pub fn homology_cmd(doc: &Document) -> CliResult<Value> {
    let c = document_cells(doc)?;
    Ok(json!({
        "complex": cells_complex_json(&c),
        "homology": homology_json(&order_homology(&c.order_complex())),
    }))
}

pub fn classify(doc: &Document) -> CliResult<Value> {
    let c = document_cells(doc)?;
    let k = c.order_complex();
    Ok(json!({ "complex": cells_complex_json(&c), "classify": classify_json(&k) }))
}

pub fn resolve_cmd(doc: &Document, opts: &Options) -> CliResult<Value> {
    let f = document_fan(doc)?;
    let g = resolve(&f, opts.cap_steps)?;
    let sk = subdivide_complex(&f, &g)?;
    Ok(json!({
        "before": { "points": f.len(), "rank_counts": f.rank_counts(), "regular": f.is_regular() },
        "after": { "points": g.len(), "rank_counts": g.rank_counts(), "regular": g.is_regular() },
        "skeleton": { "dim_counts": dim_counts(&sk) },
    }))
}

/// Schema and invariant diagnostics; never fails.
pub fn validate(doc: &Document) -> Value {
    let mut diags: Vec<Value> = Vec::new();
    let mut push = |kind: &str, message: String| diags.push(json!({ "kind": kind, "message": message }));
    let fan = match document_fan(doc) {
        Ok(f) => Some(f),
        Err(e) if matches!(doc, Document::Complex(_)) && e.kind == "Usage" => None,
        Err(e) => {
            let kind = if e.kind == "InconsistentStratification" { "stratification" } else { e.kind };
            push(kind, e.message);
            None
        }
    };
    match doc {
        Document::Model(m) => {
            if let Some(f) = &fan {
                for (name, d) in &m.divisors {
                    if let Err(e) = d.check_support(f) {
                        push("divisor", format!("{name}: {e}"));
                    }
                }
            }
        }
        Document::Product(p) => {
            if let Ok(b) = p.build() {
                for (name, pair) in &p.divisors {
                    for (side, d, f) in [("left", &pair.left, &b.left), ("right", &pair.right, &b.right)] {
                        if let Err(e) = d.check_support(f) {
                            push("divisor", format!("{name} ({side}): {e}"));
                        }
                    }
                }
            }
        }
        Document::Complex(c) => {
            if let Err(e) = CellComplex::checked(c.complex.dims.clone(), c.complex.facets.clone(), c.complex.labels.clone())
            {
                push("complex", e.to_string());
            }
        }
    }
    for (name, spec) in doc.actions() {
        let r = match doc {
            Document::Complex(c) => complex_action(c.complex.clone(), &spec.generators),
            _ => match document_skeleton(doc) {
                Ok(sk) => skeleton_action(&sk, spec),
                Err(_) => continue,
            },
        };
        if let Err(e) = r.and_then(|(_, k, a)| a.validate(&k)) {
            push("action", format!("{name}: {e}"));
        }
    }
    json!({ "valid": diags.is_empty(), "diagnostics": diags })
}

/// Everything a summary table needs: face counts, weights and homology.
pub fn report(doc: &Document, opts: &Options) -> CliResult<Value> {
    let mut out = json!({});
    match doc {
        Document::Model(m) => {
            let f = m.fan()?;
            let sk = skeleton_of_fan(&f);
            out["fan"] = json!({ "points": f.len(), "rank_counts": f.rank_counts() });
            out["skeleton"] = json!({ "dim_counts": dim_counts(&sk) });
            let mut weights = serde_json::Map::new();
            for (name, d) in &m.divisors {
                let w = weight_function(&f, &sk, d)?;
                weights.insert(
                    name.clone(),
                    json!({ "weights": weight_table(&sk, &w), "ks": locus_json(&sk, &minimality_locus(&sk, &w), opts) }),
                );
            }
            if !weights.is_empty() {
                out["divisors"] = Value::Object(weights);
            }
        }
        Document::Product(p) => {
            let b = p.build()?;
            let ps = product_skeleton(&b.left, &b.right, &b.product)?;
            out["fan"] = json!({ "points": b.product.fan.len(), "rank_counts": b.product.fan.rank_counts() });
            out["skeleton"] = json!({ "dim_counts": dim_counts(&ps.complex) });
        }
        Document::Complex(_) => {}
    }
    let c = document_cells(doc)?;
    out["complex"] = cells_complex_json(&c);
    out["homology"] = homology_json(&order_homology(&c.order_complex()));
    Ok(out)
}
