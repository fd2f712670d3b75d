//! Browser bindings. Every export takes and returns plain strings so the page
//! needs no generated glue beyond what `wasm-bindgen` emits.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde_json::{json, Value};
use staircase::arquiver::default_slice_limit;
use staircase::{
    classify, knit, orbit_quiver, orbit_type, parse_partition, verify_classification, ArrowKind, IntVector, Partition, StaircaseQuiver,
    UnitForm,
};
use wasm_bindgen::prelude::*;

const CELL: f64 = 56.0;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn svg_error(msg: impl std::fmt::Display) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"420\" height=\"40\"><text x=\"8\" y=\"24\" fill=\"#b00\">{}</text></svg>",
        escape(&msg.to_string())
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Type, measures and the form-side checks for a partition.
#[wasm_bindgen]
pub fn classify_partition(text: &str) -> String {
    let lambda = match parse_partition(text) {
        Ok(l) => l,
        Err(e) => return error(e),
    };
    let report = verify_classification(&lambda);
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({ "criterion": c.criterion, "expected": c.expected, "observed": c.observed }))
        .collect();
    json!({
        "lambda": lambda,
        "potency": lambda.to_potency(),
        "transpose": lambda.transpose().to_potency(),
        "measures": lambda.measures(),
        "type": classify(&lambda).name(),
        "orbit_type": orbit_type(&lambda).to_string(),
        "consistent": report.consistent,
        "checks": checks,
    })
    .to_string()
}

fn parse_rows(lambda: &Partition, rows: &str) -> Result<IntVector, String> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(rows).map_err(|e| e.to_string())?;
    IntVector::from_rows(lambda, &rows).map_err(|e| e.to_string())
}

/// `q(x)` for a vector given as JSON rows, bottom row first.
#[wasm_bindgen]
pub fn eval_form(text: &str, rows: &str) -> String {
    let lambda = match parse_partition(text) {
        Ok(l) => l,
        Err(e) => return error(e),
    };
    let x = match parse_rows(&lambda, rows) {
        Ok(x) => x,
        Err(e) => return error(e),
    };
    match UnitForm::of(&lambda).eval(&x) {
        Ok(value) => json!({ "q": value, "nonnegative": x.is_nonnegative() }).to_string(),
        Err(e) => error(e),
    }
}

fn position(lambda: &Partition, i: usize, j: usize) -> (f64, f64) {
    let x = CELL * (j as f64 - 0.5);
    let y = CELL * ((lambda.len() - i) as f64 + 0.5);
    (x, y)
}

/// The quiver drawn on its Young diagram, optionally labelled by a vector.
#[wasm_bindgen]
pub fn quiver_svg(text: &str, rows: &str) -> String {
    let lambda = match parse_partition(text) {
        Ok(l) => l,
        Err(e) => return svg_error(e),
    };
    let labels = if rows.trim().is_empty() {
        None
    } else {
        match parse_rows(&lambda, rows) {
            Ok(x) => Some(x),
            Err(e) => return svg_error(e),
        }
    };
    let quiver = StaircaseQuiver::new(&lambda);
    let width = CELL * lambda.row_len(1) as f64;
    let height = CELL * lambda.len() as f64;
    let mut s = String::new();
    let _ = write!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-4 -4 {} {}\" width=\"{}\" height=\"{}\">",
        width + 8.0,
        height + 8.0,
        width + 8.0,
        height + 8.0
    );
    s.push_str(
        "<defs><marker id=\"tip\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\">\
         <path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/></marker></defs>",
    );
    for &v in quiver.vertices() {
        let (x, y) = position(&lambda, v.i, v.j);
        let _ = write!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"#f6f3ea\" stroke=\"#ccc\"/>",
            x - CELL / 2.0,
            y - CELL / 2.0
        );
    }
    for &anchor in quiver.relations() {
        let (x0, y0) = position(&lambda, anchor.i, anchor.j);
        let (x1, y1) = position(&lambda, anchor.i - 1, anchor.j - 1);
        let _ = write!(s, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y1}\" stroke=\"#999\" stroke-dasharray=\"3 4\"/>");
    }
    let r = 13.0;
    for a in quiver.arrows() {
        let t = a.target();
        let (x0, y0) = position(&lambda, a.source.i, a.source.j);
        let (x1, y1) = position(&lambda, t.i, t.j);
        let (dx, dy) = (x1 - x0, y1 - y0);
        let len = (dx * dx + dy * dy).sqrt();
        let (ux, uy) = (dx / len, dy / len);
        let colour = if a.kind == ArrowKind::H { "#2a6f97" } else { "#9c4f2b" };
        let _ = write!(
            s,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{colour}\" stroke-width=\"1.6\" marker-end=\"url(#tip)\"/>",
            x0 + ux * r,
            y0 + uy * r,
            x1 - ux * (r + 2.0),
            y1 - uy * (r + 2.0)
        );
    }
    for &v in quiver.vertices() {
        let (x, y) = position(&lambda, v.i, v.j);
        let text = match &labels {
            Some(x) => x.get(v).to_string(),
            None => v.label(),
        };
        let _ = write!(
            s,
            "<circle cx=\"{x}\" cy=\"{y}\" r=\"{r}\" fill=\"white\" stroke=\"#333\"/>\
             <text x=\"{x}\" y=\"{}\" font-size=\"10\" text-anchor=\"middle\" font-family=\"monospace\">{}</text>",
            y + 3.5,
            escape(&text)
        );
    }
    s.push_str("</svg>");
    s
}

/// The knitted preprojective component, one row per τ-orbit.
#[wasm_bindgen]
pub fn knit_svg(text: &str, limit: u32) -> String {
    let lambda = match parse_partition(text) {
        Ok(l) => l,
        Err(e) => return svg_error(e),
    };
    let limit = if limit == 0 { default_slice_limit(&lambda) } else { limit as usize };
    let ar = match knit(&lambda, limit) {
        Ok(ar) => ar,
        Err(e) => return svg_error(e),
    };
    // Longest path from the sources gives the horizontal position.
    let mut column = vec![0usize; ar.vertices.len()];
    let mut order: Vec<usize> = (0..ar.vertices.len()).collect();
    order.sort_by_key(|&k| (ar.vertices[k].slice, k));
    let mut incoming: HashMap<usize, Vec<usize>> = HashMap::new();
    for a in &ar.arrows {
        incoming.entry(a.target).or_default().push(a.source);
    }
    for _ in 0..ar.vertices.len() {
        let mut changed = false;
        for &k in &order {
            let best = incoming.get(&k).map_or(0, |src| src.iter().map(|&p| column[p] + 1).max().unwrap_or(0));
            if best > column[k] {
                column[k] = best;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    for v in &ar.vertices {
        let next = rows.len();
        rows.entry(v.tau_orbit).or_insert(next);
    }
    let dx = 46.0;
    let dy = 34.0;
    let at = |k: usize| (20.0 + dx * column[k] as f64, 24.0 + dy * rows[&ar.vertices[k].tau_orbit] as f64);
    let width = 60.0 + dx * column.iter().copied().max().unwrap_or(0) as f64;
    let height = 40.0 + dy * rows.len() as f64;
    let mut s = String::new();
    let _ = write!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {width} {height}\" width=\"{width}\" height=\"{height}\">");
    for a in &ar.arrows {
        let (x0, y0) = at(a.source);
        let (x1, y1) = at(a.target);
        let w = if a.multiplicity > 1 { 2.5 } else { 1.0 };
        let _ = write!(s, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y1}\" stroke=\"#8aa\" stroke-width=\"{w}\"/>");
    }
    for (k, v) in ar.vertices.iter().enumerate() {
        let (x, y) = at(k);
        let fill = match (v.projective.is_some(), v.injective.is_some()) {
            (true, true) => "#e0c8f0",
            (true, false) => "#cde8cd",
            (false, true) => "#f3d9b1",
            _ => "white",
        };
        let dims = v.dim.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<String>()).collect::<Vec<_>>().join("/");
        let _ = write!(
            s,
            "<g><title>{}</title><circle cx=\"{x}\" cy=\"{y}\" r=\"6\" fill=\"{fill}\" stroke=\"#333\"/>\
             <text x=\"{x}\" y=\"{}\" font-size=\"8\" text-anchor=\"middle\" font-family=\"monospace\">{}</text></g>",
            escape(&v.dim.to_string()),
            y + 15.0,
            escape(&dims)
        );
    }
    let caption = match orbit_quiver(&ar) {
        Ok(oq) => format!("{} vertices, orbit quiver {}", ar.len(), oq.recognized_type),
        Err(_) => format!("{} vertices, partial component", ar.len()),
    };
    let caption = if ar.complete { caption } else { format!("{caption} (slice limit reached)") };
    let _ = write!(s, "<text x=\"8\" y=\"{}\" font-size=\"11\" font-family=\"sans-serif\">{}</text></svg>", height - 6.0, escape(&caption));
    s
}
