//! Browser bindings for the petal demo page.
//!
//! The plain functions return `Result<String, String>` so they can be
//! tested natively; the `#[wasm_bindgen]` wrappers turn errors into JS
//! exceptions.

use std::f64::consts::PI;
use std::fmt::Write;

use petaluma::invariants::{perm_invariants, Strategy};
use petaluma::io::parse_perm;
use petaluma::sampling::{distribution_experiment, uniform_perm, ExperimentKind, SeededStream};
use wasm_bindgen::prelude::*;

/// Largest petal count drawn or analysed interactively.
pub const MAX_PETALS: usize = 41;
/// Largest sample count for one histogram request.
pub const MAX_SAMPLES: u64 = 20_000;
/// Jones is offered only up to this many petals (105 crossings).
pub const MAX_JONES_PETALS: usize = 15;

fn parse(text: &str) -> Result<petaluma::PetalPermutation, String> {
    let p = parse_perm(text).map_err(|e| e.to_string())?;
    if p.petals() > MAX_PETALS {
        return Err(format!("{} petals; the demo stops at {MAX_PETALS}", p.petals()));
    }
    Ok(p)
}

/// HSL colour for height `h` of `p`: low arcs blue, high arcs red.
fn colour(h: usize, p: usize) -> String {
    let x = if p > 1 { (h - 1) as f64 / (p - 1) as f64 } else { 0.5 };
    format!("hsl({:.0},70%,45%)", 230.0 - 230.0 * x)
}

/// SVG drawing of the rose `r = cos(p θ)`. The curve passes through the
/// centre `p` times; pass `j` is arc `j + 1` and is drawn in order of
/// height, so higher arcs cover lower ones at the multi-crossing.
pub fn draw_svg(text: &str, size: u32) -> Result<String, String> {
    let perm = parse(text)?;
    let p = perm.petals();
    let (c, r) = (size as f64 / 2.0, size as f64 * 0.42);
    let pf = p as f64;
    // pass j crosses the centre at θ_j = (2j+1)π/(2p); its stretch of curve
    // runs between the neighbouring petal tips θ = jπ/p and (j+1)π/p
    let piece = |j: usize| {
        let (a, b) = (j as f64 * PI / pf, (j + 1) as f64 * PI / pf);
        let steps = 48;
        let mut d = String::new();
        for s in 0..=steps {
            let th = a + (b - a) * s as f64 / steps as f64;
            let rad = r * (pf * th).cos();
            let (x, y) = (c + rad * th.cos(), c - rad * th.sin());
            let _ = write!(d, "{}{x:.2},{y:.2}", if s == 0 { "M" } else { " L" });
        }
        d
    };
    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by_key(|&j| perm.height(j + 1));
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {size} {size}\" width=\"{size}\" height=\"{size}\">\
         <rect width=\"100%\" height=\"100%\" fill=\"#fcfcf8\"/>"
    );
    let width = (6.0 - pf / 10.0).max(2.0);
    for j in order {
        let h = perm.height(j + 1);
        let _ = write!(
            svg,
            "<path d=\"{}\" fill=\"none\" stroke=\"#fcfcf8\" stroke-width=\"{:.1}\" stroke-linecap=\"round\"/>\
             <path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{width:.1}\" stroke-linecap=\"round\"><title>arc {} height {h}</title></path>",
            piece(j),
            width + 4.0,
            piece(j),
            colour(h, p),
            j + 1
        );
    }
    if p <= 21 {
        // label each arc near the tip it leaves from
        for j in 0..p {
            let th = j as f64 * PI / pf + PI / (4.0 * pf);
            let rad = r * 0.93 * (pf * th).cos();
            let (x, y) = (c + rad * th.cos(), c - rad * th.sin());
            let _ = write!(
                svg,
                "<text x=\"{x:.1}\" y=\"{y:.1}\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\" fill=\"#222\">{}</text>",
                (size / 40).max(9),
                perm.height(j + 1)
            );
        }
    }
    svg.push_str("</svg>");
    Ok(svg)
}

/// JSON invariant report; `jones` is honoured up to `MAX_JONES_PETALS`.
pub fn invariants_json(text: &str, jones: bool) -> Result<String, String> {
    let perm = parse(text)?;
    let with_jones = jones && perm.petals() <= MAX_JONES_PETALS;
    let r = perm_invariants(&perm, Some(Strategy::default_for(perm.petals())), with_jones).map_err(|e| e.to_string())?;
    let mut v = r.to_json();
    v["perm_text"] = perm.to_string().into();
    v["jones_skipped"] = (jones && !with_jones).into();
    Ok(v.to_string())
}

/// JSON `{histogram, report}` of `c2` over random `(2n+1)`-petal knots.
pub fn c2_histogram_json(n: usize, samples: u64, seed: u64) -> Result<String, String> {
    if 2 * n + 1 > MAX_PETALS {
        return Err(format!("n = {n} gives more than {MAX_PETALS} petals"));
    }
    if samples == 0 || samples > MAX_SAMPLES {
        return Err(format!("samples must be in 1..={MAX_SAMPLES}"));
    }
    let r = distribution_experiment(ExperimentKind::C2Knot { n }, samples, seed, 1, false).map_err(|e| e.to_string())?;
    let counts: Vec<[i64; 2]> = r.histogram.counts.iter().map(|(&v, &c)| [v, c as i64]).collect();
    Ok(format!(
        "{{\"counts\":{},\"total\":{},\"mean\":{},\"max_frequency\":{},\"ci_upper\":{},\"bound\":{}}}",
        format_pairs(&counts),
        r.histogram.total,
        r.histogram.mean(),
        r.report.frequency,
        r.report.ci.1,
        r.report.bound
    ))
}

fn format_pairs(pairs: &[[i64; 2]]) -> String {
    let items: Vec<String> = pairs.iter().map(|[v, c]| format!("[{v},{c}]")).collect();
    format!("[{}]", items.join(","))
}

/// A uniformly random `p`-petal permutation as text.
pub fn random_perm_text(p: usize, seed: u64) -> Result<String, String> {
    if p % 2 == 0 || p > MAX_PETALS {
        return Err(format!("p must be odd and at most {MAX_PETALS}"));
    }
    let perm = uniform_perm(p, &mut SeededStream::new(seed, 0)).map_err(|e| e.to_string())?;
    Ok(perm.to_string())
}

#[wasm_bindgen]
pub fn draw(perm: &str, size: u32) -> Result<String, JsError> {
    draw_svg(perm, size).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn invariants(perm: &str, jones: bool) -> Result<String, JsError> {
    invariants_json(perm, jones).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn c2_histogram(n: usize, samples: u32, seed: u32) -> Result<String, JsError> {
    c2_histogram_json(n, samples as u64, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn random_perm(p: usize, seed: u32) -> Result<String, JsError> {
    random_perm_text(p, seed as u64).map_err(|e| JsError::new(&e))
}
