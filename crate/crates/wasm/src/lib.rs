//! Browser bindings for the static demo page in `www/`.
//!
//! Every export takes and returns plain strings so the page needs no glue
//! beyond what `wasm-bindgen` generates.

use serde_json::json;
use wasm_bindgen::prelude::*;

use omlkit::demos::{check_lattice, run_demo, DemoOptions};
use omlkit::exactlin::DEFAULT_CLOSURE_CAP;
use omlkit::lattice::format::{Generator, LatticeFile};
use omlkit::FiniteOml;

fn build(source: &str) -> Result<FiniteOml, String> {
    let source = source.trim();
    let built = if source.starts_with('{') {
        LatticeFile::from_json(source).and_then(|f| f.build(DEFAULT_CLOSURE_CAP))
    } else {
        Generator::from_spec(source).and_then(|g| g.build(DEFAULT_CLOSURE_CAP))
    };
    built.map_err(|e| e.to_string())
}

/// Runs the Piron bundle on a generator spec (`mo:3`, `pasted:2,3`, ...)
/// or on lattice JSON.
///
/// Returns JSON with the text report and the Hasse diagram:
/// `{"report", "passed", "elements", "ranks", "covers", "ortho"}`.
pub fn inspect_lattice(source: &str) -> Result<String, String> {
    let l = build(source)?;
    let report = check_lattice(source.trim(), &l, &[]);
    let index: Vec<usize> = l.elements().map(|e| e.index()).collect();
    let covers: Vec<[usize; 2]> = l.covers().into_iter().map(|(a, b)| [a.index(), b.index()]).collect();
    // height of each element above 0, for layering the diagram
    let mut ranks = vec![0usize; l.len()];
    for e in l.elements() {
        for (a, b) in l.covers() {
            if b == e {
                ranks[e.index()] = ranks[e.index()].max(ranks[a.index()] + 1);
            }
        }
    }
    let doc = json!({
        "report": report.to_text(),
        "passed": report.passed(),
        "elements": l.names(),
        "ranks": index.iter().map(|&i| ranks[i]).collect::<Vec<_>>(),
        "covers": covers,
        "ortho": l.elements().map(|e| l.ortho(e).index()).collect::<Vec<_>>(),
    });
    Ok(doc.to_string())
}

fn demo(name: &str, config: Option<String>, theta: Option<f64>) -> Result<String, String> {
    let opts = DemoOptions {
        config,
        theta,
        closure_cap: None,
    };
    run_demo(name, &opts).map(|r| r.to_text()).map_err(|e| e.to_string())
}

/// Text report for the z-then-spin sequential measurements at `±theta`.
pub fn sequential_povm(theta: f64) -> Result<String, String> {
    if !theta.is_finite() {
        return Err("theta must be a finite number".into());
    }
    demo("sequential-povm", None, Some(theta))
}

/// Text report for the quantum PR-box exclusion. An empty config runs the
/// default settings.
pub fn prbox_quantum(config: &str) -> Result<String, String> {
    let config = Some(config.trim()).filter(|c| !c.is_empty()).map(str::to_string);
    demo("prbox-quantum", config, None)
}

#[wasm_bindgen(js_name = inspectLattice)]
pub fn inspect_lattice_js(source: &str) -> Result<String, JsError> {
    inspect_lattice(source).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = sequentialPovm)]
pub fn sequential_povm_js(theta: f64) -> Result<String, JsError> {
    sequential_povm(theta).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = prboxQuantum)]
pub fn prbox_quantum_js(config: &str) -> Result<String, JsError> {
    prbox_quantum(config).map_err(|e| JsError::new(&e))
}
