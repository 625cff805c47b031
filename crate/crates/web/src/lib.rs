//! Browser bindings: spectrum tables, orbit PSD value sets and PSD profiles
//! of a pair. Every export returns a JSON string; the plain functions
//! below them are what the native tests exercise.

use legendre::combinatorics::Composition;
use legendre::number_theory::{orbit_psd_values, spectrum_rows, OrbitDecomposition, SubgroupSpec};
use legendre::seq::{BinarySequence, RootTable};
use legendre::verify::verify_pair;
use legendre::{published, DEFAULT_EPS};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct SpectrumRowView {
    psd_pair: [i64; 2],
    square_sums: [i64; 2],
    witnesses_a: Vec<[i64; 3]>,
    witnesses_b: Vec<[i64; 3]>,
    admissible: bool,
}

#[derive(Serialize)]
struct OrbitValues {
    l: usize,
    subgroup: Vec<usize>,
    orbit_sizes: Vec<(usize, usize)>,
    values: Vec<i64>,
}

#[derive(Serialize)]
struct Profile {
    l: usize,
    lags: Vec<usize>,
    psd_a: Vec<f64>,
    psd_b: Vec<f64>,
    target: f64,
    legendre_pair: bool,
    failure: Option<String>,
    psd_third: Option<[i64; 2]>,
}

#[derive(Serialize)]
struct Example {
    label: String,
    l: usize,
    a: String,
    b: String,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

pub fn spectrum_json(l: usize) -> Result<String, String> {
    let rows = spectrum_rows(l).map_err(|e| e.to_string())?;
    let view: Vec<SpectrumRowView> = rows
        .into_iter()
        .map(|r| SpectrumRowView {
            admissible: r.admissible(),
            psd_pair: r.psd_pair,
            square_sums: r.square_sums,
            witnesses_a: r.witnesses_a,
            witnesses_b: r.witnesses_b,
        })
        .collect();
    to_json(&view)
}

pub fn orbit_values_json(l: usize, subgroup: &str, composition: &str) -> Result<String, String> {
    let spec: SubgroupSpec = subgroup
        .parse()
        .map_err(|e: legendre::Error| e.to_string())?;
    let h = spec.build(l).map_err(|e| e.to_string())?;
    let d = OrbitDecomposition::new(&h).map_err(|e| e.to_string())?;
    let comp: Composition = composition
        .parse()
        .map_err(|e: legendre::Error| e.to_string())?;
    let counts = comp.counts_for(&d).map_err(|e| e.to_string())?;
    let values = orbit_psd_values(&d, &counts).map_err(|e| e.to_string())?;
    to_json(&OrbitValues {
        l,
        subgroup: h.elements().to_vec(),
        orbit_sizes: d
            .size_classes()
            .iter()
            .map(|c| (c.size, c.count()))
            .collect(),
        values: values.into_iter().collect(),
    })
}

pub fn profile_json(a: &str, b: &str) -> Result<String, String> {
    let a: BinarySequence = a
        .trim()
        .parse()
        .map_err(|e: legendre::Error| e.to_string())?;
    let b: BinarySequence = b
        .trim()
        .parse()
        .map_err(|e: legendre::Error| e.to_string())?;
    if a.len() != b.len() {
        return Err(format!("lengths differ: {} and {}", a.len(), b.len()));
    }
    let l = a.len();
    let table = RootTable::new(l);
    let lags: Vec<usize> = (1..=(l - 1) / 2).collect();
    let psd = |x: &BinarySequence| -> Result<Vec<f64>, String> {
        lags.iter()
            .map(|&s| table.psd(x.entries(), s).map_err(|e| e.to_string()))
            .collect()
    };
    let (psd_a, psd_b) = (psd(&a)?, psd(&b)?);
    let (legendre_pair, failure, psd_third) = match verify_pair(&a, &b, DEFAULT_EPS) {
        Ok(r) => (true, None, r.psd_third),
        Err(f) => (false, Some(f.to_string()), None),
    };
    to_json(&Profile {
        l,
        lags,
        psd_a,
        psd_b,
        target: (2 * l + 2) as f64,
        legendre_pair,
        failure,
        psd_third,
    })
}

pub fn examples_json() -> Result<String, String> {
    let mut out = vec![Example {
        label: "l = 3".into(),
        l: 3,
        a: "++-".into(),
        b: "++-".into(),
    }];
    for p in published::all() {
        let (a, b) = p.sequences().map_err(|e| e.to_string())?;
        out.push(Example {
            label: format!(
                "l = {}, {} #{} ({})",
                p.family.l,
                p.family.name,
                p.label,
                match p.encoding {
                    published::Encoding::Indices(..) => "index sets",
                    published::Encoding::Ranks(..) => "ranks",
                }
            ),
            l: p.family.l,
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    to_json(&out)
}

/// Spectrum rows for `l`, discarded rows included.
#[wasm_bindgen]
pub fn spectrum(l: usize) -> Result<String, JsValue> {
    spectrum_json(l).map_err(|e| JsValue::from_str(&e))
}

/// Sorted `PSD(l/3)` values reachable with the given orbit composition.
#[wasm_bindgen]
pub fn orbit_values(l: usize, subgroup: &str, composition: &str) -> Result<String, JsValue> {
    orbit_values_json(l, subgroup, composition).map_err(|e| JsValue::from_str(&e))
}

/// PSD of both sequences at lags `1..=(l-1)/2` and the pair verdict.
#[wasm_bindgen]
pub fn pair_profile(a: &str, b: &str) -> Result<String, JsValue> {
    profile_json(a, b).map_err(|e| JsValue::from_str(&e))
}

/// Known pairs to preload in the page.
#[wasm_bindgen]
pub fn examples() -> Result<String, JsValue> {
    examples_json().map_err(|e| JsValue::from_str(&e))
}
