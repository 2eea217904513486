//! The JSON the page consumes, checked from the native side.

use serde_json::Value;
use tilt_wasm_demo::{compile_json, fidelity_json, sweep_json};

#[test]
fn every_family_renders() {
    for family in ["adder", "bv", "qaoa", "rcs", "qft", "longrange"] {
        let v: Value =
            serde_json::from_str(&compile_json(family, 16, 6, 0, 1e-4, 3).unwrap()).unwrap();
        let head = v["head_size"].as_u64().unwrap();
        for step in v["steps"].as_array().unwrap() {
            let p = step["position"].as_u64().unwrap();
            for pair in step["pairs"]
                .as_array()
                .unwrap()
                .iter()
                .chain(step["swaps"].as_array().unwrap())
            {
                let (a, b) = (pair[0].as_u64().unwrap(), pair[1].as_u64().unwrap());
                assert!(
                    a < b && p <= a && b < p + head,
                    "{family}: {a}-{b} outside window at {p}"
                );
            }
        }
    }
}

#[test]
fn sweep_rows_match_the_head() {
    let rows: Value = serde_json::from_str(&sweep_json("qft", 12, 6, 1e-4, 0).unwrap()).unwrap();
    let msl: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["max_swap_len"].as_u64().unwrap())
        .collect();
    assert_eq!(msl, [2, 3, 4, 5]);
}

#[test]
fn curve_starts_at_the_unheated_fidelity() {
    let series: Vec<(usize, Vec<f64>)> =
        serde_json::from_str(&fidelity_json(&[1], 0, 8, 0.0, 0.0)).unwrap();
    assert_eq!(series, vec![(1, vec![1.0])]);
}
