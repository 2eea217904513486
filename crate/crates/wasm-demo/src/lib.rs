//! Browser bindings for the demo page in `www/`. Every export takes plain
//! numbers/strings and returns a JSON string, so the page needs no glue
//! beyond `JSON.parse`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use tilt_core::bench::{generate, BenchmarkSpec, Family};
use tilt_core::frontend::compile_source;
use tilt_core::noise::two_qubit_fidelity;
use tilt_core::pipeline::{compile, sweep};
use tilt_core::{DeviceSpec, GateKind, NoiseParams};

#[derive(Serialize)]
struct StepView {
    position: usize,
    /// `[low, high]` ion pairs of two-qubit gates; swaps flagged separately.
    pairs: Vec<[usize; 2]>,
    swaps: Vec<[usize; 2]>,
    single: usize,
}

#[derive(Serialize)]
struct CompileView {
    tape_ions: usize,
    head_size: usize,
    max_swap_len: usize,
    swaps: usize,
    opposing_swaps: usize,
    moves: usize,
    move_distance_slots: usize,
    success_rate: f64,
    t_exec_s: f64,
    steps: Vec<StepView>,
}

fn device(ions: usize, head: usize, max_swap_len: usize, epsilon: f64) -> DeviceSpec {
    let mut d = DeviceSpec::new(ions, head);
    if max_swap_len > 0 {
        d = d.with_max_swap_len(max_swap_len);
    }
    d.noise.epsilon = epsilon;
    d
}

fn benchmark(family: &str, qubits: usize, seed: u64) -> Result<tilt_core::Circuit, String> {
    let family: Family = family
        .parse()
        .map_err(|e: tilt_core::Error| e.to_string())?;
    let src = generate(&BenchmarkSpec::new(family, qubits, seed)).map_err(|e| e.to_string())?;
    compile_source(&src).map_err(|e| e.to_string())
}

/// Compiles a generated benchmark onto a tape of `qubits` ions;
/// `max_swap_len = 0` keeps the default for the head.
pub fn compile_json(
    family: &str,
    qubits: usize,
    head: usize,
    max_swap_len: usize,
    epsilon: f64,
    seed: u64,
) -> Result<String, String> {
    let c = benchmark(family, qubits, seed)?;
    let d = device(qubits, head, max_swap_len, epsilon);
    let out = compile(&c, &d).map_err(|e| e.to_string())?;
    let gates = out.routed.circuit.gates();
    let steps = out
        .schedule
        .steps
        .iter()
        .map(|s| {
            let mut v = StepView {
                position: s.position.0,
                pairs: Vec::new(),
                swaps: Vec::new(),
                single: 0,
            };
            for &i in &s.gates {
                let g = &gates[i];
                match (g.kind(), g.qubits()) {
                    (GateKind::Swap, &[a, b]) => v.swaps.push([a.min(b), a.max(b)]),
                    (_, &[a, b]) => v.pairs.push([a.min(b), a.max(b)]),
                    (GateKind::Barrier, _) => {}
                    _ => v.single += 1,
                }
            }
            v
        })
        .collect();
    let view = CompileView {
        tape_ions: qubits,
        head_size: head,
        max_swap_len: d.router.max_swap_len,
        swaps: out.routed.swap_count,
        opposing_swaps: out.routed.opposing_swap_count,
        moves: out.schedule.move_count,
        move_distance_slots: out.schedule.move_distance,
        success_rate: out.report.success_rate,
        t_exec_s: out.report.t_exec_s,
        steps,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

/// One row per `max_swap_len` in `2..=head-1`.
pub fn sweep_json(
    family: &str,
    qubits: usize,
    head: usize,
    epsilon: f64,
    seed: u64,
) -> Result<String, String> {
    let c = benchmark(family, qubits, seed)?;
    let d = device(qubits, head, 0, epsilon);
    let top = tilt_core::router::RouterConfig::max_swap_len_ceiling(head);
    let rows = sweep(&c, &d, 2..=top).map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

/// Two-qubit gate fidelity after `0..=max_moves` tape moves, one series
/// per gate distance in `distances`.
pub fn fidelity_json(
    distances: &[usize],
    max_moves: usize,
    chain: usize,
    epsilon: f64,
    gamma: f64,
) -> String {
    let p = NoiseParams {
        epsilon,
        gamma_per_us: gamma,
        ..NoiseParams::default()
    };
    let series: Vec<(usize, Vec<f64>)> = distances
        .iter()
        .map(|&d| {
            (
                d,
                (0..=max_moves)
                    .map(|m| two_qubit_fidelity(d, m, chain, &p))
                    .collect(),
            )
        })
        .collect();
    serde_json::to_string(&series).expect("numbers serialize")
}

#[wasm_bindgen]
pub fn compile_demo(
    family: &str,
    qubits: usize,
    head: usize,
    max_swap_len: usize,
    epsilon: f64,
    seed: u64,
) -> Result<String, JsError> {
    compile_json(family, qubits, head, max_swap_len, epsilon, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sweep_demo(
    family: &str,
    qubits: usize,
    head: usize,
    epsilon: f64,
    seed: u64,
) -> Result<String, JsError> {
    sweep_json(family, qubits, head, epsilon, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fidelity_curve(
    distances: Vec<usize>,
    max_moves: usize,
    chain: usize,
    epsilon: f64,
    gamma: f64,
) -> String {
    fidelity_json(&distances, max_moves, chain, epsilon, gamma)
}
