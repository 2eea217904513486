//! Text artifacts of a compile and their readers.
//!
//! `schedule.txt` lists one `MOVE <p>` line per step followed by that
//! step's gates:
//!
//! ```text
//! # tape_ions = 16
//! # head_size = 8
//! MOVE 0
//! GATE RY 1.5707963267948966 3 ; m=0 tau=10.0 f=0.999
//! GATE XX 0.7853981633974483 3 4 ; m=0 tau=48.0 f=0.98999952
//! MOVE 5
//! ...
//! ```
//!
//! `routed.lqasm` is the routed circuit in native `.lqasm` with the initial
//! and final placements recorded in header comments.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circuit::GateKind;
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::frontend::{emit_native, format_angle, parse_native};
use crate::mapping::Mapping;
use crate::noise::GateRecord;
use crate::pipeline::{Compiled, RouterKind};
use crate::router::RoutedCircuit;
use crate::scheduler::{HeadPosition, Schedule, Step};

pub fn schedule_text(c: &Compiled) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# tape_ions = {}", c.schedule.tape_ions);
    let _ = writeln!(s, "# head_size = {}", c.schedule.head_size);
    let _ = writeln!(s, "# steps = {}", c.schedule.steps.len());
    let _ = writeln!(s, "# moves = {}", c.schedule.move_count);
    let _ = writeln!(s, "# move_distance_slots = {}", c.schedule.move_distance);
    let log: HashMap<usize, &GateRecord> =
        c.report.per_gate_log.iter().map(|r| (r.gate, r)).collect();
    for step in &c.schedule.steps {
        let _ = writeln!(s, "MOVE {}", step.position.0);
        for &gi in &step.gates {
            let g = c.routed.circuit.gate(gi);
            s.push_str("GATE ");
            s.push_str(g.kind().mnemonic());
            if let Some(a) = g.angle() {
                let _ = write!(s, " {}", format_angle(a));
            }
            for q in g.qubits() {
                let _ = write!(s, " {q}");
            }
            if let Some(r) = log.get(&gi) {
                let _ = write!(s, " ; m={} tau={:?} f={:?}", r.moves, r.tau_us, r.fidelity);
            }
            s.push('\n');
        }
    }
    s
}

fn header_value<'a>(line: &'a str, prefix: &str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(prefix)?.trim_start();
    let (k, v) = rest.split_once('=')?;
    (k.trim() == key).then(|| v.trim())
}

/// Reads `schedule.txt` back against the routed circuit it was written
/// for. Each `GATE` line resolves to the earliest not-yet-listed routed gate
/// with the same kind, angle and ions, which is the gate the writer listed
/// because identical gates on the same ions are ordered by the DAG.
pub fn parse_schedule(text: &str, routed: &RoutedCircuit) -> Result<Schedule> {
    let mut tape_ions = None;
    let mut head_size = None;
    // (kind, angle bits, ions) -> routed indices in list order
    let mut pool: BTreeMap<(GateKind, u64, Vec<usize>), Vec<usize>> = BTreeMap::new();
    for (i, g) in routed.circuit.gates().iter().enumerate().rev() {
        let key = (
            g.kind(),
            g.angle().map_or(0, f64::to_bits),
            g.qubits().to_vec(),
        );
        pool.entry(key).or_default().push(i);
    }
    let mut steps: Vec<Step> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(v) = header_value(line, "#", "tape_ions") {
                tape_ions = v.parse().ok();
            }
            if let Some(v) = header_value(line, "#", "head_size") {
                head_size = v.parse().ok();
            }
            continue;
        }
        let body = line.split(';').next().unwrap_or("").trim();
        let mut words = body.split_whitespace();
        match words.next() {
            Some("MOVE") => {
                let p = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, "MOVE needs a position"))?;
                steps.push(Step {
                    position: HeadPosition(p),
                    gates: Vec::new(),
                });
            }
            Some("GATE") => {
                let kind = words
                    .next()
                    .and_then(GateKind::from_mnemonic)
                    .ok_or_else(|| Error::parse(line_no, "unknown gate kind"))?;
                let angle: u64 = if kind.has_angle() {
                    words
                        .next()
                        .and_then(|w| w.parse::<f64>().ok())
                        .ok_or_else(|| Error::parse(line_no, "missing angle"))?
                        .to_bits()
                } else {
                    0
                };
                let ions: Vec<usize> = words
                    .map(|w| {
                        w.parse()
                            .map_err(|_| Error::parse(line_no, format!("bad ion `{w}`")))
                    })
                    .collect::<Result<_>>()?;
                let step = steps
                    .last_mut()
                    .ok_or_else(|| Error::parse(line_no, "GATE before the first MOVE"))?;
                let idx = pool
                    .get_mut(&(kind, angle, ions))
                    .and_then(Vec::pop)
                    .ok_or_else(|| Error::parse(line_no, "gate not in the routed circuit"))?;
                step.gates.push(idx);
            }
            _ => return Err(Error::parse(line_no, "expected MOVE or GATE")),
        }
    }
    let tape_ions = tape_ions.ok_or_else(|| Error::parse(1, "missing `# tape_ions` header"))?;
    let head_size = head_size.ok_or_else(|| Error::parse(1, "missing `# head_size` header"))?;
    Ok(Schedule::from_steps(tape_ions, head_size, steps))
}

fn placement_line(m: &Mapping) -> String {
    m.placement()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn routed_text(c: &Compiled) -> String {
    let r = &c.routed;
    let header = vec![
        format!("tape_ions = {}", r.ion_count()),
        format!("logical_qubits = {}", r.initial_mapping.qubit_count()),
        format!("layout.initial = {}", placement_line(&r.initial_mapping)),
        format!("layout.final = {}", placement_line(&r.final_mapping)),
        format!("swaps = {}", r.swap_count),
        format!("opposing_swaps = {}", r.opposing_swap_count),
    ];
    emit_native(&r.circuit, &header)
}

/// Reads `routed.lqasm`, including the placements from its header.
pub fn parse_routed(text: &str) -> Result<RoutedCircuit> {
    let circuit = parse_native(text)?;
    let ions = circuit.qubit_count();
    let mut fields: HashMap<&str, &str> = HashMap::new();
    for line in text.lines() {
        for key in ["layout.initial", "layout.final", "swaps", "opposing_swaps"] {
            if let Some(v) = header_value(line.trim(), "//", key) {
                fields.insert(key, v);
            }
        }
    }
    let get = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| Error::MalformedCircuit(format!("routed file lacks `{k}` header")))
    };
    let placement = |k: &str| -> Result<Mapping> {
        let v: Vec<usize> = get(k)?
            .split_whitespace()
            .map(|w| {
                w.parse()
                    .map_err(|_| Error::MalformedCircuit(format!("bad ion `{w}` in {k}")))
            })
            .collect::<Result<_>>()?;
        Mapping::from_placement(v, ions)
    };
    let count = |k: &str| -> Result<usize> {
        get(k)?
            .parse()
            .map_err(|_| Error::MalformedCircuit(format!("bad count in {k}")))
    };
    let routed = RoutedCircuit {
        initial_mapping: placement("layout.initial")?,
        final_mapping: placement("layout.final")?,
        swap_count: count("swaps")?,
        opposing_swap_count: count("opposing_swaps")?,
        circuit,
    };
    if routed.circuit.count_kind(GateKind::Swap) != routed.swap_count {
        return Err(Error::MalformedCircuit(
            "swap count header disagrees with the gate list".into(),
        ));
    }
    Ok(routed)
}

/// Metrics written to `report.json`. Field suffixes carry the units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub device: DeviceSpec,
    pub router: RouterKind,
    pub logical_qubits: usize,
    pub logical_gates: usize,
    pub logical_two_qubit_gates: usize,
    pub routed_gates: usize,
    pub swap_count: usize,
    pub opposing_swap_count: usize,
    pub opposing_ratio: f64,
    pub max_gate_span_slots: usize,
    pub step_count: usize,
    pub move_count: usize,
    pub move_distance_slots: usize,
    pub move_distance_um: f64,
    pub shuttle_time_us: f64,
    pub gate_time_us: f64,
    pub t_exec_s: f64,
    pub success_rate: f64,
    pub initial_mapping: Vec<usize>,
    pub final_mapping: Vec<usize>,
}

impl RunReport {
    pub fn of(c: &Compiled) -> Self {
        let r = &c.report;
        RunReport {
            device: c.device,
            router: c.router,
            logical_qubits: c.logical.qubit_count(),
            logical_gates: c.logical.len(),
            logical_two_qubit_gates: c.logical.two_qubit_count(),
            routed_gates: c.routed.circuit.len(),
            swap_count: c.routed.swap_count,
            opposing_swap_count: c.routed.opposing_swap_count,
            opposing_ratio: c.routed.opposing_ratio(),
            max_gate_span_slots: c.routed.max_span(),
            step_count: c.schedule.steps.len(),
            move_count: r.move_count,
            move_distance_slots: r.move_distance_slots,
            move_distance_um: r.move_distance_um,
            shuttle_time_us: r.shuttle_time_us,
            gate_time_us: r.gate_time_us,
            t_exec_s: r.t_exec_s,
            success_rate: r.success_rate,
            initial_mapping: c.routed.initial_mapping.placement().to_vec(),
            final_mapping: c.routed.final_mapping.placement().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate, BenchmarkSpec, Family};
    use crate::pipeline::compile_text;

    fn compiled() -> Compiled {
        let src = generate(&BenchmarkSpec::new(Family::Qft, 12, 0)).unwrap();
        compile_text(&src, &DeviceSpec::new(14, 5)).unwrap()
    }

    #[test]
    fn schedule_round_trips() {
        let c = compiled();
        assert!(c.schedule.move_count > 0);
        let text = schedule_text(&c);
        assert_eq!(parse_schedule(&text, &c.routed).unwrap(), c.schedule);
    }

    #[test]
    fn routed_round_trips() {
        let c = compiled();
        assert_eq!(parse_routed(&routed_text(&c)).unwrap(), c.routed);
    }

    #[test]
    fn report_echoes_device() {
        let c = compiled();
        let json = RunReport::of(&c).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["device"]["tape_ions"], 14);
        assert_eq!(v["device"]["noise"]["epsilon"], 0.01);
        for k in ["swap_count", "move_count", "success_rate", "t_exec_s"] {
            assert!(v.get(k).is_some(), "{k}");
        }
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, RunReport::of(&c));
    }

    #[test]
    fn foreign_gate_is_rejected() {
        let c = compiled();
        let text = "# tape_ions = 14\n# head_size = 5\nMOVE 0\nGATE XX 0.5 0 1\n";
        assert!(parse_schedule(text, &c.routed).is_err());
    }
}
