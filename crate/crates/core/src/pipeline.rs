//! End-to-end compile for one device: place, route, schedule, price.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::device::DeviceSpec;
use crate::error::{Error, Result};
use crate::frontend::compile_source;
use crate::noise::{evaluate, FidelityReport};
use crate::par;
use crate::router::{route, route_baseline, RoutedCircuit};
use crate::scheduler::{schedule, Schedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RouterKind {
    /// Lookahead scoring with opposing-swap preference.
    #[default]
    Lookahead,
    /// Head-width hops of the first operand, no lookahead.
    Baseline,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Compiled {
    pub device: DeviceSpec,
    pub router: RouterKind,
    pub logical: Circuit,
    pub routed: RoutedCircuit,
    pub schedule: Schedule,
    pub report: FidelityReport,
}

pub fn compile(circuit: &Circuit, device: &DeviceSpec) -> Result<Compiled> {
    compile_with(circuit, device, RouterKind::Lookahead)
}

pub fn compile_with(
    circuit: &Circuit,
    device: &DeviceSpec,
    router: RouterKind,
) -> Result<Compiled> {
    device.validate()?;
    if circuit.qubit_count() > device.tape_ions {
        return Err(Error::Capacity {
            qubits: circuit.qubit_count(),
            ions: device.tape_ions,
        });
    }
    let routed = match router {
        RouterKind::Lookahead => route(circuit, device.tape_ions, &device.router)?,
        RouterKind::Baseline => route_baseline(circuit, device.tape_ions, &device.router)?,
    };
    let schedule = schedule(&routed, device.tape_ions, device.head_size)?;
    let report = evaluate(&schedule, &routed, &device.noise)?;
    Ok(Compiled {
        device: *device,
        router,
        logical: circuit.clone(),
        routed,
        schedule,
        report,
    })
}

/// Parses `.lqasm` source and compiles it.
pub fn compile_text(src: &str, device: &DeviceSpec) -> Result<Compiled> {
    compile(&compile_source(src)?, device)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub max_swap_len: usize,
    pub swaps: usize,
    pub moves: usize,
    pub success_rate: f64,
    pub t_exec_s: f64,
    pub best: bool,
}

/// One compile per `max_swap_len` in `range`, run in parallel. Exactly one
/// row is marked best: the highest success rate, ties to the smallest
/// `max_swap_len`.
pub fn sweep(
    circuit: &Circuit,
    device: &DeviceSpec,
    range: RangeInclusive<usize>,
) -> Result<Vec<SweepRow>> {
    let values: Vec<usize> = range.collect();
    if values.is_empty() {
        return Err(Error::Config("empty max_swap_len range".into()));
    }
    for &v in &values {
        device.with_max_swap_len(v).validate()?;
    }
    let results = par::map(&values, |&v| compile(circuit, &device.with_max_swap_len(v)));
    let mut rows = Vec::with_capacity(values.len());
    for (v, r) in values.iter().zip(results) {
        let c = r?;
        rows.push(SweepRow {
            max_swap_len: *v,
            swaps: c.routed.swap_count,
            moves: c.schedule.move_count,
            success_rate: c.report.success_rate,
            t_exec_s: c.report.t_exec_s,
            best: false,
        });
    }
    let best = rows
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.success_rate.total_cmp(&b.success_rate).then(ib.cmp(ia)))
        .map(|(i, _)| i)
        .expect("non-empty");
    rows[best].best = true;
    Ok(rows)
}

/// Sweep as CSV with a header row.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("max_swap_len,swaps,moves,success_rate,t_exec_s,best\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{:?},{:?},{}\n",
            r.max_swap_len,
            r.swaps,
            r.moves,
            r.success_rate,
            r.t_exec_s,
            if r.best { 1 } else { 0 }
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{generate, BenchmarkSpec, Family};
    use crate::oracle::replay_check;

    fn qft(n: usize) -> Circuit {
        compile_source(&generate(&BenchmarkSpec::new(Family::Qft, n, 0)).unwrap()).unwrap()
    }

    #[test]
    fn compiled_qft_replays() {
        // at the default epsilon this many moves drive every later gate to 0
        let mut d = DeviceSpec::new(12, 4);
        d.noise.epsilon = 1e-4;
        let c = compile(&qft(10), &d).unwrap();
        let v = replay_check(&c.logical, &c.routed, &c.schedule);
        assert!(v.passed(), "{v}");
        assert!(c.report.success_rate > 0.0 && c.report.success_rate < 1.0);
    }

    #[test]
    fn capacity_is_checked_first() {
        let e = compile(&qft(10), &DeviceSpec::new(8, 4)).unwrap_err();
        assert_eq!(
            e,
            Error::Capacity {
                qubits: 10,
                ions: 8
            }
        );
    }

    #[test]
    fn sweep_marks_one_best() {
        let rows = sweep(&qft(10), &DeviceSpec::new(10, 6), 2..=5).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows.iter().filter(|r| r.best).count(), 1);
        let csv = sweep_csv(&rows);
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn all_tied_sweep_marks_smallest() {
        // nearest-neighbour circuit: nothing to route, every row identical
        let c = Circuit::new(6, (0..5).map(|i| crate::Gate::xx(i, i + 1, 0.2)).collect()).unwrap();
        let rows = sweep(&c, &DeviceSpec::new(6, 5), 2..=4).unwrap();
        assert!(rows[0].best);
        assert!(rows
            .windows(2)
            .all(|w| w[0].success_rate == w[1].success_rate));
    }

    #[test]
    fn sweep_range_is_validated() {
        assert!(sweep(&qft(6), &DeviceSpec::new(8, 4), 2..=4).is_err());
        assert!(sweep(&qft(6), &DeviceSpec::new(8, 4), RangeInclusive::new(2, 1)).is_err());
    }
}
