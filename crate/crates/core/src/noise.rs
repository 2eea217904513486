//! Gate timing, shuttling-heating fidelity, and whole-program pricing.

use serde::{Deserialize, Serialize};

use crate::circuit::GateKind;
use crate::error::{Error, Result};
use crate::router::RoutedCircuit;
use crate::scheduler::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseParams {
    /// Background heating rate Γ, fidelity loss per μs of two-qubit gate time.
    pub gamma_per_us: f64,
    /// Loop-closure error ε of one two-qubit gate.
    pub epsilon: f64,
    /// Motional quanta added per shuttle of a reference chain.
    pub k0_quanta: f64,
    /// Chain length (ions) at which `k0_quanta` applies.
    pub n_ref_ions: f64,
    pub single_qubit_error: f64,
    /// Two-qubit interactions charged per SWAP.
    pub swap_cost_factor: u32,
    pub shuttle_rate_um_per_us: f64,
    pub ion_spacing_um: f64,
    pub single_qubit_time_us: f64,
}

impl Default for NoiseParams {
    fn default() -> Self {
        NoiseParams {
            gamma_per_us: 1e-6,
            epsilon: 1e-2,
            k0_quanta: 2.0,
            n_ref_ions: 8.0,
            single_qubit_error: 1e-3,
            swap_cost_factor: 3,
            shuttle_rate_um_per_us: 1.0,
            ion_spacing_um: 5.0,
            single_qubit_time_us: 10.0,
        }
    }
}

impl NoiseParams {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("gamma", self.gamma_per_us),
            ("epsilon", self.epsilon),
            ("k0", self.k0_quanta),
            ("single_qubit_error", self.single_qubit_error),
            ("ion_spacing", self.ion_spacing_um),
            ("single_qubit_time", self.single_qubit_time_us),
        ];
        for (name, v) in named {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Config(format!(
                    "noise.{name} = {v} must be finite and >= 0"
                )));
            }
        }
        if self.single_qubit_error >= 1.0 {
            return Err(Error::Config("noise.single_qubit_error must be < 1".into()));
        }
        if !(self.shuttle_rate_um_per_us.is_finite() && self.shuttle_rate_um_per_us > 0.0) {
            return Err(Error::Config("noise.shuttle_rate must be > 0".into()));
        }
        if !(self.n_ref_ions.is_finite() && self.n_ref_ions > 0.0) {
            return Err(Error::Config("noise.n_ref must be > 0".into()));
        }
        Ok(())
    }

    /// Quanta added per shuttle of an `n`-ion chain: `k0·sqrt(n / n_ref)`.
    pub fn heating_per_move(&self, n: usize) -> f64 {
        self.k0_quanta * (n as f64 / self.n_ref_ions).sqrt()
    }
}

fn am_gate_time(d: usize) -> f64 {
    38.0 * d as f64 + 10.0
}

/// Amplitude-modulated two-qubit gate time in μs for operands `d` slots
/// apart: `38·d + 10`.
pub fn gate_time(d: usize) -> Result<f64> {
    if d < 1 {
        return Err(Error::Contract(
            "two-qubit gate distance must be >= 1".into(),
        ));
    }
    Ok(am_gate_time(d))
}

/// Fidelity of a two-qubit gate after `moves` shuttles of an `n`-ion chain:
/// `1 − Γτ + (1 − (1+ε)^(2mk+1))`, clamped to [0, 1].
pub fn two_qubit_fidelity(d: usize, moves: usize, n: usize, p: &NoiseParams) -> f64 {
    let k = p.heating_per_move(n);
    two_qubit_fidelity_with_k(d, moves, k, p)
}

/// As [`two_qubit_fidelity`] with the per-move heating `k` given directly.
pub fn two_qubit_fidelity_with_k(d: usize, moves: usize, k: f64, p: &NoiseParams) -> f64 {
    let tau = am_gate_time(d);
    let exponent = 2.0 * moves as f64 * k + 1.0;
    let f = 1.0 - p.gamma_per_us * tau + (1.0 - (1.0 + p.epsilon).powf(exponent));
    f.clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    /// Index into the routed circuit.
    pub gate: usize,
    pub moves: usize,
    pub tau_us: f64,
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub success_rate: f64,
    pub move_count: usize,
    pub move_distance_slots: usize,
    pub move_distance_um: f64,
    pub shuttle_time_us: f64,
    pub gate_time_us: f64,
    pub t_exec_s: f64,
    pub per_gate_log: Vec<GateRecord>,
}

/// Prices `schedule` for the tape's own chain length.
pub fn evaluate(
    schedule: &Schedule,
    routed: &RoutedCircuit,
    p: &NoiseParams,
) -> Result<FidelityReport> {
    evaluate_with_chain_len(schedule, routed, p, schedule.tape_ions)
}

/// Prices `schedule` with heating scaled for a chain of `chain_len` ions.
pub fn evaluate_with_chain_len(
    schedule: &Schedule,
    routed: &RoutedCircuit,
    p: &NoiseParams,
    chain_len: usize,
) -> Result<FidelityReport> {
    let circuit = &routed.circuit;
    let mut step_of = vec![usize::MAX; circuit.len()];
    for (si, step) in schedule.steps.iter().enumerate() {
        for &g in &step.gates {
            if g >= circuit.len() || step_of[g] != usize::MAX {
                return Err(Error::Contract(format!(
                    "schedule lists gate {g} twice or out of range"
                )));
            }
            step_of[g] = si;
        }
    }
    if let Some(missing) = step_of.iter().position(|&s| s == usize::MAX) {
        return Err(Error::Contract(format!("schedule omits gate {missing}")));
    }

    let k = p.heating_per_move(chain_len);
    let moves_before = schedule.moves_before_steps();
    let mut log = Vec::with_capacity(circuit.len());
    let mut success = 1.0;
    let mut gate_time_us = 0.0;
    let mut level = vec![0usize; circuit.len()];

    for (si, step) in schedule.steps.iter().enumerate() {
        let m = moves_before[si];
        let mut layer_max: Vec<f64> = Vec::new();
        for &gi in &step.gates {
            let g = circuit.gate(gi);
            let (tau, fidelity) = match g.kind() {
                GateKind::Rx | GateKind::Ry | GateKind::Rz => {
                    (p.single_qubit_time_us, 1.0 - p.single_qubit_error)
                }
                GateKind::Xx => {
                    let d = g.span().expect("two-qubit");
                    (gate_time(d)?, two_qubit_fidelity_with_k(d, m, k, p))
                }
                GateKind::Swap => {
                    let d = g.span().expect("two-qubit");
                    let f = two_qubit_fidelity_with_k(d, m, k, p);
                    (
                        p.swap_cost_factor as f64 * gate_time(d)?,
                        f.powi(p.swap_cost_factor as i32),
                    )
                }
                GateKind::Barrier => (0.0, 1.0),
            };
            // dependency layers within the step; earlier steps are finished
            let lv = 1 + circuit
                .predecessors(gi)
                .iter()
                .filter(|&&j| step_of[j] == si)
                .map(|&j| level[j])
                .max()
                .unwrap_or(0);
            level[gi] = lv;
            if layer_max.len() < lv {
                layer_max.resize(lv, 0.0);
            }
            layer_max[lv - 1] = layer_max[lv - 1].max(tau);

            success *= fidelity;
            log.push(GateRecord {
                gate: gi,
                moves: m,
                tau_us: tau,
                fidelity,
            });
        }
        gate_time_us += layer_max.iter().sum::<f64>();
    }

    let move_distance_um = schedule.move_distance as f64 * p.ion_spacing_um;
    let shuttle_time_us = move_distance_um / p.shuttle_rate_um_per_us;
    Ok(FidelityReport {
        success_rate: success,
        move_count: schedule.move_count,
        move_distance_slots: schedule.move_distance,
        move_distance_um,
        shuttle_time_us,
        gate_time_us,
        t_exec_s: (shuttle_time_us + gate_time_us) * 1e-6,
        per_gate_log: log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate};
    use crate::mapping::Mapping;
    use crate::scheduler::schedule;

    fn ideal() -> NoiseParams {
        NoiseParams {
            gamma_per_us: 0.0,
            epsilon: 0.0,
            ..NoiseParams::default()
        }
    }

    #[test]
    fn am_gate_times() {
        assert_eq!(gate_time(1).unwrap(), 48.0);
        assert_eq!(gate_time(5).unwrap(), 200.0);
        assert_eq!(gate_time(15).unwrap(), 580.0);
        assert!(gate_time(0).is_err());
    }

    #[test]
    fn closed_loop_without_background_is_perfect() {
        for m in [0, 1, 7, 100] {
            assert_eq!(two_qubit_fidelity(3, m, 64, &ideal()), 1.0);
        }
    }

    #[test]
    fn eps_only_point_values() {
        let p = NoiseParams {
            epsilon: 0.01,
            ..ideal()
        };
        assert!((two_qubit_fidelity_with_k(1, 0, 5.0, &p) - 0.99).abs() < 1e-12);
        // 1 - (1.01^3 - 1) = 1 - 0.030301
        assert!((two_qubit_fidelity_with_k(1, 1, 1.0, &p) - 0.969699).abs() < 1e-12);
    }

    #[test]
    fn heating_scales_with_root_n() {
        let p = NoiseParams::default();
        assert!((p.heating_per_move(8) - 2.0).abs() < 1e-15);
        assert!((p.heating_per_move(32) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn huge_error_clamps_to_zero() {
        let p = NoiseParams {
            epsilon: 0.5,
            ..ideal()
        };
        assert_eq!(two_qubit_fidelity(1, 50, 64, &p), 0.0);
    }

    fn routed_of(c: Circuit, ions: usize) -> RoutedCircuit {
        let m = Mapping::identity(c.qubit_count(), ions).unwrap();
        RoutedCircuit {
            circuit: Circuit::new(ions, c.into_gates()).unwrap(),
            initial_mapping: m.clone(),
            final_mapping: m,
            swap_count: 0,
            opposing_swap_count: 0,
        }
    }

    #[test]
    fn empty_program_is_free() {
        let r = routed_of(Circuit::new(2, vec![]).unwrap(), 4);
        let s = schedule(&r, 4, 2).unwrap();
        let rep = evaluate(&s, &r, &NoiseParams::default()).unwrap();
        assert_eq!(rep.success_rate, 1.0);
        assert_eq!(rep.t_exec_s, 0.0);
    }

    #[test]
    fn single_adjacent_gate() {
        let r = routed_of(Circuit::new(2, vec![Gate::xx(0, 1, 0.7)]).unwrap(), 2);
        let s = schedule(&r, 2, 2).unwrap();
        let p = NoiseParams {
            gamma_per_us: 1e-6,
            epsilon: 0.0,
            ..NoiseParams::default()
        };
        let rep = evaluate(&s, &r, &p).unwrap();
        assert!((rep.success_rate - 0.999952).abs() < 1e-12);
        assert_eq!(rep.gate_time_us, 48.0);
        assert!((rep.t_exec_s - 48e-6).abs() < 1e-18);
    }

    #[test]
    fn layers_take_the_slowest_gate() {
        // XX(0,2) and RX(1) are parallel, RX(0) follows the XX
        let r = routed_of(
            Circuit::new(
                3,
                vec![Gate::xx(0, 2, 0.1), Gate::rx(1, 0.1), Gate::rx(0, 0.1)],
            )
            .unwrap(),
            3,
        );
        let s = schedule(&r, 3, 3).unwrap();
        let rep = evaluate(&s, &r, &NoiseParams::default()).unwrap();
        assert_eq!(rep.gate_time_us, 86.0 + 10.0);
    }

    #[test]
    fn swap_charged_three_times() {
        let r = routed_of(Circuit::new(2, vec![Gate::swap(0, 1)]).unwrap(), 2);
        let s = schedule(&r, 2, 2).unwrap();
        let p = NoiseParams {
            epsilon: 0.01,
            ..ideal()
        };
        let rep = evaluate(&s, &r, &p).unwrap();
        assert!((rep.success_rate - 0.99f64.powi(3)).abs() < 1e-12);
        assert_eq!(rep.gate_time_us, 3.0 * 48.0);
    }
}
