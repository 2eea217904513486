use std::fmt;

use crate::circuit::{Circuit, GateKind};
use crate::router::RoutedCircuit;
use crate::scheduler::Schedule;

/// One way a schedule can fail to implement the original circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// A routed gate was listed in no step, or in several.
    Coverage {
        gate: usize,
        times: usize,
    },
    /// `later` ran before `earlier` although they share a wire.
    Order {
        earlier: usize,
        later: usize,
    },
    OutsideWindow {
        gate: usize,
        position: usize,
    },
    /// A two-qubit gate, or the logical pair it should act on, is at
    /// least a head width apart.
    TooLong {
        gate: usize,
        distance: usize,
    },
    /// The routed gate does not act on the logical qubits (or with the
    /// kind/angle) of the original gate it stands for.
    WrongOperands {
        gate: usize,
        original: usize,
        expected: Vec<usize>,
        found: Vec<Option<usize>>,
    },
    GateCount {
        original: usize,
        routed: usize,
    },
    FinalMapping {
        tracked: Vec<usize>,
        reported: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Coverage { gate, times } => {
                write!(f, "routed gate {gate} scheduled {times} times")
            }
            Violation::Order { earlier, later } => {
                write!(f, "gate {later} ran before its dependency {earlier}")
            }
            Violation::OutsideWindow { gate, position } => {
                write!(f, "gate {gate} lies outside the head at {position}")
            }
            Violation::TooLong { gate, distance } => {
                write!(f, "gate {gate} spans {distance} slots, wider than the head")
            }
            Violation::WrongOperands {
                gate,
                original,
                expected,
                found,
            } => write!(
                f,
                "routed gate {gate} should be original gate {original} on {expected:?}, acts on {found:?}"
            ),
            Violation::GateCount { original, routed } => write!(
                f,
                "original has {original} gates, routed has {routed} non-swap gates"
            ),
            Violation::FinalMapping { tracked, reported } => write!(
                f,
                "replayed final placement {tracked:?} differs from reported {reported:?}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ReplayVerdict {
    pub violations: Vec<Violation>,
}

impl ReplayVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ReplayVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("pass");
        }
        write!(f, "fail:")?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

/// Executes `schedule` step by step, tracking which logical qubit sits on
/// each ion through every SWAP, and checks it against `original`.
pub fn replay_check(
    original: &Circuit,
    routed: &RoutedCircuit,
    schedule: &Schedule,
) -> ReplayVerdict {
    let mut out = Vec::new();
    let gates = routed.circuit.gates();
    let ions = routed.circuit.qubit_count();

    // routed gate -> original gate, by position among non-swap gates
    let mut source = vec![None; gates.len()];
    let mut k = 0;
    for (i, g) in gates.iter().enumerate() {
        if g.kind() != GateKind::Swap {
            source[i] = Some(k);
            k += 1;
        }
    }
    if k != original.len() {
        out.push(Violation::GateCount {
            original: original.len(),
            routed: k,
        });
    }

    let mut times = vec![0usize; gates.len()];
    for step in &schedule.steps {
        for &g in &step.gates {
            if g < times.len() {
                times[g] += 1;
            }
        }
    }
    for (gate, &t) in times.iter().enumerate() {
        if t != 1 {
            out.push(Violation::Coverage { gate, times: t });
        }
    }

    let mut on_ion: Vec<Option<usize>> = vec![None; ions];
    for (q, &ion) in routed.initial_mapping.placement().iter().enumerate() {
        on_ion[ion] = Some(q);
    }
    // last gate run on each ion; a barrier counts for all of them
    let mut last: Vec<Option<usize>> = vec![None; ions];
    let l = schedule.head_size;

    for step in &schedule.steps {
        let p = step.position.0;
        for &gi in &step.gates {
            let Some(g) = gates.get(gi) else { continue };
            let touched: Vec<usize> = if g.kind() == GateKind::Barrier {
                (0..ions).collect()
            } else {
                g.qubits().to_vec()
            };
            for &w in &touched {
                if let Some(prev) = last[w] {
                    if prev > gi {
                        out.push(Violation::Order {
                            earlier: gi,
                            later: prev,
                        });
                    }
                }
                last[w] = Some(gi);
            }
            if g.qubits().iter().any(|&w| w < p || w >= p + l) {
                out.push(Violation::OutsideWindow {
                    gate: gi,
                    position: p,
                });
            }
            if let [a, b] = g.qubits() {
                if a.abs_diff(*b) >= l {
                    out.push(Violation::TooLong {
                        gate: gi,
                        distance: a.abs_diff(*b),
                    });
                }
            }

            if g.kind() == GateKind::Swap {
                let (a, b) = (g.qubits()[0], g.qubits()[1]);
                on_ion.swap(a, b);
                continue;
            }
            let Some(oi) = source[gi] else { continue };
            let Some(o) = original.gates().get(oi) else {
                continue;
            };
            let found: Vec<Option<usize>> = g.qubits().iter().map(|&w| on_ion[w]).collect();
            let expected = o.qubits().to_vec();
            let same_op = o.kind() == g.kind() && o.angle() == g.angle();
            let same_wires = found
                .iter()
                .map(|x| x.unwrap_or(usize::MAX))
                .eq(expected.iter().copied());
            if !same_op || !same_wires {
                // where the intended operands actually are
                let at: Vec<Option<usize>> = expected
                    .iter()
                    .map(|&q| on_ion.iter().position(|&x| x == Some(q)))
                    .collect();
                if let [Some(a), Some(b)] = at[..] {
                    if a.abs_diff(b) >= l {
                        out.push(Violation::TooLong {
                            gate: gi,
                            distance: a.abs_diff(b),
                        });
                    }
                }
                out.push(Violation::WrongOperands {
                    gate: gi,
                    original: oi,
                    expected,
                    found,
                });
            }
        }
    }

    let mut tracked = vec![usize::MAX; routed.final_mapping.qubit_count()];
    for (ion, q) in on_ion.iter().enumerate() {
        if let Some(q) = *q {
            if q < tracked.len() {
                tracked[q] = ion;
            }
        }
    }
    let reported = routed.final_mapping.placement().to_vec();
    if tracked != reported {
        out.push(Violation::FinalMapping { tracked, reported });
    }

    ReplayVerdict { violations: out }
}
