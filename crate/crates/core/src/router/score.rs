use crate::circuit::Gate;
use crate::mapping::{gate_distance, IonIndex, Mapping};
use crate::par;

use super::RouterConfig;

/// A two-qubit gate still waiting to execute, with its ASAP depth level in
/// the logical circuit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PendingGate {
    pub gate: Gate,
    pub depth: usize,
}

/// One inserted routing swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapChoice {
    pub ions: (IonIndex, IonIndex),
    /// Shortened two pending routes travelling in opposite directions.
    pub opposing: bool,
}

/// Lookahead cost of a candidate mapping: Σ distance·α^|Δdepth| over the
/// pending two-qubit gates.
pub fn score_mapping(
    m: &Mapping,
    remaining: &[PendingGate],
    alpha: f64,
    current_depth: usize,
) -> f64 {
    remaining
        .iter()
        .filter(|p| p.gate.is_two_qubit())
        .map(|p| {
            let d = gate_distance(&p.gate, m).expect("two-qubit gate") as f64;
            let delta = p.depth.abs_diff(current_depth);
            d * alpha.powi(delta.min(i32::MAX as usize) as i32)
        })
        .sum()
}

/// Rounds to 12 significant digits so that scores computed along
/// different summation paths compare equal.
pub(crate) fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = 10f64.powi(11 - x.abs().log10().floor() as i32);
    (x * mag).round() / mag
}

/// Swap candidates for an unexecutable gate: every ion strictly between the
/// two operands, paired with whichever operand it is closer than
/// `max_swap_len` to. Returned as ordered `(low, high)` ion pairs.
pub fn swap_candidates(g: &Gate, m: &Mapping, max_swap_len: usize) -> Vec<(usize, usize)> {
    let q = g.qubits();
    let (a, b) = (m.ion_of(q[0]), m.ion_of(q[1]));
    let mut out = Vec::new();
    for i in a.min(b) + 1..a.max(b) {
        for end in [a, b] {
            if i.abs_diff(end) < max_swap_len {
                out.push((i.min(end), i.max(end)));
            }
        }
    }
    out
}

/// True when swapping ions `x` and `y` strictly shortens one pending gate
/// with an operand on `x` and a different pending gate with an operand on `y`.
pub fn is_opposing(m: &Mapping, x: usize, y: usize, pending: &[PendingGate]) -> bool {
    let after = m.swapped(IonIndex(x), IonIndex(y));
    let shortened = |ion: usize| -> Vec<usize> {
        pending
            .iter()
            .enumerate()
            .filter(|(_, p)| p.gate.is_two_qubit())
            .filter(|(_, p)| p.gate.qubits().iter().any(|&q| m.ion_of(q) == ion))
            .filter(|(_, p)| {
                gate_distance(&p.gate, &after).unwrap() < gate_distance(&p.gate, m).unwrap()
            })
            .map(|(i, _)| i)
            .collect()
    };
    let on_x = shortened(x);
    let on_y = shortened(y);
    on_x.iter().any(|i| on_y.iter().any(|j| i != j))
}

/// Inserts swaps until `g` fits under the head (distance ≤ L − 1). Each
/// step takes the candidate with the lowest lookahead score; ties go to the
/// smallest leftmost ion, then the shorter swap.
pub fn resolve_gate(
    g: &PendingGate,
    m: &Mapping,
    cfg: &RouterConfig,
    remaining: &[PendingGate],
) -> (Vec<SwapChoice>, Mapping) {
    let mut m = m.clone();
    let mut swaps = Vec::new();
    while gate_distance(&g.gate, &m).expect("two-qubit gate") >= cfg.head_size {
        let cands = swap_candidates(&g.gate, &m, cfg.max_swap_len);
        let scored = par::map(&cands, |&(lo, hi)| {
            let trial = m.swapped(IonIndex(lo), IonIndex(hi));
            round_sig(score_mapping(&trial, remaining, cfg.alpha, g.depth))
        });
        let (lo, hi) = cands
            .iter()
            .zip(&scored)
            .min_by(|(ca, sa), (cb, sb)| {
                sa.total_cmp(sb)
                    .then(ca.0.cmp(&cb.0))
                    .then((ca.1 - ca.0).cmp(&(cb.1 - cb.0)))
            })
            .map(|(&c, _)| c)
            .expect("an unexecutable gate always has a candidate when max_swap_len >= 2");
        let opposing = is_opposing(&m, lo, hi, remaining);
        m.swap_ions(IonIndex(lo), IonIndex(hi));
        swaps.push(SwapChoice {
            ions: (IonIndex(lo), IonIndex(hi)),
            opposing,
        });
    }
    (swaps, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pending(a: usize, b: usize, depth: usize) -> PendingGate {
        PendingGate {
            gate: Gate::xx(a, b, 0.3),
            depth,
        }
    }

    #[test]
    fn empty_lookahead_scores_zero() {
        let m = Mapping::identity(4, 4).unwrap();
        assert_eq!(score_mapping(&m, &[], 0.5, 3), 0.0);
    }

    #[test]
    fn current_gate_counts_fully() {
        let m = Mapping::identity(8, 8).unwrap();
        assert_eq!(score_mapping(&m, &[pending(0, 7, 4)], 0.5, 4), 7.0);
    }

    #[test]
    fn discounted_by_depth_gap() {
        let m = Mapping::identity(8, 8).unwrap();
        let r = [pending(0, 4, 2), pending(1, 7, 3)];
        assert_eq!(score_mapping(&m, &r, 0.5, 2), 4.0 + 3.0);
    }

    #[test]
    fn rounding_merges_summation_noise() {
        assert_eq!(round_sig(0.1 + 0.2), round_sig(0.3));
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(round_sig(123456.7890123456), 123456.789012);
    }

    #[test]
    fn candidates_are_strictly_between() {
        let m = Mapping::identity(10, 10).unwrap();
        let c = swap_candidates(&Gate::xx(2, 7, 0.1), &m, 3);
        // ions 3,4 pair with 2; ions 5,6 pair with 7
        assert_eq!(c, vec![(2, 3), (2, 4), (5, 7), (6, 7)]);
    }

    #[test]
    fn distance_twenty_needs_one_swap_at_head_sixteen() {
        let cfg = RouterConfig {
            head_size: 16,
            max_swap_len: 15,
            alpha: 0.5,
            lookahead_window: 20,
        };
        let m = Mapping::identity(22, 22).unwrap();
        let g = pending(0, 20, 1);
        let (swaps, after) = resolve_gate(&g, &m, &cfg, &[g]);
        assert_eq!(swaps.len(), 1);
        assert_eq!(swaps[0].ions, (IonIndex(0), IonIndex(14)));
        assert!(gate_distance(&g.gate, &after).unwrap() <= 15);
    }

    #[test]
    fn shared_swap_counts_as_opposing() {
        // q3 on ion 3 routes left toward q0, q1 on ion 1 routes right toward
        // q5; trading ions 1 and 3 shortens both
        let m = Mapping::identity(6, 6).unwrap();
        let a = pending(3, 0, 1);
        let b = pending(1, 5, 1);
        assert!(is_opposing(&m, 1, 3, &[a, b]));
        assert!(!is_opposing(&m, 1, 3, &[b]));
    }

    #[test]
    fn crossing_routes_pick_the_shared_swap() {
        let cfg = RouterConfig {
            head_size: 3,
            max_swap_len: 3,
            alpha: 0.5,
            lookahead_window: 20,
        };
        let m = Mapping::identity(7, 7).unwrap();
        let a = pending(1, 4, 1);
        let b = pending(0, 3, 1);
        let (swaps, after) = resolve_gate(&a, &m, &cfg, &[a, b]);
        assert_eq!(
            swaps,
            vec![SwapChoice {
                ions: (IonIndex(1), IonIndex(3)),
                opposing: true
            }]
        );
        assert_eq!(gate_distance(&a.gate, &after).unwrap(), 1);
        assert_eq!(gate_distance(&b.gate, &after).unwrap(), 1);
    }
}
