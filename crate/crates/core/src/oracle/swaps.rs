use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Fewest swaps (each spanning at most `max_swap_len − 1` slots, between
/// any two ions) that bring ions `a` and `b` within `head_size − 1` of each
/// other on an `n`-ion chain.
///
/// Only the two operand positions matter, so the search runs over pairs of
/// positions rather than whole permutations.
pub fn min_swaps_single_gate(
    n: usize,
    head_size: usize,
    max_swap_len: usize,
    a: usize,
    b: usize,
) -> Result<usize> {
    if n > 64 {
        return Err(Error::OracleOverflow(format!("{n} ions")));
    }
    if a >= n || b >= n || a == b || max_swap_len < 2 || head_size < 2 {
        return Err(Error::Contract(format!(
            "bad instance: n={n} L={head_size} msl={max_swap_len} a={a} b={b}"
        )));
    }
    let reach = max_swap_len - 1;
    let mut seen = vec![vec![false; n]; n];
    let mut queue = VecDeque::from([(a, b, 0usize)]);
    seen[a][b] = true;
    while let Some((x, y, d)) = queue.pop_front() {
        if x.abs_diff(y) < head_size {
            return Ok(d);
        }
        for i in 0..n {
            for j in i + 1..(i + reach + 1).min(n) {
                let moved = |p: usize| {
                    if p == i {
                        j
                    } else if p == j {
                        i
                    } else {
                        p
                    }
                };
                let (nx, ny) = (moved(x), moved(y));
                if !seen[nx][ny] {
                    seen[nx][ny] = true;
                    queue.push_back((nx, ny, d + 1));
                }
            }
        }
    }
    unreachable!("adjacent swaps alone connect every configuration")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn already_close() {
        assert_eq!(min_swaps_single_gate(10, 4, 3, 2, 5).unwrap(), 0);
    }

    #[test]
    fn distance_twenty_at_head_sixteen() {
        assert_eq!(min_swaps_single_gate(22, 16, 15, 0, 20).unwrap(), 1);
    }

    #[test]
    fn matches_closed_form_small() {
        for n in 3..=12usize {
            for l in 2..n {
                for msl in 2..=(l - 1).max(2) {
                    for d in l..n {
                        let want = (d - (l - 1)).div_ceil(msl - 1);
                        assert_eq!(min_swaps_single_gate(n, l, msl, 0, d).unwrap(), want);
                    }
                }
            }
        }
    }
}
