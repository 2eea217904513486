//! Brute-force references for checking the compiler. Nothing here reuses
//! the DAG, window test, or gate semantics of the modules being checked.

mod moves;
mod replay;
mod swaps;
mod unitary;

pub use moves::{optimal_moves, OracleBudget};
pub use replay::{replay_check, ReplayVerdict, Violation};
pub use swaps::min_swaps_single_gate;
pub use unitary::{
    circuit_unitary, routed_unitary_equal, source_unitary, unitary_equal, Matrix, MAX_QUBITS,
};
