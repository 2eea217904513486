use std::fmt::Write;

use crate::circuit::{Circuit, GateKind};

/// Shortest decimal that parses back to exactly the same `f64`.
pub fn format_angle(a: f64) -> String {
    format!("{a:?}")
}

/// Writes a native circuit as `.lqasm` using `q` as the register name.
/// Every line re-parses to the same native gate.
pub fn emit_native(circuit: &Circuit, header: &[String]) -> String {
    let mut s = String::new();
    for h in header {
        let _ = writeln!(s, "// {h}");
    }
    let _ = writeln!(s, "qreg q[{}];", circuit.qubit_count());
    for g in circuit.gates() {
        let q = g.qubits();
        let _ = match g.kind() {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => writeln!(
                s,
                "{}({}) q[{}];",
                g.kind().mnemonic().to_ascii_lowercase(),
                format_angle(g.angle().unwrap_or_default()),
                q[0]
            ),
            GateKind::Xx => writeln!(
                s,
                "xx({}) q[{}],q[{}];",
                format_angle(g.angle().unwrap_or_default()),
                q[0],
                q[1]
            ),
            GateKind::Swap => writeln!(s, "swap q[{}],q[{}];", q[0], q[1]),
            GateKind::Barrier => writeln!(s, "barrier;"),
        };
    }
    s
}
