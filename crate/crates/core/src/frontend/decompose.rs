use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::parse::{ParsedProgram, SourceGate};
use crate::circuit::{Circuit, Gate};
use crate::error::Result;

/// CNOT as rotations around one Mølmer–Sørensen interaction.
fn cx(out: &mut Vec<Gate>, control: usize, target: usize) {
    out.extend([
        Gate::ry(control, FRAC_PI_2),
        Gate::xx(control, target, FRAC_PI_4),
        Gate::rx(control, -FRAC_PI_2),
        Gate::rx(target, -FRAC_PI_2),
        Gate::ry(control, -FRAC_PI_2),
    ]);
}

fn h(out: &mut Vec<Gate>, q: usize) {
    out.extend([Gate::ry(q, FRAC_PI_2), Gate::rx(q, PI)]);
}

/// Lowers parsed statements to the native set {RX, RY, RZ, XX, BARRIER}.
/// All identities hold up to global phase.
///
/// Source `swap` statements become three CNOTs so that every SWAP in a
/// native circuit is a routing swap.
pub fn decompose(program: &ParsedProgram) -> Result<Circuit> {
    let mut out = Vec::with_capacity(program.gates.len() * 3);
    for g in &program.gates {
        match *g {
            SourceGate::H(q) => h(&mut out, q),
            SourceGate::X(q) => out.push(Gate::rx(q, PI)),
            SourceGate::Y(q) => out.push(Gate::ry(q, PI)),
            SourceGate::Z(q) => out.push(Gate::rz(q, PI)),
            SourceGate::Rx(a, q) => out.push(Gate::rx(q, a)),
            SourceGate::Ry(a, q) => out.push(Gate::ry(q, a)),
            SourceGate::Rz(a, q) => out.push(Gate::rz(q, a)),
            SourceGate::Cx(c, t) => cx(&mut out, c, t),
            SourceGate::Cz(a, b) => {
                h(&mut out, b);
                cx(&mut out, a, b);
                h(&mut out, b);
            }
            SourceGate::Xx(a, p, q) => out.push(Gate::xx(p, q, a)),
            SourceGate::Swap(a, b) => {
                cx(&mut out, a, b);
                cx(&mut out, b, a);
                cx(&mut out, a, b);
            }
            SourceGate::Barrier => out.push(Gate::barrier()),
        }
    }
    Circuit::new(program.qubit_count, out)
}
