//! `.lqasm` source handling: parsing, lowering to native gates, and
//! emitting native circuits back to text.

mod decompose;
mod emit;
mod parse;

pub use decompose::decompose;
pub use emit::{emit_native, format_angle};
pub use parse::{parse, ParsedProgram, SourceGate};

use crate::circuit::Circuit;
use crate::error::Result;

/// Parse and lower in one go.
pub fn compile_source(src: &str) -> Result<Circuit> {
    decompose(&parse(src)?)
}

/// Reads a program that is already native (as written by [`emit_native`]):
/// `rx`/`ry`/`rz`/`xx`/`swap`/`barrier` map one-to-one onto native gates.
pub fn parse_native(src: &str) -> Result<Circuit> {
    use crate::circuit::Gate;
    use crate::error::Error;

    let program = parse(src)?;
    let mut gates = Vec::with_capacity(program.gates.len());
    for g in program.gates {
        gates.push(match g {
            SourceGate::Rx(a, q) => Gate::rx(q, a),
            SourceGate::Ry(a, q) => Gate::ry(q, a),
            SourceGate::Rz(a, q) => Gate::rz(q, a),
            SourceGate::Xx(a, p, q) => Gate::xx(p, q, a),
            SourceGate::Swap(p, q) => Gate::swap(p, q),
            SourceGate::Barrier => Gate::barrier(),
            other => {
                return Err(Error::MalformedCircuit(format!(
                    "{other:?} is not a native gate"
                )))
            }
        });
    }
    Circuit::new(program.qubit_count, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn native_emit_reparses_exactly() {
        let c = Circuit::new(
            4,
            vec![
                Gate::rx(0, 0.1 + 0.2),
                Gate::xx(3, 1, -std::f64::consts::FRAC_PI_4),
                Gate::swap(2, 0),
                Gate::barrier(),
                Gate::rz(2, 1e-300),
            ],
        )
        .unwrap();
        let text = emit_native(&c, &["routed".to_string()]);
        assert!(text.starts_with("// routed\nqreg q[4];\n"));
        assert_eq!(parse_native(&text).unwrap(), c);
    }

    #[test]
    fn native_reader_rejects_macros() {
        assert!(parse_native("qreg q[2]; cx q[0],q[1];").is_err());
    }
}
