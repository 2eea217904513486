use num_complex::Complex64 as C;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::frontend::{ParsedProgram, SourceGate};
use crate::router::RoutedCircuit;

pub const MAX_QUBITS: usize = 5;

/// Dense square matrix, row-major. Basis index bit `q` is wire `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<C>,
}

impl Matrix {
    fn identity(dim: usize) -> Self {
        let mut data = vec![C::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = C::new(1.0, 0.0);
        }
        Matrix { dim, data }
    }

    pub fn at(&self, row: usize, col: usize) -> C {
        self.data[row * self.dim + col]
    }

    /// Largest entry-wise deviation of `other` from `self` after removing
    /// the best single global phase.
    pub fn phase_distance(&self, other: &Matrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        let (pivot, _) = self
            .data
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .expect("non-empty");
        if other.data[pivot].norm() < 1e-12 {
            return f64::INFINITY;
        }
        let phase = other.data[pivot] / self.data[pivot];
        let phase = phase / phase.norm();
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a * phase - b).norm())
            .fold(0.0, f64::max)
    }
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Gate matrices written out from their definitions; 2×2 for one wire,
/// 4×4 for two with the first operand as the low bit.
fn local_matrix(g: &Gate) -> Vec<C> {
    let t = g.angle().unwrap_or(0.0);
    let (co, si) = ((t / 2.0).cos(), (t / 2.0).sin());
    match g.kind() {
        GateKind::Rx => vec![c(co, 0.0), c(0.0, -si), c(0.0, -si), c(co, 0.0)],
        GateKind::Ry => vec![c(co, 0.0), c(-si, 0.0), c(si, 0.0), c(co, 0.0)],
        GateKind::Rz => vec![c(co, -si), c(0.0, 0.0), c(0.0, 0.0), c(co, si)],
        GateKind::Xx => {
            // exp(-i t X⊗X): couples |00>↔|11> and |01>↔|10>
            let (a, b) = (c(t.cos(), 0.0), c(0.0, -t.sin()));
            let z = c(0.0, 0.0);
            vec![
                a, z, z, b, //
                z, a, b, z, //
                z, b, a, z, //
                b, z, z, a,
            ]
        }
        GateKind::Swap => {
            let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
            vec![
                o, z, z, z, //
                z, z, o, z, //
                z, o, z, z, //
                z, z, z, o,
            ]
        }
        GateKind::Barrier => Vec::new(),
    }
}

/// Left-multiplies `u` by gate `g` acting on its wires.
fn apply(u: &mut Matrix, g: &Gate) {
    if g.kind() == GateKind::Barrier {
        return;
    }
    apply_local(u, &local_matrix(g), g.qubits());
}

fn apply_local(u: &mut Matrix, m: &[C], wires: &[usize]) {
    let k = wires.len();
    let local = 1 << k;
    let dim = u.dim;
    let mask: usize = wires.iter().map(|&w| 1 << w).sum();
    for col in 0..dim {
        for base in (0..dim).filter(|i| i & mask == 0) {
            let idx = |s: usize| {
                wires
                    .iter()
                    .enumerate()
                    .fold(base, |acc, (bit, &w)| acc | (((s >> bit) & 1) << w))
            };
            let old: Vec<C> = (0..local).map(|s| u.at(idx(s), col)).collect();
            for r in 0..local {
                let v = (0..local).map(|s| m[r * local + s] * old[s]).sum();
                u.data[idx(r) * dim + col] = v;
            }
        }
    }
}

/// Matrices of the source-level gates, straight from their textbook
/// definitions rather than through the native decomposition.
fn source_matrix(g: &SourceGate) -> (Vec<C>, Vec<usize>) {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let native = |g: Gate| (local_matrix(&g), g.qubits().to_vec());
    match *g {
        SourceGate::H(q) => (vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)], vec![q]),
        SourceGate::X(q) => (vec![z, o, o, z], vec![q]),
        SourceGate::Y(q) => (vec![z, -i, i, z], vec![q]),
        SourceGate::Z(q) => (vec![o, z, z, -o], vec![q]),
        SourceGate::Rx(t, q) => native(Gate::rx(q, t)),
        SourceGate::Ry(t, q) => native(Gate::ry(q, t)),
        SourceGate::Rz(t, q) => native(Gate::rz(q, t)),
        SourceGate::Xx(t, a, b) => native(Gate::xx(a, b, t)),
        SourceGate::Swap(a, b) => native(Gate::swap(a, b)),
        // first listed wire is the low bit: control = bit 0
        SourceGate::Cx(ctl, t) => (
            vec![
                o, z, z, z, //
                z, z, z, o, //
                z, z, o, z, //
                z, o, z, z,
            ],
            vec![ctl, t],
        ),
        SourceGate::Cz(a, b) => (
            vec![
                o, z, z, z, //
                z, o, z, z, //
                z, z, o, z, //
                z, z, z, -o,
            ],
            vec![a, b],
        ),
        SourceGate::Barrier => (Vec::new(), Vec::new()),
    }
}

/// Unitary of a parsed program before lowering to native gates.
pub fn source_unitary(program: &ParsedProgram) -> Result<Matrix> {
    check_size(program.qubit_count)?;
    let mut u = Matrix::identity(1 << program.qubit_count);
    for g in &program.gates {
        let (m, wires) = source_matrix(g);
        if !wires.is_empty() {
            apply_local(&mut u, &m, &wires);
        }
    }
    Ok(u)
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        return Err(Error::OracleOverflow(format!(
            "{n} qubits, dense comparison stops at {MAX_QUBITS}"
        )));
    }
    Ok(())
}

pub fn circuit_unitary(circuit: &Circuit) -> Result<Matrix> {
    check_size(circuit.qubit_count())?;
    let mut u = Matrix::identity(1 << circuit.qubit_count());
    for g in circuit.gates() {
        apply(&mut u, g);
    }
    Ok(u)
}

/// True when `U_b = P · U_a` up to global phase, where `P` carries wire `w`
/// of `a` to wire `perm[w]`. An empty `perm` means identity.
pub fn unitary_equal(a: &Circuit, b: &Circuit, perm: &[usize], tol: f64) -> Result<bool> {
    let n = a.qubit_count();
    if b.qubit_count() != n {
        return Err(Error::Contract(format!(
            "comparing {n}-qubit and {}-qubit circuits",
            b.qubit_count()
        )));
    }
    check_size(n)?;
    let perm: Vec<usize> = if perm.is_empty() {
        (0..n).collect()
    } else {
        perm.to_vec()
    };
    let mut seen = vec![false; n];
    if perm.len() != n
        || perm
            .iter()
            .any(|&w| w >= n || std::mem::replace(&mut seen[w], true))
    {
        return Err(Error::Contract(format!(
            "{perm:?} is not a permutation of {n} wires"
        )));
    }

    let ua = circuit_unitary(a)?;
    let ub = circuit_unitary(b)?;
    let dim = ua.dim;
    let mut pa = Matrix::identity(dim);
    for x in 0..dim {
        let y: usize = (0..n).map(|w| ((x >> w) & 1) << perm[w]).sum();
        for col in 0..dim {
            pa.data[y * dim + col] = ua.at(x, col);
        }
    }
    Ok(pa.phase_distance(&ub) <= tol)
}

/// Compares a routed circuit (SWAPs included) against the logical circuit
/// it came from: the logical circuit is relabelled onto the initial ions,
/// and outputs are permuted by the SWAPs found in the routed gate list.
pub fn routed_unitary_equal(original: &Circuit, routed: &RoutedCircuit, tol: f64) -> Result<bool> {
    let ions = routed.circuit.qubit_count();
    check_size(ions)?;
    let place = routed.initial_mapping.placement();
    let relabelled: Vec<Gate> = original
        .gates()
        .iter()
        .map(|g| g.remap(|q| place[q]))
        .collect();
    let a = Circuit::new(ions, relabelled)?;

    // holder[ion] = ion whose initial content now sits here
    let mut holder: Vec<usize> = (0..ions).collect();
    for g in routed.circuit.gates() {
        if g.kind() == GateKind::Swap {
            holder.swap(g.qubits()[0], g.qubits()[1]);
        }
    }
    let mut perm = vec![0; ions];
    for (now, &from) in holder.iter().enumerate() {
        perm[from] = now;
    }
    unitary_equal(&a, &routed.circuit, &perm, tol)
}
