//! Seeded benchmark generators emitting `.lqasm` source text.
//!
//! | family    | qubits            | two-qubit pattern                         |
//! |-----------|-------------------|-------------------------------------------|
//! | ADDER     | even, ≥ 4         | ripple-carry, neighbours within 2 slots   |
//! | BV        | ≥ 2               | every data qubit → one shared target      |
//! | QAOA      | ≥ 3               | ring (or random graph) MaxCut, p layers   |
//! | RCS       | ≥ 4               | grid couplers, 4 alternating patterns     |
//! | QFT       | ≥ 2               | all pairs, controlled phases              |
//! | LONGRANGE | ≥ 4               | seeded mix of short and long spans        |

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frontend::format_angle;

pub const GENERATOR_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Family {
    Adder,
    Bv,
    Qaoa,
    Rcs,
    Qft,
    LongRange,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Adder,
        Family::Bv,
        Family::Qaoa,
        Family::Rcs,
        Family::Qft,
        Family::LongRange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Adder => "ADDER",
            Family::Bv => "BV",
            Family::Qaoa => "QAOA",
            Family::Rcs => "RCS",
            Family::Qft => "QFT",
            Family::LongRange => "LONGRANGE",
        }
    }

    /// Reference two-qubit gate count at 64 qubits; generated circuits land
    /// near it but need not match.
    pub fn reference_count_64(self) -> Option<usize> {
        match self {
            Family::Adder => Some(545),
            Family::Bv => Some(64),
            Family::Qaoa => Some(1260),
            Family::Rcs => Some(560),
            Family::Qft => Some(4032),
            Family::LongRange => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Generator(format!("unknown benchmark family `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QaoaGraph {
    Ring,
    Random,
}

/// Family-specific knobs; `None` means the family default.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchParams {
    /// QAOA: number of cost+mixer layers (default 10).
    pub layers: Option<usize>,
    /// QAOA: problem graph (default ring).
    pub graph: Option<QaoaGraph>,
    /// QAOA random graph: edge probability (default 0.1).
    pub edge_prob: Option<f64>,
    /// RCS: coupler cycles (default 20).
    pub cycles: Option<usize>,
    /// LONGRANGE: number of CX gates (default 8n).
    pub gates: Option<usize>,
    /// LONGRANGE: share of gates spanning more than n/4 (default 0.3).
    pub long_fraction: Option<f64>,
}

impl BenchParams {
    /// Sets one knob from its textual `key=value` form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |e: &dyn fmt::Display| Error::Generator(format!("bad value for {key}: {e}"));
        match key {
            "layers" => self.layers = Some(value.parse().map_err(|e| bad(&e))?),
            "cycles" => self.cycles = Some(value.parse().map_err(|e| bad(&e))?),
            "gates" => self.gates = Some(value.parse().map_err(|e| bad(&e))?),
            "edge_prob" => self.edge_prob = Some(value.parse().map_err(|e| bad(&e))?),
            "long_fraction" => self.long_fraction = Some(value.parse().map_err(|e| bad(&e))?),
            "graph" => {
                self.graph = Some(match value {
                    "ring" => QaoaGraph::Ring,
                    "random" => QaoaGraph::Random,
                    other => return Err(bad(&format!("`{other}` (ring|random)"))),
                })
            }
            other => return Err(Error::Generator(format!("unknown parameter `{other}`"))),
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkSpec {
    pub family: Family,
    pub qubit_count: usize,
    pub seed: u64,
    #[serde(default)]
    pub params: BenchParams,
}

impl BenchmarkSpec {
    pub fn new(family: Family, qubit_count: usize, seed: u64) -> Self {
        BenchmarkSpec {
            family,
            qubit_count,
            seed,
            params: BenchParams::default(),
        }
    }
}

/// Source-text builder; statements are appended one per line.
struct Src {
    text: String,
}

impl Src {
    fn new(spec: &BenchmarkSpec, extra: &[(&str, String)]) -> Self {
        let mut text = String::new();
        let _ = writeln!(text, "// family = {}", spec.family);
        let _ = writeln!(text, "// qubits = {}", spec.qubit_count);
        let _ = writeln!(text, "// seed = {}", spec.seed);
        for (k, v) in extra {
            let _ = writeln!(text, "// {k} = {v}");
        }
        let _ = writeln!(text, "// generator = tilt-bench v{GENERATOR_VERSION}");
        let _ = writeln!(text, "qreg q[{}];", spec.qubit_count);
        Src { text }
    }

    fn one(&mut self, op: &str, q: usize) {
        let _ = writeln!(self.text, "{op} q[{q}];");
    }

    fn rot(&mut self, op: &str, angle: &str, q: usize) {
        let _ = writeln!(self.text, "{op}({angle}) q[{q}];");
    }

    fn cx(&mut self, c: usize, t: usize) {
        let _ = writeln!(self.text, "cx q[{c}],q[{t}];");
    }

    fn cz(&mut self, a: usize, b: usize) {
        let _ = writeln!(self.text, "cz q[{a}],q[{b}];");
    }

    /// Toffoli in the usual 6-CX, T-depth-4 form.
    fn ccx(&mut self, a: usize, b: usize, t: usize) {
        self.one("h", t);
        self.cx(b, t);
        self.rot("rz", "-pi/4", t);
        self.cx(a, t);
        self.rot("rz", "pi/4", t);
        self.cx(b, t);
        self.rot("rz", "-pi/4", t);
        self.cx(a, t);
        self.rot("rz", "pi/4", b);
        self.rot("rz", "pi/4", t);
        self.one("h", t);
        self.cx(a, b);
        self.rot("rz", "pi/4", a);
        self.rot("rz", "-pi/4", b);
        self.cx(a, b);
    }

    /// Controlled phase diag(1, 1, 1, e^{iθ}) as two CX and three RZ.
    fn cphase(&mut self, theta: f64, c: usize, t: usize) {
        self.rot("rz", &format_angle(theta / 2.0), c);
        self.cx(c, t);
        self.rot("rz", &format_angle(-theta / 2.0), t);
        self.cx(c, t);
        self.rot("rz", &format_angle(theta / 2.0), t);
    }
}

fn need(spec: &BenchmarkSpec, ok: bool, rule: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Generator(format!(
            "{} cannot be built on {} qubits: {rule}",
            spec.family, spec.qubit_count
        )))
    }
}

/// Emits the benchmark as `.lqasm` source. Identical specs give identical
/// text.
pub fn generate(spec: &BenchmarkSpec) -> Result<String> {
    let n = spec.qubit_count;
    match spec.family {
        Family::Adder => {
            need(
                spec,
                n >= 4 && n.is_multiple_of(2),
                "needs an even count >= 4",
            )?;
            Ok(adder(spec))
        }
        Family::Bv => {
            need(spec, n >= 2, "needs >= 2 qubits")?;
            Ok(bv(spec))
        }
        Family::Qaoa => {
            need(spec, n >= 3, "needs >= 3 qubits")?;
            qaoa(spec)
        }
        Family::Rcs => {
            need(spec, n >= 4, "needs >= 4 qubits")?;
            rcs(spec)
        }
        Family::Qft => {
            need(spec, n >= 2, "needs >= 2 qubits")?;
            Ok(qft(spec))
        }
        Family::LongRange => {
            need(spec, n >= 4, "needs >= 4 qubits")?;
            long_range(spec)
        }
    }
}

/// Cuccaro ripple-carry adder on k = (n − 2)/2 bit registers, interleaved
/// along the chain as c, b0, a0, b1, a1, …, z so every gate stays within
/// two neighbouring slots.
fn adder(spec: &BenchmarkSpec) -> String {
    let k = (spec.qubit_count - 2) / 2;
    let mut s = Src::new(spec, &[("bits", k.to_string())]);
    let b = |i: usize| 2 * i + 1;
    let a = |i: usize| 2 * i + 2;
    let carry_in = |i: usize| if i == 0 { 0 } else { a(i - 1) };
    let z = 2 * k + 1;

    // deterministic operands so the circuit does something
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for i in 0..k {
        if rng.gen_bool(0.5) {
            s.one("x", a(i));
        }
        if rng.gen_bool(0.5) {
            s.one("x", b(i));
        }
    }

    for i in 0..k {
        // MAJ(c, b, a)
        let (x, y, w) = (carry_in(i), b(i), a(i));
        s.cx(w, y);
        s.cx(w, x);
        s.ccx(x, y, w);
    }
    s.cx(a(k - 1), z);
    for i in (0..k).rev() {
        // UMA(c, b, a), two-CX variant
        let (x, y, w) = (carry_in(i), b(i), a(i));
        s.ccx(x, y, w);
        s.cx(w, x);
        s.cx(x, y);
    }
    s.text
}

/// Bernstein–Vazirani with the all-ones secret; the last qubit is the
/// phase-kickback target.
fn bv(spec: &BenchmarkSpec) -> String {
    let n = spec.qubit_count;
    let target = n - 1;
    let mut s = Src::new(spec, &[("secret", "all-ones".into())]);
    s.one("x", target);
    for q in 0..n {
        s.one("h", q);
    }
    for q in 0..target {
        s.cx(q, target);
    }
    for q in 0..target {
        s.one("h", q);
    }
    s.text
}

fn qaoa(spec: &BenchmarkSpec) -> Result<String> {
    let n = spec.qubit_count;
    let p = &spec.params;
    let layers = p.layers.unwrap_or(10);
    let graph = p.graph.unwrap_or(QaoaGraph::Ring);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let edges: Vec<(usize, usize)> = match graph {
        QaoaGraph::Ring => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        QaoaGraph::Random => {
            let prob = p.edge_prob.unwrap_or(0.1);
            if !(0.0..=1.0).contains(&prob) {
                return Err(Error::Generator(format!("edge_prob {prob} outside [0, 1]")));
            }
            let mut e = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(prob) {
                        e.push((i, j));
                    }
                }
            }
            e
        }
    };

    let graph_name = match graph {
        QaoaGraph::Ring => "ring".to_string(),
        QaoaGraph::Random => format!("random p={}", p.edge_prob.unwrap_or(0.1)),
    };
    let mut s = Src::new(
        spec,
        &[("graph", graph_name), ("layers", layers.to_string())],
    );
    for q in 0..n {
        s.one("h", q);
    }
    for _ in 0..layers {
        let gamma: f64 = rng.gen_range(0.05..std::f64::consts::PI);
        let beta: f64 = rng.gen_range(0.05..std::f64::consts::PI);
        // cost layer: exp(-iγ Z_a Z_b) per edge
        for &(a, b) in &edges {
            s.cx(a, b);
            s.rot("rz", &format_angle(2.0 * gamma), b);
            s.cx(a, b);
        }
        for q in 0..n {
            s.rot("rx", &format_angle(2.0 * beta), q);
        }
    }
    Ok(s.text)
}

/// Random circuit sampling on a ⌈√n⌉-wide grid laid out row-major. Each
/// cycle applies a random single-qubit layer then one of four coupler
/// patterns (even/odd horizontal, even/odd vertical) in rotation.
fn rcs(spec: &BenchmarkSpec) -> Result<String> {
    let n = spec.qubit_count;
    let cycles = spec.params.cycles.unwrap_or(20);
    if cycles == 0 {
        return Err(Error::Generator("RCS needs at least one cycle".into()));
    }
    let width = (n as f64).sqrt().ceil() as usize;
    let rows = n.div_ceil(width);
    let at = |r: usize, c: usize| {
        let q = r * width + c;
        (c < width && q < n).then_some(q)
    };

    let mut patterns: [Vec<(usize, usize)>; 4] = Default::default();
    for r in 0..rows {
        for c in 0..width {
            let Some(q) = at(r, c) else { continue };
            if let Some(right) = at(r, c + 1) {
                patterns[c % 2].push((q, right));
            }
            if let Some(down) = at(r + 1, c) {
                patterns[2 + r % 2].push((q, down));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut s = Src::new(
        spec,
        &[
            ("grid", format!("{rows}x{width}")),
            ("cycles", cycles.to_string()),
        ],
    );
    for q in 0..n {
        s.one("h", q);
    }
    const ONE_QUBIT: [(&str, &str); 3] = [("rx", "pi/2"), ("ry", "pi/2"), ("rz", "pi/4")];
    let mut last = vec![usize::MAX; n];
    for cycle in 0..cycles {
        for (q, prev) in last.iter_mut().enumerate() {
            // never repeat the previous gate on a qubit
            let mut pick = rng.gen_range(0..ONE_QUBIT.len());
            if pick == *prev {
                pick = (pick + 1 + rng.gen_range(0..ONE_QUBIT.len() - 1)) % ONE_QUBIT.len();
            }
            *prev = pick;
            let (op, angle) = ONE_QUBIT[pick];
            s.rot(op, angle, q);
        }
        for &(a, b) in &patterns[cycle % 4] {
            s.cz(a, b);
        }
    }
    Ok(s.text)
}

/// Textbook QFT without the final qubit reversal.
fn qft(spec: &BenchmarkSpec) -> String {
    let n = spec.qubit_count;
    let mut s = Src::new(spec, &[]);
    for j in 0..n {
        s.one("h", j);
        for k in j + 1..n {
            let theta = std::f64::consts::PI / 2f64.powi((k - j) as i32);
            s.cphase(theta, k, j);
        }
    }
    s.text
}

fn long_range(spec: &BenchmarkSpec) -> Result<String> {
    let n = spec.qubit_count;
    let gates = spec.params.gates.unwrap_or(8 * n);
    let long_fraction = spec.params.long_fraction.unwrap_or(0.3);
    if !(0.0..=1.0).contains(&long_fraction) {
        return Err(Error::Generator(format!(
            "long_fraction {long_fraction} outside [0, 1]"
        )));
    }
    let long_min = n / 4 + 1;
    let short_max = 3.min(n - 1);

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut s = Src::new(
        spec,
        &[
            ("gates", gates.to_string()),
            ("long_fraction", long_fraction.to_string()),
        ],
    );
    for _ in 0..gates {
        let span = if rng.gen_bool(long_fraction) {
            rng.gen_range(long_min..n)
        } else {
            rng.gen_range(1..=short_max)
        };
        let a = rng.gen_range(0..n - span);
        let (c, t) = if rng.gen_bool(0.5) {
            (a, a + span)
        } else {
            (a + span, a)
        };
        s.cx(c, t);
        if rng.gen_bool(0.5) {
            s.rot("rz", &format_angle(rng.gen_range(-3.0..3.0)), t);
        }
    }
    Ok(s.text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::GateKind;
    use crate::frontend::{compile_source, parse, SourceGate};
    use std::collections::BTreeSet;

    fn spec(f: Family, n: usize) -> BenchmarkSpec {
        BenchmarkSpec::new(f, n, 7)
    }

    fn xx_count(f: Family, n: usize) -> usize {
        compile_source(&generate(&spec(f, n)).unwrap())
            .unwrap()
            .count_kind(GateKind::Xx)
    }

    #[test]
    fn counts_at_64() {
        assert_eq!(xx_count(Family::Qft, 64), 4032);
        assert_eq!(xx_count(Family::Bv, 64), 63);
        assert_eq!(xx_count(Family::Rcs, 64), 560);
        assert_eq!(xx_count(Family::Qaoa, 64), 1280);
        assert_eq!(xx_count(Family::Adder, 64), 16 * 31 + 1);
        assert_eq!(xx_count(Family::LongRange, 64), 512);
    }

    #[test]
    fn qft_touches_every_pair_once_as_cphase() {
        let p = parse(&generate(&spec(Family::Qft, 64)).unwrap()).unwrap();
        let pairs: BTreeSet<(usize, usize)> = p
            .gates
            .iter()
            .filter_map(|g| match *g {
                SourceGate::Cx(a, b) => Some((a.min(b), a.max(b))),
                _ => None,
            })
            .collect();
        assert_eq!(pairs.len(), 64 * 63 / 2);
    }

    #[test]
    fn bv_shares_one_target() {
        let p = parse(&generate(&spec(Family::Bv, 16)).unwrap()).unwrap();
        let cx: Vec<(usize, usize)> = p
            .gates
            .iter()
            .filter_map(|g| match *g {
                SourceGate::Cx(a, b) => Some((a, b)),
                _ => None,
            })
            .collect();
        assert_eq!(cx.len(), 15);
        assert!(cx.iter().all(|&(_, t)| t == 15));
    }

    #[test]
    fn one_layer_ring_has_n_edges() {
        let mut s = spec(Family::Qaoa, 12);
        s.params.layers = Some(1);
        let p = parse(&generate(&s).unwrap()).unwrap();
        let pairs: BTreeSet<(usize, usize)> = p
            .gates
            .iter()
            .filter_map(|g| match *g {
                SourceGate::Cx(a, b) => Some((a.min(b), a.max(b))),
                _ => None,
            })
            .collect();
        assert_eq!(pairs.len(), 12);
        assert!(pairs.iter().all(|&(a, b)| b - a == 1 || (a, b) == (0, 11)));
    }

    #[test]
    fn adder_stays_local() {
        let c = compile_source(&generate(&spec(Family::Adder, 20)).unwrap()).unwrap();
        assert!(c.gates().iter().filter_map(|g| g.span()).all(|d| d <= 2));
    }

    #[test]
    fn rcs_couplers_are_grid_neighbours() {
        let c = compile_source(&generate(&spec(Family::Rcs, 64)).unwrap()).unwrap();
        assert!(c
            .gates()
            .iter()
            .filter_map(|g| g.span())
            .all(|d| d == 1 || d == 8));
    }

    #[test]
    fn output_is_reproducible() {
        for f in Family::ALL {
            let a = generate(&spec(f, 16)).unwrap();
            assert_eq!(a, generate(&spec(f, 16)).unwrap());
            assert!(a.starts_with(&format!("// family = {f}\n")));
        }
        let mut other = spec(Family::LongRange, 16);
        other.seed = 8;
        assert_ne!(
            generate(&other).unwrap(),
            generate(&spec(Family::LongRange, 16)).unwrap()
        );
    }

    #[test]
    fn invalid_sizes() {
        assert!(generate(&spec(Family::Adder, 7)).is_err());
        assert!(generate(&spec(Family::Bv, 1)).is_err());
        assert!("qft".parse::<Family>().is_ok());
        assert!("grover".parse::<Family>().is_err());
    }
}
