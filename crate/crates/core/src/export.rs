//! Circuit serialization: a lossless JSON gate list and OpenQASM 2.0 text.
//!
//! QASM output lowers every multi-controlled gate to `h`, `x`, `ry`, `u1`,
//! `cx` and `cu1` with the recursive ancilla-free construction
//! `C^k U = C(c)V . C^{k-1}X . C(c)V' . C^{k-1}X . C^{k-1}V` where `V^2 = U`.
//! The lowering is exact, including global phase.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::qcore::{Circuit, Control, Gate, Polarity};

/// Version tag carried by every JSON document this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// 17 significant digits; always contains a decimal point.
fn real(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ControlJson {
    qubit: usize,
    on: u8,
}

#[derive(Serialize)]
struct GateOut {
    kind: &'static str,
    targets: [usize; 1],
    controls: Vec<ControlJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    angle: Option<Box<RawValue>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bit: Option<u8>,
}

#[derive(Serialize)]
struct CircuitOut {
    schema: u32,
    num_qubits: usize,
    gates: Vec<GateOut>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GateIn {
    kind: String,
    targets: Vec<usize>,
    #[serde(default)]
    controls: Vec<ControlJson>,
    angle: Option<f64>,
    bit: Option<u8>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitIn {
    schema: u32,
    num_qubits: usize,
    gates: Vec<GateIn>,
}

/// Serializes `circuit` as a JSON gate list; angles carry 17 significant digits.
pub fn circuit_to_json(circuit: &Circuit) -> String {
    let gates = circuit
        .gates()
        .iter()
        .map(|g| GateOut {
            kind: g.kind(),
            targets: [g.target()],
            controls: g
                .controls()
                .iter()
                .map(|c| ControlJson {
                    qubit: c.qubit,
                    on: c.polarity.bit(),
                })
                .collect(),
            angle: g
                .angle()
                .map(|a| RawValue::from_string(real(a)).expect("formatted float is valid JSON")),
            bit: match g {
                Gate::ClassicalCnot { bit, .. } => Some(u8::from(*bit)),
                _ => None,
            },
        })
        .collect();
    let doc = CircuitOut {
        schema: SCHEMA_VERSION,
        num_qubits: circuit.num_qubits(),
        gates,
    };
    serde_json::to_string_pretty(&doc).expect("circuit serialization is infallible")
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text
        .split_inclusive('\n')
        .take(line.saturating_sub(1))
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

fn gate_from_json(index: usize, g: GateIn) -> Result<Gate> {
    let fail = |msg: &str| Error::validation(format!("gate {index} ({}): {msg}", g.kind));
    let [target] = g.targets[..] else {
        return Err(fail("expected exactly one target"));
    };
    let mut controls = Vec::with_capacity(g.controls.len());
    for c in &g.controls {
        if c.on > 1 {
            return Err(fail("control polarity must be 0 or 1"));
        }
        controls.push(Control {
            qubit: c.qubit,
            polarity: Polarity::from_bit(c.on),
        });
    }
    let needs_angle = g.kind == "mcry";
    if g.angle.is_some() != needs_angle {
        return Err(fail(if needs_angle {
            "missing angle"
        } else {
            "unexpected angle"
        }));
    }
    let needs_bit = g.kind == "classical_cnot";
    if g.bit.is_some() != needs_bit {
        return Err(fail(if needs_bit {
            "missing bit"
        } else {
            "unexpected bit"
        }));
    }
    let uncontrolled = |gate: Gate| {
        if controls.is_empty() {
            Ok(gate)
        } else {
            Err(fail("takes no controls"))
        }
    };
    match g.kind.as_str() {
        "h" => uncontrolled(Gate::H(target)),
        "x" => uncontrolled(Gate::X(target)),
        "cnot" => match controls[..] {
            [control] => Ok(Gate::Cnot { control, target }),
            _ => Err(fail("expected exactly one control")),
        },
        "mcx" => Ok(Gate::Mcx { controls, target }),
        "mcry" => Ok(Gate::Mcry {
            controls,
            target,
            angle: g.angle.unwrap_or_default(),
        }),
        "classical_cnot" => match g.bit {
            Some(b @ (0 | 1)) => uncontrolled(Gate::ClassicalCnot {
                bit: b == 1,
                target,
            }),
            _ => Err(fail("bit must be 0 or 1")),
        },
        _ => Err(fail("unknown gate kind")),
    }
}

/// Parses a document written by [`circuit_to_json`], validating every gate.
pub fn circuit_from_json(text: &str) -> Result<Circuit> {
    let doc: CircuitIn = serde_json::from_str(text)
        .map_err(|e| Error::parse(byte_offset(text, e.line(), e.column()), e.to_string()))?;
    if doc.schema != SCHEMA_VERSION {
        return Err(Error::validation(format!(
            "unsupported schema version {}",
            doc.schema
        )));
    }
    let mut circuit = Circuit::new(doc.num_qubits)?;
    for (i, g) in doc.gates.into_iter().enumerate() {
        circuit.push(gate_from_json(i, g)?)?;
    }
    Ok(circuit)
}

/// Gates of the QASM target set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Id(usize),
    H(usize),
    X(usize),
    Ry(usize, f64),
    U1(usize, f64),
    Cx(usize, usize),
    Cu1(usize, usize, f64),
}

impl Primitive {
    fn qasm(&self, out: &mut String) {
        let _ = match *self {
            Primitive::Id(q) => writeln!(out, "id q[{q}];"),
            Primitive::H(q) => writeln!(out, "h q[{q}];"),
            Primitive::X(q) => writeln!(out, "x q[{q}];"),
            Primitive::Ry(q, a) => writeln!(out, "ry({}) q[{q}];", real(a)),
            Primitive::U1(q, a) => writeln!(out, "u1({}) q[{q}];", real(a)),
            Primitive::Cx(c, t) => writeln!(out, "cx q[{c}],q[{t}];"),
            Primitive::Cu1(c, t, a) => writeln!(out, "cu1({}) q[{c}],q[{t}];", real(a)),
        };
    }
}

/// Controlled-Ry on `t`, all `cs` active-high.
fn lower_mcry(cs: &[usize], t: usize, theta: f64, out: &mut Vec<Primitive>) {
    match cs {
        [] => out.push(Primitive::Ry(t, theta)),
        [c] => out.extend([
            Primitive::Ry(t, theta / 2.0),
            Primitive::Cx(*c, t),
            Primitive::Ry(t, -theta / 2.0),
            Primitive::Cx(*c, t),
        ]),
        [rest @ .., last] => {
            lower_mcry(&[*last], t, theta / 2.0, out);
            lower_mcx(rest, *last, out);
            lower_mcry(&[*last], t, -theta / 2.0, out);
            lower_mcx(rest, *last, out);
            lower_mcry(rest, t, theta / 2.0, out);
        }
    }
}

/// Phase `e^{i lambda}` on the all-ones pattern of `qs` (symmetric in `qs`).
fn lower_mcphase(qs: &[usize], lambda: f64, out: &mut Vec<Primitive>) {
    match qs {
        [] => {}
        [q] => out.push(Primitive::U1(*q, lambda)),
        [a, b] => out.push(Primitive::Cu1(*a, *b, lambda)),
        [rest @ .., t] => {
            let (c, others) = rest.split_last().expect("at least two controls");
            out.push(Primitive::Cu1(*c, *t, lambda / 2.0));
            lower_mcx(others, *c, out);
            out.push(Primitive::Cu1(*c, *t, -lambda / 2.0));
            lower_mcx(others, *c, out);
            let mut tail = others.to_vec();
            tail.push(*t);
            lower_mcphase(&tail, lambda / 2.0, out);
        }
    }
}

fn lower_mcx(cs: &[usize], t: usize, out: &mut Vec<Primitive>) {
    match cs {
        [] => out.push(Primitive::X(t)),
        [c] => out.push(Primitive::Cx(*c, t)),
        _ => {
            let mut qs = cs.to_vec();
            qs.push(t);
            out.push(Primitive::H(t));
            lower_mcphase(&qs, PI, out);
            out.push(Primitive::H(t));
        }
    }
}

/// Lowers one gate to primitives. Zero-polarity controls are conjugated
/// by `x`; a classically controlled CNOT resolves to `x` or `id`.
pub fn decompose(gate: &Gate) -> Vec<Primitive> {
    let mut out = Vec::new();
    let flips: Vec<usize> = gate
        .controls()
        .iter()
        .filter(|c| c.polarity == Polarity::Zero)
        .map(|c| c.qubit)
        .collect();
    out.extend(flips.iter().map(|&q| Primitive::X(q)));
    let cs: Vec<usize> = gate.controls().iter().map(|c| c.qubit).collect();
    match *gate {
        Gate::H(t) => out.push(Primitive::H(t)),
        Gate::X(t) => out.push(Primitive::X(t)),
        Gate::Cnot { target, .. } | Gate::Mcx { target, .. } => lower_mcx(&cs, target, &mut out),
        Gate::Mcry { target, angle, .. } => lower_mcry(&cs, target, angle, &mut out),
        Gate::ClassicalCnot { bit, target } => out.push(if bit {
            Primitive::X(target)
        } else {
            Primitive::Id(target)
        }),
    }
    out.extend(flips.iter().map(|&q| Primitive::X(q)));
    out
}

/// OpenQASM 2.0 program over `qelib1.inc` equivalent to `circuit`.
pub fn circuit_to_qasm(circuit: &Circuit) -> String {
    let mut out = format!(
        "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[{}];\n",
        circuit.num_qubits()
    );
    for gate in circuit.gates() {
        for p in decompose(gate) {
            p.qasm(&mut out);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::resource_count;
    use crate::encoders::{frqi, neqr, qbip_encode, QuantumImage};
    use crate::qcore::StateVector;
    use num_complex::Complex64;
    use proptest::prelude::*;

    /// Reference simulator for primitives; qubit 0 is the MSB of the index.
    fn run_primitives(n: usize, amps: &[Complex64], prims: &[Primitive]) -> Vec<Complex64> {
        let bit = |i: usize, q: usize| (i >> (n - 1 - q)) & 1;
        let flip = |i: usize, q: usize| i ^ (1 << (n - 1 - q));
        let mut psi = amps.to_vec();
        for p in prims {
            let mut next = vec![Complex64::new(0.0, 0.0); psi.len()];
            for (i, &a) in psi.iter().enumerate() {
                match *p {
                    Primitive::Id(_) => next[i] += a,
                    Primitive::X(q) => next[flip(i, q)] += a,
                    Primitive::H(q) => {
                        let s = std::f64::consts::FRAC_1_SQRT_2;
                        let sign = if bit(i, q) == 1 { -1.0 } else { 1.0 };
                        next[i & !(1 << (n - 1 - q))] += a * s;
                        next[i | (1 << (n - 1 - q))] += a * s * sign;
                    }
                    Primitive::Ry(q, th) => {
                        let (s, c) = (th / 2.0).sin_cos();
                        let j = flip(i, q);
                        if bit(i, q) == 0 {
                            next[i] += a * c;
                            next[j] += a * s;
                        } else {
                            next[i] += a * c;
                            next[j] -= a * s;
                        }
                    }
                    Primitive::U1(q, l) => {
                        next[i] += if bit(i, q) == 1 {
                            a * Complex64::from_polar(1.0, l)
                        } else {
                            a
                        };
                    }
                    Primitive::Cx(c, t) => {
                        next[if bit(i, c) == 1 { flip(i, t) } else { i }] += a;
                    }
                    Primitive::Cu1(c, t, l) => {
                        next[i] += if bit(i, c) == 1 && bit(i, t) == 1 {
                            a * Complex64::from_polar(1.0, l)
                        } else {
                            a
                        };
                    }
                }
            }
            psi = next;
        }
        psi
    }

    fn random_state(n: usize, seed: &[f64]) -> StateVector {
        let amps: Vec<Complex64> = (0..1usize << n)
            .map(|i| Complex64::new(seed[i % seed.len()] + i as f64 * 0.01, (i as f64).sin()))
            .collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
    }

    fn arb_gate(n: usize) -> impl Strategy<Value = Gate> {
        (
            Just(()).prop_perturb(move |_, mut rng| {
                let mut qs: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    qs.swap(i, rng.random_range(0..=i));
                }
                qs
            }),
            0..n,
            proptest::collection::vec(any::<bool>(), n),
            -7.0f64..7.0,
            0u8..4,
        )
            .prop_map(move |(qs, k, pols, angle, kind)| {
                let controls: Vec<Control> = qs[1..=k.min(n - 1)]
                    .iter()
                    .zip(&pols)
                    .map(|(&q, &p)| Control {
                        qubit: q,
                        polarity: Polarity::from_bit(u8::from(p)),
                    })
                    .collect();
                match kind {
                    0 => Gate::Mcx {
                        controls,
                        target: qs[0],
                    },
                    1 if !controls.is_empty() => Gate::Cnot {
                        control: controls[0],
                        target: qs[0],
                    },
                    2 => Gate::ClassicalCnot {
                        bit: pols[0],
                        target: qs[0],
                    },
                    _ => Gate::Mcry {
                        controls,
                        target: qs[0],
                        angle,
                    },
                }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn lowering_matches_gate_semantics(gate in arb_gate(5), seed in proptest::collection::vec(-1.0f64..1.0, 4)) {
            let psi = random_state(5, &seed);
            let want = psi.clone().applied(&gate).unwrap();
            let got = run_primitives(5, psi.amplitudes(), &decompose(&gate));
            for (a, b) in want.amplitudes().iter().zip(&got) {
                prop_assert!((a - b).norm() < 1e-9, "{gate:?}");
            }
        }

        #[test]
        fn json_round_trip_is_exact(gates in proptest::collection::vec(arb_gate(4), 0..12)) {
            let c = Circuit::from_gates(4, gates).unwrap();
            let back = circuit_from_json(&circuit_to_json(&c)).unwrap();
            prop_assert_eq!(back, c);
        }
    }

    #[test]
    fn primitive_h_reference() {
        let zero = StateVector::zero(1).unwrap();
        let got = run_primitives(1, zero.amplitudes(), &[Primitive::H(0)]);
        let plus = zero.applied(&Gate::H(0)).unwrap();
        assert!((got[0] - plus.amplitudes()[0]).norm() < 1e-15);
        assert!((got[1] - plus.amplitudes()[1]).norm() < 1e-15);
        let one = StateVector::basis(1, 1).unwrap();
        let got = run_primitives(1, one.amplitudes(), &[Primitive::H(0)]);
        assert!((got[1].re + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn whole_circuits_lower_exactly() {
        let img = QuantumImage::gray(2, 2, 8, vec![0, 100, 200, 255]).unwrap();
        let thetas = [0.0, PI / 6.0, PI / 3.0, PI / 2.0];
        for enc in [neqr(&img).unwrap(), frqi(&thetas).unwrap()] {
            let n = enc.circuit.num_qubits();
            let prims: Vec<Primitive> = enc.circuit.gates().iter().flat_map(decompose).collect();
            let zero = StateVector::zero(n).unwrap();
            let got = run_primitives(n, zero.amplitudes(), &prims);
            for (a, b) in enc.ideal.amplitudes().iter().zip(&got) {
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn qbip_qasm_body_is_one_line_per_bit() {
        let bits = [false, true, true, true, true, false, true, true];
        let enc = qbip_encode(&bits).unwrap();
        let text = circuit_to_qasm(&enc.circuit);
        let body: Vec<&str> = text.lines().skip(3).collect();
        assert_eq!(body.len(), 8);
        assert_eq!(body[0], "id q[0];");
        assert_eq!(body[1], "x q[1];");
        assert!(text.starts_with("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[8];\n"));
    }

    #[test]
    fn json_preserves_resource_count() {
        let img = QuantumImage::gray(2, 2, 8, vec![0, 100, 200, 255]).unwrap();
        let c = neqr(&img).unwrap().circuit;
        let back = circuit_from_json(&circuit_to_json(&c)).unwrap();
        assert_eq!(resource_count(&back), resource_count(&c));
        assert_eq!(resource_count(&back).count("mcx"), 14);
    }

    #[test]
    fn json_angles_have_seventeen_digits() {
        let c = frqi(&[0.0, PI / 6.0, PI / 3.0, PI / 2.0]).unwrap().circuit;
        let text = circuit_to_json(&c);
        assert!(text.contains("\"angle\": 1.0471975511965976e0"), "{text}");
        assert!(text.contains("\"schema\": 1"));
    }

    #[test]
    fn json_import_rejects_bad_documents() {
        let bad = [
            r#"{"schema":2,"num_qubits":1,"gates":[]}"#,
            r#"{"schema":1,"num_qubits":1,"gates":[{"kind":"y","targets":[0],"controls":[]}]}"#,
            r#"{"schema":1,"num_qubits":1,"gates":[{"kind":"mcry","targets":[0],"controls":[]}]}"#,
            r#"{"schema":1,"num_qubits":2,"gates":[{"kind":"h","targets":[0],"controls":[{"qubit":1,"on":1}]}]}"#,
            r#"{"schema":1,"num_qubits":2,"gates":[{"kind":"cnot","targets":[0],"controls":[{"qubit":0,"on":1}]}]}"#,
            r#"{"schema":1,"num_qubits":2,"gates":[{"kind":"x","targets":[0,1],"controls":[]}]}"#,
            r#"{"schema":1,"num_qubits":2,"gates":[{"kind":"mcx","targets":[0],"controls":[{"qubit":1,"on":2}]}]}"#,
            r#"{"schema":1,"num_qubits":99,"gates":[]}"#,
        ];
        for doc in bad {
            assert!(circuit_from_json(doc).is_err(), "{doc}");
        }
        match circuit_from_json("{\n  \"schema\": 1,\n  oops") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 19),
            other => panic!("{other:?}"),
        }
    }
}
