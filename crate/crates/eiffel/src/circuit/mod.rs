//! Arithmetic-circuit IR for validation predicates.
//!
//! A circuit is a DAG over field wires: wires `0..num_inputs` are inputs
//! (data dimensions first, auxiliary witness wires after), and each gate
//! appends one wire. Gates are `Add`, `Mul`, `AddConst`, `MulConst`; every
//! gate references earlier wires only, so definition order is topological
//! order, and multiplication gates are labeled `1..=M` in that order.
//!
//! Two output conventions exist, flagged on the circuit:
//! * `OneIsValid` — a single designated output wire must evaluate to 1.
//! * `AllChecksZero` — every wire in `check_wires` must evaluate to 0. The
//!   server verifies this with one random linear combination whose
//!   coefficients are published only after proof shares are committed, which
//!   is what makes the combined check sound against adaptive provers.
//!
//! Predicate circuits carry both: `check_wires` drive verification, and
//! `output_wire` computes the plain indicator `1 - sum(checks)` so honest
//! evaluations read out 0/1 directly.
//!
//! # Text format
//!
//! `save_text`/`parse_text` implement a line-oriented interchange format:
//! a header `inputs <n> output <wire> muls <M>`, then one gate per line
//! (`ADD a b`, `MUL a b`, `ADDC a c`, `MULC a c`), wires numbered from 0 in
//! definition order. Circuits using the all-checks-zero convention append
//! one `CHK <wire>` line per check wire after the gates.

mod predicates;
mod project;
mod quant;

pub use predicates::{
    build_predicate, combine_predicates, equality_product_transform, sample_check_coefficients,
    PredicateCircuit, PredicateKind, PredicateSpec,
};
pub use project::random_project;
pub use quant::QuantParams;

use crate::ffmath::{Fe, Field};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type WireId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    #[error("expected {expected} inputs, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("slack value does not fit the configured bit width")]
    SlackOverflow,
    #[error("input does not satisfy the predicate; no witness exists")]
    NotSatisfied,
    #[error("soundness precondition violated: 2M + 2 = {v} must be < field modulus {p}")]
    SoundnessBound { v: u64, p: u64 },
    #[error("projection target dimension exceeds padded input dimension")]
    BadDimension,
    #[error("malformed circuit text: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    Add(WireId, WireId),
    Mul(WireId, WireId),
    AddConst(WireId, Fe),
    MulConst(WireId, Fe),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputConvention {
    /// Accept iff the output wire reconstructs to 1.
    OneIsValid,
    /// Accept iff every check wire reconstructs to 0.
    AllChecksZero,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub num_inputs: usize,
    pub gates: Vec<Gate>,
    pub output_wire: WireId,
    pub check_wires: Vec<WireId>,
    pub convention: OutputConvention,
}

/// Full wire assignment from one evaluation, in wire order (inputs first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireTrace {
    pub values: Vec<Fe>,
}

impl WireTrace {
    pub fn output(&self, c: &Circuit) -> Fe {
        self.values[c.output_wire]
    }
}

impl Circuit {
    pub fn num_wires(&self) -> usize {
        self.num_inputs + self.gates.len()
    }

    /// Number of multiplication gates, the `M` of the soundness bounds.
    pub fn mul_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Mul(_, _))).count()
    }

    /// Multiplication gates in topological order: `(output wire, left, right)`.
    pub fn mul_gates(&self) -> Vec<(WireId, WireId, WireId)> {
        let mut out = Vec::new();
        for (k, g) in self.gates.iter().enumerate() {
            if let Gate::Mul(a, b) = g {
                out.push((self.num_inputs + k, *a, *b));
            }
        }
        out
    }

    /// `2M + 2 < p` must hold for the Schwartz-Zippel digest to be sound.
    pub fn check_soundness_bound(&self, field: &Field) -> Result<(), CircuitError> {
        let v = 2 * self.mul_gate_count() as u64 + 2;
        if v >= field.p {
            return Err(CircuitError::SoundnessBound { v, p: field.p });
        }
        Ok(())
    }

    /// Structural sanity: every gate references earlier wires, output and
    /// check wires exist.
    pub fn validate(&self) -> Result<(), CircuitError> {
        for (k, g) in self.gates.iter().enumerate() {
            let limit = self.num_inputs + k;
            let ok = match g {
                Gate::Add(a, b) | Gate::Mul(a, b) => *a < limit && *b < limit,
                Gate::AddConst(a, _) | Gate::MulConst(a, _) => *a < limit,
            };
            if !ok {
                return Err(CircuitError::Parse(format!("gate {k} references a later wire")));
            }
        }
        if self.output_wire >= self.num_wires() {
            return Err(CircuitError::Parse("output wire out of range".into()));
        }
        if self.check_wires.iter().any(|&w| w >= self.num_wires()) {
            return Err(CircuitError::Parse("check wire out of range".into()));
        }
        Ok(())
    }

    pub fn evaluate(&self, field: &Field, inputs: &[Fe]) -> Result<WireTrace, CircuitError> {
        if inputs.len() != self.num_inputs {
            return Err(CircuitError::BadArity { expected: self.num_inputs, got: inputs.len() });
        }
        let mut values = Vec::with_capacity(self.num_wires());
        values.extend_from_slice(inputs);
        for g in &self.gates {
            let v = match *g {
                Gate::Add(a, b) => field.add(values[a], values[b]),
                Gate::Mul(a, b) => field.mul(values[a], values[b]),
                Gate::AddConst(a, c) => field.add(values[a], c),
                Gate::MulConst(a, c) => field.mul(values[a], c),
            };
            values.push(v);
        }
        Ok(WireTrace { values })
    }

    /// Re-check that a trace satisfies every gate equation.
    pub fn validate_trace(&self, field: &Field, trace: &WireTrace) -> bool {
        if trace.values.len() != self.num_wires() {
            return false;
        }
        self.gates.iter().enumerate().all(|(k, g)| {
            let v = &trace.values;
            let expect = match *g {
                Gate::Add(a, b) => field.add(v[a], v[b]),
                Gate::Mul(a, b) => field.mul(v[a], v[b]),
                Gate::AddConst(a, c) => field.add(v[a], c),
                Gate::MulConst(a, c) => field.mul(v[a], c),
            };
            v[self.num_inputs + k] == expect
        })
    }

    /// Whether a trace satisfies the circuit's acceptance convention.
    pub fn is_satisfied(&self, trace: &WireTrace) -> bool {
        match self.convention {
            OutputConvention::OneIsValid => trace.values[self.output_wire] == Fe::ONE,
            OutputConvention::AllChecksZero => {
                self.check_wires.iter().all(|&w| trace.values[w] == Fe::ZERO)
            }
        }
    }

    pub fn save_text(&self) -> String {
        let mut s = format!(
            "inputs {} output {} muls {}\n",
            self.num_inputs,
            self.output_wire,
            self.mul_gate_count()
        );
        for g in &self.gates {
            match *g {
                Gate::Add(a, b) => s.push_str(&format!("ADD {a} {b}\n")),
                Gate::Mul(a, b) => s.push_str(&format!("MUL {a} {b}\n")),
                Gate::AddConst(a, c) => s.push_str(&format!("ADDC {a} {c}\n")),
                Gate::MulConst(a, c) => s.push_str(&format!("MULC {a} {c}\n")),
            }
        }
        if self.convention == OutputConvention::AllChecksZero {
            for &w in &self.check_wires {
                s.push_str(&format!("CHK {w}\n"));
            }
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Circuit, CircuitError> {
        let bad = |m: &str| CircuitError::Parse(m.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("missing header"))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 6 || h[0] != "inputs" || h[2] != "output" || h[4] != "muls" {
            return Err(bad("header must be `inputs <n> output <wire> muls <M>`"));
        }
        let num_inputs: usize = h[1].parse().map_err(|_| bad("bad input count"))?;
        let output_wire: usize = h[3].parse().map_err(|_| bad("bad output wire"))?;
        let muls: usize = h[5].parse().map_err(|_| bad("bad mul count"))?;
        let mut gates = Vec::new();
        let mut check_wires = Vec::new();
        for line in lines {
            let t: Vec<&str> = line.split_whitespace().collect();
            match t.as_slice() {
                ["ADD", a, b] => gates.push(Gate::Add(
                    a.parse().map_err(|_| bad("bad wire"))?,
                    b.parse().map_err(|_| bad("bad wire"))?,
                )),
                ["MUL", a, b] => gates.push(Gate::Mul(
                    a.parse().map_err(|_| bad("bad wire"))?,
                    b.parse().map_err(|_| bad("bad wire"))?,
                )),
                ["ADDC", a, c] => gates.push(Gate::AddConst(
                    a.parse().map_err(|_| bad("bad wire"))?,
                    Fe(c.parse().map_err(|_| bad("bad constant"))?),
                )),
                ["MULC", a, c] => gates.push(Gate::MulConst(
                    a.parse().map_err(|_| bad("bad wire"))?,
                    Fe(c.parse().map_err(|_| bad("bad constant"))?),
                )),
                ["CHK", w] => check_wires.push(w.parse().map_err(|_| bad("bad wire"))?),
                _ => return Err(bad("unrecognized line")),
            }
        }
        let convention = if check_wires.is_empty() {
            check_wires = vec![output_wire];
            OutputConvention::OneIsValid
        } else {
            OutputConvention::AllChecksZero
        };
        let c = Circuit { num_inputs, gates, output_wire, check_wires, convention };
        c.validate()?;
        if c.mul_gate_count() != muls {
            return Err(bad("mul count in header disagrees with gate list"));
        }
        Ok(c)
    }
}

/// Incremental construction helper used by the predicate builders.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    num_inputs: usize,
    gates: Vec<Gate>,
    checks: Vec<WireId>,
}

impl CircuitBuilder {
    pub fn new(num_inputs: usize) -> Self {
        CircuitBuilder { num_inputs, gates: Vec::new(), checks: Vec::new() }
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    fn push(&mut self, g: Gate) -> WireId {
        self.gates.push(g);
        self.num_inputs + self.gates.len() - 1
    }

    pub fn add(&mut self, a: WireId, b: WireId) -> WireId {
        self.push(Gate::Add(a, b))
    }

    pub fn mul(&mut self, a: WireId, b: WireId) -> WireId {
        self.push(Gate::Mul(a, b))
    }

    pub fn add_const(&mut self, a: WireId, c: Fe) -> WireId {
        self.push(Gate::AddConst(a, c))
    }

    pub fn mul_const(&mut self, a: WireId, c: Fe) -> WireId {
        self.push(Gate::MulConst(a, c))
    }

    /// a - b as Add(a, -1 * b).
    pub fn sub(&mut self, field: &Field, a: WireId, b: WireId) -> WireId {
        let neg = self.mul_const(b, field.neg(Fe::ONE));
        self.add(a, neg)
    }

    /// Sum of a nonempty wire list.
    pub fn sum(&mut self, wires: &[WireId]) -> WireId {
        let mut acc = wires[0];
        for &w in &wires[1..] {
            acc = self.add(acc, w);
        }
        acc
    }

    pub fn mark_check(&mut self, w: WireId) {
        self.checks.push(w);
    }

    pub fn checks(&self) -> &[WireId] {
        &self.checks
    }

    /// Finish with the all-checks-zero convention, deriving the indicator
    /// output wire `1 - sum (k+1) * check_k`. The distinct weights keep the
    /// indicator from masking one violated check with another; the sound
    /// accept decision still rests on the randomized combination of the
    /// check wires.
    pub fn finish_checks_zero(mut self, field: &Field) -> Circuit {
        let checks = self.checks.clone();
        let weighted: Vec<WireId> = checks
            .iter()
            .enumerate()
            .map(|(k, &w)| self.mul_const(w, field.elem(k as u64 + 1)))
            .collect();
        let total = self.sum(&weighted);
        let negated = self.mul_const(total, field.neg(Fe::ONE));
        let output = self.add_const(negated, Fe::ONE);
        Circuit {
            num_inputs: self.num_inputs,
            gates: self.gates,
            output_wire: output,
            check_wires: checks,
            convention: OutputConvention::AllChecksZero,
        }
    }

    /// Finish with a designated 1-on-success output wire.
    pub fn finish_one_is_valid(self, output: WireId) -> Circuit {
        Circuit {
            num_inputs: self.num_inputs,
            gates: self.gates,
            output_wire: output,
            check_wires: vec![output],
            convention: OutputConvention::OneIsValid,
        }
    }
}
