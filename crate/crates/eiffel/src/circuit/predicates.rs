use super::{Circuit, CircuitBuilder, CircuitError, Gate, QuantParams, WireId};
use crate::ffmath::{Fe, Field};
use rand::RngCore;
use serde::{Deserialize, Serialize};

/// The validation predicates, with thresholds already quantized under the
/// same [`QuantParams`] as the inputs. Scalar thresholds (`rho`, `gamma`)
/// carry the coefficient scale recorded in the spec; vector parameters and
/// squared norms are integers at the data scale and its square respectively.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PredicateKind {
    /// `||u||^2 < rho_sq`, strict.
    NormBound { rho_sq: i128 },
    /// `||u - center||^2 <= rho_sq`.
    NormBall { center: Vec<i128>, rho_sq: i128 },
    /// `gamma*<grad,u> - rho*||u||^2 >= -gamma*eps`, with `||u||^2` also
    /// range-checked against the declared `norm_sq` within `band`.
    ZenoPp { grad: Vec<i128>, gamma: i128, rho: i128, eps: i128, norm_sq: i128, band: i128 },
    /// `coeff_scale * <u, reference> < rho * norm_sq`, with the same norm
    /// declaration range check as Zeno++.
    CosineSim { reference: Vec<i128>, rho: i128, coeff_scale: i128, norm_sq: i128, band: i128 },
    /// Conjunction of sub-predicates over the same data wires.
    Product(Vec<PredicateSpec>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredicateSpec {
    pub kind: PredicateKind,
    /// Bit width of every inequality witness in this predicate.
    pub slack_bits: u32,
}

/// A compiled predicate: the circuit plus everything needed to generate
/// honest witnesses. Aux inputs are the little-endian bits of each
/// inequality's slack, in declaration order.
#[derive(Debug, Clone)]
pub struct PredicateCircuit {
    pub circuit: Circuit,
    pub spec: PredicateSpec,
    pub quant: QuantParams,
    pub data_dim: usize,
}

impl PredicateCircuit {
    pub fn aux_count(&self) -> usize {
        self.circuit.num_inputs - self.data_dim
    }

    /// Compute the auxiliary witness inputs for a data vector. Fails with
    /// `NotSatisfied` when the predicate does not hold (no witness exists)
    /// and `SlackOverflow` when a slack exceeds the configured bit width.
    pub fn witness(&self, field: &Field, u: &[Fe]) -> Result<Vec<Fe>, CircuitError> {
        if u.len() != self.data_dim {
            return Err(CircuitError::BadArity { expected: self.data_dim, got: u.len() });
        }
        let ints: Vec<i128> = u.iter().map(|&x| field.to_i128(x)).collect();
        let slacks = slack_values(&self.spec, &ints);
        let mut aux = Vec::with_capacity(self.aux_count());
        for (slack, bits) in slacks {
            if slack < 0 {
                return Err(CircuitError::NotSatisfied);
            }
            if slack >= (1i128 << bits) {
                return Err(CircuitError::SlackOverflow);
            }
            for k in 0..bits {
                aux.push(Fe((slack >> k & 1) as u64));
            }
        }
        debug_assert_eq!(aux.len(), self.aux_count());
        Ok(aux)
    }

    /// Data vector plus witness, ready for [`Circuit::evaluate`].
    pub fn full_inputs(&self, field: &Field, u: &[Fe]) -> Result<Vec<Fe>, CircuitError> {
        let mut inputs = u.to_vec();
        inputs.extend(self.witness(field, u)?);
        Ok(inputs)
    }

    /// Whether a witness exists, i.e. the quantized predicate holds.
    pub fn satisfiable(&self, field: &Field, u: &[Fe]) -> bool {
        matches!(self.witness(field, u), Ok(_))
    }
}

/// The integer slack of every inequality in declaration order, paired with
/// its bit width. Negative slack means the inequality (and the predicate)
/// fails. The circuit's check wires enforce exactly these equations.
fn slack_values(spec: &PredicateSpec, u: &[i128]) -> Vec<(i128, u32)> {
    let b = spec.slack_bits;
    let norm_sq_of = |v: &[i128]| -> i128 { v.iter().map(|x| x * x).sum() };
    let dot = |v: &[i128], w: &[i128]| -> i128 { v.iter().zip(w).map(|(x, y)| x * y).sum() };
    match &spec.kind {
        PredicateKind::NormBound { rho_sq } => {
            vec![(rho_sq - 1 - norm_sq_of(u), b)]
        }
        PredicateKind::NormBall { center, rho_sq } => {
            let dist: i128 = u.iter().zip(center).map(|(x, c)| (x - c) * (x - c)).sum();
            vec![(rho_sq - dist, b)]
        }
        PredicateKind::ZenoPp { grad, gamma, rho, eps, norm_sq, band } => {
            let s = norm_sq_of(u);
            let x = gamma * dot(grad, u) - rho * s + gamma * eps;
            vec![(x, b), (s - (norm_sq - band), b), ((norm_sq + band) - s, b)]
        }
        PredicateKind::CosineSim { reference, rho, coeff_scale, norm_sq, band } => {
            let s = norm_sq_of(u);
            let t = dot(reference, u);
            vec![
                (rho * norm_sq - coeff_scale * t - 1, b),
                (s - (norm_sq - band), b),
                ((norm_sq + band) - s, b),
            ]
        }
        PredicateKind::Product(parts) => {
            parts.iter().flat_map(|p| slack_values(p, u)).collect()
        }
    }
}

/// Total auxiliary witness wires a predicate requires.
fn total_aux_bits(spec: &PredicateSpec) -> usize {
    match &spec.kind {
        PredicateKind::NormBound { .. } | PredicateKind::NormBall { .. } => {
            spec.slack_bits as usize
        }
        PredicateKind::ZenoPp { .. } | PredicateKind::CosineSim { .. } => {
            3 * spec.slack_bits as usize
        }
        PredicateKind::Product(parts) => parts.iter().map(total_aux_bits).sum(),
    }
}

struct BuildCtx<'a> {
    field: &'a Field,
    b: &'a mut CircuitBuilder,
    /// Next unconsumed aux input wire.
    next_aux: WireId,
}

impl BuildCtx<'_> {
    /// Consume `bits` aux wires, enforce booleanity of each, and return
    /// `sum bits_k * 2^k`.
    fn bit_sum(&mut self, bits: u32) -> WireId {
        let field = self.field;
        let mut terms = Vec::with_capacity(bits as usize);
        for k in 0..bits {
            let bit = self.next_aux;
            self.next_aux += 1;
            // b*b - b == 0 forces each witness wire to be a bit
            let sq = self.b.mul(bit, bit);
            let neg = self.b.mul_const(bit, field.neg(Fe::ONE));
            let e = self.b.add(sq, neg);
            self.b.mark_check(e);
            terms.push(self.b.mul_const(bit, field.from_i128(1i128 << k)));
        }
        self.b.sum(&terms)
    }

    /// Enforce `slack_wire == sum of the next `bits` aux wires weighted by
    /// powers of two`, proving the slack lies in `[0, 2^bits)`.
    fn slack_check(&mut self, slack_wire: WireId, bits: u32) {
        let v = self.bit_sum(bits);
        let field = self.field;
        let e = self.b.sub(field, slack_wire, v);
        self.b.mark_check(e);
    }

    /// `sum u_i^2` over the data wires, optionally shifted by constants.
    fn sum_of_squares(&mut self, dim: usize, shift: Option<&[i128]>) -> WireId {
        let field = self.field;
        let mut terms = Vec::with_capacity(dim);
        for i in 0..dim {
            let w = match shift {
                Some(sh) => self.b.add_const(i, field.from_i128(-sh[i])),
                None => i,
            };
            terms.push(self.b.mul(w, w));
        }
        self.b.sum(&terms)
    }

    /// Inner product with a constant vector (affine: no mul gates).
    fn dot_const(&mut self, dim: usize, coeffs: &[i128]) -> WireId {
        let field = self.field;
        let terms: Vec<WireId> = (0..dim)
            .map(|i| self.b.mul_const(i, field.from_i128(coeffs[i])))
            .collect();
        self.b.sum(&terms)
    }
}

fn emit_predicate(ctx: &mut BuildCtx, spec: &PredicateSpec, dim: usize) {
    let b = spec.slack_bits;
    match &spec.kind {
        PredicateKind::NormBound { rho_sq } => {
            let s = ctx.sum_of_squares(dim, None);
            let field = ctx.field;
            let neg = ctx.b.mul_const(s, field.neg(Fe::ONE));
            let slack = ctx.b.add_const(neg, field.from_i128(rho_sq - 1));
            ctx.slack_check(slack, b);
        }
        PredicateKind::NormBall { center, rho_sq } => {
            let s = ctx.sum_of_squares(dim, Some(center));
            let field = ctx.field;
            let neg = ctx.b.mul_const(s, field.neg(Fe::ONE));
            let slack = ctx.b.add_const(neg, field.from_i128(*rho_sq));
            ctx.slack_check(slack, b);
        }
        PredicateKind::ZenoPp { grad, gamma, rho, eps, norm_sq, band } => {
            let field = ctx.field;
            let s = ctx.sum_of_squares(dim, None);
            let t = ctx.dot_const(dim, grad);
            // X = gamma*T - rho*S + gamma*eps
            let gt = ctx.b.mul_const(t, field.from_i128(*gamma));
            let rs = ctx.b.mul_const(s, field.from_i128(-rho));
            let sum = ctx.b.add(gt, rs);
            let x = ctx.b.add_const(sum, field.from_i128(gamma * eps));
            ctx.slack_check(x, b);
            emit_norm_range(ctx, s, *norm_sq, *band, b);
        }
        PredicateKind::CosineSim { reference, rho, coeff_scale, norm_sq, band } => {
            let field = ctx.field;
            let s = ctx.sum_of_squares(dim, None);
            let t = ctx.dot_const(dim, reference);
            // slack = rho*norm_sq - coeff_scale*T - 1
            let neg_t = ctx.b.mul_const(t, field.from_i128(-coeff_scale));
            let slack = ctx.b.add_const(neg_t, field.from_i128(rho * norm_sq - 1));
            ctx.slack_check(slack, b);
            emit_norm_range(ctx, s, *norm_sq, *band, b);
        }
        PredicateKind::Product(parts) => {
            for p in parts {
                emit_predicate(ctx, p, dim);
            }
        }
    }
}

/// Range-check a sum-of-squares wire against a declared norm:
/// `norm_sq - band <= S <= norm_sq + band`, one slack witness per side.
fn emit_norm_range(ctx: &mut BuildCtx, s: WireId, norm_sq: i128, band: i128, bits: u32) {
    let field = ctx.field;
    let lo = ctx.b.add_const(s, field.from_i128(-(norm_sq - band)));
    ctx.slack_check(lo, bits);
    let neg = ctx.b.mul_const(s, field.neg(Fe::ONE));
    let hi = ctx.b.add_const(neg, field.from_i128(norm_sq + band));
    ctx.slack_check(hi, bits);
}

/// Compile a predicate spec to a circuit over `quant.d` data wires plus the
/// witness wires it needs. The result uses the all-checks-zero convention
/// with a derived `1 - sum(checks)` indicator output.
pub fn build_predicate(
    spec: &PredicateSpec,
    quant: &QuantParams,
    field: &Field,
) -> Result<PredicateCircuit, CircuitError> {
    let dim = quant.d;
    // Soundness of the slack idiom needs all slack magnitudes, and 2^bits,
    // below p/2; otherwise field wrap-around can fake an inequality.
    let worst = worst_slack_magnitude(spec, quant, dim);
    let bits = max_slack_bits(spec);
    let cap = (field.p / 2) as i128;
    if worst >= cap || bits >= 63 || (1i128 << bits) >= cap {
        return Err(CircuitError::SlackOverflow);
    }
    let aux = total_aux_bits(spec);
    let mut builder = CircuitBuilder::new(dim + aux);
    let mut ctx = BuildCtx { field, b: &mut builder, next_aux: dim };
    emit_predicate(&mut ctx, spec, dim);
    debug_assert_eq!(ctx.next_aux, dim + aux);
    let circuit = builder.finish_checks_zero(field);
    circuit.check_soundness_bound(field)?;
    Ok(PredicateCircuit { circuit, spec: spec.clone(), quant: *quant, data_dim: dim })
}

fn max_slack_bits(spec: &PredicateSpec) -> u32 {
    match &spec.kind {
        PredicateKind::Product(parts) => {
            parts.iter().map(max_slack_bits).max().unwrap_or(spec.slack_bits)
        }
        _ => spec.slack_bits,
    }
}

/// A conservative bound on any slack magnitude reachable with coordinates in
/// the quantization range.
fn worst_slack_magnitude(spec: &PredicateSpec, quant: &QuantParams, dim: usize) -> i128 {
    let cmax = quant.coord_bound();
    let s_max = dim as i128 * cmax * cmax;
    match &spec.kind {
        PredicateKind::NormBound { rho_sq } => rho_sq.abs() + s_max,
        PredicateKind::NormBall { center, rho_sq } => {
            let shift_max = center.iter().map(|c| c.abs()).max().unwrap_or(0) + cmax;
            rho_sq.abs() + dim as i128 * shift_max * shift_max
        }
        PredicateKind::ZenoPp { grad, gamma, rho, eps, norm_sq, band } => {
            let g_max: i128 = grad.iter().map(|g| g.abs()).sum();
            let x = gamma.abs() * (g_max * cmax + eps.abs()) + rho.abs() * s_max;
            x.max(s_max + norm_sq.abs() + band.abs())
        }
        PredicateKind::CosineSim { reference, rho, coeff_scale, norm_sq, band } => {
            let r_max: i128 = reference.iter().map(|r| r.abs()).sum();
            let x = rho.abs() * norm_sq.abs() + coeff_scale.abs() * r_max * cmax + 1;
            x.max(s_max + norm_sq.abs() + band.abs())
        }
        PredicateKind::Product(parts) => parts
            .iter()
            .map(|p| worst_slack_magnitude(p, quant, dim))
            .max()
            .unwrap_or(0),
    }
}

/// Equality-disjunction transform: appends `(phi - c_1) * ... * (phi - c_k)`
/// to the builder and marks the product as a check wire (zero iff `phi`
/// equals one of the constants). Adds `k - 1` mul gates.
pub fn equality_product_transform(
    builder: &mut CircuitBuilder,
    field: &Field,
    phi: WireId,
    constants: &[Fe],
) -> WireId {
    assert!(!constants.is_empty());
    let mut acc = builder.add_const(phi, field.neg(constants[0]));
    for &c in &constants[1..] {
        let term = builder.add_const(phi, field.neg(c));
        acc = builder.mul(acc, term);
    }
    builder.mark_check(acc);
    acc
}

/// Merge predicate circuits over the same data wires into one circuit whose
/// check wires are the union, and sample one nonzero combination coefficient
/// per check wire. The server accepts iff `sum l_k * check_k == 0`; a fresh
/// coefficient vector must be sampled after proof shares are committed.
pub fn combine_predicates(
    parts: &[PredicateCircuit],
    field: &Field,
    rng: &mut impl RngCore,
) -> Result<(PredicateCircuit, Vec<Fe>), CircuitError> {
    assert!(!parts.is_empty());
    let dim = parts[0].data_dim;
    let quant = parts[0].quant;
    let total_aux: usize = parts.iter().map(|p| p.aux_count()).sum();
    let mut gates = Vec::new();
    let mut checks = Vec::new();
    let mut aux_base = dim;
    let mut gate_base = dim + total_aux;
    for p in parts {
        assert_eq!(p.data_dim, dim, "predicates must share the data dimension");
        let remap = |w: WireId| -> WireId {
            if w < dim {
                w
            } else if w < p.circuit.num_inputs {
                aux_base + (w - dim)
            } else {
                gate_base + (w - p.circuit.num_inputs)
            }
        };
        for g in &p.circuit.gates {
            gates.push(match *g {
                Gate::Add(a, b) => Gate::Add(remap(a), remap(b)),
                Gate::Mul(a, b) => Gate::Mul(remap(a), remap(b)),
                Gate::AddConst(a, c) => Gate::AddConst(remap(a), c),
                Gate::MulConst(a, c) => Gate::MulConst(remap(a), c),
            });
        }
        checks.extend(p.circuit.check_wires.iter().map(|&w| remap(w)));
        aux_base += p.aux_count();
        gate_base += p.circuit.gates.len();
    }
    let mut builder = CircuitBuilder::new(dim + total_aux);
    for g in gates {
        match g {
            Gate::Add(a, b) => builder.add(a, b),
            Gate::Mul(a, b) => builder.mul(a, b),
            Gate::AddConst(a, c) => builder.add_const(a, c),
            Gate::MulConst(a, c) => builder.mul_const(a, c),
        };
    }
    for &w in &checks {
        builder.mark_check(w);
    }
    let circuit = builder.finish_checks_zero(field);
    circuit.check_soundness_bound(field)?;
    let coeffs: Vec<Fe> = checks.iter().map(|_| field.random_nonzero(rng)).collect();
    let spec = PredicateSpec {
        kind: PredicateKind::Product(parts.iter().map(|p| p.spec.clone()).collect()),
        slack_bits: parts[0].spec.slack_bits,
    };
    Ok((PredicateCircuit { circuit, spec, quant, data_dim: dim }, coeffs))
}

/// Sample one nonzero combination coefficient per check wire of a circuit.
pub fn sample_check_coefficients(
    circuit: &Circuit,
    field: &Field,
    rng: &mut impl RngCore,
) -> Vec<Fe> {
    circuit.check_wires.iter().map(|_| field.random_nonzero(rng)).collect()
}
