use super::{RecipientShares, SnipError};
use crate::circuit::{Circuit, Gate, OutputConvention};
use crate::ffmath::{lagrange_coeffs_at, Fe, Field};
use serde::{Deserialize, Serialize};

/// A verifier's published summary for one prover: its share of the combined
/// check wire and of the digest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub w_out: Fe,
    pub lambda: Fe,
}

/// The Beaver path's first stage: the check-wire share plus this verifier's
/// shares of the masked openings `d = f(r) - a` and `e = r*g(r) - b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeaverPart {
    pub w_out: Fe,
    pub d: Fe,
    pub e: Fe,
}

/// Derive this verifier's share of every circuit wire from its input shares
/// and `h` shares: inputs verbatim, affine gates by the same affine ops on
/// shares, multiplication gate `j` by evaluating the shared `h` at `j`.
pub fn derive_wire_shares(field: &Field, circuit: &Circuit, shares: &RecipientShares) -> Vec<Fe> {
    let mut values = Vec::with_capacity(circuit.num_wires());
    values.extend_from_slice(&shares.input);
    let mut mul_label = 0u64;
    for g in &circuit.gates {
        let v = match *g {
            Gate::Add(a, b) => field.add(values[a], values[b]),
            Gate::AddConst(a, c) => field.add(values[a], c),
            Gate::MulConst(a, c) => field.mul(values[a], c),
            Gate::Mul(_, _) => {
                mul_label += 1;
                eval_share_poly(field, &shares.h, field.elem(mul_label))
            }
        };
        values.push(v);
    }
    values
}

/// Horner evaluation of a share-coefficient vector.
fn eval_share_poly(field: &Field, coeffs: &[Fe], x: Fe) -> Fe {
    let mut acc = Fe::ZERO;
    for &c in coeffs.iter().rev() {
        acc = field.add(field.mul(acc, x), c);
    }
    acc
}

/// The share of the combined check value: `sum coeffs[k] * check_k`. For
/// one-is-valid circuits this is just the output wire share (single check
/// wire, unit coefficient).
pub fn combined_check_share(
    field: &Field,
    circuit: &Circuit,
    wire_shares: &[Fe],
    coeffs: &[Fe],
) -> Fe {
    debug_assert_eq!(coeffs.len(), circuit.check_wires.len());
    let mut acc = Fe::ZERO;
    for (&w, &l) in circuit.check_wires.iter().zip(coeffs) {
        acc = field.add(acc, field.mul(l, wire_shares[w]));
    }
    acc
}

/// The value the combined check must reconstruct to.
pub fn check_target(circuit: &Circuit, field: &Field, coeffs: &[Fe]) -> Fe {
    match circuit.convention {
        // the single check wire is the output itself; target sum coeffs * 1
        OutputConvention::OneIsValid => {
            let mut acc = Fe::ZERO;
            for &l in coeffs {
                acc = field.add(acc, l);
            }
            acc
        }
        OutputConvention::AllChecksZero => Fe::ZERO,
    }
}

/// Precomputed Lagrange evaluation at the challenge point over the digest
/// nodes `0..=M`, shared by every (verifier, prover) pair of a round.
pub struct DigestPoints {
    pub r: Fe,
    coeffs: Vec<Fe>,
}

impl DigestPoints {
    pub fn new(field: &Field, m_count: usize, r: Fe) -> Self {
        let nodes: Vec<Fe> = (0..=m_count as u64).map(|j| field.elem(j)).collect();
        DigestPoints { r, coeffs: lagrange_coeffs_at(field, &nodes, r) }
    }

    /// Share of `f(r)` from the anchor share and the mult-gate left/right
    /// input wire shares (interpolation is linear, so it maps shares to a
    /// share of the evaluation).
    fn eval_at_r(&self, field: &Field, anchor: Fe, node_shares: &[Fe]) -> Fe {
        let mut acc = field.mul(self.coeffs[0], anchor);
        for (k, &s) in node_shares.iter().enumerate() {
            acc = field.add(acc, field.mul(self.coeffs[k + 1], s));
        }
        acc
    }
}

fn fg_node_shares(circuit: &Circuit, wire_shares: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
    let mgates = circuit.mul_gates();
    let f: Vec<Fe> = mgates.iter().map(|&(_, l, _)| wire_shares[l]).collect();
    let g: Vec<Fe> = mgates.iter().map(|&(_, _, r)| wire_shares[r]).collect();
    (f, g)
}

/// Beaver-path stage one, run locally by each verifier: the combined check
/// share and the `d`/`e` shares to broadcast.
pub fn compute_summary_beaver(
    field: &Field,
    circuit: &Circuit,
    wire_shares: &[Fe],
    shares: &RecipientShares,
    digest: &DigestPoints,
    coeffs: &[Fe],
) -> BeaverPart {
    let (f_nodes, g_nodes) = fg_node_shares(circuit, wire_shares);
    let f_r = digest.eval_at_r(field, shares.f0, &f_nodes);
    let g_r = digest.eval_at_r(field, shares.g0, &g_nodes);
    BeaverPart {
        w_out: combined_check_share(field, circuit, wire_shares, coeffs),
        d: field.sub(f_r, shares.a),
        e: field.sub(field.mul(digest.r, g_r), shares.b),
    }
}

/// Beaver-path stage two, after `d` and `e` are reconstructed and published:
/// the digest share `d*e + d*b + e*a + c - r*h(r)`, which reconstructs to
/// `r*(f(r)*g(r) - h(r))`.
pub fn beaver_lambda_stage(
    field: &Field,
    d: Fe,
    e: Fe,
    shares: &RecipientShares,
    r: Fe,
) -> Fe {
    let h_r = eval_share_poly(field, &shares.h, r);
    let mut acc = field.mul(d, e);
    acc = field.add(acc, field.mul(d, shares.b));
    acc = field.add(acc, field.mul(e, shares.a));
    acc = field.add(acc, shares.c);
    field.sub(acc, field.mul(r, h_r))
}

/// `m < (n-1)/4`, the applicability condition of the multiplicative path.
pub fn multiplicative_applicable(n: usize, m: usize) -> bool {
    4 * m < n - 1
}

/// Multiplicative digest path: multiply the local `f(r)` and `r*g(r)` shares
/// directly, lifting `r*h(r)` by a share of the constant 1 so all terms lie
/// on one degree-`2m` polynomial. No broadcast round; needs `m < (n-1)/4`.
#[allow(clippy::too_many_arguments)]
pub fn compute_summary_multiplicative(
    field: &Field,
    circuit: &Circuit,
    wire_shares: &[Fe],
    shares: &RecipientShares,
    digest: &DigestPoints,
    coeffs: &[Fe],
    z_share: Fe,
    n: usize,
    m: usize,
) -> Result<Summary, SnipError> {
    if !multiplicative_applicable(n, m) {
        return Err(SnipError::NotApplicable { n, m });
    }
    let (f_nodes, g_nodes) = fg_node_shares(circuit, wire_shares);
    let f_r = digest.eval_at_r(field, shares.f0, &f_nodes);
    let g_r = digest.eval_at_r(field, shares.g0, &g_nodes);
    let h_r = eval_share_poly(field, &shares.h, digest.r);
    let prod = field.mul(f_r, field.mul(digest.r, g_r));
    let lifted = field.mul(field.mul(digest.r, h_r), z_share);
    Ok(Summary {
        w_out: combined_check_share(field, circuit, wire_shares, coeffs),
        lambda: field.sub(prod, lifted),
    })
}
