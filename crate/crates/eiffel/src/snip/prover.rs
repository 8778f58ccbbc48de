use super::SnipError;
use crate::circuit::{Circuit, WireTrace};
use crate::exec;
use crate::ffmath::{
    lagrange_interpolate, poly_eval, poly_mul, Fe, Field, FieldParams, Polynomial,
};
use crate::sharing::{feldman_commit, sharing_polynomial, CheckString};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The prover's proof material: `h = f * g` by coefficients, one Beaver
/// triple with `a * b = c`, and the random anchors `f(0)`, `g(0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnipProof {
    pub h: Polynomial,
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub f0: Fe,
    pub g0: Fe,
}

/// Evaluate the circuit and construct the proof.
///
/// `f` and `g` interpolate the left/right input wires of the multiplication
/// gates at nodes `1..=M`, anchored by fresh uniform values at 0; `h` is
/// their product, so `h(j)` is the j-th gate's output wire. A circuit with
/// no multiplication gates degenerates to constant polynomials and the
/// Beaver triple.
pub fn prove(
    field: &Field,
    circuit: &Circuit,
    inputs: &[Fe],
    rng: &mut impl RngCore,
) -> Result<(WireTrace, SnipProof), SnipError> {
    let mgates = circuit.mul_gates();
    let m_count = mgates.len();
    if m_count as u64 + 1 > field.p {
        return Err(SnipError::FieldTooSmall { m: m_count, p: field.p });
    }
    let trace = circuit
        .evaluate(field, inputs)
        .map_err(|_| SnipError::BadThreshold { t: 0, n: inputs.len() })?;

    let f0 = field.random(rng);
    let g0 = field.random(rng);
    let mut f_pts = vec![(Fe::ZERO, f0)];
    let mut g_pts = vec![(Fe::ZERO, g0)];
    for (label, &(_, l, r)) in mgates.iter().enumerate() {
        let x = field.elem(label as u64 + 1);
        f_pts.push((x, trace.values[l]));
        g_pts.push((x, trace.values[r]));
    }
    let f = lagrange_interpolate(field, &f_pts).expect("nodes are distinct");
    let g = lagrange_interpolate(field, &g_pts).expect("nodes are distinct");
    let h = poly_mul(field, &f, &g);

    let a = field.random(rng);
    let b = field.random(rng);
    let c = field.mul(a, b);
    Ok((trace, SnipProof { h, a, b, c, f0, g0 }))
}

/// `h` padded to its positional length `2M + 1`, the shape every share
/// bundle uses regardless of accidental degree drops.
pub fn pad_h_coeffs(proof: &SnipProof, m_count: usize) -> Vec<Fe> {
    let mut coeffs = proof.h.coeffs.clone();
    coeffs.resize(2 * m_count + 1, Fe::ZERO);
    coeffs
}

/// One recipient's shares of everything the prover distributes, all at the
/// recipient's evaluation point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipientShares {
    pub input: Vec<Fe>,
    pub h: Vec<Fe>,
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub f0: Fe,
    pub g0: Fe,
}

/// Feldman check strings for every shared component, published in the clear.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofChecks {
    pub input: Vec<CheckString>,
    pub h: Vec<CheckString>,
    pub a: CheckString,
    pub b: CheckString,
    pub c: CheckString,
    pub f0: CheckString,
    pub g0: CheckString,
}

/// The full sharing of one prover's input and proof. Input shares span all
/// `n` points including the prover's own (`input_self_share`); proof shares
/// span the other `n - 1` points only.
#[derive(Debug, Clone)]
pub struct ProofShareBundle {
    pub prover: u64,
    pub input_self_share: Vec<Fe>,
    pub recipients: BTreeMap<u64, RecipientShares>,
    pub checks: ProofChecks,
}

/// Share the prover's input vector and proof with threshold `m + 1`.
pub fn split_proof(
    params: &FieldParams,
    proof: &SnipProof,
    inputs: &[Fe],
    m_count: usize,
    n: usize,
    m: usize,
    prover: u64,
    rng: &mut impl RngCore,
) -> Result<ProofShareBundle, SnipError> {
    let t = m + 1;
    if t > n - 1 {
        return Err(SnipError::BadThreshold { t, n: n - 1 });
    }
    let field = &params.field;
    let all_points: Vec<Fe> = (1..=n as u64).map(Fe).collect();
    let peer_points: Vec<Fe> = (1..=n as u64).filter(|&i| i != prover).map(Fe).collect();

    // One secret per row: input dims over all points, then proof components
    // over peer points. Per-row seeds keep parallel and sequential sharing
    // identical.
    let mut proof_secrets = pad_h_coeffs(proof, m_count);
    proof_secrets.extend([proof.a, proof.b, proof.c, proof.f0, proof.g0]);

    let in_seeds: Vec<u64> = (0..inputs.len()).map(|_| rng.next_u64()).collect();
    let pr_seeds: Vec<u64> = (0..proof_secrets.len()).map(|_| rng.next_u64()).collect();

    let input_polys: Vec<Polynomial> = exec::map(inputs.len(), |dim| {
        use rand::SeedableRng;
        let mut r = rand_chacha::ChaCha12Rng::seed_from_u64(in_seeds[dim]);
        sharing_polynomial(field, inputs[dim], &all_points, t, &mut r).expect("valid points")
    });
    let proof_polys: Vec<Polynomial> = exec::map(proof_secrets.len(), |k| {
        use rand::SeedableRng;
        let mut r = rand_chacha::ChaCha12Rng::seed_from_u64(pr_seeds[k]);
        sharing_polynomial(field, proof_secrets[k], &peer_points, t, &mut r).expect("valid points")
    });

    let input_checks: Vec<CheckString> =
        exec::map(input_polys.len(), |k| feldman_commit(params, &input_polys[k], t));
    let proof_checks: Vec<CheckString> =
        exec::map(proof_polys.len(), |k| feldman_commit(params, &proof_polys[k], t));

    let h_len = 2 * m_count + 1;
    let mut recipients = BTreeMap::new();
    let rows: Vec<(u64, RecipientShares)> = exec::map(peer_points.len(), |idx| {
        let pt = peer_points[idx];
        let input: Vec<Fe> = input_polys.iter().map(|p| poly_eval(field, p, pt)).collect();
        let proof_vals: Vec<Fe> = proof_polys.iter().map(|p| poly_eval(field, p, pt)).collect();
        (
            pt.0,
            RecipientShares {
                input,
                h: proof_vals[..h_len].to_vec(),
                a: proof_vals[h_len],
                b: proof_vals[h_len + 1],
                c: proof_vals[h_len + 2],
                f0: proof_vals[h_len + 3],
                g0: proof_vals[h_len + 4],
            },
        )
    });
    for (id, shares) in rows {
        recipients.insert(id, shares);
    }
    let input_self_share: Vec<Fe> =
        input_polys.iter().map(|p| poly_eval(field, p, Fe(prover))).collect();

    let mut hc = proof_checks;
    let tail = hc.split_off(h_len);
    let [a, b, c, f0, g0]: [CheckString; 5] = tail.try_into().expect("five scalar components");
    Ok(ProofShareBundle {
        prover,
        input_self_share,
        recipients,
        checks: ProofChecks { input: input_checks, h: hc, a, b, c, f0, g0 },
    })
}
