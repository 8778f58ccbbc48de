//! Verifiable Shamir secret sharing with robust reconstruction.
//!
//! Sharing is t-of-n over the data field: a secret `s` rides as the constant
//! term of a random degree-(t-1) polynomial evaluated at distinct nonzero
//! points (client `i` always evaluates at field element `i`; erasures are
//! absent indices, never sentinels). Each sharing carries a Feldman check
//! string — commitments to the polynomial coefficients in the commitment
//! group — so any holder can verify a share in isolation.
//!
//! Reconstruction comes in four strengths:
//! * [`ss_recon`] — plain interpolation, honest shares only.
//! * [`ss_robust_recon`] — Gao's Reed-Solomon decoder; exact against `q`
//!   errors and `e` erasures whenever `2q + e < n - t + 1`, and never silently
//!   wrong at or beyond that boundary.
//! * [`probabilistic_verify_recon`] — decodes two random subsets and accepts
//!   only if they agree; trades a combinatorially small failure probability
//!   for skipping per-share verification.
//! * [`partition_recon`] — splits shares into disjoint partitions of size
//!   t and accepts a polynomial reproduced by at least two partitions.

mod feldman;
mod gao;
mod optimized;

pub use feldman::{feldman_commit, ss_verify, CheckString};
pub use gao::gao_decode;
pub use optimized::{partition_recon, probabilistic_verify_recon};

use crate::exec;
use crate::ffmath::{lagrange_interpolate, poly_eval, Fe, Field, FieldParams, Polynomial};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SharingError {
    #[error("threshold {t} exceeds the number of evaluation points {n}")]
    BadThreshold { t: usize, n: usize },
    #[error("evaluation points must be distinct and nonzero")]
    BadEvalPoints,
    #[error("need at least {need} shares, got {got}")]
    InsufficientShares { need: usize, got: usize },
    #[error("decoding failed: corruption beyond capacity or inconsistent shares")]
    DecodeFailure,
}

/// Shamir shares of one secret: points `(i, p(i))` on a degree-(t-1)
/// polynomial with `p(0)` the secret.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareSet {
    pub threshold: usize,
    pub points: Vec<(Fe, Fe)>,
}

impl ShareSet {
    pub fn secret_degree(&self) -> usize {
        self.threshold - 1
    }

    pub fn value_at(&self, index: Fe) -> Option<Fe> {
        self.points.iter().find(|(i, _)| *i == index).map(|&(_, v)| v)
    }
}

/// Result of a robust reconstruction, with decoder diagnostics: the indices
/// where the input disagreed with the decoded codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconReport {
    pub secret: Fe,
    pub polynomial: Polynomial,
    pub error_locations: BTreeSet<u64>,
}

/// Share `secret` at `eval_points` with threshold `t`, producing the share
/// set and the Feldman check string over the commitment group.
pub fn ss_share(
    params: &FieldParams,
    secret: Fe,
    eval_points: &[Fe],
    threshold: usize,
    rng: &mut impl RngCore,
) -> Result<(ShareSet, CheckString), SharingError> {
    let poly = sharing_polynomial(&params.field, secret, eval_points, threshold, rng)?;
    let check = feldman_commit(params, &poly, threshold);
    let points = eval_points
        .iter()
        .map(|&x| (x, poly_eval(&params.field, &poly, x)))
        .collect();
    Ok((ShareSet { threshold, points }, check))
}

/// The random sharing polynomial itself; exposed for callers that commit to
/// many secrets in one batch.
pub(crate) fn sharing_polynomial(
    field: &Field,
    secret: Fe,
    eval_points: &[Fe],
    threshold: usize,
    rng: &mut impl RngCore,
) -> Result<Polynomial, SharingError> {
    if threshold == 0 || threshold > eval_points.len() {
        return Err(SharingError::BadThreshold { t: threshold, n: eval_points.len() });
    }
    let mut seen = BTreeSet::new();
    for &x in eval_points {
        if x == Fe::ZERO || !seen.insert(x.0) {
            return Err(SharingError::BadEvalPoints);
        }
    }
    let mut coeffs = Vec::with_capacity(threshold);
    coeffs.push(secret);
    for _ in 1..threshold {
        coeffs.push(field.random(rng));
    }
    // Keep the stated coefficient count even if the top coefficient sampled
    // to zero: check strings and share verification are positional in t.
    Ok(Polynomial { coeffs })
}

/// Plain reconstruction: interpolate and take the constant term. Requires at
/// least `t` distinct-index shares and assumes they are consistent.
pub fn ss_recon(field: &Field, shares: &[(Fe, Fe)], threshold: usize) -> Result<Fe, SharingError> {
    if shares.len() < threshold {
        return Err(SharingError::InsufficientShares { need: threshold, got: shares.len() });
    }
    let poly = lagrange_interpolate(field, shares).map_err(|_| SharingError::BadEvalPoints)?;
    Ok(poly.constant_term())
}

/// Robust reconstruction via Gao decoding. `expected_n` is the nominal code
/// length (shares that should exist); absent indices are erasures. Fails
/// loudly (never silently wrong) when corruption exceeds capacity.
pub fn ss_robust_recon(
    field: &Field,
    shares: &[(Fe, Fe)],
    expected_n: usize,
    threshold: usize,
) -> Result<ReconReport, SharingError> {
    debug_assert!(shares.len() <= expected_n);
    if shares.len() < threshold {
        return Err(SharingError::InsufficientShares { need: threshold, got: shares.len() });
    }
    let (poly, error_locations) = gao_decode(field, shares, threshold)?;
    Ok(ReconReport { secret: poly.constant_term(), polynomial: poly, error_locations })
}

/// Which robust reconstruction the server runs on proof summaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReconStrategy {
    /// Gao decoding over all present shares; exact within capacity.
    Gao,
    /// Two random subsets of size `3m - 2e + 1`, accepted only on agreement.
    Probabilistic,
    /// At least `q + 2` disjoint partitions of size `m + 1`; two must agree.
    Partition,
}

/// Robust reconstruction dispatched by strategy. `m` is the malicious bound
/// and `detected` the number of parties already identified (the `e` of the
/// optimized variants).
pub fn robust_recon_with(
    field: &Field,
    shares: &[(Fe, Fe)],
    expected_n: usize,
    threshold: usize,
    strategy: ReconStrategy,
    m: usize,
    detected: usize,
    rng: &mut impl RngCore,
) -> Result<ReconReport, SharingError> {
    match strategy {
        ReconStrategy::Gao => ss_robust_recon(field, shares, expected_n, threshold),
        ReconStrategy::Probabilistic => {
            probabilistic_verify_recon(field, shares, m, detected, threshold, rng)
        }
        ReconStrategy::Partition => {
            let q_remaining = m.saturating_sub(detected);
            partition_recon(field, shares, threshold - 1, q_remaining, rng)
        }
    }
}

/// Dimension-wise sharing of a vector secret: independent random polynomials
/// per dimension, one check string per dimension. Shares come out transposed
/// per evaluation point: `per_point[k][dim]` is the share of dimension `dim`
/// at `eval_points[k]`.
pub struct VectorSharing {
    pub per_point: Vec<Vec<Fe>>,
    pub checks: Vec<CheckString>,
}

pub fn share_vector(
    params: &FieldParams,
    secrets: &[Fe],
    eval_points: &[Fe],
    threshold: usize,
    rng: &mut impl RngCore,
) -> Result<VectorSharing, SharingError> {
    // Derive per-dimension seeds up front so the parallel and sequential
    // paths draw identical randomness.
    let seeds: Vec<u64> = (0..secrets.len()).map(|_| rng.next_u64()).collect();
    let polys: Vec<Result<Polynomial, SharingError>> = exec::map(secrets.len(), |dim| {
        use rand::SeedableRng;
        let mut dim_rng = rand_chacha::ChaCha12Rng::seed_from_u64(seeds[dim]);
        sharing_polynomial(&params.field, secrets[dim], eval_points, threshold, &mut dim_rng)
    });
    let mut ps = Vec::with_capacity(polys.len());
    for p in polys {
        ps.push(p?);
    }
    let checks: Vec<CheckString> =
        exec::map(ps.len(), |dim| feldman_commit(params, &ps[dim], threshold));
    let per_point: Vec<Vec<Fe>> = exec::map(eval_points.len(), |k| {
        ps.iter().map(|p| poly_eval(&params.field, p, eval_points[k])).collect()
    });
    Ok(VectorSharing { per_point, checks })
}

/// Dimension-wise robust reconstruction of a vector secret from per-point
/// share vectors. All dimensions must decode; error locations are unioned.
pub fn robust_recon_vector(
    field: &Field,
    shares: &[(Fe, Vec<Fe>)],
    expected_n: usize,
    threshold: usize,
) -> Result<(Vec<Fe>, BTreeSet<u64>), SharingError> {
    if shares.is_empty() {
        return Err(SharingError::InsufficientShares { need: threshold, got: 0 });
    }
    let dims = shares[0].1.len();
    let reports: Vec<Result<ReconReport, SharingError>> = exec::map(dims, |dim| {
        let pts: Vec<(Fe, Fe)> = shares.iter().map(|(i, v)| (*i, v[dim])).collect();
        ss_robust_recon(field, &pts, expected_n, threshold)
    });
    let mut secret = Vec::with_capacity(dims);
    let mut locs = BTreeSet::new();
    for r in reports {
        let r = r?;
        secret.push(r.secret);
        locs.extend(r.error_locations);
    }
    Ok((secret, locs))
}

#[cfg(test)]
mod tests;
