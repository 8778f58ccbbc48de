//! Secret-shared non-interactive proofs over Shamir shares.
//!
//! The prover evaluates the validation circuit, encodes the multiplication
//! gates into polynomials `f`, `g` (inputs, with random anchors at 0) and
//! `h = f * g` (outputs), and shares its input vector, the coefficients of
//! `h`, the Beaver triple `(a, b, c)` and the anchors `f(0), g(0)` among the
//! other clients with threshold `m + 1`. The input is shared over all `n`
//! evaluation points (the prover keeps its own share); proof components skip
//! the prover's point.
//!
//! Each verifier derives shares of every circuit wire by affine operations —
//! multiplication-gate outputs come from evaluating the shared `h` at the
//! gate label — and publishes a summary: its share of the (combined) check
//! wire and of the Schwartz-Zippel digest `lambda = r*(f(r)g(r) - h(r))`.
//! The digest share is produced either through the Beaver triple (one extra
//! broadcast of `d = f(r) - a`, `e = r*g(r) - b`) or, when `m < (n-1)/4`,
//! by multiplying shares locally at the cost of doubling the polynomial
//! degree. The server robustly reconstructs summaries and accepts iff the
//! check target holds and the digest is zero.

mod prover;
mod verifier;

pub use prover::{
    pad_h_coeffs, prove, split_proof, ProofChecks, ProofShareBundle, RecipientShares, SnipProof,
};
pub use verifier::{
    beaver_lambda_stage, check_target, combined_check_share, compute_summary_beaver,
    compute_summary_multiplicative, derive_wire_shares, multiplicative_applicable, BeaverPart,
    DigestPoints, Summary,
};

use crate::ffmath::{Fe, Field};
use crate::sharing::{robust_recon_with, ReconStrategy, SharingError};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SnipError {
    #[error("threshold m+1 = {t} must not exceed the {n} available verifier points")]
    BadThreshold { t: usize, n: usize },
    #[error("circuit has {m} multiplication gates; nodes 0..=M must be distinct mod p={p}")]
    FieldTooSmall { m: usize, p: u64 },
    #[error("multiplicative digest path requires m < (n-1)/4, got n={n} m={m}")]
    NotApplicable { n: usize, m: usize },
    #[error(transparent)]
    Sharing(#[from] SharingError),
}

/// Which digest path the verifiers use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DigestPath {
    Beaver,
    Multiplicative,
}

/// Outcome of robust summary verification for one prover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyOutcome {
    Accepted,
    Rejected,
    /// Verifiers that were expected to submit summaries but did not.
    Withheld(Vec<u64>),
}

/// Full verdict, keeping the reconstructed values and decoder diagnostics.
#[derive(Debug, Clone)]
pub struct SummaryVerdict {
    pub withheld: Vec<u64>,
    pub accepted: bool,
    pub w_out: Fe,
    pub lambda: Fe,
    pub error_locations: BTreeSet<u64>,
}

impl SummaryVerdict {
    pub fn outcome(&self) -> VerifyOutcome {
        if !self.withheld.is_empty() {
            VerifyOutcome::Withheld(self.withheld.clone())
        } else if self.accepted {
            VerifyOutcome::Accepted
        } else {
            VerifyOutcome::Rejected
        }
    }
}

/// Robustly reconstruct and check one prover's summaries.
///
/// `w_shares` and `lambda_shares` map verifier id to that verifier's summary
/// components; `expected` lists the verifiers obliged to submit. `target` is
/// the check wire's accept value (1 or 0 by convention). The digest shares
/// lie on a degree-`2m` polynomial under the multiplicative path, so the
/// lambda threshold is passed separately.
#[allow(clippy::too_many_arguments)]
pub fn verify_summaries(
    field: &Field,
    w_shares: &BTreeMap<u64, Fe>,
    lambda_shares: &BTreeMap<u64, Fe>,
    expected: &BTreeSet<u64>,
    n: usize,
    m: usize,
    detected: usize,
    target: Fe,
    lambda_threshold: usize,
    strategy: ReconStrategy,
    rng: &mut impl RngCore,
) -> Result<SummaryVerdict, SnipError> {
    let withheld: Vec<u64> = expected
        .iter()
        .copied()
        .filter(|v| !w_shares.contains_key(v) || !lambda_shares.contains_key(v))
        .collect();
    let gather = |m_: &BTreeMap<u64, Fe>| -> Vec<(Fe, Fe)> {
        m_.iter().filter(|(k, _)| expected.contains(k)).map(|(&k, &v)| (Fe(k), v)).collect()
    };
    let w = robust_recon_with(field, &gather(w_shares), n, m + 1, strategy, m, detected, rng)?;
    let l = robust_recon_with(
        field,
        &gather(lambda_shares),
        n,
        lambda_threshold,
        strategy,
        m,
        detected,
        rng,
    )?;
    let mut error_locations = w.error_locations;
    error_locations.extend(l.error_locations);
    Ok(SummaryVerdict {
        withheld,
        accepted: w.secret == target && l.secret == Fe::ZERO,
        w_out: w.secret,
        lambda: l.secret,
        error_locations,
    })
}
