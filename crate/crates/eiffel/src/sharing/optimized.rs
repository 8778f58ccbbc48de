use super::{gao_decode, ReconReport, SharingError};
use crate::ffmath::{lagrange_interpolate, poly_eval, Fe, Field};
use rand::RngCore;
use std::collections::BTreeSet;

fn sample_subset(rng: &mut impl RngCore, pool: usize, size: usize) -> Vec<usize> {
    // Fisher-Yates prefix.
    let mut idx: Vec<usize> = (0..pool).collect();
    for i in 0..size {
        let j = i + (rng.next_u64() as usize) % (pool - i);
        idx.swap(i, j);
    }
    idx.truncate(size);
    idx
}

/// Probabilistic reconstruction: decode two random subsets of size
/// `3m - 2e + 1` (each within its own correction capacity for `m - e`
/// residual errors) and accept only when both decode to the identical
/// polynomial. `m` is the malicious bound, `e` the number already detected.
pub fn probabilistic_verify_recon(
    field: &Field,
    shares: &[(Fe, Fe)],
    m: usize,
    e: usize,
    threshold: usize,
    rng: &mut impl RngCore,
) -> Result<ReconReport, SharingError> {
    let size = (3 * m + 1).saturating_sub(2 * e).max(threshold);
    if shares.len() < size {
        return Err(SharingError::InsufficientShares { need: size, got: shares.len() });
    }
    // The two subsets are independent draws and may overlap.
    let s1: Vec<(Fe, Fe)> =
        sample_subset(rng, shares.len(), size).into_iter().map(|i| shares[i]).collect();
    let s2: Vec<(Fe, Fe)> =
        sample_subset(rng, shares.len(), size).into_iter().map(|i| shares[i]).collect();
    let (p1, _) = gao_decode(field, &s1, threshold)?;
    let (p2, _) = gao_decode(field, &s2, threshold)?;
    if p1 != p2 {
        return Err(SharingError::DecodeFailure);
    }
    let mut error_locations = BTreeSet::new();
    for &(x, y) in shares {
        if poly_eval(field, &p1, x) != y {
            error_locations.insert(x.0);
        }
    }
    Ok(ReconReport { secret: p1.constant_term(), polynomial: p1, error_locations })
}

/// Partition reconstruction: shuffle the shares into at least
/// `q_remaining + 2` disjoint partitions of size `m + 1`, interpolate the
/// full degree-m polynomial of each, and accept a polynomial reproduced by at
/// least two partitions. With at most `q_remaining` corrupt shares, the
/// pigeonhole principle leaves two all-honest partitions that must agree.
pub fn partition_recon(
    field: &Field,
    shares: &[(Fe, Fe)],
    m: usize,
    q_remaining: usize,
    rng: &mut impl RngCore,
) -> Result<ReconReport, SharingError> {
    let part_size = m + 1;
    let want = q_remaining + 2;
    let parts_avail = shares.len() / part_size;
    if parts_avail < want {
        return Err(SharingError::InsufficientShares {
            need: want * part_size,
            got: shares.len(),
        });
    }
    let order = sample_subset(rng, shares.len(), parts_avail * part_size);
    let mut polys = Vec::with_capacity(parts_avail);
    for chunk in order.chunks_exact(part_size) {
        let pts: Vec<(Fe, Fe)> = chunk.iter().map(|&i| shares[i]).collect();
        let p = lagrange_interpolate(field, &pts).map_err(|_| SharingError::BadEvalPoints)?;
        polys.push(p);
    }
    // Find a polynomial reproduced by >= 2 partitions; ambiguity (two
    // different repeated polynomials) is a decode failure.
    let mut winner = None;
    for i in 0..polys.len() {
        if polys[i + 1..].contains(&polys[i]) {
            match &winner {
                None => winner = Some(polys[i].clone()),
                Some(w) if *w == polys[i] => {}
                Some(_) => return Err(SharingError::DecodeFailure),
            }
        }
    }
    let Some(poly) = winner else {
        return Err(SharingError::DecodeFailure);
    };
    let mut error_locations = BTreeSet::new();
    for &(x, y) in shares {
        if poly_eval(field, &poly, x) != y {
            error_locations.insert(x.0);
        }
    }
    Ok(ReconReport { secret: poly.constant_term(), polynomial: poly, error_locations })
}
