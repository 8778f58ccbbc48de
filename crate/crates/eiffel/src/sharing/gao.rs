use super::SharingError;
use crate::ffmath::{lagrange_interpolate, poly_eval, poly_mul, Fe, Field, Polynomial};
use std::collections::BTreeSet;

fn deg(p: &Polynomial) -> i64 {
    if p.is_zero() {
        -1
    } else {
        p.degree() as i64
    }
}

/// Gao's Reed-Solomon decoder over the received points, recovering the unique
/// polynomial of degree < `threshold` within the unique-decoding radius
/// `floor((s - threshold) / 2)` for `s` present points.
///
/// Runs the extended Euclidean algorithm on `(prod (x - x_i), interpolant)`
/// down to the first remainder of degree below `(s + threshold) / 2`, then
/// divides out the error locator. Any of the following is a [`SharingError::DecodeFailure`]:
/// a nonzero division remainder, a quotient degree at or above `threshold`,
/// or a decoded codeword differing from the input in more positions than the
/// radius allows. Within capacity the answer is exact; beyond capacity the
/// decoder fails rather than returning a wrong polynomial silently.
pub fn gao_decode(
    field: &Field,
    points: &[(Fe, Fe)],
    threshold: usize,
) -> Result<(Polynomial, BTreeSet<u64>), SharingError> {
    let s = points.len();
    if s < threshold {
        return Err(SharingError::InsufficientShares { need: threshold, got: s });
    }
    let g1 = lagrange_interpolate(field, points).map_err(|_| SharingError::BadEvalPoints)?;
    let mut g0 = Polynomial::constant(Fe::ONE);
    for &(x, _) in points {
        g0 = poly_mul(field, &g0, &Polynomial::new(vec![field.neg(x), Fe::ONE]));
    }

    // Partial EEA maintaining r = u*g0 + v*g1 (u untracked).
    let stop = (s + threshold) as i64; // stop when 2*deg(r) < s + threshold
    let (mut r0, mut r1) = (g0, g1);
    let (mut v0, mut v1) = (Polynomial::zero(), Polynomial::constant(Fe::ONE));
    while 2 * deg(&r1) >= stop {
        let (q, rem) = r0.divmod(field, &r1);
        r0 = std::mem::replace(&mut r1, rem);
        let v_next = v0.sub(field, &poly_mul(field, &q, &v1));
        v0 = std::mem::replace(&mut v1, v_next);
    }

    if v1.is_zero() {
        return Err(SharingError::DecodeFailure);
    }
    let (decoded, rem) = r1.divmod(field, &v1);
    if !rem.is_zero() || deg(&decoded) >= threshold as i64 {
        return Err(SharingError::DecodeFailure);
    }

    let mut mismatches = BTreeSet::new();
    for &(x, y) in points {
        if poly_eval(field, &decoded, x) != y {
            mismatches.insert(x.0);
        }
    }
    if 2 * mismatches.len() > s - threshold {
        return Err(SharingError::DecodeFailure);
    }
    Ok((decoded, mismatches))
}
