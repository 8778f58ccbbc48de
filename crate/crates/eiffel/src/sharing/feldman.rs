use crate::ffmath::{Fe, FieldParams, Polynomial};
use serde::{Deserialize, Serialize};

/// Feldman check string: commitments `psi_k = g^{c_k}` to the sharing
/// polynomial coefficients, in the commitment group. Length equals the
/// sharing threshold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckString {
    pub commitments: Vec<u64>,
}

/// Commit to the first `threshold` coefficients of the sharing polynomial.
pub fn feldman_commit(params: &FieldParams, poly: &Polynomial, threshold: usize) -> CheckString {
    let mut commitments = Vec::with_capacity(threshold);
    for k in 0..threshold {
        let c = poly.coeffs.get(k).copied().unwrap_or(Fe::ZERO);
        commitments.push(params.commit.commit(c));
    }
    CheckString { commitments }
}

/// Check `g^{v} == prod_k psi_k^{i^k}` for the share `(i, v)`. Exponents
/// reduce mod the generator's order, which is the data-field modulus.
pub fn ss_verify(params: &FieldParams, share: (Fe, Fe), check: &CheckString) -> bool {
    let grp = &params.commit;
    let field = &params.field;
    let (index, value) = share;
    let lhs = grp.commit(value);
    let mut rhs = 1u64;
    let mut x_pow = Fe::ONE;
    for &psi in &check.commitments {
        rhs = grp.mul(rhs, grp.pow(psi, x_pow.0));
        x_pow = field.mul(x_pow, index);
    }
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffmath::Field;
    use crate::sharing::ss_share;
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn points(n: u64) -> Vec<Fe> {
        (1..=n).map(Fe).collect()
    }

    #[test]
    fn honest_shares_verify() {
        let params = FieldParams::toy_17();
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for _ in 0..50 {
            let secret = params.field.random(&mut rng);
            let (shares, check) = ss_share(&params, secret, &points(6), 3, &mut rng).unwrap();
            for &pt in &shares.points {
                assert!(ss_verify(&params, pt, &check));
            }
        }
    }

    #[test]
    fn incremented_share_values_all_fail() {
        // Brute-check every single-increment corruption of a small share set.
        let params = FieldParams::toy_17();
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let (shares, check) = ss_share(&params, Fe(7), &points(5), 3, &mut rng).unwrap();
        for &(i, v) in &shares.points {
            let bad = (i, params.field.add(v, Fe::ONE));
            assert!(!ss_verify(&params, bad, &check));
        }
    }

    #[test]
    fn swapped_index_rejected_empirically() {
        // 1000 random swaps across fresh sharings; expect zero false accepts.
        let params = FieldParams::default_56bit();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let mut false_accepts = 0u32;
        for _ in 0..250 {
            let secret = params.field.random(&mut rng);
            let (shares, check) = ss_share(&params, secret, &points(5), 3, &mut rng).unwrap();
            for _ in 0..4 {
                let a = (rng.next_u64() % 5) as usize;
                let b = loop {
                    let b = (rng.next_u64() % 5) as usize;
                    if b != a {
                        break b;
                    }
                };
                let swapped = (shares.points[b].0, shares.points[a].1);
                if ss_verify(&params, swapped, &check) {
                    false_accepts += 1;
                }
            }
        }
        assert_eq!(false_accepts, 0);
    }

    #[test]
    fn any_t_verified_shares_reconstruct_committed_secret() {
        // Feldman soundness: shares that all pass verification against one
        // check string reconstruct the unique committed secret.
        let params = FieldParams::toy_17();
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        for _ in 0..50 {
            let secret = params.field.random(&mut rng);
            let (shares, check) = ss_share(&params, secret, &points(6), 3, &mut rng).unwrap();
            // every 3-subset of honest shares passes and reconstructs
            for a in 0..6 {
                for b in (a + 1)..6 {
                    for c in (b + 1)..6 {
                        let subset = [shares.points[a], shares.points[b], shares.points[c]];
                        assert!(subset.iter().all(|&s| ss_verify(&params, s, &check)));
                        let got = crate::sharing::ss_recon(&params.field, &subset, 3).unwrap();
                        assert_eq!(got, secret);
                    }
                }
            }
            // tampering any single value breaks verification for that share
            let field: &Field = &params.field;
            let bad = (shares.points[0].0, field.add(shares.points[0].1, Fe(5)));
            assert!(!ss_verify(&params, bad, &check));
        }
    }
}
