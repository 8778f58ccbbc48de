use super::CircuitError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Subsampled randomized Hadamard transform: `sqrt(D/k) * P * H * D_sigma`,
/// where `D_sigma` flips signs per a seeded stream, `H` is the normalized
/// Walsh-Hadamard transform on the input padded to a power of two, and `P`
/// samples `target_dim` coordinates without replacement. Approximately
/// norm-preserving and deterministic per seed.
pub fn random_project(u: &[f64], target_dim: usize, seed: u64) -> Result<Vec<f64>, CircuitError> {
    if u.is_empty() {
        return Err(CircuitError::BadDimension);
    }
    let padded = u.len().next_power_of_two();
    if target_dim == 0 || target_dim > padded {
        return Err(CircuitError::BadDimension);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut x = vec![0.0f64; padded];
    for (i, &v) in u.iter().enumerate() {
        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
        x[i] = v * sign;
    }
    // sign draws continue over padding so the index sample below is aligned
    // across inputs of equal padded length
    for _ in u.len()..padded {
        let _ = rng.random::<bool>();
    }

    fwht(&mut x);
    let norm = 1.0 / (padded as f64).sqrt();

    // sample target_dim distinct coordinates (Fisher-Yates prefix)
    let mut idx: Vec<usize> = (0..padded).collect();
    for i in 0..target_dim {
        let j = i + rng.random_range(0..padded - i);
        idx.swap(i, j);
    }
    let rescale = (padded as f64 / target_dim as f64).sqrt();
    Ok(idx[..target_dim].iter().map(|&i| x[i] * norm * rescale).collect())
}

/// In-place unnormalized Walsh-Hadamard transform; length must be a power of
/// two.
fn fwht(x: &mut [f64]) {
    let n = x.len();
    let mut h = 1;
    while h < n {
        for chunk in x.chunks_mut(2 * h) {
            for i in 0..h {
                let (a, b) = (chunk[i], chunk[i + h]);
                chunk[i] = a + b;
                chunk[i + h] = a - b;
            }
        }
        h *= 2;
    }
}
