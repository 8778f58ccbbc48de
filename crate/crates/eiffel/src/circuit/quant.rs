use crate::ffmath::{Fe, Field};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Fixed-point quantization of real vectors into field elements.
///
/// Values are clipped to `[-clip, clip]`, scaled by `scale = 2^f`, and
/// stochastically rounded: `floor(x) + Bernoulli(frac(x))`, so the rounding
/// is unbiased and grid points quantize deterministically. Negative integers
/// map to the field as `p - |x|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantParams {
    /// Power-of-two scale factor.
    pub scale: u64,
    /// Maximum absolute real value; inputs are clipped, never rejected.
    pub clip: f64,
    /// Data dimension.
    pub d: usize,
}

impl QuantParams {
    pub fn new(scale: u64, clip: f64, d: usize) -> Self {
        assert!(scale.is_power_of_two(), "scale must be a power of two");
        assert!(clip > 0.0);
        QuantParams { scale, clip, d }
    }

    /// Largest integer magnitude a quantized coordinate can take.
    pub fn coord_bound(&self) -> i128 {
        (self.clip * self.scale as f64).ceil() as i128 + 1
    }

    /// `n_clients * clip * scale < p/2`: aggregates of n clients cannot wrap.
    pub fn check_aggregate_bound(&self, field: &Field, n_clients: usize) -> bool {
        (n_clients as i128) * self.coord_bound() < (field.p / 2) as i128
    }

    pub fn quantize(&self, field: &Field, u: &[f64], rng: &mut impl Rng) -> Vec<Fe> {
        u.iter()
            .map(|&v| {
                let clipped = v.clamp(-self.clip, self.clip);
                let x = clipped * self.scale as f64;
                let lo = x.floor();
                let frac = x - lo;
                let rounded = lo as i128
                    + if frac > 0.0 && rng.random::<f64>() < frac { 1 } else { 0 };
                field.from_i128(rounded)
            })
            .collect()
    }

    /// Signed decode and rescale. The same decode serves aggregates of up to
    /// `n` vectors as long as the aggregate bound holds.
    pub fn dequantize(&self, field: &Field, v: &[Fe]) -> Vec<f64> {
        v.iter().map(|&x| field.to_i128(x) as f64 / self.scale as f64).collect()
    }

    /// Quantized integer view (signed), used by witness generation and the
    /// plaintext oracle.
    pub fn to_ints(&self, field: &Field, v: &[Fe]) -> Vec<i128> {
        v.iter().map(|&x| field.to_i128(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn zero_maps_to_zero() {
        let f = Field::new(17).unwrap();
        let q = QuantParams::new(4, 1.0, 1);
        let mut rng = ChaCha12Rng::seed_from_u64(0);
        assert_eq!(q.quantize(&f, &[0.0], &mut rng), vec![Fe(0)]);
    }

    #[test]
    fn grid_points_deterministic() {
        let f = Field::new(crate::ffmath::DEFAULT_PRIME).unwrap();
        let q = QuantParams::new(256, 4.0, 1);
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert_eq!(q.quantize(&f, &[1.0], &mut rng), vec![Fe(256)]);
            assert_eq!(q.quantize(&f, &[-1.0], &mut rng), vec![f.from_i128(-256)]);
        }
    }

    #[test]
    fn stochastic_rounding_is_unbiased() {
        // Mean of many quantizations of an off-grid value within 3 sigma of
        // the true value: Bernoulli variance frac*(1-frac) per draw.
        let f = Field::new(crate::ffmath::DEFAULT_PRIME).unwrap();
        let q = QuantParams::new(256, 4.0, 1);
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let value = 0.3 / 256.0 + 1.0; // frac 0.3 above the grid point 256
        let trials = 10_000;
        let mut sum = 0i128;
        for _ in 0..trials {
            sum += f.to_i128(q.quantize(&f, &[value], &mut rng)[0]);
        }
        let mean = sum as f64 / trials as f64;
        let expect = value * 256.0;
        let sigma = (0.3f64 * 0.7 / trials as f64).sqrt();
        assert!(
            (mean - expect).abs() < 3.0 * sigma,
            "mean {mean} vs expected {expect} (sigma {sigma})"
        );
    }

    #[test]
    fn clipping_applies() {
        let f = Field::new(crate::ffmath::DEFAULT_PRIME).unwrap();
        let q = QuantParams::new(16, 2.0, 1);
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        assert_eq!(q.quantize(&f, &[100.0], &mut rng), vec![Fe(32)]);
        assert_eq!(q.quantize(&f, &[-100.0], &mut rng), vec![f.from_i128(-32)]);
    }

    #[test]
    fn dequantize_round_trip_within_one_ulp() {
        let f = Field::new(crate::ffmath::DEFAULT_PRIME).unwrap();
        let q = QuantParams::new(256, 4.0, 4);
        let mut rng = ChaCha12Rng::seed_from_u64(4);
        let u = [0.125, -1.5, 3.99, -0.0625];
        let back = q.dequantize(&f, &q.quantize(&f, &u, &mut rng));
        for (a, b) in u.iter().zip(&back) {
            assert!((a - b).abs() <= 1.0 / 256.0, "{a} vs {b}");
        }
    }
}
