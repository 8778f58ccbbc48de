use super::FfError;
use crate::opcount;
use rand::RngCore;
use serde::{Deserialize, Serialize};

/// Default 56-bit data-field modulus: the smallest prime >= 2^55.
pub const DEFAULT_PRIME: u64 = 36_028_797_018_963_971; // 2^55 + 3

/// Default commitment-group modulus `q = 56 * DEFAULT_PRIME + 1` (prime), and
/// a generator of its order-`DEFAULT_PRIME` subgroup: `2^((q-1)/p) = 2^56`.
pub const DEFAULT_COMMIT_MODULUS: u64 = 2_017_612_633_061_982_377;
pub const DEFAULT_COMMIT_GENERATOR: u64 = 72_057_594_037_927_936;

/// Toy parameters for desk-checkable tests: field F_17, commitment group of
/// order 17 inside Z_103^* generated by 64 = 2^6 mod 103.
pub const TOY_PRIME: u64 = 17;
pub const TOY_COMMIT_MODULUS: u64 = 103;
pub const TOY_COMMIT_GENERATOR: u64 = 64;

/// A canonical residue in `[0, p)`. Operations live on [`Field`] so the
/// modulus can vary at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);
}

impl std::fmt::Display for Fe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A prime field of order `p < 2^63`, small enough that products fit in u128.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Result<Self, FfError> {
        if !is_prime_u64(p) {
            return Err(FfError::NotPrime(p));
        }
        Ok(Field { p })
    }

    /// Reduce an arbitrary u64 into canonical form.
    #[inline]
    pub fn elem(&self, v: u64) -> Fe {
        Fe(v % self.p)
    }

    /// Map a signed integer into the field, negatives as `p - |x|`.
    pub fn from_i128(&self, v: i128) -> Fe {
        let p = self.p as i128;
        Fe(v.rem_euclid(p) as u64)
    }

    /// Interpret a residue as a signed integer in `(-p/2, p/2]`.
    pub fn to_i128(&self, v: Fe) -> i128 {
        if v.0 > self.p / 2 {
            v.0 as i128 - self.p as i128
        } else {
            v.0 as i128
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        opcount::bump(1);
        let s = a.0 + b.0;
        Fe(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        opcount::bump(1);
        Fe(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p - b.0 })
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        opcount::bump(1);
        Fe((a.0 as u128 * b.0 as u128 % self.p as u128) as u64)
    }

    pub fn pow(&self, mut base: Fe, mut exp: u64) -> Fe {
        let mut acc = Fe(1);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat. Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a.0 != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Uniform sampling by masked rejection, so a test RNG that yields small
    /// values produces exactly those values as field elements.
    pub fn random(&self, rng: &mut impl RngCore) -> Fe {
        let mask = (self.p - 1).checked_next_power_of_two().map_or(u64::MAX, |m| m - 1);
        loop {
            let x = rng.next_u64() & mask;
            if x < self.p {
                return Fe(x);
            }
        }
    }

    /// Nonzero uniform sample.
    pub fn random_nonzero(&self, rng: &mut impl RngCore) -> Fe {
        loop {
            let x = self.random(rng);
            if x.0 != 0 {
                return x;
            }
        }
    }
}

/// The commitment group: the order-`p` subgroup of `Z_q^*` where `p | q - 1`.
/// Exponents are data-field elements; arithmetic is mod `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommitGroup {
    pub q: u64,
    pub generator: u64,
    /// Order of `generator`, equal to the data-field modulus.
    pub order: u64,
}

impl CommitGroup {
    pub fn new(q: u64, generator: u64, order: u64) -> Result<Self, FfError> {
        if !is_prime_u64(q) {
            return Err(FfError::NotPrime(q));
        }
        let g = CommitGroup { q, generator, order };
        // p | q-1, g != 1, and g^p = 1 together pin the subgroup order to p.
        if (q - 1) % order != 0 || generator % q <= 1 || g.pow(generator, order) != 1 {
            return Err(FfError::BadCommitGroup);
        }
        Ok(g)
    }

    /// Derive a group for an arbitrary prime field: the smallest `q = k*p + 1`
    /// that is prime, with generator `h^((q-1)/p)` for the smallest usable `h`.
    pub fn derive_for(p: u64) -> Result<Self, FfError> {
        let mut k = 2u64;
        loop {
            let q = p.checked_mul(k).and_then(|v| v.checked_add(1)).ok_or(FfError::BadCommitGroup)?;
            if q < (1 << 63) && is_prime_u64(q) {
                let mut h = 2u64;
                loop {
                    let g = CommitGroup { q, generator: 0, order: p }.pow(h, (q - 1) / p);
                    if g != 1 {
                        return CommitGroup::new(q, g, p);
                    }
                    h += 1;
                }
            }
            k += 1;
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        opcount::bump(1);
        (a as u128 * b as u128 % self.q as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.q;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `generator^e` for a field-element exponent.
    pub fn commit(&self, e: Fe) -> u64 {
        self.pow(self.generator, e.0)
    }
}

/// Shared parameters: the data field plus the Feldman commitment group.
///
/// Construction runs a deterministic Miller-Rabin check on both moduli and
/// verifies the subgroup relation, so a bad pairing cannot be instantiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldParams {
    pub field: Field,
    pub commit: CommitGroup,
}

impl FieldParams {
    pub fn new(p: u64, q: u64, generator: u64) -> Result<Self, FfError> {
        let field = Field::new(p)?;
        let commit = CommitGroup::new(q, generator, p)?;
        Ok(FieldParams { field, commit })
    }

    /// The named 56-bit production parameters.
    pub fn default_56bit() -> Self {
        FieldParams::new(DEFAULT_PRIME, DEFAULT_COMMIT_MODULUS, DEFAULT_COMMIT_GENERATOR)
            .expect("default parameters are valid")
    }

    /// Tiny field for desk-checkable protocol tests.
    pub fn toy_17() -> Self {
        FieldParams::new(TOY_PRIME, TOY_COMMIT_MODULUS, TOY_COMMIT_GENERATOR)
            .expect("toy parameters are valid")
    }

    /// Parameters for an arbitrary prime, deriving a matching commit group.
    pub fn for_prime(p: u64) -> Result<Self, FfError> {
        let field = Field::new(p)?;
        let commit = CommitGroup::derive_for(p)?;
        Ok(FieldParams { field, commit })
    }
}

/// Deterministic Miller-Rabin, exact for all u64 with this witness set.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| (a as u128 * b as u128 % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn default_params_are_valid() {
        let fp = FieldParams::default_56bit();
        assert!(fp.field.p >= 1 << 55);
        assert_eq!((fp.commit.q - 1) % fp.field.p, 0);
        assert_eq!(fp.commit.pow(fp.commit.generator, fp.field.p), 1);
        assert_ne!(fp.commit.generator, 1);
    }

    #[test]
    fn toy_params_are_valid() {
        let fp = FieldParams::toy_17();
        assert_eq!(fp.field.p, 17);
        assert_eq!(fp.commit.q, 103);
        assert_eq!(fp.commit.pow(64, 17), 1);
    }

    #[test]
    fn primality_known_values() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(17));
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(DEFAULT_COMMIT_MODULUS));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(DEFAULT_PRIME + 1));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn field_ops_canonical() {
        let f = Field::new(17).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = f.random(&mut rng);
            let b = f.random(&mut rng);
            for v in [f.add(a, b), f.sub(a, b), f.mul(a, b), f.neg(a)] {
                assert!(v.0 < f.p);
            }
        }
        assert_eq!(f.add(Fe(16), Fe(1)), Fe(0));
        assert_eq!(f.sub(Fe(0), Fe(1)), Fe(16));
        assert_eq!(f.mul(Fe(5), Fe(7)), Fe(1)); // 35 = 2*17 + 1
    }

    #[test]
    fn inverse_and_pow() {
        let f = Field::new(DEFAULT_PRIME).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let a = f.random_nonzero(&mut rng);
            assert_eq!(f.mul(a, f.inv(a)), Fe(1));
        }
    }

    #[test]
    fn signed_mapping_round_trips() {
        let f = Field::new(DEFAULT_PRIME).unwrap();
        for v in [-1000i128, -1, 0, 1, 12345] {
            assert_eq!(f.to_i128(f.from_i128(v)), v);
        }
    }

    #[test]
    fn derive_commit_group_for_toy_prime() {
        let g = CommitGroup::derive_for(17).unwrap();
        assert_eq!(g.pow(g.generator, 17), 1);
        assert_ne!(g.generator, 1);
    }
}
