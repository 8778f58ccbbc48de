use super::codec::{Reader, Writer};
use super::TransportError;
use aes_gcm::aead::Aead;
use aes_gcm::{Aes256Gcm, KeyInit, Nonce};
use rand::RngCore;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Key agreement and authenticated encryption, in two interchangeable modes.
///
/// `Test` is a deterministic stand-in built from a small Diffie-Hellman
/// group and a keyed sha2 stream-plus-MAC, giving bit-reproducible
/// transcripts with no external entropy. `Production` is ECDH over NIST
/// P-256 with AES-256-GCM. The protocol layer never branches on the mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CryptoMode {
    Test,
    Production,
}

/// DH group for test mode: the order-p subgroup of Z_q^* reused from the
/// default commitment parameters.
const TEST_DH_Q: u64 = crate::ffmath::DEFAULT_COMMIT_MODULUS;
const TEST_DH_G: u64 = crate::ffmath::DEFAULT_COMMIT_GENERATOR;
const TEST_DH_ORDER: u64 = crate::ffmath::DEFAULT_PRIME;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair {
    pub public: Vec<u8>,
    pub secret: Vec<u8>,
}

/// Symmetric key from key agreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SharedKey(pub [u8; 32]);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ciphertext {
    pub nonce: [u8; 12],
    /// Body with the authentication tag appended.
    pub body: Vec<u8>,
}

impl Ciphertext {
    pub fn encode(&self) -> Vec<u8> {
        let mut w = Writer::plain();
        w.bytes(&self.nonce).bytes(&self.body);
        w.finish()
    }

    pub fn decode(buf: &[u8]) -> Option<Ciphertext> {
        let mut r = Reader::plain(buf);
        let nonce_v = r.bytes().ok()?;
        let body = r.bytes().ok()?;
        r.done().ok()?;
        Some(Ciphertext { nonce: nonce_v.try_into().ok()?, body })
    }
}

fn mulmod_q(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % TEST_DH_Q as u128) as u64
}

fn powmod_q(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= TEST_DH_Q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_q(acc, base);
        }
        base = mulmod_q(base, base);
        exp >>= 1;
    }
    acc
}

pub struct CryptoSuite {
    pub mode: CryptoMode,
}

impl CryptoSuite {
    pub fn new(mode: CryptoMode) -> Self {
        CryptoSuite { mode }
    }

    pub fn ka_gen(&self, rng: &mut impl RngCore) -> KeyPair {
        match self.mode {
            CryptoMode::Test => {
                let sk = 1 + rng.next_u64() % (TEST_DH_ORDER - 1);
                let pk = powmod_q(TEST_DH_G, sk);
                KeyPair { public: pk.to_le_bytes().to_vec(), secret: sk.to_le_bytes().to_vec() }
            }
            CryptoMode::Production => loop {
                let mut bytes = [0u8; 32];
                rng.fill_bytes(&mut bytes);
                // rejection-sample a valid scalar
                if let Ok(sk) = p256::SecretKey::from_slice(&bytes) {
                    let pk = sk.public_key();
                    return KeyPair {
                        public: pk.to_sec1_bytes().to_vec(),
                        secret: sk.to_bytes().to_vec(),
                    };
                }
            },
        }
    }

    /// `agree(pk_i, sk_j) == agree(pk_j, sk_i)`. Malformed public keys are
    /// rejected with `BadKey`.
    pub fn ka_agree(&self, public: &[u8], secret: &[u8]) -> Result<SharedKey, TransportError> {
        match self.mode {
            CryptoMode::Test => {
                let pk_bytes: [u8; 8] =
                    public.try_into().map_err(|_| TransportError::BadKey)?;
                let pk = u64::from_le_bytes(pk_bytes);
                // subgroup membership check
                if pk <= 1 || pk >= TEST_DH_Q || powmod_q(pk, TEST_DH_ORDER) != 1 {
                    return Err(TransportError::BadKey);
                }
                let sk_bytes: [u8; 8] =
                    secret.try_into().map_err(|_| TransportError::BadKey)?;
                let shared = powmod_q(pk, u64::from_le_bytes(sk_bytes));
                let mut h = Sha256::new();
                h.update(b"eiffel-ka-test");
                h.update(shared.to_le_bytes());
                Ok(SharedKey(h.finalize().into()))
            }
            CryptoMode::Production => {
                let pk = p256::PublicKey::from_sec1_bytes(public)
                    .map_err(|_| TransportError::BadKey)?;
                let sk =
                    p256::SecretKey::from_slice(secret).map_err(|_| TransportError::BadKey)?;
                let shared =
                    p256::ecdh::diffie_hellman(sk.to_nonzero_scalar(), pk.as_affine());
                let mut h = Sha256::new();
                h.update(b"eiffel-ka-p256");
                h.update(shared.raw_secret_bytes());
                Ok(SharedKey(h.finalize().into()))
            }
        }
    }

    pub fn ae_enc(&self, key: &SharedKey, plaintext: &[u8], rng: &mut impl RngCore) -> Ciphertext {
        let mut nonce = [0u8; 12];
        rng.fill_bytes(&mut nonce);
        match self.mode {
            CryptoMode::Test => {
                let mut body = plaintext.to_vec();
                test_stream_xor(key, &nonce, &mut body);
                body.extend_from_slice(&test_mac(key, &nonce, &body));
                Ciphertext { nonce, body }
            }
            CryptoMode::Production => {
                let cipher = Aes256Gcm::new_from_slice(&key.0).expect("32-byte key");
                let body = cipher
                    .encrypt(Nonce::from_slice(&nonce), plaintext)
                    .expect("encryption is infallible");
                Ciphertext { nonce, body }
            }
        }
    }

    /// Decryption returns `None` (the error symbol) under a wrong key or any
    /// modification.
    pub fn ae_dec(&self, key: &SharedKey, ct: &Ciphertext) -> Option<Vec<u8>> {
        match self.mode {
            CryptoMode::Test => {
                if ct.body.len() < 16 {
                    return None;
                }
                let (data, tag) = ct.body.split_at(ct.body.len() - 16);
                if test_mac(key, &ct.nonce, data) != tag {
                    return None;
                }
                let mut out = data.to_vec();
                test_stream_xor(key, &ct.nonce, &mut out);
                Some(out)
            }
            CryptoMode::Production => {
                let cipher = Aes256Gcm::new_from_slice(&key.0).expect("32-byte key");
                cipher.decrypt(Nonce::from_slice(&ct.nonce), ct.body.as_slice()).ok()
            }
        }
    }
}

/// sha2 counter-mode keystream for the test cipher.
fn test_stream_xor(key: &SharedKey, nonce: &[u8; 12], data: &mut [u8]) {
    for (block, chunk) in data.chunks_mut(32).enumerate() {
        let mut h = Sha256::new();
        h.update(b"eiffel-ae-stream");
        h.update(key.0);
        h.update(nonce);
        h.update((block as u64).to_le_bytes());
        let ks: [u8; 32] = h.finalize().into();
        for (b, k) in chunk.iter_mut().zip(ks.iter()) {
            *b ^= k;
        }
    }
}

fn test_mac(key: &SharedKey, nonce: &[u8; 12], data: &[u8]) -> [u8; 16] {
    let mut h = Sha256::new();
    h.update(b"eiffel-ae-mac");
    h.update(key.0);
    h.update(nonce);
    h.update(data);
    let full: [u8; 32] = h.finalize().into();
    full[..16].try_into().unwrap()
}

/// Bulletin signing identity: Ed25519 in both modes (key material derived
/// from the caller's seeded randomness, so transcripts stay reproducible).
#[derive(Debug, Clone)]
pub struct Signer {
    key: ed25519_dalek::SigningKey,
}

pub type VerifyKey = ed25519_dalek::VerifyingKey;

impl Signer {
    pub fn generate(rng: &mut impl RngCore) -> Self {
        let mut seed = [0u8; 32];
        rng.fill_bytes(&mut seed);
        Signer { key: ed25519_dalek::SigningKey::from_bytes(&seed) }
    }

    pub fn verify_key(&self) -> VerifyKey {
        self.key.verifying_key()
    }

    pub fn sign(&self, msg: &[u8]) -> Vec<u8> {
        use ed25519_dalek::Signer as _;
        self.key.sign(msg).to_bytes().to_vec()
    }
}

pub fn verify_signature(vk: &VerifyKey, msg: &[u8], sig: &[u8]) -> bool {
    use ed25519_dalek::Verifier as _;
    let Ok(sig) = ed25519_dalek::Signature::from_slice(sig) else {
        return false;
    };
    vk.verify(msg, &sig).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn suites() -> Vec<CryptoSuite> {
        vec![CryptoSuite::new(CryptoMode::Test), CryptoSuite::new(CryptoMode::Production)]
    }

    #[test]
    fn agreement_is_symmetric() {
        for suite in suites() {
            let mut rng = ChaCha12Rng::seed_from_u64(1);
            let a = suite.ka_gen(&mut rng);
            let b = suite.ka_gen(&mut rng);
            let k1 = suite.ka_agree(&a.public, &b.secret).unwrap();
            let k2 = suite.ka_agree(&b.public, &a.secret).unwrap();
            assert_eq!(k1, k2);
        }
    }

    #[test]
    fn hundred_pairs_all_distinct() {
        for suite in suites() {
            let mut rng = ChaCha12Rng::seed_from_u64(2);
            let pairs: Vec<KeyPair> = (0..20).map(|_| suite.ka_gen(&mut rng)).collect();
            let mut keys = std::collections::BTreeSet::new();
            let mut count = 0;
            for i in 0..pairs.len() {
                for j in (i + 1)..pairs.len() {
                    let k = suite.ka_agree(&pairs[i].public, &pairs[j].secret).unwrap();
                    keys.insert(k.0);
                    count += 1;
                }
            }
            assert!(count >= 100);
            assert_eq!(keys.len(), count, "collision among {count} shared keys");
        }
    }

    #[test]
    fn tampered_public_key_rejected_or_breaks_round_trip() {
        // bit-flip fuzz over the public key: either BadKey, or the derived
        // keys disagree and an AE round trip fails
        for suite in suites() {
            let mut rng = ChaCha12Rng::seed_from_u64(3);
            let a = suite.ka_gen(&mut rng);
            let b = suite.ka_gen(&mut rng);
            let k_good = suite.ka_agree(&a.public, &b.secret).unwrap();
            let mut checked = 0;
            for trial in 0..1000 {
                let mut pk = a.public.clone();
                let bit = trial % (pk.len() * 8);
                pk[bit / 8] ^= 1 << (bit % 8);
                match suite.ka_agree(&pk, &b.secret) {
                    Err(TransportError::BadKey) => {}
                    Ok(k_bad) => {
                        let ct = suite.ae_enc(&k_bad, b"probe", &mut rng);
                        assert_eq!(suite.ae_dec(&k_good, &ct), None, "trial {trial}");
                    }
                    Err(e) => panic!("unexpected error {e:?}"),
                }
                checked += 1;
            }
            assert_eq!(checked, 1000);
        }
    }

    #[test]
    fn ae_round_trip_and_wrong_key() {
        for suite in suites() {
            let mut rng = ChaCha12Rng::seed_from_u64(4);
            let k1 = SharedKey([7u8; 32]);
            let k2 = SharedKey([8u8; 32]);
            let msg = b"attack at dawn".to_vec();
            let ct = suite.ae_enc(&k1, &msg, &mut rng);
            assert_eq!(suite.ae_dec(&k1, &ct), Some(msg));
            assert_eq!(suite.ae_dec(&k2, &ct), None);
        }
    }

    #[test]
    fn every_single_byte_corruption_detected() {
        for suite in suites() {
            let mut rng = ChaCha12Rng::seed_from_u64(5);
            let key = SharedKey([9u8; 32]);
            let msg = vec![0xABu8; 40];
            let ct = suite.ae_enc(&key, &msg, &mut rng);
            for pos in 0..ct.body.len() {
                for delta in [1u8, 0x80] {
                    let mut bad = ct.clone();
                    bad.body[pos] ^= delta;
                    assert_eq!(suite.ae_dec(&key, &bad), None, "pos {pos}");
                }
            }
            for pos in 0..12 {
                let mut bad = ct.clone();
                bad.nonce[pos] ^= 1;
                assert_eq!(suite.ae_dec(&key, &bad), None, "nonce pos {pos}");
            }
        }
    }

    #[test]
    fn ciphertext_encoding_round_trips() {
        let ct = Ciphertext { nonce: [3u8; 12], body: vec![1, 2, 3, 4] };
        assert_eq!(Ciphertext::decode(&ct.encode()).unwrap(), ct);
    }

    #[test]
    fn signatures_verify_and_reject_forgeries() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let s1 = Signer::generate(&mut rng);
        let s2 = Signer::generate(&mut rng);
        let msg = b"entry";
        let sig = s1.sign(msg);
        assert!(verify_signature(&s1.verify_key(), msg, &sig));
        assert!(!verify_signature(&s2.verify_key(), msg, &sig));
        assert!(!verify_signature(&s1.verify_key(), b"other", &sig));
    }
}
