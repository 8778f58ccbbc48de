//! Secure aggregation with verified inputs.
//!
//! A single untrusted server aggregates d-dimensional client updates, but only
//! after every update has been proven well-formed against a public arithmetic
//! circuit. Clients secret-share their updates and proofs among each other
//! with verifiable Shamir shares; the other clients act as proof verifiers and
//! the server robustly reconstructs proof summaries with Reed-Solomon
//! decoding, so verification survives up to `m < floor((n-1)/3)` malicious
//! clients.
//!
//! Module map:
//!
//! * [`ffmath`] — prime-field and polynomial arithmetic.
//! * [`sharing`] — verifiable Shamir sharing and robust reconstruction
//!   (Gao decoding plus the probabilistic and partition variants).
//! * [`circuit`] — arithmetic-circuit IR, validation-predicate builders,
//!   fixed-point quantization and Walsh-Hadamard random projection.
//! * [`snip`] — secret-shared non-interactive proofs: prover, per-verifier
//!   summary computation, and robust server-side verification.
//! * [`transport`] — key agreement, authenticated encryption, the signed
//!   append-only bulletin board, and canonical byte encodings.
//! * [`protocol`] — the four-round client/server state machines and the
//!   deterministic multi-party simulator.
//! * [`adversary`] — scripted poisoning attacks and protocol misbehavior.
//! * [`harness`] — configuration, the synthetic federated-learning loop, the
//!   plaintext oracle baseline, and metrics.
//!
//! Data-parallel inner loops (dimension-wise sharing, share verification,
//! reconstruction) run on rayon when the default `parallel` feature is on and
//! fall back to sequential iteration otherwise; results are identical either
//! way.

pub mod adversary;
pub mod circuit;
pub mod exec;
pub mod ffmath;
pub mod harness;
pub mod opcount;
pub mod protocol;
pub mod sharing;
pub mod snip;
pub mod transport;

pub use ffmath::{Fe, Field, FieldParams};
