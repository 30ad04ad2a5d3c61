//! Hardy-type nonlocality arguments: construction, verification,
//! optimization, and certification.
//!
//! The crate covers the bipartite qubit argument and its relatives end to
//! end:
//!
//! - [`numerics`] — dense complex linear algebra (products, projectors, null
//!   spaces, Jordan-lemma blocks) sized for dimensions up to a few dozen.
//! - [`quantum`] — states, projective measurements, Born-rule behavior
//!   tables, and a seeded finite-statistics sampler.
//! - [`hardy`] — the four-clause bipartite witness, the canonical
//!   nonmaximally-entangled construction and its closed-form success
//!   probability, the unique-state solver, qudit and spin-s clause sets, and
//!   derivative-free maximization.
//! - [`multiparty`] — the three-party clause set and its maximizer.
//! - [`temporal`] — the same clauses for sequential measurements on a single
//!   system.
//! - [`polytope`] — deterministic-strategy enumeration, LP membership tests
//!   for the local polytope, no-signalling extremal bounds, CH values, and
//!   min-entropy randomness bounds.
//! - [`cli`] — JSON input/output and the subcommand entry points used by the
//!   `hardylab` binary.
//!
//! Every evaluator is a pure function over immutable values; optimizers and
//! samplers take explicit seeds and are deterministic for a fixed seed.

pub mod cli;
pub mod hardy;
pub mod multiparty;
pub mod numerics;
pub mod optim;
pub mod polytope;
pub mod quantum;
pub mod search;
pub mod temporal;
pub mod tol;

mod error;

pub use error::{Error, Result};
