//! Word synthesis and exact diameter oracles for Cayley graphs of the
//! wreath products W = C_q wr C_p (p an odd prime, q a prime distinct
//! from p) and their central quotients G = W/Z(W).
//!
//! The synthesis half rewrites any target element as a word in an arbitrary
//! generating set, with a proven length bound that is linear in p; the oracle
//! half computes exact diameters and enumerates irredundant generating sets
//! by brute force on small instances, so every synthesized word and every
//! claimed bound can be checked against ground truth.

pub mod algebra;
pub mod modstruct;
pub mod synthesis;
pub mod wreath;

pub use algebra::{FqPoly, GroupParams};
pub use modstruct::{generates_quotient, generates_wreath, Decomposition, GenerationCheck};
pub use synthesis::{
    synthesize_quotient, synthesize_special, synthesize_wreath, SynthesisError, SynthesisReport,
    Word,
};
pub use wreath::{CenterElement, GroupOps, QuotientElement, WreathElement};
