//! Exact arithmetic in Q, Q(sqrt 5) and its ring of integers Z[phi].

pub mod field;
pub mod int;
pub mod k5;
pub mod oint;
pub mod prime;
pub mod rat;

pub use field::FieldElem;
pub use k5::{Embedding, K5Elem};
pub use oint::{canonical_generator, normalize_generator, OInt};
pub use prime::{golden_roots, split_rational_prime, PrimeIdeal, PrimeKind, Residue, SplitType};
pub use rat::{rat, rat_frac, Rat};

/// Galois conjugation `a + b sqrt5 -> a - b sqrt5`.
pub fn tau(v: &K5Elem) -> K5Elem {
    v.tau()
}

/// Exact sign of `v` under the embedding `e`.
pub fn sign_at(v: &K5Elem, e: Embedding) -> i8 {
    v.sign_at(e)
}

/// `v * tau(v)`.
pub fn norm(v: &OInt) -> num_bigint::BigInt {
    v.norm()
}
