//! Vectors over F_p and finite groups.
//!
//! Groups are written additively where they are abelian; for a structured
//! presentation element `0` is the identity and `u^q·g` is realized as
//! `q·u + g`. Explicit operation tables carry their own identity.

mod fpvec;
mod group;
mod parse;

pub use fpvec::{enumerate_vectors, is_prime, FpVec};
pub use group::{FiniteGroup, OpTable, Presentation, MAX_TABLE_ORDER};

#[cfg(test)]
pub(crate) fn group_tests_s3() -> FiniteGroup {
    group::tests::s3()
}
