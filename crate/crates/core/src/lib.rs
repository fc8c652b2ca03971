//! Cayley graphs and hypergraphs over finite groups, injective ℓ_p norms of
//! multilinear forms, polynomial-method constructions over F_p, and seeded
//! deviation experiments for sums of random plane sub-stochastic tensors.
//!
//! The crate is organized bottom-up:
//!
//! - [`field_group`]: F_p^n vectors and finite groups (cyclic, vector, product, table).
//! - [`hypergraph`]: permutation and Cayley hypergraphs, exact adjacency forms, `sol(C)`.
//! - [`tensor_norm`]: alternating ascent for ‖A‖_{ℓ_p,…,ℓ_p}, exact oracles, λ_K.
//! - [`poly_method`]: polynomials over F_p, interpolation, line counting, the dense rectangle construction.
//! - [`tensor_lab`]: plane sub-stochastic forms, σ_{p,t}(n), Rademacher deviation and sparsification.
//! - [`experiments`]: reproducible experiment records wired from the modules above.

pub mod error;
pub mod experiments;
pub mod field_group;
pub mod hypergraph;
pub mod poly_method;
pub mod rational;
pub mod rng;
pub mod stats;
pub mod tensor_lab;
pub mod tensor_norm;

pub use error::{Error, Result};
pub use rational::Rational;
