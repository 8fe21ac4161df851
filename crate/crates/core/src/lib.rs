//! Exact and numeric machinery for deciding whether a polynomial mapping
//! `f: K^n -> K^p` (`K` real or complex) admits Lipschitz trivial values.
//!
//! A mapping attains a Lipschitz trivial value `c` exactly when it factors as
//! `f = g ∘ π` through a linear surjection `π`, with `c` a regular value of
//! properness of `g`. This crate computes that factorization exactly, the
//! Jelonek ideal and the critical-value ideal of `g` by Gröbner elimination,
//! accumulation sets at infinity of fibres, and runs numeric probes where the
//! real semi-algebraic picture cannot be computed exactly.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, JSON and the
//! command-line front end live in the companion `ltv` crate.

#![no_std]

extern crate alloc;

pub mod classifier;
pub mod critical;
pub mod dependence;
pub mod error;
pub mod groebner;
pub mod infinity;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod properness;
pub mod rational_ext;

pub use error::{Error, Result};
pub use poly::{LinearMap, Monomial, PolyMap, Polynomial, Rational, Ring};
