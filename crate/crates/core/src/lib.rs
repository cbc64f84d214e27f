//! Exact symbolic toolkit for Segre varieties of real-algebraic subsets of C^n.
//!
//! A real-algebraic subvariety X of C^n is described by polynomial equations in
//! the coordinates z_1..z_n and their conjugates. Replacing each conjugate by an
//! independent variable zeta_j complexifies the description to an ideal in 2n
//! variables; the Segre variety of X at a point q is the slice of that ideal at
//! zeta = conj(q). This crate provides:
//!
//! - exact Gaussian-rational polynomial arithmetic ([`scalar`], [`poly`]),
//! - a parser and printer for defining equations and variety files ([`parse`]),
//! - a Groebner-basis engine with membership, elimination and dimension
//!   ([`order`], [`gb`]),
//! - Segre ideals, degeneracy loci, point classification and realification
//!   ([`segre`]),
//! - irreducibility and factorization certificates for homogeneous
//!   polynomials ([`cert`]),
//! - a float-based falsification probe and scan drivers ([`probe`]),
//! - a bundled gallery of worked varieties with frozen expectations
//!   ([`corpus`]).
//!
//! Everything outside [`probe`] is exact: no floating point enters any
//! symbolic computation.

pub mod cert;
pub mod corpus;
pub mod gb;
pub mod order;
pub mod parse;
pub mod poly;
pub mod probe;
pub mod scalar;
pub mod segre;
