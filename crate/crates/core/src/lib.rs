//! Exact symbolic computation of projective bases, connections, curvature
//! and jet-valued higher connections on modules of Kaehler differentials
//! over ellipsoid coordinate rings `Q[x1..xk]/(x1^p1 + ... + xk^pk - 1)`.
//!
//! The polynomial and linear-algebra kernels are generic over the
//! coefficient field through [`scalar::Scalar`]; every domain module works
//! with the arbitrary-precision rational instantiation exposed by the type
//! aliases below. There is no floating point anywhere: every identity is
//! checked exactly, by reduction to Groebner normal form.

pub mod error;
pub mod scalar;

pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod ring;

pub mod linalg;

pub mod connection;
pub mod ellipsoid;
pub mod jets;
pub mod mcm;
pub mod weyl;

pub mod report;

pub use error::{Error, Result};

/// Exact rational coefficient: arbitrary-precision numerator, positive
/// arbitrary-precision denominator, always in lowest terms.
pub type Rat = num_rational::BigRational;

/// Sparse multivariate polynomial over [`Rat`].
pub type Poly = poly::Polynomial<Rat>;

/// Ring context (variables, relations, normal-form engine) over [`Rat`].
pub type Ctx = ring::RingContext<Rat>;

/// Matrix with entries in a [`Ctx`], kept in normal form.
pub type Matrix = linalg::RingMatrix<Rat>;

/// Vector with entries in a [`Ctx`], kept in normal form.
pub type Vector = linalg::RingVector<Rat>;
