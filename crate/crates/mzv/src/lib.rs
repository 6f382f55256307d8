//! Exact word algebras, regularized multiple zeta values, and verification of
//! cyclic-sum and symmetric-sum identities for depths 2 to 4.
//!
//! Modules, bottom-up:
//! - [`words`]: indices, words over `{x, y}`, harmonic and shuffle products
//! - [`symgroup`]: permutations, the group ring `Z[S_n]`, cosets and congruences
//! - [`regular`]: symbolic reals, T-polynomials, the two regularizations and `ρ`
//! - [`numeric`]: high-precision evaluation of convergent MZVs
//! - [`identities`]: builders and verifiers for the cyclic/symmetric sum identities

pub mod identities;
pub mod numeric;
pub mod regular;
pub mod scalar;
pub mod symgroup;
pub mod words;

pub use scalar::Scalar;

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Exact linear combination of words.
pub type WordSum = words::FormalSum<Rational>;
