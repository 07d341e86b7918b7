//! Exact rational arithmetic and univariate polynomial algebra.

pub mod factor;
pub mod poly;
pub mod primes;
pub mod rational;
pub mod resultant;
pub mod roots;

pub use poly::Poly;
pub use primes::{support, PrimeSet, SupportMap};
pub use rational::Rational;
pub use resultant::{discriminant, resultant};
pub use roots::{rational_roots, split_rational, RationalSplit};
