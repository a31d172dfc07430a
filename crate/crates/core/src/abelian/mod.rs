//! Exact arithmetic on finitely generated abelian groups.
//!
//! Everything is built on [`snf`]; groups are kept in invariant factor form
//! so that isomorphism is plain equality.

mod group;
mod matrix;
mod primes;
mod smith;

pub use group::{direct_sum, ext, hom, Exponent, FgAbGroup, GroupError};
pub use matrix::IntMatrix;
pub use primes::{in_class, is_prime, prime_divisors, torsion_primes, NotPrime, PrimeSet};
pub use smith::{cokernel, kernel_basis, snf, subquotient, Lattice, SmithDecomposition};

/// Exponent of `g` (free function form).
pub fn exponent(g: &FgAbGroup) -> Exponent {
    g.exponent()
}
