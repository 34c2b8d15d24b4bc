//! Finite fields GF(p^m) with table arithmetic, polynomials over them, and
//! subfield embeddings.

mod embed;
mod field;
mod poly;

pub use embed::{embed, poly_from_roots, SubfieldEmbedding};
pub use field::{field, field_of_order, is_prime, prime_power, Elem, FieldDescriptor, FieldTable, MAX_ORDER};
pub use poly::Polynomial;

pub(crate) use field::gcd;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field {p}^{m} exceeds the supported order 2^16")]
    TooLarge { p: u32, m: u32 },
    #[error("GF({0}) is not declared as a quadratic extension")]
    NotQuadraticTower(u32),
    #[error("element {0} does not lie in the quadratic subfield")]
    NotInSubfield(u32),
    #[error("GF({small}) is not a subfield of GF({big})")]
    NotASubfield { small: u32, big: u32 },
    #[error("roots are not closed under Frobenius; coefficients do not descend")]
    NotGaloisStable,
}
