//! Exact multivariate polynomial arithmetic over the rationals and the
//! Gröbner-basis engine behind every geometric computation.

pub mod budget;
mod fraction;
mod groebner;
mod ideal;
pub mod linalg;
mod monomial;
mod order;
mod polynomial;
mod read;
mod scalar;

pub use fraction::{substitute, Fraction};
pub use ideal::{coefficients_wrt, gcd, GroebnerBasis, Ideal};
pub use monomial::Monomial;
pub use order::{Comparator, MonomialOrder};
pub use polynomial::{default_names, Polynomial};
pub use read::{read_fraction, read_polynomial};
pub use scalar::{fmt_scalar, int, parse_scalar, ratio, Scalar};

use crate::error::{Error, Result};

/// Remainder of `f` modulo the reduced basis of `ideal` under `order`;
/// zero iff `f ∈ ideal`.
pub fn normal_form(f: &Polynomial, ideal: &Ideal, order: &MonomialOrder) -> Result<Polynomial> {
    if f.arity() != ideal.arity() {
        return Err(Error::ArityMismatch { expected: ideal.arity(), found: f.arity() });
    }
    Ok(ideal.groebner(order)?.reduce(f))
}

pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    Ok(ideal.groebner(order)?.polynomials())
}

pub fn eliminate(ideal: &Ideal, vars: &[usize]) -> Result<Ideal> {
    ideal.eliminate(vars)
}

pub fn saturate(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    ideal.saturate(f)
}

pub fn is_empty_variety(ideal: &Ideal) -> Result<bool> {
    ideal.is_unit()
}
