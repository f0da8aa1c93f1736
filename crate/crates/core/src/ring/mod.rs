//! Exact rational scalars, monomials, monomial orders and sparse
//! multivariate polynomials over `Q`.

mod division;
mod gcd;
mod monomial;
mod order;
mod poly;
mod ratfunc;
mod text;

pub use division::{divide_multi, is_fully_reduced, reduce, Division};
pub use monomial::Monomial;
pub use order::{BaseOrder, Block, MonomialOrder};
pub use poly::{Binding, MultiPoly, VarSet};
pub use ratfunc::RationalFunction;


/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Scalar = num_rational::BigRational;

/// Shorthand for an integer-valued [`Scalar`].
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}
