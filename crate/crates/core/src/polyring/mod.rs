//! Exact arithmetic over F_p: prime fields, monomials, sparse polynomials,
//! term orders, ring presentations and the expression parser.

mod field;
mod monomial;
mod order;
mod parse;
mod poly;
mod ring;

pub use field::{PrimeField, MAX_PRIME};
pub use monomial::{Monomial, MAX_EXPONENT};
pub use order::TermOrder;
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{ResourceCaps, RingPresentation};
