//! Exact-arithmetic kernels for computing Frobenius splitting numbers,
//! Hilbert-Kunz multiplicities and F-signature estimates of local rings of
//! prime characteristic presented as F_p[x_1..x_n]/P.
//!
//! Layered bottom-up:
//!
//! * [`polyring`] — F_p arithmetic, monomials, sparse polynomials, term
//!   orders, ring presentations and the expression parser;
//! * [`groebner`] — Buchberger's algorithm plus the derived ideal calculus
//!   (sum, intersection, colon, saturation, membership, equality);
//! * [`artinian`] — colengths by standard monomials, a dense linear-algebra
//!   length oracle, socle bases and irreducibility;
//! * [`frobenius`] — bracket powers, splitting numbers, Hilbert-Kunz rows
//!   and F-signature estimation with exact-rational extrapolation;
//! * [`conditions`] — ideal towers, the colon-chain stabilization checks and
//!   the Q-Gorenstein tower construction.

pub mod artinian;
pub mod conditions;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod polyring;

pub use error::{Error, Result};
