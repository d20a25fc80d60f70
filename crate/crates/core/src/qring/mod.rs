//! Exact coefficient arithmetic: rationals, Laurent polynomials in
//! `s = q^{1/2}`, and rational functions in the spectral variable `z`.

mod laurent;
mod ratfunc;
mod rational;

pub use laurent::LaurentPoly;
pub use ratfunc::{RatFunc, ZPoly};
pub use rational::Rational;

/// `q^t` for half-integer `t`, as the monomial `s^{2t}`.
pub fn lp_from_qpower(t: &Rational) -> crate::error::Result<LaurentPoly> {
    LaurentPoly::q_power(t)
}
