use std::fmt;

use crate::qring::{LaurentPoly, RatFunc, Rational};

/// Commutative ring of matrix coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
}

macro_rules! impl_coeff {
    ($t:ty) => {
        impl Coeff for $t {
            fn zero() -> Self {
                <$t>::zero()
            }
            fn one() -> Self {
                <$t>::one()
            }
            fn from_int(n: i64) -> Self {
                <$t>::from(LaurentPoly::from_int(n))
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
            fn plus(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn minus(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn times(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn negated(&self) -> Self {
                -self
            }
        }
    };
}

impl_coeff!(LaurentPoly);
impl_coeff!(RatFunc);

impl Coeff for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn from_int(n: i64) -> Self {
        Rational::from_int(n)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}
