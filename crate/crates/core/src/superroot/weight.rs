use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::qring::Rational;

/// Element of the weight lattice in the basis ε_1..ε_l, δ_1..δ_k.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub eps: Vec<Rational>,
    pub delta: Vec<Rational>,
}

impl Weight {
    pub fn new(eps: Vec<Rational>, delta: Vec<Rational>) -> Self {
        Weight { eps, delta }
    }

    pub fn zero(l: usize, k: usize) -> Self {
        Weight::new(vec![Rational::zero(); l], vec![Rational::zero(); k])
    }

    /// `c·ε_i` (1-based `i`).
    pub fn eps(l: usize, k: usize, i: usize, c: i64) -> Self {
        let mut w = Self::zero(l, k);
        w.eps[i - 1] = Rational::from_int(c);
        w
    }

    /// `c·δ_μ` (1-based `mu`).
    pub fn delta(l: usize, k: usize, mu: usize, c: i64) -> Self {
        let mut w = Self::zero(l, k);
        w.delta[mu - 1] = Rational::from_int(c);
        w
    }

    pub fn is_zero(&self) -> bool {
        self.eps.iter().chain(&self.delta).all(Rational::is_zero)
    }

    /// `(ε_i, ε_j) = δ_ij`, `(δ_μ, δ_ν) = −δ_μν`, `(ε, δ) = 0`.
    pub fn bilinear(a: &Weight, b: &Weight) -> Rational {
        let mut acc = Rational::zero();
        for (x, y) in a.eps.iter().zip(&b.eps) {
            acc += &(x * y);
        }
        for (x, y) in a.delta.iter().zip(&b.delta) {
            acc += &-(x * y);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Weight::new(
            self.eps.iter().map(|x| x * c).collect(),
            self.delta.iter().map(|x| x * c).collect(),
        )
    }

    /// Lexicographic key over (δ_1..δ_k, ε_1..ε_l). On basis weights it
    /// realises δ_1 > … > δ_k > ε_1 > … > ε_l > 0 > −ε_l > … > −δ_1.
    pub fn order_key(&self) -> Vec<Rational> {
        self.delta.iter().chain(&self.eps).cloned().collect()
    }

    fn zip_with(&self, other: &Weight, f: impl Fn(&Rational, &Rational) -> Rational) -> Weight {
        Weight::new(
            self.eps.iter().zip(&other.eps).map(|(a, b)| f(a, b)).collect(),
            self.delta.iter().zip(&other.delta).map(|(a, b)| f(a, b)).collect(),
        )
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(&Rational::from_int(-1))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.eps.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{c}*e{}", i + 1));
            }
        }
        for (mu, c) in self.delta.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{c}*d{}", mu + 1));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight({self})")
    }
}
