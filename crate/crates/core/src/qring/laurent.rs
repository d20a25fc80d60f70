use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qring::Rational;

/// Element of Q[s, 1/s] with s = q^{1/2}.
///
/// Terms are kept in a map from exponent of `s` to a nonzero coefficient, so
/// structural equality is equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `s^k`.
    pub fn s_pow(k: i64) -> Self {
        Self::monomial(Rational::one(), k)
    }

    /// `q^t = s^{2t}`; `t` must be a half-integer.
    pub fn q_power(t: &Rational) -> Result<Self> {
        let two_t = t * &Rational::from_int(2);
        let k = two_t
            .to_i64()
            .ok_or_else(|| Error::InvalidInput(format!("q^{t}: exponent is not a half-integer")))?;
        Ok(Self::s_pow(k))
    }

    /// `q^n`.
    pub fn q_int(n: i64) -> Self {
        Self::s_pow(2 * n)
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv() -> Self {
        Self::s_pow(2) - Self::s_pow(-2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Rational::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Units of Q[s, 1/s] are exactly the nonzero monomials.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading (highest-exponent) term.
    pub fn leading(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    fn add_term(&mut self, exp: i64, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    /// Exact value at `s = s0`.
    pub fn eval(&self, s0: &Rational) -> Result<Rational> {
        if s0.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(Error::Pole {
                    denominator: "s".into(),
                });
            }
            if s0.is_zero() {
                return Err(Error::InvalidInput(
                    "evaluation at s = 0 is not defined on Q[s, 1/s]".into(),
                ));
            }
        }
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            acc += &(c * &s0.pow(*k)?);
        }
        Ok(acc)
    }

    /// Coefficients of `self * s^{-min_exp}` as a dense ascending vector.
    fn dense(&self) -> (i64, Vec<Rational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in &self.terms {
            v[(k - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i64, v: &[Rational]) -> Self {
        let mut p = Self::zero();
        for (i, c) in v.iter().enumerate() {
            p.add_term(lo + i as i64, c);
        }
        p
    }

    /// Exact quotient when `d` divides `self` in Q[s, 1/s].
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (la, a) = self.dense();
        let (lb, b) = d.dense();
        let (q, r) = poly_divrem(&a, &b);
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(la - lb, &q))
    }

    /// Greatest common divisor, normalised to a monic polynomial in `s`
    /// with nonzero constant term. `gcd(0, 0) = 0`.
    pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let (_, mut x) = a.dense();
        let (_, mut y) = b.dense();
        while y.iter().any(|c| !c.is_zero()) {
            let (_, r) = poly_divrem(&x, &y);
            x = y;
            y = trim(r);
        }
        let x = trim(x);
        let Some(lead) = x.last().cloned() else {
            return Self::zero();
        };
        let inv = lead.recip().expect("trimmed leading coefficient is nonzero");
        let monic: Vec<Rational> = x.iter().map(|c| c * &inv).collect();
        let p = Self::from_dense(0, &monic);
        let lo = p.min_exp().unwrap_or(0);
        p.shift(-lo)
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

/// Dense polynomial division over Q, ascending coefficients.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip().expect("nonzero divisor");
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] * &lead_inv;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &(&c * bc);
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (q, r)
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, &(ca * cb));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

/// Canonical text form: ascending exponents, `c*s^k` (bare `c` for k = 0),
/// joined by ` + `; zero is `0`. Example: `-1*s^-2 + 3 + 1/2*s^4`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *k == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*s^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty Laurent polynomial".into()));
        }
        let mut p = LaurentPoly::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            let (coef, exp) = match term.split_once('*') {
                Some((c, rest)) => {
                    let e = rest.strip_prefix("s^").ok_or_else(|| {
                        Error::Parse(format!("bad term `{term}`: expected `c*s^k`"))
                    })?;
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
                    (c, e)
                }
                None => (term, 0),
            };
            let c: Rational = coef.parse()?;
            p.add_term(exp, &c);
        }
        Ok(p)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> LaurentPoly {
        LaurentPoly::s_pow(1)
    }

    fn sinv() -> LaurentPoly {
        LaurentPoly::s_pow(-1)
    }

    #[test]
    fn q_power_half_integers() {
        assert_eq!(LaurentPoly::q_power(&Rational::half()).unwrap(), s());
        assert_eq!(
            LaurentPoly::q_power(&Rational::from_int(-1)).unwrap(),
            LaurentPoly::s_pow(-2)
        );
        assert_eq!(
            LaurentPoly::q_power(&Rational::zero()).unwrap(),
            LaurentPoly::one()
        );
        assert!(LaurentPoly::q_power(&Rational::frac(1, 3)).is_err());
    }

    #[test]
    fn ring_examples() {
        let a = &s() - &sinv();
        let b = &s() + &sinv();
        assert_eq!(&a + &b, s().scale(&Rational::from_int(2)));
        assert_eq!(&a * &b, LaurentPoly::q_minus_qinv());
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn eval_examples() {
        let p = LaurentPoly::q_minus_qinv();
        assert_eq!(p.eval(&Rational::from_int(2)).unwrap(), Rational::frac(15, 4));
        assert_eq!(
            LaurentPoly::one().eval(&Rational::frac(-7, 3)).unwrap(),
            Rational::one()
        );
        assert_eq!(s().eval(&Rational::from_int(3)).unwrap(), Rational::from_int(3));
        assert!(sinv().eval(&Rational::zero()).is_err());
    }

    #[test]
    fn canonical_text() {
        let p: LaurentPoly = "-1*s^-2 + 3 + 1/2*s^4".parse().unwrap();
        assert_eq!(p.to_string(), "-1*s^-2 + 3 + 1/2*s^4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let q: LaurentPoly = "1/2*s^4 + 3 + -1*s^-2".parse().unwrap();
        assert_eq!(p, q);
        assert!("s^2".parse::<LaurentPoly>().is_err());
        assert!("1*t^2".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn exact_division_and_gcd() {
        let q = LaurentPoly::q_int(1);
        let one = LaurentPoly::one();
        // (q^2 - 1) / (q - 1) = q + 1
        let num = &(&q * &q) - &one;
        let den = &q - &one;
        assert_eq!(num.div_exact(&den).unwrap(), &q + &one);
        assert!(one.div_exact(&den).is_none());
        let g = LaurentPoly::gcd(&num.shift(-7), &den.scale(&Rational::from_int(5)));
        assert_eq!(g, &q - &one);
        assert_eq!(LaurentPoly::gcd(&num, &LaurentPoly::s_pow(3)), one);
    }
}
