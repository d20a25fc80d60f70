use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::qring::{LaurentPoly, Rational};

/// Polynomial in `z` with `LaurentPoly` coefficients, ascending powers,
/// no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<LaurentPoly>,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(LaurentPoly::one())
    }

    pub fn constant(c: LaurentPoly) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::from_coeffs(vec![LaurentPoly::zero(), LaurentPoly::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<LaurentPoly>) -> Self {
        while coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> &LaurentPoly {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn shift_z(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![LaurentPoly::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs: v }
    }

    /// Substitute `z = z0` symbolically.
    pub fn at_z(&self, z0: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z0) + c;
        }
        acc
    }

    pub fn eval(&self, s0: &Rational, z0: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z0) + &c.eval(s0)?;
        }
        Ok(acc)
    }

    /// GCD of the coefficients in Q[s, 1/s].
    pub fn content(&self) -> LaurentPoly {
        let mut g = LaurentPoly::zero();
        for c in &self.coeffs {
            g = LaurentPoly::gcd(&g, c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
                .collect(),
        )
    }

    /// `lc(b)^e * a mod b` for the minimal `e` making the division exact.
    fn pseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.lead().clone();
        let mut r = a.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.lead().clone();
            r = &r.scale(&lb) - &b.scale(&lr).shift_z(dr - db);
        }
        r
    }

    /// GCD in Q[s, 1/s][z] up to a unit, via the primitive remainder sequence.
    pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
        if a.is_zero() {
            return b.primitive_part().scale(&b.content());
        }
        if b.is_zero() {
            return a.primitive_part().scale(&a.content());
        }
        let c = LaurentPoly::gcd(&a.content(), &b.content());
        let (mut x, mut y) = (a.primitive_part(), b.primitive_part());
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.degree() == Some(0) {
                return ZPoly::constant(c);
            }
            let r = Self::pseudo_rem(&x, &y).primitive_part();
            x = y;
            y = r;
        }
        x.scale(&c)
    }

    /// Exact quotient in Q[s, 1/s][z], if `d` divides `self` there.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        let dd = d.degree()?;
        let ld = d.lead();
        let mut r = self.clone();
        let mut q = vec![LaurentPoly::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let c = r.lead().div_exact(ld)?;
            r = &r - &d.scale(&c).shift_z(dr - dd);
            q[dr - dd] = c;
        }
        Some(ZPoly::from_coeffs(q))
    }
}

impl Add<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = LaurentPoly::zero();
        ZPoly::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = rhs.coeffs.get(i).unwrap_or(&zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Sub<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        self + &(-rhs)
    }
}

impl Mul<&ZPoly> for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut v = vec![LaurentPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += &(a * b);
            }
        }
        ZPoly::from_coeffs(v)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

/// Rational function `num / den` in `z` over Q(s).
///
/// Values are kept reduced (common factors cancelled, leading coefficient of
/// the denominator made monic) but equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    pub fn make(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn zero() -> Self {
        RatFunc {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(c: LaurentPoly) -> Self {
        RatFunc {
            num: ZPoly::constant(c),
            den: ZPoly::one(),
        }
    }

    pub fn z() -> Self {
        RatFunc {
            num: ZPoly::z(),
            den: ZPoly::one(),
        }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalized(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = ZPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) && g.coeffs[0].is_monomial() {
            (num, den)
        } else {
            match (num.div_exact(&g), den.div_exact(&g)) {
                (Some(n), Some(d)) => (n, d),
                _ => (num, den),
            }
        };
        // Scale by a unit c*s^k so the denominator's leading coefficient is
        // monic with lowest exponent 0.
        let lead = den.lead();
        let (_, hc) = lead.leading().expect("nonzero");
        let lo = lead.min_exp().expect("nonzero");
        let unit = LaurentPoly::monomial(hc.recip().expect("nonzero"), -lo);
        if !unit.is_one() {
            num = num.scale(&unit);
            den = den.scale(&unit);
        }
        RatFunc { num, den }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::make(self.den.clone(), self.num.clone())
    }

    /// Exact value at `(s0, z0)`; a vanishing denominator is a pole error.
    pub fn eval(&self, s0: &Rational, z0: &Rational) -> Result<Rational> {
        let d = self.den.eval(s0, z0)?;
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: format!("{} at s = {s0}, z = {z0}", self.den),
            });
        }
        Ok(&self.num.eval(s0, z0)? / &d)
    }

    /// Substitute `z = z0` symbolically; the result is constant in `z`.
    pub fn at_z(&self, z0: &LaurentPoly) -> Result<Self> {
        let d = self.den.at_z(z0);
        if d.is_zero() {
            return Err(Error::Pole {
                denominator: format!("{} at z = {z0}", self.den),
            });
        }
        Self::make(ZPoly::constant(self.num.at_z(z0)), ZPoly::constant(d))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for RatFunc {}

impl From<LaurentPoly> for RatFunc {
    fn from(c: LaurentPoly) -> Self {
        RatFunc::from_laurent(c)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == ZPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}] / [{}]", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// `{"num": [...], "den": [...]}` with ascending z-coefficients in the
/// Laurent text grammar.
impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatFunc", 2)?;
        st.serialize_field("num", &self.num.coeffs)?;
        st.serialize_field("den", &self.den.coeffs)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            num: Vec<LaurentPoly>,
            den: Vec<LaurentPoly>,
        }
        let raw = Raw::deserialize(d)?;
        RatFunc::make(ZPoly::from_coeffs(raw.num), ZPoly::from_coeffs(raw.den))
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q_int(1)
    }

    fn qinv() -> LaurentPoly {
        LaurentPoly::q_int(-1)
    }

    /// q - z q^{-1}
    fn den_qz() -> ZPoly {
        ZPoly::from_coeffs(vec![q(), -&qinv()])
    }

    #[test]
    fn numerator_root_evaluates_to_zero() {
        let num = ZPoly::from_coeffs(vec![LaurentPoly::from_int(-1), LaurentPoly::one()]);
        let r = RatFunc::make(num, den_qz()).unwrap();
        let v = r.eval(&Rational::from_int(3), &Rational::one()).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn denominator_root_is_a_pole() {
        let num = ZPoly::z().scale(&LaurentPoly::q_minus_qinv());
        let r = RatFunc::make(num, den_qz()).unwrap();
        // z = q^2 at s = 2 is z = 16
        let err = r.eval(&Rational::from_int(2), &Rational::from_int(16)).unwrap_err();
        assert!(matches!(err, Error::Pole { .. }));
        assert!(r.at_z(&LaurentPoly::q_int(2)).is_err());
    }

    #[test]
    fn reciprocal_product_is_one() {
        let num = ZPoly::from_coeffs(vec![q(), LaurentPoly::from_int(3), qinv()]);
        let r = RatFunc::make(num.clone(), den_qz()).unwrap();
        let inv = RatFunc::make(den_qz(), num).unwrap();
        assert_eq!(&r * &inv, RatFunc::one());
        assert_eq!(r.recip().unwrap(), inv);
    }

    #[test]
    fn common_factors_cancel() {
        let zm1 = ZPoly::from_coeffs(vec![LaurentPoly::from_int(-1), LaurentPoly::one()]);
        let num = &zm1 * &den_qz();
        let den = &den_qz().scale(&LaurentPoly::from_int(4)) * &den_qz();
        let r = RatFunc::make(num, den).unwrap();
        assert_eq!(r.num().degree(), Some(1));
        assert_eq!(r.den().degree(), Some(1));
        let expect = RatFunc::make(zm1, den_qz().scale(&LaurentPoly::from_int(4))).unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn json_round_trip() {
        let r = RatFunc::make(ZPoly::z(), den_qz()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: RatFunc = serde_json::from_str(&s).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
