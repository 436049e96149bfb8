use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Rat};
use super::ParseScalarError;

/// Element of `Q(v)` as a fraction of Laurent polynomials.
///
/// Fractions are kept reduced with a monic denominator whose lowest exponent is 0,
/// so in practice equal values share a representation; equality still compares by
/// cross-multiplication.
#[derive(Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn v_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::v_pow(e))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        Self {
            num,
            den: LaurentPoly::one(),
        }
    }

    /// `None` when the denominator is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::reduced(num, den))
    }

    fn reduced(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((c, e)) = den.as_monomial() {
            let inv = c.recip();
            return Self::from_poly(num.scale(&inv).shift(-e));
        }
        let g = LaurentPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.num_terms() > 1 {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        } else {
            (num, den)
        };
        let shift = den.min_exp().unwrap();
        let lc = den.leading_coeff().unwrap().recip();
        num = num.scale(&lc).shift(-shift);
        den = den.scale(&lc).shift(-shift);
        Self { num, den }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The Laurent polynomial this fraction equals, if it has trivial denominator.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_one() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn shift(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn bar(&self) -> Self {
        Self::reduced(self.num.bar(), self.den.bar())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 {
            self.recip().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for RationalFn {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            let (n, d) = rest
                .split_once(")/(")
                .ok_or_else(|| ParseScalarError(format!("bad fraction '{s}'")))?;
            let d = d
                .strip_suffix(')')
                .ok_or_else(|| ParseScalarError(format!("bad fraction '{s}'")))?;
            let num: LaurentPoly = n.parse()?;
            let den: LaurentPoly = d.parse()?;
            Self::new(num, den).ok_or_else(|| ParseScalarError("zero denominator".into()))
        } else {
            Ok(Self::from_poly(s.parse()?))
        }
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RationalFn::from_poly(&self.num + &rhs.num);
            }
            return RationalFn::reduced(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::reduced(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFn::from_poly(&self.num * &rhs.num);
        }
        RationalFn::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFn {
    type Output = RationalFn;
    fn div(self, rhs: &RationalFn) -> RationalFn {
        assert!(!rhs.is_zero(), "division by zero in Q(v)");
        RationalFn::reduced(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFn {
            type Output = RationalFn;
            fn $m(self, rhs: RationalFn) -> RationalFn {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFn {
    fn one() -> Self {
        RationalFn::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::laurent::rat;

    fn r(s: &str) -> RationalFn {
        s.parse().unwrap()
    }

    #[test]
    fn reduces_common_factors() {
        let x = r("(1*v^2 - 1*v^0)/(1*v^1 - 1*v^0)");
        assert_eq!(x.to_string(), "1*v^1 + 1*v^0");
        assert!(x.as_poly().is_some());
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = RationalFn::new(LaurentPoly::from_int(2), LaurentPoly::from_terms([(1, rat(4))]))
            .unwrap();
        assert_eq!(a, r("1/2*v^-1"));
    }

    #[test]
    fn field_inverse() {
        let x = r("(1*v^1 + 1*v^-1)/(1*v^2 + 3*v^0)");
        let y = x.recip().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(&(&x / &x), &RationalFn::one());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "2*v^1", "(1*v^1 + 1*v^0)/(1*v^2 + 1*v^0)"] {
            assert_eq!(r(s).to_string(), s);
        }
    }
}
