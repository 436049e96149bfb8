use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::{LaurentPoly, Rat};
use super::ratfn::RationalFn;
use super::ParseScalarError;

/// `a + b*v` in `Q[v]/(v^2 - q)`, i.e. `Q(v)` specialized at `v = sqrt(q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticScalar {
    q: u64,
    a: Rat,
    b: Rat,
}

impl QuadraticScalar {
    pub fn new(q: u64, a: Rat, b: Rat) -> Self {
        Self { q, a, b }
    }

    pub fn zero(q: u64) -> Self {
        Self::new(q, Rat::zero(), Rat::zero())
    }

    pub fn one(q: u64) -> Self {
        Self::from_rat(q, Rat::one())
    }

    pub fn from_int(q: u64, n: i64) -> Self {
        Self::from_rat(q, Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(q: u64, a: Rat) -> Self {
        Self::new(q, a, Rat::zero())
    }

    /// `v^e` with `v^2 = q`.
    pub fn v_pow(q: u64, e: i64) -> Self {
        let half = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let qr = Rat::from_integer(BigInt::from(q));
        let mag = if half >= 0 {
            num_traits::pow(qr, half as usize)
        } else {
            num_traits::pow(qr.recip(), (-half) as usize)
        };
        if odd {
            Self::new(q, Rat::zero(), mag)
        } else {
            Self::new(q, mag, Rat::zero())
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn qrat(&self) -> Rat {
        Rat::from_integer(BigInt::from(self.q))
    }

    /// `(a - b v) / (a^2 - q b^2)`; the norm never vanishes since `q` is not a square.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.a * &self.a - self.qrat() * &self.b * &self.b;
        Some(Self::new(self.q, &self.a / &norm, -(&self.b / &norm)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.q, &self.a * c, &self.b * c)
    }

    /// Multiplication by `v^e`.
    pub fn shift(&self, e: i64) -> Self {
        if e == 0 {
            return self.clone();
        }
        self * &Self::v_pow(self.q, e)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 {
            self.recip().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one(self.q);
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Value of a Laurent polynomial at `v = sqrt(q)`.
    pub fn eval_poly(q: u64, p: &LaurentPoly) -> Self {
        let mut acc = Self::zero(q);
        for (e, c) in p.terms() {
            acc = &acc + &Self::v_pow(q, e).scale(c);
        }
        acc
    }

    pub fn parse_with_q(q: u64, s: &str) -> Result<Self, ParseScalarError> {
        let p: LaurentPoly = s.parse()?;
        Ok(Self::eval_poly(q, &p))
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.q, other.q, "scalars from different specializations");
    }
}

/// Evaluation `Q(v) -> Q(sqrt q)`; fails when the denominator vanishes at `sqrt q`.
pub fn specialize(x: &RationalFn, q: u64) -> Result<QuadraticScalar, SpecializeError> {
    let n = QuadraticScalar::eval_poly(q, x.numer());
    let d = QuadraticScalar::eval_poly(q, x.denom());
    let inv = d.recip().ok_or(SpecializeError { q })?;
    Ok(&n * &inv)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("denominator vanishes at v = sqrt({q})")]
pub struct SpecializeError {
    pub q: u64,
}

impl fmt::Display for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = LaurentPoly::from_terms([(1, self.b.clone()), (0, self.a.clone())]);
        write!(f, "{p}")
    }
}

impl fmt::Debug for QuadraticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (v^2={})", self.q)
    }
}

impl Add for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn add(self, rhs: &QuadraticScalar) -> QuadraticScalar {
        self.check(rhs);
        QuadraticScalar::new(self.q, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn sub(self, rhs: &QuadraticScalar) -> QuadraticScalar {
        self.check(rhs);
        QuadraticScalar::new(self.q, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Neg for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn neg(self) -> QuadraticScalar {
        QuadraticScalar::new(self.q, -&self.a, -&self.b)
    }
}

impl Mul for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn mul(self, rhs: &QuadraticScalar) -> QuadraticScalar {
        self.check(rhs);
        let a = &self.a * &rhs.a + self.qrat() * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadraticScalar::new(self.q, a, b)
    }
}

impl Div for &QuadraticScalar {
    type Output = QuadraticScalar;
    fn div(self, rhs: &QuadraticScalar) -> QuadraticScalar {
        self * &rhs.recip().expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuadraticScalar {
            type Output = QuadraticScalar;
            fn $m(self, rhs: QuadraticScalar) -> QuadraticScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadraticScalar {
    type Output = QuadraticScalar;
    fn neg(self) -> QuadraticScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::laurent::{rat, rat_frac};

    #[test]
    fn v_squared_is_q() {
        let v = QuadraticScalar::v_pow(3, 1);
        assert_eq!(&v * &v, QuadraticScalar::from_int(3, 3));
        assert_eq!(QuadraticScalar::v_pow(2, -1), QuadraticScalar::new(2, rat(0), rat_frac(1, 2)));
        assert_eq!(QuadraticScalar::v_pow(2, -3), QuadraticScalar::new(2, rat(0), rat_frac(1, 4)));
    }

    #[test]
    fn specialize_v_plus_inverse() {
        let x: RationalFn = "1*v^1 + 1*v^-1".parse().unwrap();
        let s = specialize(&x, 2).unwrap();
        assert_eq!(s, QuadraticScalar::new(2, rat(0), rat_frac(3, 2)));
        assert_eq!(s.to_string(), "3/2*v^1");
    }

    #[test]
    fn reciprocal() {
        let x = QuadraticScalar::new(5, rat(2), rat(-3));
        assert!((&x * &x.recip().unwrap()).is_one());
    }

    #[test]
    fn display_parse_round_trip() {
        let x = QuadraticScalar::new(3, rat_frac(-1, 2), rat(4));
        let s = x.to_string();
        assert_eq!(s, "4*v^1 - 1/2*v^0");
        assert_eq!(QuadraticScalar::parse_with_q(3, &s).unwrap(), x);
    }
}
