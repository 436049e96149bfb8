use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ParseScalarError;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Finite sum of rational multiples of integer powers of `v`.
///
/// Zero coefficients are never stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    /// `c * v^e`
    pub fn monomial(c: Rat, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// `v^e`
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(Rat::one(), e)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> Rat {
        self.terms.get(&e).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.terms.values().next_back()
    }

    /// The constant polynomial's value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Single term `(c, e)` if the polynomial is a monomial.
    pub fn as_monomial(&self) -> Option<(&Rat, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn add_term(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rat, shift: i64) {
        if c.is_zero() {
            return;
        }
        for (e, d) in &other.terms {
            self.add_term(e + shift, d * c);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, d)| (*e, d * c)).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, d)| (e + k, d.clone())).collect(),
        }
    }

    /// The bar involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, d)| (-e, d.clone())).collect(),
        }
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` when `divisor` does not divide `self` in `Q[v, v^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = divisor.as_monomial() {
            return Some(self.scale(&c.recip()).shift(-e));
        }
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Long division after clearing negative powers: `self = q*d + r` where `r`,
    /// viewed as a polynomial after the same shift as `self`, has lower degree span than `d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dmin = d.min_exp().expect("division by zero polynomial");
        let dmax = d.max_exp().unwrap();
        let dlead = d.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let base = self.min_exp().unwrap_or(0);
        // Reduce until the remainder's span above `base` is shorter than the divisor's.
        while let Some(rmax) = rem.max_exp() {
            if rmax - base < dmax - dmin {
                break;
            }
            let c = rem.coeff(rmax) / &dlead;
            let shift = rmax - dmax;
            quot.add_term(shift, c.clone());
            rem.add_scaled(d, &(-c), shift);
        }
        (quot, rem)
    }

    /// Monic gcd, normalized so the lowest exponent is 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.normalize_low();
        let mut y = b.normalize_low();
        while !y.is_zero() {
            let r = x.poly_rem(&y);
            x = y;
            y = r.normalize_low();
        }
        if x.is_zero() {
            return x;
        }
        let lc = x.leading_coeff().unwrap().clone();
        x.scale(&lc.recip())
    }

    fn normalize_low(&self) -> Self {
        match self.min_exp() {
            Some(m) => self.shift(-m),
            None => Self::zero(),
        }
    }

    /// Remainder of polynomial division, both operands being ordinary polynomials.
    fn poly_rem(&self, d: &Self) -> Self {
        let dmax = d.max_exp().unwrap();
        let dlead = d.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rmax) = rem.max_exp() {
            if rmax < dmax {
                break;
            }
            let c = rem.coeff(rmax) / &dlead;
            rem.add_scaled(d, &(-c), rmax - dmax);
        }
        rem
    }
}

fn fmt_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                write!(f, "{}*v^{}", fmt_rat(c), e)?;
            } else if c.is_negative() {
                write!(f, " - {}*v^{}", fmt_rat(&-c), e)?;
            } else {
                write!(f, " + {}*v^{}", fmt_rat(c), e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_rat(s: &str) -> Result<Rat, ParseScalarError> {
    let s = s.trim();
    let bad = || ParseScalarError(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        // Split into signed terms at top-level " + " / " - " separators.
        let mut p = Self::zero();
        let mut sign = Rat::one();
        let mut rest = s;
        loop {
            let next = [" + ", " - "]
                .iter()
                .filter_map(|sep| rest.find(sep).map(|i| (i, *sep)))
                .min_by_key(|(i, _)| *i);
            let (term, tail) = match next {
                Some((i, sep)) => (&rest[..i], Some((sep, &rest[i + 3..]))),
                None => (rest, None),
            };
            let (c, e) = term
                .split_once("*v^")
                .ok_or_else(|| ParseScalarError(format!("bad term '{term}'")))?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| ParseScalarError(format!("bad exponent in '{term}'")))?;
            p.add_term(e, parse_rat(c)? * &sign);
            match tail {
                Some((sep, t)) => {
                    sign = if sep == " - " { -Rat::one() } else { Rat::one() };
                    rest = t;
                }
                None => break,
            }
        }
        Ok(p)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_assign_ref(&rhs);
        self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rat::one(), 0);
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
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

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_orders_by_decreasing_exponent() {
        let x = LaurentPoly::from_terms([(-1, rat(1)), (2, rat(3)), (0, rat_frac(-1, 2))]);
        assert_eq!(x.to_string(), "3*v^2 - 1/2*v^0 + 1*v^-1");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "1*v^0", "3*v^2 - 1/2*v^0 + 1*v^-1", "-2/3*v^-4"] {
            assert_eq!(p(s).to_string(), s);
        }
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = p("1*v^1 + 1*v^0");
        let y = p("-1*v^1 + 2*v^0");
        assert_eq!((&x + &y).to_string(), "3*v^0");
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p("1*v^1 + 1*v^-1");
        let b = p("1*v^2 + 1*v^0 + 1*v^-2");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }

    #[test]
    fn gcd_of_products() {
        let a = p("1*v^1 + 1*v^-1");
        let b = p("1*v^1 - 1*v^0");
        let c = p("1*v^2 + 3*v^0");
        let g = LaurentPoly::gcd(&(&a * &b), &(&a * &c));
        // v + v^-1 normalized to v^2 + 1
        assert_eq!(g, p("1*v^2 + 1*v^0"));
    }
}
