//! The modified Ringel-Hall algebra `Ḣ` in plus-left normal form
//! `⟨M(λ)⟩⁺ 1_ζ ⟨M(λ')⟩⁻`, with `ζ` the idempotent between the two parts.

mod checks;
mod pi;
mod reflect;
mod transport;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::coeffring::{QuadraticScalar, Rat, SpecializeError};
use crate::hallalg::{HallAlgebra, HallElement, HallError};
use crate::lincomb::LinComb;
use crate::quiverrep::{ClassId, ClassifyError, QuiverError, RepCategory};
use crate::udot::Sign;

pub use pi::{DFactor, DWord, DoubleMonomial, TildeScalar};
pub use reflect::{formula_exponents, BgpMap, FormulaShape};
pub use checks::Report;
pub use transport::Transport;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HdotMonomial {
    pub plus: ClassId,
    pub zeta: Weight,
    pub minus: ClassId,
}

pub type HdotElement = LinComb<HdotMonomial, QuadraticScalar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HdotError {
    #[error(transparent)]
    Hall(#[from] HallError),
    #[error(transparent)]
    Specialize(#[from] SpecializeError),
    #[error(transparent)]
    Fquot(#[from] crate::fquot::FError),
    #[error("unsupported shape: {0}")]
    Shape(String),
}

impl From<ClassifyError> for HdotError {
    fn from(e: ClassifyError) -> Self {
        HdotError::Hall(e.into())
    }
}

impl From<QuiverError> for HdotError {
    fn from(e: QuiverError) -> Self {
        HdotError::Hall(e.into())
    }
}

type StraightenKey = (ClassId, Weight, ClassId);

pub struct Hdot {
    hall: Arc<HallAlgebra>,
    cache: Mutex<HashMap<StraightenKey, HdotElement>>,
}

impl std::fmt::Debug for Hdot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hdot").field("hall", &self.hall).finish()
    }
}

/// `(-1)^k`.
pub(crate) fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl Hdot {
    pub fn new(hall: Arc<HallAlgebra>) -> Self {
        Self {
            hall,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_category(cat: Arc<RepCategory>) -> Result<Self, HdotError> {
        Ok(Self::new(Arc::new(HallAlgebra::new(cat)?)))
    }

    pub fn hall(&self) -> &Arc<HallAlgebra> {
        &self.hall
    }

    pub fn category(&self) -> &Arc<RepCategory> {
        self.hall.category()
    }

    pub fn cartan(&self) -> &CartanDatum {
        self.hall.cartan()
    }

    pub fn q(&self) -> u64 {
        self.hall.q()
    }

    pub fn n(&self) -> usize {
        self.hall.n()
    }

    pub fn v(&self, e: i64) -> QuadraticScalar {
        self.hall.v(e)
    }

    /// `(-1)^s v^e`.
    pub fn sv(&self, s: i64, e: i64) -> QuadraticScalar {
        let x = self.v(e);
        if sign(s) < 0 {
            -x
        } else {
            x
        }
    }

    pub fn ratio(&self, num: BigInt, den: BigInt) -> QuadraticScalar {
        QuadraticScalar::from_rat(self.q(), Rat::new(num, den))
    }

    pub fn dim(&self, c: ClassId) -> Vec<i64> {
        c.dimvec(self.n())
    }

    /// The class as a weight, `Σ a_i α_i`.
    pub fn wt(&self, c: ClassId) -> Weight {
        self.cartan().root_weight(&self.dim(c))
    }

    /// `tr α = Σ a_i`.
    pub fn tr(&self, nu: &[i64]) -> i64 {
        nu.iter().sum()
    }

    /// `m(α) = Σ a_i ε_i`.
    pub fn m(&self, nu: &[i64]) -> i64 {
        nu.iter().zip(self.cartan().epsilons()).map(|(a, e)| a * e).sum()
    }

    pub fn monomial(&self, plus: ClassId, zeta: Weight, minus: ClassId) -> HdotElement {
        HdotElement::term(HdotMonomial { plus, zeta, minus }, QuadraticScalar::one(self.q()))
    }

    pub fn idem(&self, zeta: &Weight) -> HdotElement {
        self.monomial(ClassId::zero(), zeta.clone(), ClassId::zero())
    }

    /// `x⁺ 1_ζ y⁻` for `x, y` given by their `⟨M⟩`-coefficients.
    pub fn from_parts(&self, x: &HallElement, zeta: &Weight, y: &HallElement) -> HdotElement {
        let mut out = HdotElement::zero();
        for (a, c) in x {
            for (b, d) in y {
                out.add_term(
                    HdotMonomial {
                        plus: *a,
                        zeta: zeta.clone(),
                        minus: *b,
                    },
                    c * d,
                );
            }
        }
        out
    }

    /// `x⁺ 1_ζ` with `ζ` the right idempotent (`⟨M⟩`-coefficients).
    pub fn plus(&self, x: &HallElement, zeta: &Weight) -> HdotElement {
        self.from_parts(x, zeta, &self.angle_unit())
    }

    /// `y⁻ 1_ζ` with `ζ` the right idempotent; `y` need not be homogeneous.
    pub fn minus(&self, y: &HallElement, zeta: &Weight) -> HdotElement {
        let mut out = HdotElement::zero();
        for (b, d) in y {
            out.add_term(
                HdotMonomial {
                    plus: ClassId::zero(),
                    zeta: zeta - &self.wt(*b),
                    minus: *b,
                },
                d.clone(),
            );
        }
        out
    }

    pub fn angle_unit(&self) -> HallElement {
        HallElement::term(ClassId::zero(), QuadraticScalar::one(self.q()))
    }

    pub fn angle_basis(&self, c: ClassId) -> HallElement {
        HallElement::term(c, QuadraticScalar::one(self.q()))
    }

    /// Hall product in `⟨M⟩`-coefficients.
    pub fn angle_mul(&self, x: &HallElement, y: &HallElement) -> Result<HallElement, HdotError> {
        let h = &self.hall;
        Ok(h.to_angle_coeffs(&h.mul(&h.from_angle_coeffs(x)?, &h.from_angle_coeffs(y)?)?)?)
    }

    pub fn left_idem(&self, m: &HdotMonomial) -> Weight {
        &m.zeta + &self.wt(m.plus)
    }

    pub fn right_idem(&self, m: &HdotMonomial) -> Weight {
        &m.zeta + &self.wt(m.minus)
    }

    fn aut_int(&self, c: ClassId) -> Result<BigInt, HdotError> {
        Ok(BigInt::from(self.hall.aut(c)?))
    }

    /// `⟨M(λ')⟩⁻ 1_ρ ⟨M(λ)⟩⁺` in plus-left form, `ρ` the idempotent between the factors.
    pub fn straighten(&self, lp: ClassId, rho: &Weight, l: ClassId) -> Result<HdotElement, HdotError> {
        if lp.is_zero() {
            return Ok(self.monomial(l, rho - &self.wt(l), ClassId::zero()));
        }
        if l.is_zero() {
            return Ok(self.monomial(ClassId::zero(), rho - &self.wt(lp), lp));
        }
        let key = (lp, rho.clone(), l);
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let out = self.straighten_uncached(lp, rho, l)?;
        self.cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// `p_δ = (−1)^{tr δ} v^{m(δ) + 2e_δ} / a_δ`, the pairing of `⟨δ⟩` with itself
    /// entering the commutation of minus and plus parts.
    fn pairing(&self, d: ClassId) -> Result<QuadraticScalar, HdotError> {
        let dd = self.dim(d);
        let e = self.hall.angle_exponent(d)?;
        Ok(self.sv(self.tr(&dd), self.m(&dd) + 2 * e).scale(&Rat::new(BigInt::from(1), self.aut_int(d)?)))
    }

    /// Solves
    /// `Σ p_δ D^{λ'}_{γδ} D^λ_{δβ} ⟨γ⟩⁻ K̃_{−δ} ⟨β⟩⁺ 1_η = Σ p_δ D^λ_{αδ} D^{λ'}_{δγ} ⟨α⟩⁺ K̃_δ ⟨γ⟩⁻ 1_η`
    /// for its `δ = 0` term on the left, `D` the coproduct coefficients.
    fn straighten_uncached(&self, lp: ClassId, rho: &Weight, l: ClassId) -> Result<HdotElement, HdotError> {
        let h = self.hall.clone();
        let c = self.cartan();
        let eta = rho - &self.wt(l);
        let dl = h.coproduct(l)?;
        let dlp = h.coproduct(lp)?;

        let mut rhs = HdotElement::zero();
        for (alpha, delta, x) in &dl {
            let p = self.pairing(*delta)?;
            for (d2, gamma, y) in &dlp {
                if d2 != delta {
                    continue;
                }
                let right = &eta - &self.wt(*gamma);
                let e = c.pair(&right, &self.dim(*delta));
                let coef = &(&(x * y) * &p) * &self.v(e);
                rhs.add_scaled(&self.monomial(*alpha, right, *gamma), &coef);
            }
        }

        for (gamma, delta, y) in &dlp {
            if delta.is_zero() {
                continue;
            }
            let p = self.pairing(*delta)?;
            for (d2, beta, x) in &dl {
                if d2 != delta {
                    continue;
                }
                let mid = &eta + &self.wt(*beta);
                let e = -c.pair(&mid, &self.dim(*delta));
                let coef = &(&(x * y) * &p) * &self.v(e);
                rhs.add_scaled(&self.straighten(*gamma, &mid, *beta)?, &-coef);
            }
        }
        Ok(rhs)
    }

    pub fn mul_monomials(&self, x: &HdotMonomial, y: &HdotMonomial) -> Result<HdotElement, HdotError> {
        let rho = self.right_idem(x);
        if rho != self.left_idem(y) {
            return Ok(HdotElement::zero());
        }
        let mid = self.straighten(x.minus, &rho, y.plus)?;
        let mut out = HdotElement::zero();
        for (m, c) in &mid {
            let plus = self.angle_mul(&self.angle_basis(x.plus), &self.angle_basis(m.plus))?;
            let minus = self.angle_mul(&self.angle_basis(m.minus), &self.angle_basis(y.minus))?;
            out.add_scaled(&self.from_parts(&plus, &m.zeta, &minus), c);
        }
        Ok(out)
    }

    pub fn mul(&self, x: &HdotElement, y: &HdotElement) -> Result<HdotElement, HdotError> {
        let mut out = HdotElement::zero();
        for (a, c) in x {
            for (b, d) in y {
                out.add_scaled(&self.mul_monomials(a, b)?, &(c * d));
            }
        }
        Ok(out)
    }

    /// Product of a list of factors, left to right.
    pub fn product(&self, factors: &[HdotElement]) -> Result<HdotElement, HdotError> {
        let mut it = factors.iter();
        let Some(first) = it.next() else {
            return Ok(HdotElement::zero());
        };
        let mut acc = first.clone();
        for x in it {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Product of signed homogeneous factors with `1_ζ` inserted before `factors[pos]`.
    pub fn anchored_product(&self, factors: &[(Sign, HallElement)], pos: usize, zeta: &Weight) -> Result<HdotElement, HdotError> {
        let mut wts = Vec::with_capacity(factors.len());
        for (s, x) in factors {
            let Some(c) = x.keys().next() else {
                return Ok(HdotElement::zero());
            };
            wts.push(match s {
                Sign::Plus => self.wt(*c),
                Sign::Minus => -&self.wt(*c),
            });
        }
        let mut right = zeta.clone();
        for w in &wts[pos..] {
            right = &right - w;
        }
        let mut parts = Vec::with_capacity(factors.len());
        for ((s, x), w) in factors.iter().zip(&wts).rev() {
            parts.push(match s {
                Sign::Plus => self.plus(x, &right),
                Sign::Minus => self.minus(x, &right),
            });
            right = &right + w;
        }
        parts.reverse();
        if parts.is_empty() {
            return Ok(self.idem(zeta));
        }
        self.product(&parts)
    }

    pub fn to_json(&self, x: &HdotElement) -> Vec<HdotTerm> {
        let n = self.n();
        x.iter()
            .map(|(m, c)| HdotTerm {
                plus: m.plus.key(n),
                zeta: m.zeta.0.clone(),
                minus: m.minus.key(n),
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HdotTerm {
    pub plus: String,
    pub zeta: Vec<i64>,
    pub minus: String,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::ValuedQuiver;

    pub(crate) fn a2(q: u64, arrows: &[(usize, usize)]) -> Hdot {
        a2_cap(q, arrows, 4)
    }

    pub(crate) fn a2_cap(q: u64, arrows: &[(usize, usize)], cap: usize) -> Hdot {
        let cat = RepCategory::new(ValuedQuiver::simply_laced(2, arrows).unwrap(), q, cap).unwrap();
        Hdot::from_category(Arc::new(cat)).unwrap()
    }

    #[test]
    fn trivial_products() {
        let h = a2(2, &[(0, 1)]);
        let c = h.cartan().clone();
        let z = c.weight_from_h(&[1, 0]);
        assert_eq!(h.mul(&h.idem(&z), &h.idem(&z)).unwrap(), h.idem(&z));
        assert_eq!(h.straighten(ClassId::zero(), &z, ClassId::zero()).unwrap(), h.idem(&z));
        let s1 = h.category().simple(0);
        let s2 = h.category().simple(1);
        let x = h.plus(&h.angle_basis(s1), &z);
        let y = h.minus(&h.angle_basis(s2), &c.weight_from_h(&[0, 0]));
        assert!(h.mul(&x, &y).unwrap().is_zero());
    }

    #[test]
    fn plus_product_matches_hall() {
        let h = a2(2, &[(0, 1)]);
        let c = h.cartan().clone();
        let z = c.weight_from_h(&[0, 0]);
        let s1 = h.category().simple(0);
        let s2 = h.category().simple(1);
        let x = h.plus(&h.angle_basis(s1), &(&z + c.alpha(1)));
        let y = h.plus(&h.angle_basis(s2), &z);
        let want = h.hall().to_angle_coeffs(&h.hall().mul(&h.hall().simple(0), &h.hall().simple(1)).unwrap()).unwrap();
        assert_eq!(h.mul(&x, &y).unwrap(), h.plus(&want, &z));
    }

    #[test]
    fn distinct_simples_commute() {
        let h = a2(3, &[(0, 1)]);
        let c = h.cartan().clone();
        let (s1, s2) = (h.category().simple(0), h.category().simple(1));
        let rho = c.weight_from_h(&[1, -1]);
        let got = h.straighten(s2, &rho, s1).unwrap();
        // F_2 1_ρ E_1 = E_1 1_{ρ-α_1-α_2} F_2
        let want = h.monomial(s1, &(&rho - c.alpha(0)) - c.alpha(1), s2);
        assert_eq!(got, want);
    }

    #[test]
    fn same_simple_commutator() {
        let h = a2(2, &[(0, 1)]);
        let c = h.cartan().clone();
        let s1 = h.category().simple(0);
        for k in -2..=2 {
            let rho = c.weight_from_h(&[k, 0]);
            let got = h.straighten(s1, &rho, s1).unwrap();
            // F 1_ρ E = E 1_{ρ-2α} F + [2 - ρ(h)] 1_{ρ-α}
            let mut want = h.monomial(s1, &rho - &c.alpha(0).scale(2), s1);
            let br = QuadraticScalar::eval_poly(2, &crate::coeffring::qint(2 - k, 1));
            want.add_scaled(&h.idem(&(&rho - c.alpha(0))), &br);
            assert_eq!(got, want, "ρ(h)={k}");
        }
    }
}
