//! The modified quantum group `U̇` in plus-left normal form `x⁺ 1_ζ x'⁻`, where `ζ`
//! is the idempotent between the two parts.

mod lusztig;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::coeffring::{qbinom, qint, RationalFn};
use crate::fquot::{FAlgebra, FElement, FError, Word};
use crate::lincomb::LinComb;

pub use lusztig::BraidReport;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UMonomial {
    pub plus: Word,
    pub zeta: Weight,
    pub minus: Word,
}

pub type UElement = LinComb<UMonomial, RationalFn>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

type StraightenKey = (Word, Weight, Word);

pub struct Udot {
    f: Arc<FAlgebra>,
    cache: Mutex<HashMap<StraightenKey, UElement>>,
    t_cache: Mutex<HashMap<(usize, Sign, u8, Weight), UElement>>,
}

impl std::fmt::Debug for Udot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Udot").field("f", &self.f).finish()
    }
}

impl Udot {
    pub fn new(f: Arc<FAlgebra>) -> Self {
        Self {
            f,
            cache: Mutex::new(HashMap::new()),
            t_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_cartan(cartan: CartanDatum, cap: usize) -> Self {
        Self::new(Arc::new(FAlgebra::new(cartan, cap)))
    }

    pub fn falg(&self) -> &FAlgebra {
        &self.f
    }

    pub fn cartan(&self) -> &CartanDatum {
        self.f.cartan()
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }

    fn wt(&self, w: &[u8]) -> Weight {
        self.cartan().root_weight(&self.f.weight(w))
    }

    pub fn idem(&self, zeta: &Weight) -> UElement {
        self.monomial(Vec::new(), zeta.clone(), Vec::new())
    }

    fn monomial(&self, plus: Word, zeta: Weight, minus: Word) -> UElement {
        UElement::term(UMonomial { plus, zeta, minus }, RationalFn::one())
    }

    /// `E_i^{(a)} 1_λ`.
    pub fn e(&self, i: usize, a: u32, lambda: &Weight) -> Result<UElement, FError> {
        self.from_parts(&self.f.divided_power(i, a), lambda, &self.f.one())
    }

    /// `F_i^{(a)} 1_λ`, i.e. `1_{λ - aα_i} F_i^{(a)}`.
    pub fn f(&self, i: usize, a: u32, lambda: &Weight) -> Result<UElement, FError> {
        let zeta = lambda - &self.cartan().alpha(i).scale(a as i64);
        self.from_parts(&self.f.one(), &zeta, &self.f.divided_power(i, a))
    }

    /// `x⁺ 1_ζ x'⁻` for arbitrary elements of `f`, normalized.
    pub fn from_parts(&self, x: &FElement, zeta: &Weight, y: &FElement) -> Result<UElement, FError> {
        let (x, y) = (self.f.normal_form(x)?, self.f.normal_form(y)?);
        let mut out = UElement::zero();
        for (a, c) in &x {
            for (b, d) in &y {
                out.add_term(
                    UMonomial {
                        plus: a.clone(),
                        zeta: zeta.clone(),
                        minus: b.clone(),
                    },
                    c * d,
                );
            }
        }
        Ok(out)
    }

    pub fn left_idem(&self, m: &UMonomial) -> Weight {
        &m.zeta + &self.wt(&m.plus)
    }

    pub fn right_idem(&self, m: &UMonomial) -> Weight {
        &m.zeta + &self.wt(&m.minus)
    }

    /// `F_m 1_μ E_p` in plus-left normal form (letter words, `μ` between them).
    pub fn straighten(&self, m: &[u8], mu: &Weight, p: &[u8]) -> Result<UElement, FError> {
        if m.is_empty() {
            let zeta = mu - &self.wt(p);
            return self.from_parts(&FElement::term(p.to_vec(), RationalFn::one()), &zeta, &self.f.one());
        }
        if p.is_empty() {
            let zeta = mu - &self.wt(m);
            return self.from_parts(&self.f.one(), &zeta, &FElement::term(m.to_vec(), RationalFn::one()));
        }
        let key = (m.to_vec(), mu.clone(), p.to_vec());
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let c = self.cartan();
        let (mp, j) = (&m[..m.len() - 1], m[m.len() - 1]);
        let (i, pp) = (p[0], &p[1..]);
        let (ai, aj) = (c.alpha(i as usize), c.alpha(j as usize));
        // F_j 1_μ E_i = E_i 1_κ F_j + δ_ij [2 - μ(h_i)]_{v_i} 1_{μ - α_i}
        let kappa = &(mu - ai) - aj;
        let left = self.straighten(mp, &(&kappa + ai), &[i])?;
        let right = self.straighten(&[j], &(&kappa + aj), pp)?;
        let mut out = self.mul(&left, &right)?;
        if i == j {
            let k = qint(2 - mu.h(i as usize), c.eps(i as usize));
            let rest = self.straighten(mp, &(mu - ai), pp)?;
            out.add_scaled(&rest, &RationalFn::from_poly(k));
        }
        self.cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn mul_monomials(&self, x: &UMonomial, y: &UMonomial) -> Result<UElement, FError> {
        let rho = self.right_idem(x);
        if rho != self.left_idem(y) {
            return Ok(UElement::zero());
        }
        let mid = self.straighten(&x.minus, &rho, &y.plus)?;
        let mut out = UElement::zero();
        for (m, c) in &mid {
            let plus = self.f.mul(&FElement::term(x.plus.clone(), RationalFn::one()), &FElement::term(m.plus.clone(), RationalFn::one()))?;
            let minus = self.f.mul(&FElement::term(m.minus.clone(), RationalFn::one()), &FElement::term(y.minus.clone(), RationalFn::one()))?;
            out.add_scaled(&self.from_parts(&plus, &m.zeta, &minus)?, c);
        }
        Ok(out)
    }

    pub fn mul(&self, x: &UElement, y: &UElement) -> Result<UElement, FError> {
        let mut out = UElement::zero();
        for (a, c) in x {
            for (b, d) in y {
                out.add_scaled(&self.mul_monomials(a, b)?, &(c * d));
            }
        }
        Ok(out)
    }

    /// Product of a list of factors, left to right.
    pub fn product(&self, factors: &[UElement]) -> Result<UElement, FError> {
        let mut it = factors.iter();
        let Some(first) = it.next() else {
            return Ok(UElement::zero());
        };
        let mut acc = first.clone();
        for x in it {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Direct divided-power rule: `F_i^{(b)} 1_ζ E_i^{(a)} = Σ_t [a+b-ζ(h_i), t]_{v_i}
    /// E_i^{(a-t)} 1_{ζ-(a+b-t)α_i} F_i^{(b-t)}`.
    pub fn divided_commutator(&self, i: usize, a: u32, b: u32, zeta: &Weight) -> Result<UElement, FError> {
        let c = self.cartan();
        let mut out = UElement::zero();
        for t in 0..=a.min(b) {
            let coef = qbinom(a as i64 + b as i64 - zeta.h(i), t, c.eps(i));
            let idem = zeta - &c.alpha(i).scale((a + b - t) as i64);
            let term = self.from_parts(&self.f.divided_power(i, a - t), &idem, &self.f.divided_power(i, b - t))?;
            out.add_scaled(&term, &RationalFn::from_poly(coef));
        }
        Ok(out)
    }

    pub fn to_json(&self, x: &UElement) -> Vec<UTerm> {
        x.iter()
            .map(|(m, c)| UTerm {
                plus: m.plus.iter().map(|&l| l as usize + 1).collect(),
                zeta: m.zeta.0.clone(),
                minus: m.minus.iter().map(|&l| l as usize + 1).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UTerm {
    pub plus: Vec<usize>,
    pub zeta: Vec<i64>,
    pub minus: Vec<usize>,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(name: &str) -> Udot {
        Udot::from_cartan(CartanDatum::preset(name).unwrap(), 8)
    }

    #[test]
    fn commutator_on_idempotent() {
        for name in ["A2", "B2"] {
            let u = u(name);
            let c = u.cartan().clone();
            for h in -2..=2 {
                for i in 0..2 {
                    let zeta = c.weight_from_h(&[h, 1 - h]);
                    let ef = u.mul(&u.e(i, 1, &(&zeta - c.alpha(i))).unwrap(), &u.f(i, 1, &zeta).unwrap()).unwrap();
                    let fe = u.mul(&u.f(i, 1, &(&zeta + c.alpha(i))).unwrap(), &u.e(i, 1, &zeta).unwrap()).unwrap();
                    let want = u.idem(&zeta).scale(&RationalFn::from_poly(qint(zeta.h(i), c.eps(i))));
                    assert_eq!(ef.sub(&fe), want, "{name} i={i} h={h}");
                }
            }
        }
    }

    #[test]
    fn idempotents_are_orthogonal() {
        let u = u("A2");
        let c = u.cartan();
        let (a, b) = (c.weight_from_h(&[1, 0]), c.weight_from_h(&[0, 1]));
        assert!(u.mul(&u.idem(&a), &u.idem(&b)).unwrap().is_zero());
        assert_eq!(u.mul(&u.idem(&a), &u.idem(&a)).unwrap(), u.idem(&a));
    }

    #[test]
    fn distinct_letters_commute_with_shift() {
        let u = u("A2");
        let c = u.cartan().clone();
        let zeta = c.weight_from_h(&[1, -1]);
        // E_1 1_ζ F_2 = F_2 1_{ζ+α_1+α_2} E_1
        let lhs = u.from_parts(&u.falg().theta(0), &zeta, &u.falg().theta(1)).unwrap();
        let shifted = &(&zeta + c.alpha(0)) + c.alpha(1);
        let rhs = u.straighten(&[1], &shifted, &[0]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn divided_power_rule_matches_letter_rule() {
        for name in ["A2", "B2"] {
            let u = u(name);
            let c = u.cartan().clone();
            for i in 0..2 {
                for a in 0..=2 {
                    for b in 0..=2 {
                        for h in -2..=2 {
                            let zeta = c.weight_from_h(&[h, 0]);
                            let direct = u.divided_commutator(i, a, b, &zeta).unwrap();
                            let fi = u.f(i, b, &zeta).unwrap();
                            let ei = u.e(i, a, &(&zeta - &c.alpha(i).scale(a as i64))).unwrap();
                            assert_eq!(u.mul(&fi, &ei).unwrap(), direct, "{name} i={i} a={a} b={b} h={h}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_on_generators() {
        let u = u("A2");
        let c = u.cartan().clone();
        let zeta = c.weight_from_h(&[0, 1]);
        let x = u.e(0, 1, &zeta).unwrap();
        let x_l = u.left_idem(x.keys().next().unwrap());
        let y = u.f(0, 1, &x_l).unwrap();
        let y_l = u.left_idem(y.keys().next().unwrap());
        let z = u.e(1, 1, &y_l).unwrap();
        let z_l = u.left_idem(z.keys().next().unwrap());
        let w = u.f(1, 1, &z_l).unwrap();
        // (w z) (y x) vs w (z (y x))
        let l = u.mul(&u.mul(&w, &z).unwrap(), &u.mul(&y, &x).unwrap()).unwrap();
        let r = u.mul(&w, &u.mul(&z, &u.mul(&y, &x).unwrap()).unwrap()).unwrap();
        assert_eq!(l, r);
        assert!(!l.is_zero());
    }
}
