//! The twisted Ringel-Hall algebra of a simply-laced quiver over `F_q`, with
//! coefficients in `Q[v]/(v^2 - q)`.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cartan::{CartanDatum, Weight};
use crate::coeffring::{qfact, QuadraticScalar, Rat};
use crate::lincomb::LinComb;
use crate::quiverrep::{ClassId, ClassifyError, QuiverError, RepCategory};

/// Linear combination of `u_[M]` basis symbols.
pub type HallElement = LinComb<ClassId, QuadraticScalar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HallError {
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

pub fn count_scalar(q: u64, n: u128) -> QuadraticScalar {
    QuadraticScalar::from_rat(q, Rat::from_integer(BigInt::from(n)))
}

pub struct HallAlgebra {
    cat: Arc<RepCategory>,
    cartan: CartanDatum,
}

impl std::fmt::Debug for HallAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HallAlgebra").field("cat", &self.cat).finish()
    }
}

impl HallAlgebra {
    pub fn new(cat: Arc<RepCategory>) -> Result<Self, HallError> {
        let cartan = cat.quiver().cartan()?;
        Ok(Self { cat, cartan })
    }

    pub fn category(&self) -> &Arc<RepCategory> {
        &self.cat
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn q(&self) -> u64 {
        self.cat.q()
    }

    pub fn n(&self) -> usize {
        self.cat.n()
    }

    pub fn v(&self, e: i64) -> QuadraticScalar {
        QuadraticScalar::v_pow(self.q(), e)
    }

    pub fn int(&self, k: i64) -> QuadraticScalar {
        QuadraticScalar::from_int(self.q(), k)
    }

    pub fn count(&self, k: u128) -> QuadraticScalar {
        count_scalar(self.q(), k)
    }

    pub fn dim(&self, c: ClassId) -> Vec<i64> {
        c.dimvec(self.n())
    }

    /// The root-lattice element `Σ a_i α_i` as a weight.
    pub fn weight_of(&self, nu: &[i64]) -> Weight {
        self.cartan.root_weight(nu)
    }

    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        self.cat.euler(a, b)
    }

    pub fn symform(&self, a: &[i64], b: &[i64]) -> i64 {
        self.cartan.symform(a, b)
    }

    pub fn unit(&self) -> HallElement {
        HallElement::term(ClassId::zero(), QuadraticScalar::one(self.q()))
    }

    pub fn basis(&self, c: ClassId) -> HallElement {
        HallElement::term(c, QuadraticScalar::one(self.q()))
    }

    pub fn simple(&self, i: usize) -> HallElement {
        self.basis(self.cat.simple(i))
    }

    pub fn aut(&self, c: ClassId) -> Result<u128, HallError> {
        Ok(self.cat.aut(c)?)
    }

    /// `u_M * u_N = v^{⟨M,N⟩} Σ_L g^L_{MN} u_L`.
    pub fn mul_basis(&self, m: ClassId, n: ClassId) -> Result<HallElement, HallError> {
        let (dm, dn) = (self.dim(m), self.dim(n));
        let dl: Vec<i64> = dm.iter().zip(&dn).map(|(a, b)| a + b).collect();
        let twist = self.v(self.euler(&dm, &dn));
        let mut out = HallElement::zero();
        for l in self.cat.classes_of(&dl)? {
            let g = self.cat.hall_number(l, m, n)?;
            if g != 0 {
                out.add_term(l, twist.scale(&Rat::from_integer(g.into())));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, x: &HallElement, y: &HallElement) -> Result<HallElement, HallError> {
        let mut out = HallElement::zero();
        for (m, a) in x {
            for (n, b) in y {
                out.add_scaled(&self.mul_basis(*m, *n)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// Exponent `e` with `⟨M⟩ = v^e u_M`: `-dim_k M + dim_k End(M)`.
    pub fn angle_exponent(&self, c: ClassId) -> Result<i64, HallError> {
        Ok(self.cat.endo_dim(c)? as i64 - c.total_dim() as i64)
    }

    /// `⟨M⟩` in the `u`-basis.
    pub fn angle(&self, c: ClassId) -> Result<HallElement, HallError> {
        Ok(HallElement::term(c, self.v(self.angle_exponent(c)?)))
    }

    /// Coefficients of `x` with respect to the `⟨M⟩` basis.
    pub fn to_angle_coeffs(&self, x: &HallElement) -> Result<HallElement, HallError> {
        let mut out = HallElement::zero();
        for (c, a) in x {
            out.add_term(*c, a.shift(-self.angle_exponent(*c)?));
        }
        Ok(out)
    }

    /// Inverse of [`Self::to_angle_coeffs`].
    pub fn from_angle_coeffs(&self, x: &HallElement) -> Result<HallElement, HallError> {
        let mut out = HallElement::zero();
        for (c, a) in x {
            out.add_term(*c, a.shift(self.angle_exponent(*c)?));
        }
        Ok(out)
    }

    /// `u_i^{*t} / [t]_{v_i}!`.
    pub fn divided_power(&self, i: usize, t: u32) -> Result<HallElement, HallError> {
        let mut acc = self.unit();
        let ui = self.simple(i);
        for _ in 0..t {
            acc = self.mul(&acc, &ui)?;
        }
        let f = QuadraticScalar::eval_poly(self.q(), &qfact(t, self.cartan.eps(i)));
        Ok(acc.scale(&f.recip().expect("quantum factorial is nonzero at sqrt q")))
    }

    /// Green's coproduct of `⟨λ⟩` in the `⟨M⟩` basis: triples `(quotient, sub, D)` with
    /// `Δ⟨λ⟩ = Σ D ⟨quotient⟩ ⊗ ⟨sub⟩` and
    /// `D = v^{e_λ - e_α - e_β + ⟨α,β⟩} (a_α a_β / a_λ) g^λ_{αβ}`, `e` the `⟨M⟩` exponent.
    pub fn coproduct(&self, lambda: ClassId) -> Result<Vec<(ClassId, ClassId, QuadraticScalar)>, HallError> {
        let tally = self.cat.hall_tally(lambda)?;
        let a_l = self.aut(lambda)?;
        let e_l = self.angle_exponent(lambda)?;
        let mut out = Vec::with_capacity(tally.len());
        for (&(quo, sub), &g) in tally.iter() {
            let e = e_l - self.angle_exponent(quo)? - self.angle_exponent(sub)? + self.euler(&self.dim(quo), &self.dim(sub));
            let ratio = Rat::new(
                BigInt::from(g) * BigInt::from(self.aut(quo)?) * BigInt::from(self.aut(sub)?),
                BigInt::from(a_l),
            );
            out.push((quo, sub, self.v(e).scale(&ratio)));
        }
        Ok(out)
    }

    /// `r_α(⟨λ⟩)`: the component of `Δ⟨λ⟩` with `⟨α⟩` in the right (sub) slot, in the `u`-basis.
    pub fn r_map(&self, alpha: ClassId, lambda: ClassId) -> Result<HallElement, HallError> {
        self.r_generic(alpha, lambda, false)
    }

    /// `r'_α(⟨λ⟩)`: the component of `Δ⟨λ⟩` with `⟨α⟩` in the left (quotient) slot, in the `u`-basis.
    pub fn r_prime_map(&self, alpha: ClassId, lambda: ClassId) -> Result<HallElement, HallError> {
        self.r_generic(alpha, lambda, true)
    }

    fn r_generic(&self, alpha: ClassId, lambda: ClassId, prime: bool) -> Result<HallElement, HallError> {
        let mut angle = HallElement::zero();
        for (quo, sub, d) in self.coproduct(lambda)? {
            match (prime, quo == alpha, sub == alpha) {
                (false, _, true) => angle.add_term(quo, d),
                (true, true, _) => angle.add_term(sub, d),
                _ => {}
            }
        }
        self.from_angle_coeffs(&angle)
    }

    /// `ψ(⟨β⟩, ⟨β'⟩) = δ_{ββ'} q^{dim β} / a_β`, extended bilinearly.
    pub fn psi(&self, x: &HallElement, y: &HallElement) -> Result<QuadraticScalar, HallError> {
        let (xa, ya) = (self.to_angle_coeffs(x)?, self.to_angle_coeffs(y)?);
        let mut acc = QuadraticScalar::zero(self.q());
        for (c, a) in &xa {
            if let Some(b) = ya.coeff(c) {
                let val = Rat::new(
                    BigInt::from(self.q()).pow(c.total_dim() as u32),
                    BigInt::from(self.aut(*c)?),
                );
                acc = &acc + &(a * b).scale(&val);
            }
        }
        Ok(acc)
    }

    /// The same form read as diagonal in the `u`-basis: `(u_β, u_β') = δ_{ββ'} |V_β| / a_β`.
    /// On `⟨M⟩` this gives `q^{dim End β} / a_β`; this reading is invariant under reflection.
    pub fn psi_u(&self, x: &HallElement, y: &HallElement) -> Result<QuadraticScalar, HallError> {
        let mut acc = QuadraticScalar::zero(self.q());
        for (c, a) in x {
            if let Some(b) = y.coeff(c) {
                let val = Rat::new(
                    BigInt::from(self.q()).pow(c.total_dim() as u32),
                    BigInt::from(self.aut(*c)?),
                );
                acc = &acc + &(a * b).scale(&val);
            }
        }
        Ok(acc)
    }

    /// `Σ_{t=0}^{n} (−1)^t v_i^{−t} u_i^{(t)} u_j u_i^{(n−t)}`, `n = |a_ij|`.
    pub fn reflected_simple_expansion(&self, i: usize, j: usize) -> Result<HallElement, HallError> {
        let n = self.cartan.a(i, j).unsigned_abs() as u32;
        let mut out = HallElement::zero();
        for t in 0..=n {
            let x = self.mul(&self.mul(&self.divided_power(i, t)?, &self.simple(j))?, &self.divided_power(i, n - t)?)?;
            let s = self.v(-(t as i64) * self.cartan.eps(i));
            out.add_scaled(&x, &if t % 2 == 0 { s } else { -s });
        }
        Ok(out)
    }

    /// Component of `x` in dimension vector `nu`.
    pub fn component(&self, x: &HallElement, nu: &[i64]) -> HallElement {
        x.filter(|c| self.dim(*c) == nu)
    }

    pub fn to_json(&self, x: &HallElement) -> Vec<HallTerm> {
        x.iter()
            .map(|(c, a)| HallTerm {
                class: c.key(self.n()),
                coeff: a.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HallTerm {
    pub class: String,
    pub coeff: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiverrep::ValuedQuiver;

    fn alg(arrows: &[(usize, usize)], n: usize, q: u64, cap: usize) -> HallAlgebra {
        let quiver = ValuedQuiver::simply_laced(n, arrows).unwrap();
        HallAlgebra::new(Arc::new(RepCategory::new(quiver, q, cap).unwrap())).unwrap()
    }

    fn indec(h: &HallAlgebra, d: &[i64]) -> ClassId {
        let c = h.category();
        *c.classes_of(d)
            .unwrap()
            .iter()
            .find(|&&x| c.endo_dim(x).unwrap() == 1)
            .unwrap()
    }

    #[test]
    fn product_examples() {
        let h = alg(&[(0, 1)], 2, 2, 4);
        let cat = h.category();
        let p = indec(&h, &[1, 1]);
        let split = cat.direct_sum(cat.simple(0), cat.simple(1)).unwrap();
        let mut want = HallElement::zero();
        want.add_term(p, h.v(-1));
        want.add_term(split, h.v(-1));
        assert_eq!(h.mul(&h.simple(0), &h.simple(1)).unwrap(), want);
        assert_eq!(h.mul(&h.simple(1), &h.simple(0)).unwrap(), h.basis(split));
        let x = h.basis(p);
        assert_eq!(h.mul(&h.unit(), &x).unwrap(), x);
        let two = cat.multiple_of_simple(0, 2).unwrap();
        assert_eq!(h.mul(&h.simple(0), &h.simple(0)).unwrap(), HallElement::term(two, h.v(1).scale(&Rat::from_integer(3.into()))));
        assert_eq!(h.divided_power(0, 2).unwrap(), HallElement::term(two, h.v(2)));
        assert_eq!(h.divided_power(0, 1).unwrap(), h.simple(0));
    }

    #[test]
    fn normalization_examples() {
        let h = alg(&[(0, 1)], 2, 2, 4);
        let p = indec(&h, &[1, 1]);
        assert_eq!(h.angle(p).unwrap(), HallElement::term(p, h.v(-1)));
        assert_eq!(h.angle(h.category().simple(0)).unwrap(), h.simple(0));
        assert_eq!(h.angle(ClassId::zero()).unwrap(), h.unit());
    }

    #[test]
    fn r_map_examples() {
        let h = alg(&[(0, 1)], 2, 2, 4);
        let cat = h.category();
        let p = indec(&h, &[1, 1]);
        let (s1, s2) = (cat.simple(0), cat.simple(1));
        assert_eq!(h.r_prime_map(s1, p).unwrap(), HallElement::term(s2, h.v(-2)));
        assert!(h.r_map(s1, p).unwrap().is_zero());
        assert_eq!(h.r_map(s1, s1).unwrap(), h.angle(ClassId::zero()).unwrap());
        for c in cat.classes_up_to(3).unwrap() {
            assert_eq!(h.r_map(ClassId::zero(), c).unwrap(), h.angle(c).unwrap());
            assert_eq!(h.r_prime_map(ClassId::zero(), c).unwrap(), h.angle(c).unwrap());
        }
    }

    #[test]
    fn psi_examples() {
        let h = alg(&[(0, 1)], 2, 2, 4);
        let cat = h.category();
        let p = indec(&h, &[1, 1]);
        let (a1, a2) = (h.angle(cat.simple(0)).unwrap(), h.angle(cat.simple(1)).unwrap());
        assert!(h.psi(&a1, &a2).unwrap().is_zero());
        assert_eq!(h.psi(&a1, &a1).unwrap(), h.int(2));
        let ap = h.angle(p).unwrap();
        assert_eq!(h.psi(&ap, &ap).unwrap(), h.int(4));
    }

    #[test]
    fn associativity_small() {
        for (arrows, n) in [(vec![(0, 1)], 2), (vec![(0, 1), (2, 1)], 3)] {
            let h = alg(&arrows, n, 2, 3);
            let all = h.category().classes_up_to(3).unwrap();
            for &a in &all {
                for &b in &all {
                    for &c in &all {
                        if a.total_dim() + b.total_dim() + c.total_dim() > 3 {
                            continue;
                        }
                        let (x, y, z) = (h.basis(a), h.basis(b), h.basis(c));
                        let l = h.mul(&h.mul(&x, &y).unwrap(), &z).unwrap();
                        let r = h.mul(&x, &h.mul(&y, &z).unwrap()).unwrap();
                        assert_eq!(l, r);
                    }
                }
            }
        }
    }

    #[test]
    fn serre_relations() {
        for q in [2, 3, 5] {
            let h = alg(&[(0, 1)], 2, q, 3);
            for (i, j) in [(0, 1), (1, 0)] {
                let mut acc = HallElement::zero();
                for k in 0..=2u32 {
                    let t = h.mul(&h.mul(&h.divided_power(i, k).unwrap(), &h.simple(j)).unwrap(), &h.divided_power(i, 2 - k).unwrap()).unwrap();
                    acc.add_scaled(&t, &h.int(if k % 2 == 0 { 1 } else { -1 }));
                }
                assert!(acc.is_zero(), "q={q} i={i}");
            }
        }
    }

    #[test]
    fn indecomposable_from_simples() {
        // sink i: ⟨P⟩ = u_j u_i - v^{-1} u_i u_j
        for q in [2, 3] {
            for (arrows, i, j) in [([(0, 1)], 1, 0), ([(1, 0)], 0, 1)] {
                let h = alg(&arrows, 2, q, 3);
                let p = indec(&h, &[1, 1]);
                let mut rhs = h.mul(&h.simple(j), &h.simple(i)).unwrap();
                rhs.add_scaled(&h.mul(&h.simple(i), &h.simple(j)).unwrap(), &h.v(-1).scale(&Rat::from_integer((-1).into())));
                assert_eq!(h.angle(p).unwrap(), rhs);
            }
        }
    }

    #[test]
    fn sink_factorization() {
        let h = alg(&[(0, 1)], 2, 3, 4);
        let cat = h.category();
        let i = 1;
        let mut failures_of_printed = 0;
        for lam in cat.classes_up_to(4).unwrap() {
            let (l0, t) = cat.split_simple(lam, i).unwrap();
            let prod = h.mul(&h.divided_power(i, t as u32).unwrap(), &h.angle(l0).unwrap()).unwrap();
            assert_eq!(h.angle(lam).unwrap(), prod);
            let mut ti = vec![0; 2];
            ti[i] = t as i64;
            if h.euler(&h.dim(l0), &ti) != 0 {
                failures_of_printed += 1;
            }
        }
        // the printed twist v^{⟨λ0, ti⟩} is not always trivial
        assert!(failures_of_printed > 0);
        let split = cat.direct_sum(cat.simple(0), cat.simple(1)).unwrap();
        assert_eq!(h.angle(split).unwrap(), h.mul(&h.simple(1), &h.simple(0)).unwrap());
    }

    #[test]
    fn indecomposable_at_sink_expansion() {
        for q in [2, 3] {
            let h = alg(&[(0, 1)], 2, q, 4);
            let p = indec(&h, &[1, 1]);
            assert_eq!(h.reflected_simple_expansion(1, 0).unwrap(), h.angle(p).unwrap());
        }
    }

    #[test]
    fn source_factorization() {
        let h = alg(&[(0, 1)], 2, 2, 4);
        let cat = h.category();
        for lam in cat.classes_up_to(4).unwrap() {
            let (l0, t) = cat.split_simple(lam, 0).unwrap();
            let prod = h.mul(&h.angle(l0).unwrap(), &h.divided_power(0, t as u32).unwrap()).unwrap();
            assert_eq!(h.angle(lam).unwrap(), prod);
        }
    }

    #[test]
    fn skew_derivation_rules() {
        let h = alg(&[(0, 1)], 2, 3, 4);
        let cat = h.category().clone();
        let lin = |prime: bool, i: usize, x: &HallElement| -> HallElement {
            let mut out = HallElement::zero();
            for (c, a) in &h.to_angle_coeffs(x).unwrap() {
                let r = if prime { h.r_prime_map(cat.simple(i), *c) } else { h.r_map(cat.simple(i), *c) };
                out.add_scaled(&r.unwrap(), a);
            }
            out
        };
        let cl = cat.classes_up_to(2).unwrap();
        for i in 0..2 {
            let mut ei = vec![0; 2];
            ei[i] = 1;
            for &a in &cl {
                for &b in &cl {
                    let (x, y) = (h.basis(a), h.basis(b));
                    let xy = h.mul(&x, &y).unwrap();
                    // r_i(xy) = v^{(|y|,i)} r_i(x) y + x r_i(y)
                    let mut want = h.mul(&lin(false, i, &x), &y).unwrap().scale(&h.v(h.symform(&h.dim(b), &ei)));
                    want.add_assign(&h.mul(&x, &lin(false, i, &y)).unwrap());
                    assert_eq!(lin(false, i, &xy), want, "r_{i} {a:?} {b:?}");
                    // r'_i(xy) = r'_i(x) y + v^{(|x|,i)} x r'_i(y)
                    let mut want = h.mul(&lin(true, i, &x), &y).unwrap();
                    want.add_assign(&h.mul(&x, &lin(true, i, &y)).unwrap().scale(&h.v(h.symform(&h.dim(a), &ei))));
                    assert_eq!(lin(true, i, &xy), want, "r'_{i} {a:?} {b:?}");
                }
            }
        }
    }
}
