//! Identity checks on `Ḣ`, each returning both sides.

use serde::Serialize;

use super::{BgpMap, FormulaShape, Hdot, HdotElement, HdotError, HdotTerm, Transport};
use crate::bgp::Side;
use crate::cartan::Weight;
use crate::coeffring::{QuadraticScalar, Rat};
use crate::quiverrep::ClassId;
use crate::udot::{Sign, Udot};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub lhs: Vec<HdotTerm>,
    pub rhs: Vec<HdotTerm>,
    pub equal: bool,
}

impl Hdot {
    pub fn report(&self, lhs: &HdotElement, rhs: &HdotElement) -> Report {
        Report {
            lhs: self.to_json(lhs),
            rhs: self.to_json(rhs),
            equal: lhs == rhs,
        }
    }

    /// `u_j^± 1_ζ`, `ζ` the right idempotent.
    pub fn generator(&self, s: Sign, j: usize, zeta: &Weight) -> HdotElement {
        let x = self.angle_basis(self.category().simple(j));
        match s {
            Sign::Plus => self.plus(&x, zeta),
            Sign::Minus => self.minus(&x, zeta),
        }
    }

    /// Both sides of the commutator formulas for `u_i^∓` against `⟨λ⟩^±`, `ζ` the right idempotent:
    /// `−(u_i⁻⟨λ⟩⁺ − ⟨λ⟩⁺u_i⁻)1_ζ = (v_i/a_i)(v^{(ζ,α_i)} r_i(⟨λ⟩)⁺ − v^{(ζ+λ−α_i,−α_i)} r'_i(⟨λ⟩)⁺)1_ζ`
    /// and
    /// `−(⟨λ⟩⁻u_i⁺ − u_i⁺⟨λ⟩⁻)1_ζ = (v_i/a_i)(v^{(ζ−λ+α_i,α_i)} r'_i(⟨λ⟩)⁻ − v^{(ζ,−α_i)} r_i(⟨λ⟩)⁻)1_ζ`.
    pub fn commutator_sides(&self, plus: bool, i: usize, l: ClassId, zeta: &Weight) -> Result<(HdotElement, HdotElement), HdotError> {
        let h = self.hall();
        let c = self.cartan();
        let si = self.category().simple(i);
        let ai = c.alpha(i);
        let wl = self.wt(l);
        let lam = self.angle_basis(l);
        let ui = self.angle_basis(si);
        let pair = |w: &Weight| c.eps(i) * w.h(i);
        let r = h.to_angle_coeffs(&h.r_map(si, l)?)?;
        let rp = h.to_angle_coeffs(&h.r_prime_map(si, l)?)?;
        let vi_ai = self.v(c.eps(i)).scale(&Rat::new(1.into(), (self.q() as i64 - 1).into()));
        if plus {
            let a = self.mul(&self.minus(&ui, &(zeta + &wl)), &self.plus(&lam, zeta))?;
            let b = self.mul(&self.plus(&lam, &(zeta - ai)), &self.minus(&ui, zeta))?;
            let lhs = b.sub(&a);
            let mut rhs = self.plus(&r, zeta).scale(&self.v(pair(zeta)));
            let w = &(zeta + &wl) - ai;
            rhs.add_scaled(&self.plus(&rp, zeta), &-self.v(-pair(&w)));
            Ok((lhs, rhs.scale(&vi_ai)))
        } else {
            let a = self.mul(&self.minus(&lam, &(zeta + ai)), &self.plus(&ui, zeta))?;
            let b = self.mul(&self.plus(&ui, &(zeta - &wl)), &self.minus(&lam, zeta))?;
            let lhs = b.sub(&a);
            let w = &(zeta - &wl) + ai;
            let mut rhs = self.minus(&rp, zeta).scale(&self.v(pair(&w)));
            rhs.add_scaled(&self.minus(&r, zeta), &-self.v(-pair(zeta)));
            Ok((lhs, rhs.scale(&vi_ai)))
        }
    }

    /// `ψ^±_ζ` on elements all of whose monomials are pure plus (resp. pure minus) with
    /// right idempotent `ζ`. The plus lifting is `ψ(x, x')`; the minus lifting is taken on
    /// the `π`-normalized symbols, `ψ⁻(⟨β⟩⁻1_ζ, ⟨β'⟩⁻1_ζ) = v^{−2m(β)} ψ(⟨β⟩, ⟨β'⟩)`.
    pub fn psi_lifted(&self, plus: bool, x: &HdotElement, y: &HdotElement) -> Result<QuadraticScalar, HdotError> {
        let h = self.hall();
        let mut acc = QuadraticScalar::zero(self.q());
        for (m, a) in x {
            for (n, b) in y {
                if self.right_idem(m) != self.right_idem(n) {
                    continue;
                }
                let (p, p2) = if plus { (m.plus, n.plus) } else { (m.minus, n.minus) };
                let (o, o2) = if plus { (m.minus, n.minus) } else { (m.plus, n.plus) };
                if p != p2 || !o.is_zero() || !o2.is_zero() {
                    continue;
                }
                let basis = h.from_angle_coeffs(&self.angle_basis(p))?;
                let mut val = h.psi_u(&basis, &basis)?;
                if !plus {
                    val = &val * &self.v(-2 * self.m(&self.dim(p)));
                }
                acc = &acc + &(&(a * b) * &val);
            }
        }
        Ok(acc)
    }
}

impl BgpMap {
    /// `𝒯_i(u_j^± 1_ζ)` against `T_i(E_j 1_ζ)` / `T_i(F_j 1_ζ)` transported from `U̇`.
    pub fn coincidence_check(&self, u: &Udot, s: Sign, j: usize, zeta: &Weight) -> Result<Report, HdotError> {
        let src = self.source();
        let dst = self.target();
        let lhs = self.apply(&src.generator(s, j, zeta))?;
        let rhs = Transport::new(dst.clone()).element(&u.t_generator(self.vertex(), s, j, zeta)?)?;
        Ok(dst.report(&lhs, &rhs))
    }

    /// `𝒯_i` of the straightened `⟨λ'⟩⁻1_ρ⟨λ⟩⁺` against the product of the factor images.
    pub fn straightening_check(&self, lp: ClassId, rho: &Weight, l: ClassId) -> Result<(HdotElement, HdotElement), HdotError> {
        let lhs = self.apply(&self.source().straighten(lp, rho, l)?)?;
        let rhs = self.apply_minus_plus(lp, rho, l)?;
        Ok((lhs, rhs))
    }

    /// `𝒯_i(xy)` against `𝒯_i(x)𝒯_i(y)` for `x = ⟨α⟩^± 1_{ζ+|β|}`, `y = ⟨β⟩^± 1_ζ`
    /// (minus: `1_{ζ−|β|}`).
    pub fn product_check(&self, plus: bool, a: ClassId, b: ClassId, zeta: &Weight) -> Result<(HdotElement, HdotElement), HdotError> {
        let src = self.source();
        let wb = src.wt(b);
        let (x, y) = if plus {
            (src.plus(&src.angle_basis(a), &(zeta + &wb)), src.plus(&src.angle_basis(b), zeta))
        } else {
            (src.minus(&src.angle_basis(a), &(zeta - &wb)), src.minus(&src.angle_basis(b), zeta))
        };
        let lhs = self.apply(&src.mul(&x, &y)?)?;
        let rhs = self.target().mul(&self.apply(&x)?, &self.apply(&y)?)?;
        Ok((lhs, rhs))
    }

    /// The verbatim closed formula applied monomialwise.
    pub fn apply_verbatim(&self, x: &HdotElement) -> Result<HdotElement, HdotError> {
        let shape = match self.side() {
            Side::Sink => FormulaShape::SinkPlusMinus,
            Side::Source => FormulaShape::SourcePlusMinus,
        };
        let mut out = HdotElement::zero();
        for (m, c) in x {
            out.add_scaled(&self.formula_image(shape, m.plus, m.minus, &m.zeta)?, c);
        }
        Ok(out)
    }

    /// Straightening check for the verbatim closed formulas: the plus-left formula on the
    /// straightened product against the minus-then-plus formula.
    pub fn straightening_check_verbatim(&self, lp: ClassId, rho: &Weight, l: ClassId) -> Result<(HdotElement, HdotElement), HdotError> {
        let shape = match self.side() {
            Side::Sink => FormulaShape::SinkMinusPlus,
            Side::Source => FormulaShape::SourceMinusPlus,
        };
        let lhs = self.apply_verbatim(&self.source().straighten(lp, rho, l)?)?;
        let rhs = self.formula_image(shape, l, lp, rho)?;
        Ok((lhs, rhs))
    }

    /// `ψ^±_ζ(⟨λ⟩^±1_ζ, ⟨λ'⟩^±1_ζ)` and `ψ^±_{s_iζ}` of the images.
    pub fn psi_check(&self, plus: bool, l: ClassId, lp: ClassId, zeta: &Weight) -> Result<(QuadraticScalar, QuadraticScalar), HdotError> {
        let src = self.source();
        let lift = |c: ClassId| {
            let x = src.angle_basis(c);
            if plus {
                src.plus(&x, zeta)
            } else {
                src.minus(&x, zeta)
            }
        };
        let (x, y) = (lift(l), lift(lp));
        let lhs = src.psi_lifted(plus, &x, &y)?;
        let rhs = self.target().psi_lifted(plus, &self.apply(&x)?, &self.apply(&y)?)?;
        Ok((lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::bgp::no_si_summand;
    use crate::cartan::CartanDatum;
    use crate::hdot::tests::{a2, a2_cap};

    #[test]
    fn coincidence_on_a2() {
        let u = Udot::from_cartan(CartanDatum::preset("A2").unwrap(), 4);
        for (arrows, i) in [([(0, 1)], 1), ([(1, 0)], 0)] {
            let t = BgpMap::new(Arc::new(a2(2, &arrows)), i, Side::Sink).unwrap();
            let c = t.source().cartan().clone();
            for a in -1..=1 {
                for b in -1..=1 {
                    let zeta = c.weight_from_h(&[a, b]);
                    for j in 0..2 {
                        for s in [Sign::Plus, Sign::Minus] {
                            let r = t.coincidence_check(&u, s, j, &zeta).unwrap();
                            assert!(r.equal, "{arrows:?} {s:?} {j} {zeta}: {r:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn commutator_formulas() {
        let h = a2(2, &[(0, 1)]);
        let c = h.cartan().clone();
        for l in h.category().classes_up_to(2).unwrap() {
            for i in 0..2 {
                for k in -1..=1 {
                    let zeta = c.weight_from_h(&[k, 1 - k]);
                    for plus in [true, false] {
                        let (a, b) = h.commutator_sides(plus, i, l, &zeta).unwrap();
                        assert_eq!(a, b, "{l:?} i={i} {zeta} plus={plus}");
                    }
                }
            }
        }
    }

    #[test]
    fn straightening_preserved() {
        let t = BgpMap::new(Arc::new(a2_cap(2, &[(0, 1)], 8)), 1, Side::Sink).unwrap();
        let src = t.source().clone();
        let c = src.cartan().clone();
        let classes = src.category().classes_up_to(2).unwrap();
        for &l in &classes {
            for &lp in &classes {
                let rho = c.weight_from_h(&[0, 1]);
                let (a, b) = t.straightening_check(lp, &rho, l).unwrap();
                assert_eq!(a, b, "{lp:?} {rho} {l:?}");
            }
        }
    }

    #[test]
    fn psi_invariant_on_rep_i() {
        let t = BgpMap::new(Arc::new(a2(2, &[(0, 1)])), 1, Side::Sink).unwrap();
        let src = t.source().clone();
        let cat = src.category().clone();
        let zeta = src.cartan().weight_from_h(&[1, -1]);
        let rep_i: Vec<_> = cat
            .classes_up_to(2)
            .unwrap()
            .into_iter()
            .filter(|&l| no_si_summand(&cat, 1, l).unwrap())
            .collect();
        for &l in &rep_i {
            for &lp in &rep_i {
                for plus in [true, false] {
                    let (a, b) = t.psi_check(plus, l, lp, &zeta).unwrap();
                    assert_eq!(a, b, "{l:?} {lp:?} plus={plus}");
                }
            }
        }
    }

    #[test]
    fn images_multiply() {
        for (arrows, i, side) in [([(0, 1)], 1, Side::Sink), ([(0, 1)], 0, Side::Source)] {
            let t = BgpMap::new(Arc::new(a2_cap(2, &arrows, 8)), i, side).unwrap();
            let src = t.source().clone();
            let zeta = src.cartan().weight_from_h(&[1, 0]);
            let classes = src.category().classes_up_to(2).unwrap();
            for &a in &classes {
                for &b in &classes {
                    for plus in [true, false] {
                        let (x, y) = t.product_check(plus, a, b, &zeta).unwrap();
                        assert_eq!(x, y, "{side:?} {a:?} {b:?} plus={plus}");
                    }
                }
            }
        }
    }

    #[test]
    fn verbatim_formula_misses_straightening() {
        let t = BgpMap::new(Arc::new(a2_cap(2, &[(0, 1)], 8)), 1, Side::Sink).unwrap();
        let src = t.source().clone();
        let c = src.cartan().clone();
        let classes = src.category().classes_up_to(2).unwrap();
        let mut bad = 0;
        for &l in &classes {
            for &lp in &classes {
                let rho = c.weight_from_h(&[0, 1]);
                let (a, b) = t.straightening_check_verbatim(lp, &rho, l).unwrap();
                bad += (a != b) as usize;
            }
        }
        assert!(bad > 0);
    }
}
