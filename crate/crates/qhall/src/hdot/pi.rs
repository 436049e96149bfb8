//! The double Ringel-Hall algebra side: words in `⟨u(+)⟩`, `⟨u(−)⟩`, `K_μ`, the
//! projections `π_ζ` onto `Ḣ 1_ζ`, and the symmetries `𝒯̃_i` on words.

use super::{BgpMap, Hdot, HdotElement, HdotError};
use crate::bgp::Side;
use crate::cartan::Weight;
use crate::coeffring::QuadraticScalar;
use crate::hallalg::HallElement;
use crate::quiverrep::ClassId;

/// `⟨u_α(+)⟩ ⟨u_β(−)⟩ K_μ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleMonomial {
    pub alpha_plus: ClassId,
    pub beta_minus: ClassId,
    pub mu: Vec<i64>,
}

/// One factor of a word; `Plus`/`Minus` carry homogeneous `⟨M⟩`-coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum DFactor {
    Plus(HallElement),
    Minus(HallElement),
    K(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DWord {
    pub coeff: QuadraticScalar,
    pub factors: Vec<DFactor>,
}

/// Which scalar `𝒯̃_i` puts in front of a class with `t` copies of `S_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TildeScalar {
    /// `v^{⟨λ, ti⟩}` as displayed.
    Printed,
    /// `v^{⟨ti, ti⟩}`, matching the factorization `⟨λ⟩ = u_i^{(t)} ⟨λ0⟩`.
    Corrected,
}

impl Hdot {
    fn homogeneous_wt(&self, x: &HallElement) -> Option<Weight> {
        x.keys().next().map(|c| self.wt(*c))
    }

    /// `π_ζ(⟨u_α(+)⟩⟨u_β(−)⟩K_μ) = (−1)^{tr β} v^{m(β)+ζ(μ)} ⟨α⟩⁺ 1_{ζ−β} ⟨β⟩⁻`.
    pub fn project_pi(&self, zeta: &Weight, m: &DoubleMonomial) -> HdotElement {
        let db = self.dim(m.beta_minus);
        let coef = self.sv(self.tr(&db), self.m(&db) + zeta.eval(&m.mu));
        self.monomial(m.alpha_plus, zeta - &self.wt(m.beta_minus), m.beta_minus)
            .scale(&coef)
    }

    /// `π_ζ` of a single `⟨u(±)⟩` factor, `ζ` the right idempotent.
    fn pi_factor(&self, f: &DFactor, zeta: &Weight) -> HdotElement {
        match f {
            DFactor::Plus(x) => self.plus(x, zeta),
            DFactor::Minus(y) => {
                let mut out = HdotElement::zero();
                for (b, c) in y {
                    let db = self.dim(*b);
                    let coef = c * &self.sv(self.tr(&db), self.m(&db));
                    out.add_scaled(&self.minus(&self.angle_basis(*b), zeta), &coef);
                }
                out
            }
            DFactor::K(_) => unreachable!("K factors are commuted out first"),
        }
    }

    /// `π_ζ` of a word: `K`'s are moved to the right, then each factor is projected
    /// with the idempotent determined by the factors to its right.
    pub fn project_word(&self, zeta: &Weight, w: &DWord) -> Result<HdotElement, HdotError> {
        let mut coef = w.coeff.clone();
        let mut k = vec![0; self.cartan().coweight_len()];
        let mut xs: Vec<(&DFactor, Weight)> = Vec::new();
        for f in &w.factors {
            match f {
                DFactor::K(mu) => k.iter_mut().zip(mu).for_each(|(a, b)| *a += b),
                DFactor::Plus(x) | DFactor::Minus(x) => {
                    let Some(wt) = self.homogeneous_wt(x) else {
                        return Ok(HdotElement::zero());
                    };
                    let wt = if matches!(f, DFactor::Minus(_)) { -&wt } else { wt };
                    coef = &coef * &self.v(wt.eval(&k));
                    xs.push((f, wt));
                }
            }
        }
        coef = &coef * &self.v(zeta.eval(&k));
        let mut right = zeta.clone();
        let mut parts = Vec::with_capacity(xs.len());
        for (f, wt) in xs.iter().rev() {
            parts.push(self.pi_factor(f, &right));
            right = &right + wt;
        }
        parts.reverse();
        if parts.is_empty() {
            return Ok(self.idem(zeta).scale(&coef));
        }
        Ok(self.product(&parts)?.scale(&coef))
    }
}

impl BgpMap {
    /// `𝒯̃_i(⟨u_λ(±)⟩)` at a sink, as a word over the reflected quiver.
    pub fn tilde_class(&self, plus: bool, l: ClassId, scalar: TildeScalar) -> Result<DWord, HdotError> {
        if self.side() != Side::Sink {
            return Err(HdotError::Shape("𝒯̃ is defined at a sink".into()));
        }
        let i = self.vertex();
        let src = self.source();
        let dst = self.target();
        let c = src.cartan();
        let (img, t) = self.reflector().image_split(l)?;
        let mut ti = vec![0; src.n()];
        ti[i] = t as i64;
        let e = match scalar {
            TildeScalar::Printed => src.hall().euler(&src.dim(l), &ti),
            TildeScalar::Corrected => src.hall().euler(&ti, &ti),
        };
        let k: Vec<i64> = c.tilde_coweight(&ti).iter().map(|x| if plus { *x } else { -x }).collect();
        let h = dst.hall();
        let div = h.to_angle_coeffs(&h.divided_power(i, t as u32)?)?;
        let body = dst.angle_basis(img);
        let factors = if plus {
            vec![DFactor::K(k), DFactor::Minus(div), DFactor::Plus(body)]
        } else {
            vec![DFactor::K(k), DFactor::Plus(div), DFactor::Minus(body)]
        };
        Ok(DWord {
            coeff: dst.v(e),
            factors,
        })
    }

    /// `𝒯̃_i(K_μ) = K_{s_i μ}`.
    pub fn tilde_k(&self, mu: &[i64]) -> DWord {
        DWord {
            coeff: QuadraticScalar::one(self.source().q()),
            factors: vec![DFactor::K(self.source().cartan().reflect_coweight(self.vertex(), mu))],
        }
    }

    /// Both sides of `π_{s_iζ}(𝒯̃_i(x)) = 𝒯_i(π_ζ(x))` for `x = ⟨u_λ(±)⟩`.
    pub fn pi_compat_class(&self, plus: bool, l: ClassId, zeta: &Weight, scalar: TildeScalar) -> Result<(HdotElement, HdotElement), HdotError> {
        let src = self.source();
        let dst = self.target();
        let sz = src.cartan().reflect(self.vertex(), zeta);
        let lhs = dst.project_word(&sz, &self.tilde_class(plus, l, scalar)?)?;
        let x = DWord {
            coeff: QuadraticScalar::one(src.q()),
            factors: vec![if plus {
                DFactor::Plus(src.angle_basis(l))
            } else {
                DFactor::Minus(src.angle_basis(l))
            }],
        };
        let rhs = self.apply(&src.project_word(zeta, &x)?)?;
        Ok((lhs, rhs))
    }

    /// Both sides of `π_{s_iζ}(𝒯̃_i(K_μ)) = 𝒯_i(π_ζ(K_μ))`.
    pub fn pi_compat_k(&self, mu: &[i64], zeta: &Weight) -> Result<(HdotElement, HdotElement), HdotError> {
        let src = self.source();
        let sz = src.cartan().reflect(self.vertex(), zeta);
        let lhs = self.target().project_word(&sz, &self.tilde_k(mu))?;
        let x = DWord {
            coeff: QuadraticScalar::one(src.q()),
            factors: vec![DFactor::K(mu.to_vec())],
        };
        let rhs = self.apply(&src.project_word(zeta, &x)?)?;
        Ok((lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::hdot::tests::a2;

    #[test]
    fn pi_of_monomial() {
        let h = a2(2, &[(0, 1)]);
        let c = h.cartan().clone();
        let s1 = h.category().simple(0);
        let zeta = c.weight_from_h(&[1, -1]);
        let m = DoubleMonomial {
            alpha_plus: ClassId::zero(),
            beta_minus: s1,
            mu: vec![1, 0],
        };
        // (−1) v^{1 + ζ(h_1)}
        let want = h.monomial(ClassId::zero(), &zeta - c.alpha(0), s1).scale(&h.sv(1, 2));
        assert_eq!(h.project_pi(&zeta, &m), want);
        let w = DWord {
            coeff: QuadraticScalar::one(2),
            factors: vec![DFactor::Minus(h.angle_basis(s1)), DFactor::K(vec![1, 0])],
        };
        assert_eq!(h.project_word(&zeta, &w).unwrap(), want);
    }

    #[test]
    fn pi_is_multiplicative() {
        let h = a2(3, &[(0, 1)]);
        let c = h.cartan().clone();
        let (s1, s2) = (h.category().simple(0), h.category().simple(1));
        let zeta = c.weight_from_h(&[0, 1]);
        let x = DFactor::Minus(h.angle_basis(s2));
        let y = DFactor::Plus(h.angle_basis(s1));
        let one = QuadraticScalar::one(3);
        let w = |fs: Vec<DFactor>| DWord { coeff: one.clone(), factors: fs };
        let whole = h.project_word(&zeta, &w(vec![x.clone(), DFactor::K(vec![0, 1]), y.clone()])).unwrap();
        let right = h.project_word(&zeta, &w(vec![DFactor::K(vec![0, 1]), y])).unwrap();
        let left = h.project_word(&(&zeta + c.alpha(0)), &w(vec![x])).unwrap();
        assert_eq!(whole, h.mul(&left, &right).unwrap());
    }

    #[test]
    fn tilde_compatible_with_pi() {
        let t = BgpMap::new(Arc::new(a2(2, &[(0, 1)])), 1, Side::Sink).unwrap();
        let src = t.source().clone();
        let c = src.cartan().clone();
        for l in src.category().classes_up_to(2).unwrap() {
            for k in -1..=1 {
                let zeta = c.weight_from_h(&[k, 1]);
                for plus in [true, false] {
                    let (a, b) = t.pi_compat_class(plus, l, &zeta, TildeScalar::Corrected).unwrap();
                    assert_eq!(a, b, "{l:?} plus={plus} ζ={zeta}");
                }
                let (a, b) = t.pi_compat_k(&[1, -1], &zeta).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn printed_tilde_scalar_fails_on_split_class() {
        let t = BgpMap::new(Arc::new(a2(2, &[(0, 1)])), 1, Side::Sink).unwrap();
        let src = t.source().clone();
        let cat = src.category().clone();
        let split = cat.direct_sum(cat.simple(0), cat.simple(1)).unwrap();
        let zeta = src.cartan().weight_from_h(&[0, 1]);
        let (a, b) = t.pi_compat_class(true, split, &zeta, TildeScalar::Printed).unwrap();
        assert_ne!(a, b);
        let (a, b) = t.pi_compat_class(true, split, &zeta, TildeScalar::Corrected).unwrap();
        assert_eq!(a, b);
    }
}
