//! Lusztig's symmetries `T_i` on `U̇` and the braid-relation checker.

use serde::Serialize;

use super::{Sign, UElement, UMonomial, Udot};
use crate::cartan::Weight;
use crate::coeffring::RationalFn;
use crate::fquot::{FElement, FError};

#[derive(Debug, Clone, Serialize)]
pub struct BraidReport {
    pub i: usize,
    pub j: usize,
    pub order: Option<u32>,
    pub generator: String,
    pub zeta: Vec<i64>,
    /// `None` when the braid order is infinite.
    pub equal: Option<bool>,
    pub terms: usize,
}

fn sign(r: i64) -> i64 {
    if r % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Udot {
    fn vi(&self, i: usize, k: i64) -> RationalFn {
        RationalFn::v_pow(self.cartan().eps(i) * k)
    }

    /// `T_i(E_j 1_λ)` or `T_i(F_j 1_λ)`.
    pub fn t_generator(&self, i: usize, s: Sign, j: usize, lambda: &Weight) -> Result<UElement, FError> {
        let key = (i, s, j as u8, lambda.clone());
        if let Some(r) = self.t_cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let c = self.cartan().clone();
        let sl = c.reflect(i, lambda);
        let h = lambda.h(i);
        let out = if i == j {
            match s {
                Sign::Plus => self.f(i, 1, &sl)?.scale(&-self.vi(i, -h)),
                Sign::Minus => self.e(i, 1, &sl)?.scale(&-self.vi(i, h - 2)),
            }
        } else {
            let n = -c.a(i, j);
            let fa = self.falg();
            let mut x = FElement::zero();
            for r in 0..=n {
                let s_ = n - r;
                let coef = RationalFn::from_int(sign(r)) * match s {
                    Sign::Plus => self.vi(i, -r),
                    Sign::Minus => self.vi(i, r),
                };
                let (a, b) = match s {
                    Sign::Plus => (s_, r),
                    Sign::Minus => (r, s_),
                };
                let w = fa.mul(&fa.mul(&fa.divided_power(i, a as u32), &fa.theta(j))?, &fa.divided_power(i, b as u32))?;
                x.add_scaled(&w, &coef);
            }
            match s {
                Sign::Plus => self.from_parts(&x, &sl, &fa.one())?,
                Sign::Minus => {
                    let zeta = &sl - &c.root_weight(&fa.weight(&{
                        let mut w = vec![i as u8; n as usize];
                        w.push(j as u8);
                        w
                    }));
                    self.from_parts(&fa.one(), &zeta, &x)?
                }
            }
        };
        self.t_cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Generator factors of a monomial, each with its right idempotent.
    pub fn factors(&self, m: &UMonomial) -> Vec<(Sign, usize, Weight)> {
        let c = self.cartan();
        let mut out = Vec::new();
        let mut right = m.zeta.clone();
        let mut plus = Vec::new();
        for &l in m.plus.iter().rev() {
            plus.push((Sign::Plus, l as usize, right.clone()));
            right = &right + c.alpha(l as usize);
        }
        plus.reverse();
        out.extend(plus);
        let mut right = m.zeta.clone();
        for &l in &m.minus {
            right = &right + c.alpha(l as usize);
            out.push((Sign::Minus, l as usize, right.clone()));
        }
        out
    }

    pub fn lusztig_t_monomial(&self, i: usize, m: &UMonomial) -> Result<UElement, FError> {
        let fs = self.factors(m);
        if fs.is_empty() {
            return Ok(self.idem(&self.cartan().reflect(i, &m.zeta)));
        }
        let imgs = fs
            .iter()
            .map(|(s, j, l)| self.t_generator(i, *s, *j, l))
            .collect::<Result<Vec<_>, _>>()?;
        self.product(&imgs)
    }

    /// `T_i` extended to `U̇` as an algebra map.
    pub fn lusztig_t(&self, i: usize, x: &UElement) -> Result<UElement, FError> {
        let mut out = UElement::zero();
        for (m, c) in x {
            out.add_scaled(&self.lusztig_t_monomial(i, m)?, c);
        }
        Ok(out)
    }

    /// Compare `T_i T_j T_i ⋯ (g 1_ζ)` with `T_j T_i T_j ⋯ (g 1_ζ)`, `m(i,j)` factors each.
    pub fn braid_check(&self, i: usize, j: usize, s: Sign, k: usize, zeta: &Weight) -> Result<BraidReport, FError> {
        let order = self.cartan().braid_order(i, j).ok().flatten();
        let generator = format!("{}{}", if s == Sign::Plus { "E" } else { "F" }, k + 1);
        let mut report = BraidReport {
            i: i + 1,
            j: j + 1,
            order,
            generator,
            zeta: zeta.0.clone(),
            equal: None,
            terms: 0,
        };
        let Some(m) = order else { return Ok(report) };
        let g = match s {
            Sign::Plus => self.e(k, 1, zeta)?,
            Sign::Minus => self.f(k, 1, zeta)?,
        };
        let apply = |first: usize, second: usize| -> Result<UElement, FError> {
            let mut x = g.clone();
            // rightmost factor acts first
            for step in (0..m).rev() {
                x = self.lusztig_t(if step % 2 == 0 { first } else { second }, &x)?;
            }
            Ok(x)
        };
        let lhs = apply(i, j)?;
        let rhs = apply(j, i)?;
        report.terms = lhs.len();
        report.equal = Some(lhs == rhs);
        Ok(report)
    }
}
