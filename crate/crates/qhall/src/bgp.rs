//! Bernstein-Gelfand-Ponomarev reflection functors at a sink or source.

use std::sync::Arc;

use serde::Serialize;

use crate::quiverrep::{
    ClassId, ClassifyError, Fq, Matrix, QuiverError, RepCategory, Representation, Subspace,
    ValuedQuiver,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionResult {
    pub image: Representation,
    pub source: ValuedQuiver,
    pub target: ValuedQuiver,
}

/// `σ_i^+`: at a sink `i`, replace `V_i` by the kernel of `⊕_{j→i} V_j → V_i`.
pub fn reflect_plus(
    quiver: &ValuedQuiver,
    f: Fq,
    i: usize,
    v: &Representation,
) -> Result<ReflectionResult, QuiverError> {
    if !quiver.is_sink(i) {
        return Err(QuiverError::NotSink(i));
    }
    let incoming: Vec<usize> = (0..quiver.arrows().len())
        .filter(|&k| quiver.arrows()[k].dst == i)
        .collect();
    let mut stacked = Matrix::zeros(v.dims[i], 0);
    for &k in &incoming {
        stacked = stacked.hcat(&v.maps[k]);
    }
    let kernel = stacked.nullspace(f);
    let mut image = v.clone();
    image.dims[i] = kernel.cols();
    let mut off = 0;
    for &k in &incoming {
        let d = v.dims[quiver.arrows()[k].src];
        let rows: Vec<usize> = (off..off + d).collect();
        image.maps[k] = kernel.select_rows(&rows);
        off += d;
    }
    Ok(ReflectionResult {
        image,
        source: quiver.clone(),
        target: quiver.reflect_at(i),
    })
}

/// `σ_i^-`: at a source `i`, replace `V_i` by the cokernel of `V_i → ⊕_{i→j} V_j`.
pub fn reflect_minus(
    quiver: &ValuedQuiver,
    f: Fq,
    i: usize,
    v: &Representation,
) -> Result<ReflectionResult, QuiverError> {
    if !quiver.is_source(i) {
        return Err(QuiverError::NotSource(i));
    }
    let outgoing: Vec<usize> = (0..quiver.arrows().len())
        .filter(|&k| quiver.arrows()[k].src == i)
        .collect();
    let mut stacked = Matrix::zeros(0, v.dims[i]);
    for &k in &outgoing {
        stacked = stacked.vcat(&v.maps[k]);
    }
    let total = stacked.rows();
    let img = Subspace::span(f, &stacked.transpose());
    let comp = img.complement_cols();
    let mut image = v.clone();
    image.dims[i] = comp.len();
    let mut off = 0;
    for &k in &outgoing {
        let d = v.dims[quiver.arrows()[k].dst];
        let mut m = Matrix::zeros(comp.len(), d);
        for c in 0..d {
            let mut e = vec![0u8; total];
            e[off + c] = 1;
            let r = img.reduce(f, &e);
            for (row, &col) in comp.iter().enumerate() {
                m.set(row, c, r[col]);
            }
        }
        image.maps[k] = m;
        off += d;
    }
    Ok(ReflectionResult {
        image,
        source: quiver.clone(),
        target: quiver.reflect_at(i),
    })
}

/// `true` iff `S_i` is not a direct summand of `λ`.
pub fn no_si_summand(cat: &RepCategory, i: usize, lambda: ClassId) -> Result<bool, ClassifyError> {
    Ok(cat.simple_multiplicity(lambda, i)? == 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Sink,
    Source,
}

/// The reflection functor at `i` as a map between classified categories.
#[derive(Debug, Clone)]
pub struct Reflector {
    source: Arc<RepCategory>,
    target: Arc<RepCategory>,
    i: usize,
    side: Side,
}

impl Reflector {
    /// Builds the target category (same field and cap) over the reflected quiver.
    pub fn new(source: Arc<RepCategory>, i: usize, side: Side) -> Result<Self, ClassifyError> {
        let q = source.quiver();
        match side {
            Side::Sink if !q.is_sink(i) => return Err(QuiverError::NotSink(i).into()),
            Side::Source if !q.is_source(i) => return Err(QuiverError::NotSource(i).into()),
            _ => {}
        }
        let target = Arc::new(RepCategory::new(q.reflect_at(i), source.q(), source.cap())?);
        Ok(Self {
            source,
            target,
            i,
            side,
        })
    }

    pub fn with_target(source: Arc<RepCategory>, target: Arc<RepCategory>, i: usize, side: Side) -> Self {
        Self {
            source,
            target,
            i,
            side,
        }
    }

    pub fn source(&self) -> &Arc<RepCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RepCategory> {
        &self.target
    }

    pub fn vertex(&self) -> usize {
        self.i
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn reflect_rep(&self, v: &Representation) -> Representation {
        let q = self.source.quiver();
        let f = self.source.field();
        let r = match self.side {
            Side::Sink => reflect_plus(q, f, self.i, v),
            Side::Source => reflect_minus(q, f, self.i, v),
        };
        r.expect("side checked at construction").image
    }

    /// Class of the functor image; `S_i` summands are killed.
    pub fn image(&self, lambda: ClassId) -> Result<ClassId, ClassifyError> {
        let rep = self.reflect_rep(&self.source.rep(lambda)?);
        self.target.class_of(&rep)
    }

    /// `(σλ0, t)` for `V_λ = V_{λ0} ⊕ t S_i`.
    pub fn image_split(&self, lambda: ClassId) -> Result<(ClassId, usize), ClassifyError> {
        let (l0, t) = self.source.split_simple(lambda, self.i)?;
        Ok((self.image(l0)?, t))
    }

    /// The functor in the opposite direction.
    pub fn inverse(&self) -> Reflector {
        Reflector {
            source: self.target.clone(),
            target: self.source.clone(),
            i: self.i,
            side: match self.side {
                Side::Sink => Side::Source,
                Side::Source => Side::Sink,
            },
        }
    }
}

/// Outcome of an exhaustive identity check: cases tried and the ones that failed.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub failed: Vec<String>,
}

impl Tally {
    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failed.is_empty()
    }
}

fn rep_i_classes(cat: &RepCategory, i: usize, total: usize) -> Result<Vec<ClassId>, ClassifyError> {
    let mut out = Vec::new();
    for c in cat.classes_up_to(total)? {
        if no_si_summand(cat, i, c)? {
            out.push(c);
        }
    }
    Ok(out)
}

impl Reflector {
    /// `a_λ = a_{σλ}` for `λ` in rep⟨i⟩ with total dimension `≤ total`.
    pub fn check_aut_preserved(&self, total: usize) -> Result<Tally, ClassifyError> {
        let mut t = Tally::default();
        let n = self.source.n();
        for l in rep_i_classes(&self.source, self.i, total)? {
            let (a, b) = (self.source.aut(l)?, self.target.aut(self.image(l)?)?);
            t.record(a == b, || format!("a[{}]={a} a[σ]={b}", l.key(n)));
        }
        Ok(t)
    }

    /// `g^α_{β,i} a_β = a_α g^{σβ}_{i,σα}` for sink `i` and `α, β` in rep⟨i⟩.
    pub fn check_g_transport(&self, total: usize) -> Result<Tally, ClassifyError> {
        let mut t = Tally::default();
        let (src, dst, i) = (&self.source, &self.target, self.i);
        let n = src.n();
        let rep_i = rep_i_classes(src, i, total)?;
        for &alpha in &rep_i {
            let mut d = alpha.dimvec(n);
            if d[i] == 0 {
                continue;
            }
            d[i] -= 1;
            for &beta in src.classes_of(&d)?.iter() {
                if !no_si_summand(src, i, beta)? {
                    continue;
                }
                let lhs = src.hall_number(alpha, beta, src.simple(i))? as u128 * src.aut(beta)?;
                let (sa, sb) = (self.image(alpha)?, self.image(beta)?);
                let rhs = src.aut(alpha)? * dst.hall_number(sb, dst.simple(i), sa)? as u128;
                t.record(lhs == rhs, || format!("α={} β={}: {lhs} vs {rhs}", alpha.key(n), beta.key(n)));
            }
        }
        Ok(t)
    }
}

/// `a_β = q^{⟨ti,β'⟩} a_{β'} a_{ti}` for `V_β = V_{β'} ⊕ tV_i`, `i` a sink, `t ≤ tmax`.
pub fn check_aut_scaling(cat: &RepCategory, i: usize, total: usize, tmax: usize) -> Result<Tally, ClassifyError> {
    let mut t = Tally::default();
    let n = cat.n();
    for b0 in rep_i_classes(cat, i, total)? {
        for k in 1..=tmax {
            if b0.total_dim() + k > cat.cap() {
                break;
            }
            let ti = cat.multiple_of_simple(i, k)?;
            let beta = cat.direct_sum(b0, ti)?;
            let mut tv = vec![0; n];
            tv[i] = k as i64;
            let e = cat.euler(&tv, &b0.dimvec(n));
            let lhs = cat.aut(beta)?;
            let base = cat.aut(b0)? * cat.aut(ti)?;
            let rhs = u32::try_from(e).ok().map(|e| (cat.q() as u128).pow(e) * base);
            t.record(rhs == Some(lhs), || format!("β'={} t={k}: {lhs} vs {rhs:?}", b0.key(n)));
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> ValuedQuiver {
        ValuedQuiver::simply_laced(2, &[(0, 1)]).unwrap()
    }

    fn p11() -> Representation {
        Representation {
            dims: vec![1, 1],
            maps: vec![Matrix::from_rows(1, 1, vec![1])],
        }
    }

    #[test]
    fn reflect_plus_examples() {
        let q = a2();
        let f = Fq::new(2).unwrap();
        let s2 = Representation::simple(&q, 1);
        assert_eq!(reflect_plus(&q, f, 1, &s2).unwrap().image.total_dim(), 0);
        let r = reflect_plus(&q, f, 1, &Representation::simple(&q, 0)).unwrap();
        assert_eq!(r.image.dims, vec![1, 1]);
        assert_eq!(r.image.maps[0].get(0, 0), 1);
        assert!(r.target.is_source(1));
        let r = reflect_plus(&q, f, 1, &p11()).unwrap();
        assert_eq!(r.image.dims, vec![1, 0]);
        assert!(reflect_plus(&q, f, 0, &p11()).is_err());
    }

    #[test]
    fn reflect_minus_examples() {
        let q = a2().reflect_at(1);
        let f = Fq::new(3).unwrap();
        let r = reflect_minus(&q, f, 1, &p11()).unwrap();
        assert_eq!(r.image.dims, vec![1, 0]);
        assert_eq!(reflect_minus(&q, f, 1, &Representation::simple(&q, 1)).unwrap().image.total_dim(), 0);
        let back = reflect_minus(&q, f, 1, &reflect_plus(&a2(), f, 1, &Representation::simple(&a2(), 0)).unwrap().image).unwrap();
        assert_eq!(back.image.dims, vec![1, 0]);
    }

    #[test]
    fn summand_predicate() {
        let cat = RepCategory::new(a2(), 2, 4).unwrap();
        let p = cat.class_of(&p11()).unwrap();
        assert!(no_si_summand(&cat, 1, p).unwrap());
        assert!(!no_si_summand(&cat, 1, cat.simple(1)).unwrap());
        let split = cat.direct_sum(cat.simple(0), cat.simple(1)).unwrap();
        assert!(!no_si_summand(&cat, 1, split).unwrap());
    }

    #[test]
    fn reflection_is_equivalence_on_rep_i() {
        for (n, arrows, i) in [(2, vec![(0, 1)], 1), (3, vec![(0, 1), (2, 1)], 1), (3, vec![(0, 1), (1, 2)], 2)] {
            let cat = Arc::new(RepCategory::new(ValuedQuiver::simply_laced(n, &arrows).unwrap(), 2, 4).unwrap());
            let r = Reflector::new(cat.clone(), i, Side::Sink).unwrap();
            let back = r.inverse();
            let cartan = cat.quiver().cartan().unwrap();
            let mut seen = std::collections::BTreeSet::new();
            for lam in cat.classes_up_to(4).unwrap() {
                if !no_si_summand(&cat, i, lam).unwrap() {
                    continue;
                }
                let Ok(img) = r.image(lam) else { continue };
                assert_eq!(img.dimvec(n), cartan.reflect_root(i, &lam.dimvec(n)));
                assert_eq!(back.image(img).unwrap(), lam);
                assert_eq!(cat.aut(lam).unwrap(), r.target().aut(img).unwrap());
                assert!(seen.insert(img));
            }
        }
    }

    #[test]
    fn section_six_identities() {
        for q in [2, 3] {
            let cat = Arc::new(RepCategory::new(a2(), q, 6).unwrap());
            let r = Reflector::new(cat.clone(), 1, Side::Sink).unwrap();
            for t in [r.check_aut_preserved(3).unwrap(), r.check_g_transport(3).unwrap(), check_aut_scaling(&cat, 1, 3, 2).unwrap()] {
                assert!(t.checked > 0 && t.passed(), "q={q} {t:?}");
            }
        }
    }
}
