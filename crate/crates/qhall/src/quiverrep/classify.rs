//! Isomorphism classes by orbit enumeration, automorphism counts, and Hall numbers.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use super::fq::{gl_order, subspaces, Fq, Matrix, Subspace};
use super::quiver::{QuiverError, ValuedQuiver, MAX_VERTICES};
use super::rep::{hom_ext, simple_multiplicity, sub_and_quotient, Representation};

pub type DimVec = [u8; MAX_VERTICES];

/// Largest number of arrow-matrix tuples enumerated for one dimension vector.
const MAX_CODES: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("field size {0} is not a supported prime")]
    Field(u64),
    #[error("dimension vector {0:?} exceeds the cap of total dimension {1}")]
    Cap(Vec<i64>, usize),
    #[error("dimension vector {0:?} has too many arrow-matrix tuples to enumerate")]
    TooLarge(Vec<i64>),
    #[error("dimension vector {0:?} has the wrong length or a negative entry")]
    BadDimVec(Vec<i64>),
    #[error("unknown class {0}")]
    UnknownClass(String),
}

/// Key of an isomorphism class: its dimension vector and index among classes of that
/// dimension vector (ordered by canonical code).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    dim: DimVec,
    idx: u32,
}

impl ClassId {
    pub fn zero() -> Self {
        ClassId {
            dim: [0; MAX_VERTICES],
            idx: 0,
        }
    }

    pub fn dim_raw(&self) -> &DimVec {
        &self.dim
    }

    pub fn index(&self) -> u32 {
        self.idx
    }

    pub fn dimvec(&self, n: usize) -> Vec<i64> {
        self.dim[..n].iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dim.iter().map(|&d| d as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim.iter().all(|&d| d == 0)
    }

    /// Text key `d1.d2...#idx`, e.g. `1.1#1`.
    pub fn key(&self, n: usize) -> String {
        let d: Vec<String> = self.dim[..n].iter().map(|x| x.to_string()).collect();
        format!("{}#{}", d.join("."), self.idx)
    }

    pub fn parse_key(s: &str, n: usize) -> Option<Self> {
        let (d, idx) = s.split_once('#')?;
        let parts: Vec<u8> = d.split('.').map(|x| x.parse().ok()).collect::<Option<_>>()?;
        if parts.len() != n {
            return None;
        }
        let mut dim = [0; MAX_VERTICES];
        dim[..n].copy_from_slice(&parts);
        Some(ClassId {
            dim,
            idx: idx.parse().ok()?,
        })
    }
}

impl fmt::Debug for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.dim.iter().rposition(|&d| d != 0).map_or(1, |p| p + 1);
        write!(f, "{}", self.key(last))
    }
}

#[derive(Debug, Clone)]
pub struct ClassInfo {
    pub id: ClassId,
    pub code: u64,
    pub aut: u128,
    pub endo_dim: usize,
    pub rep: Representation,
}

#[derive(Debug)]
struct DimTable {
    class_of_code: Vec<u32>,
    classes: Vec<ClassInfo>,
}

/// Counts of submodules `W ⊆ L` keyed by `(class of L/W, class of W)`.
pub type HallTally = BTreeMap<(ClassId, ClassId), u64>;

/// Representations of a simply-laced quiver over `F_q`, classified lazily per
/// dimension vector up to a total-dimension cap.
pub struct RepCategory {
    quiver: ValuedQuiver,
    field: Fq,
    cap: usize,
    tables: Mutex<BTreeMap<DimVec, Arc<DimTable>>>,
    tallies: Mutex<BTreeMap<ClassId, Arc<HallTally>>>,
}

impl fmt::Debug for RepCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepCategory")
            .field("quiver", &self.quiver)
            .field("q", &self.field.q())
            .field("cap", &self.cap)
            .finish()
    }
}

fn encode(f: Fq, maps: &[Matrix]) -> u64 {
    let q = f.q();
    let mut code = 0u64;
    for m in maps {
        for &x in m.data() {
            code = code * q + x as u64;
        }
    }
    code
}

fn decode(f: Fq, shapes: &[(usize, usize)], mut code: u64) -> Vec<Matrix> {
    let q = f.q();
    let total: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut digits = vec![0u8; total];
    for d in digits.iter_mut().rev() {
        *d = (code % q) as u8;
        code /= q;
    }
    let mut out = Vec::with_capacity(shapes.len());
    let mut off = 0;
    for &(r, c) in shapes {
        out.push(Matrix::from_rows(r, c, digits[off..off + r * c].to_vec()));
        off += r * c;
    }
    out
}

/// Generators of `GL(d, F_q)` paired with their inverses.
fn gl_generators(f: Fq, d: usize) -> Vec<(Matrix, Matrix)> {
    let mut gens = Vec::new();
    for k in 0..d {
        for l in 0..d {
            if k != l {
                let mut g = Matrix::identity(d);
                g.set(k, l, 1);
                let mut gi = Matrix::identity(d);
                gi.set(k, l, f.neg(1));
                gens.push((g, gi));
            }
        }
    }
    if d > 0 && f.q() > 2 {
        let w = f.primitive_root();
        let mut g = Matrix::identity(d);
        g.set(0, 0, w);
        let mut gi = Matrix::identity(d);
        gi.set(0, 0, f.inv(w));
        gens.push((g, gi));
    }
    gens
}

impl RepCategory {
    pub fn new(quiver: ValuedQuiver, q: u64, cap: usize) -> Result<Self, ClassifyError> {
        if !quiver.is_simply_laced() {
            return Err(QuiverError::NotSimplyLaced.into());
        }
        let field = Fq::new(q).ok_or(ClassifyError::Field(q))?;
        Ok(Self {
            quiver,
            field,
            cap,
            tables: Mutex::new(BTreeMap::new()),
            tallies: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn quiver(&self) -> &ValuedQuiver {
        &self.quiver
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn dimvec_key(&self, d: &[i64]) -> Result<DimVec, ClassifyError> {
        if d.len() != self.n() || d.iter().any(|&x| !(0..=255).contains(&x)) {
            return Err(ClassifyError::BadDimVec(d.to_vec()));
        }
        let total: i64 = d.iter().sum();
        if total as usize > self.cap {
            return Err(ClassifyError::Cap(d.to_vec(), self.cap));
        }
        let mut key = [0; MAX_VERTICES];
        for (k, &x) in key.iter_mut().zip(d) {
            *k = x as u8;
        }
        Ok(key)
    }

    /// All dimension vectors with total dimension at most `total`.
    pub fn dimvecs_up_to(&self, total: usize) -> Vec<Vec<i64>> {
        let n = self.n();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        fn rec(k: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if k == cur.len() {
                out.push(cur.clone());
                return;
            }
            for x in 0..=left {
                cur[k] = x;
                rec(k + 1, left - x, cur, out);
            }
            cur[k] = 0;
        }
        rec(0, total.min(self.cap) as i64, &mut cur, &mut out);
        out.sort_by_key(|d| (d.iter().sum::<i64>(), d.clone()));
        out
    }

    fn table(&self, d: &[i64]) -> Result<Arc<DimTable>, ClassifyError> {
        let key = self.dimvec_key(d)?;
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.build_table(d, key)?);
        self.tables.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    fn shapes(&self, d: &[i64]) -> Vec<(usize, usize)> {
        self.quiver
            .arrows()
            .iter()
            .map(|a| (d[a.dst] as usize, d[a.src] as usize))
            .collect()
    }

    fn build_table(&self, d: &[i64], key: DimVec) -> Result<DimTable, ClassifyError> {
        let f = self.field;
        let q = f.q();
        let shapes = self.shapes(d);
        let entries: u32 = shapes.iter().map(|(r, c)| (r * c) as u32).sum();
        let total = q
            .checked_pow(entries)
            .filter(|&t| t <= MAX_CODES)
            .ok_or_else(|| ClassifyError::TooLarge(d.to_vec()))?;
        let group: u128 = d.iter().map(|&x| gl_order(x as usize, q)).product();
        let gens: Vec<(usize, Vec<(Matrix, Matrix)>)> = (0..self.n())
            .map(|i| (i, gl_generators(f, d[i] as usize)))
            .collect();
        let arrows = self.quiver.arrows();
        let mut class_of_code = vec![u32::MAX; total as usize];
        let mut classes = Vec::new();
        for start in 0..total {
            if class_of_code[start as usize] != u32::MAX {
                continue;
            }
            let idx = classes.len() as u32;
            class_of_code[start as usize] = idx;
            let mut orbit = 1u128;
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                let maps = decode(f, &shapes, c);
                for (i, gs) in &gens {
                    for (g, gi) in gs {
                        // φ_a ↦ g_dst φ_a g_src^{-1}
                        let moved: Vec<Matrix> = arrows
                            .iter()
                            .zip(&maps)
                            .map(|(a, m)| {
                                let mut m = m.clone();
                                if a.dst == *i {
                                    m = g.mul(f, &m);
                                }
                                if a.src == *i {
                                    m = m.mul(f, gi);
                                }
                                m
                            })
                            .collect();
                        let code = encode(f, &moved);
                        if class_of_code[code as usize] == u32::MAX {
                            class_of_code[code as usize] = idx;
                            orbit += 1;
                            queue.push_back(code);
                        }
                    }
                }
            }
            let rep = Representation {
                dims: d.iter().map(|&x| x as usize).collect(),
                maps: decode(f, &shapes, start),
            };
            let endo_dim = hom_ext(&self.quiver, f, &rep, &rep).0;
            classes.push(ClassInfo {
                id: ClassId { dim: key, idx },
                code: start,
                aut: group / orbit,
                endo_dim,
                rep,
            });
        }
        Ok(DimTable {
            class_of_code,
            classes,
        })
    }

    /// Classes of one dimension vector, ordered by canonical code.
    pub fn classes_of(&self, d: &[i64]) -> Result<Vec<ClassId>, ClassifyError> {
        Ok(self.table(d)?.classes.iter().map(|c| c.id).collect())
    }

    /// Every class with total dimension at most `total`.
    pub fn classes_up_to(&self, total: usize) -> Result<Vec<ClassId>, ClassifyError> {
        let mut out = Vec::new();
        for d in self.dimvecs_up_to(total) {
            out.extend(self.classes_of(&d)?);
        }
        Ok(out)
    }

    pub fn info(&self, id: ClassId) -> Result<ClassInfo, ClassifyError> {
        let d = id.dimvec(self.n());
        let t = self.table(&d)?;
        t.classes
            .get(id.idx as usize)
            .cloned()
            .ok_or_else(|| ClassifyError::UnknownClass(id.key(self.n())))
    }

    pub fn rep(&self, id: ClassId) -> Result<Representation, ClassifyError> {
        Ok(self.info(id)?.rep)
    }

    pub fn aut(&self, id: ClassId) -> Result<u128, ClassifyError> {
        Ok(self.info(id)?.aut)
    }

    pub fn endo_dim(&self, id: ClassId) -> Result<usize, ClassifyError> {
        Ok(self.info(id)?.endo_dim)
    }

    pub fn class_of(&self, rep: &Representation) -> Result<ClassId, ClassifyError> {
        let d = rep.dimvec();
        let t = self.table(&d)?;
        let code = encode(self.field, &rep.maps);
        let idx = t.class_of_code[code as usize];
        Ok(t.classes[idx as usize].id)
    }

    pub fn simple(&self, i: usize) -> ClassId {
        let mut dim = [0; MAX_VERTICES];
        dim[i] = 1;
        ClassId { dim, idx: 0 }
    }

    pub fn direct_sum(&self, a: ClassId, b: ClassId) -> Result<ClassId, ClassifyError> {
        let r = self.rep(a)?.direct_sum(&self.rep(b)?);
        self.class_of(&r)
    }

    pub fn hom_ext(&self, a: ClassId, b: ClassId) -> Result<(usize, usize), ClassifyError> {
        Ok(hom_ext(&self.quiver, self.field, &self.rep(a)?, &self.rep(b)?))
    }

    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        self.quiver.euler(a, b)
    }

    /// Number of `S_i` summands.
    pub fn simple_multiplicity(&self, id: ClassId, i: usize) -> Result<usize, ClassifyError> {
        Ok(simple_multiplicity(&self.quiver, self.field, &self.rep(id)?, i))
    }

    /// `(λ0, t)` with `V_λ ≅ V_{λ0} ⊕ t S_i` and `λ0` free of `S_i` summands.
    pub fn split_simple(&self, id: ClassId, i: usize) -> Result<(ClassId, usize), ClassifyError> {
        let t = self.simple_multiplicity(id, i)?;
        if t == 0 {
            return Ok((id, 0));
        }
        let mut d0 = id.dimvec(self.n());
        d0[i] -= t as i64;
        let ts = self.multiple_of_simple(i, t)?;
        for c in self.classes_of(&d0)? {
            if self.simple_multiplicity(c, i)? == 0 && self.direct_sum(c, ts)? == id {
                return Ok((c, t));
            }
        }
        unreachable!("Krull-Schmidt decomposition must exist")
    }

    /// The class of `t S_i`.
    pub fn multiple_of_simple(&self, i: usize, t: usize) -> Result<ClassId, ClassifyError> {
        let mut d = vec![0i64; self.n()];
        d[i] = t as i64;
        let r = Representation::zero_maps(&self.quiver, d.iter().map(|&x| x as usize).collect());
        self.class_of(&r)
    }

    /// Submodule census of `L`: counts keyed by `(class of L/W, class of W)`.
    pub fn hall_tally(&self, l: ClassId) -> Result<Arc<HallTally>, ClassifyError> {
        if let Some(t) = self.tallies.lock().unwrap().get(&l) {
            return Ok(t.clone());
        }
        let tally = Arc::new(self.build_tally(l)?);
        self.tallies.lock().unwrap().insert(l, tally.clone());
        Ok(tally)
    }

    fn build_tally(&self, l: ClassId) -> Result<HallTally, ClassifyError> {
        let f = self.field;
        let rep = self.rep(l)?;
        let n = self.n();
        let mut tally = HallTally::new();
        // all subspaces per vertex, grouped by dimension
        let per_vertex: Vec<Vec<Subspace>> = (0..n)
            .map(|i| (0..=rep.dims[i]).flat_map(|k| subspaces(f, rep.dims[i], k)).collect())
            .collect();
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        let mut found = Vec::new();
        self.invariant_tuples(&rep, &per_vertex, &mut chosen, &mut found);
        for tuple in found {
            let subs: Vec<Subspace> = tuple
                .iter()
                .enumerate()
                .map(|(i, &k)| per_vertex[i][k].clone())
                .collect();
            let (w, quo) = sub_and_quotient(&self.quiver, f, &rep, &subs);
            let key = (self.class_of(&quo)?, self.class_of(&w)?);
            *tally.entry(key).or_insert(0) += 1;
        }
        Ok(tally)
    }

    fn invariant_tuples(
        &self,
        rep: &Representation,
        per_vertex: &[Vec<Subspace>],
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        let k = chosen.len();
        if k == per_vertex.len() {
            found.push(chosen.clone());
            return;
        }
        let f = self.field;
        for idx in 0..per_vertex[k].len() {
            chosen.push(idx);
            let ok = self.quiver.arrows().iter().enumerate().all(|(a_idx, a)| {
                if a.src.max(a.dst) != k {
                    return true;
                }
                let ws = &per_vertex[a.src][chosen[a.src]];
                let wt = &per_vertex[a.dst][chosen[a.dst]];
                (0..ws.dim()).all(|r| wt.contains(f, &rep.maps[a_idx].apply(f, ws.basis.row(r))))
            });
            if ok {
                self.invariant_tuples(rep, per_vertex, chosen, found);
            }
            chosen.pop();
        }
    }

    /// `g^L_{MN}`: submodules `W ⊆ L` with `W ≅ N` and `L/W ≅ M`.
    pub fn hall_number(&self, l: ClassId, m: ClassId, n: ClassId) -> Result<u64, ClassifyError> {
        let nn = self.n();
        let (dl, dm, dn) = (l.dimvec(nn), m.dimvec(nn), n.dimvec(nn));
        if (0..nn).any(|i| dl[i] != dm[i] + dn[i]) {
            return Ok(0);
        }
        Ok(self.hall_tally(l)?.get(&(m, n)).copied().unwrap_or(0))
    }
}

#[derive(Serialize)]
pub struct ClassRecord {
    pub id: String,
    pub dimvec: Vec<i64>,
    pub aut: String,
    pub endo_dim: usize,
    pub representative: Representation,
}

impl RepCategory {
    pub fn record(&self, id: ClassId) -> Result<ClassRecord, ClassifyError> {
        let info = self.info(id)?;
        Ok(ClassRecord {
            id: id.key(self.n()),
            dimvec: id.dimvec(self.n()),
            aut: info.aut.to_string(),
            endo_dim: info.endo_dim,
            representative: info.rep,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2(q: u64) -> RepCategory {
        RepCategory::new(ValuedQuiver::simply_laced(2, &[(0, 1)]).unwrap(), q, 6).unwrap()
    }

    #[test]
    fn a2_classes() {
        let c = a2(2);
        assert_eq!(c.classes_of(&[1, 1]).unwrap().len(), 2);
        let s = c.classes_of(&[1, 0]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(c.aut(s[0]).unwrap(), 1);
        let two = c.classes_of(&[2, 0]).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(c.aut(two[0]).unwrap(), 6);
        let c5 = a2(5);
        assert_eq!(c5.aut(c5.simple(1)).unwrap(), 4);
    }

    #[test]
    fn hall_number_examples() {
        let c = a2(2);
        let (s1, s2) = (c.simple(0), c.simple(1));
        let d11 = c.classes_of(&[1, 1]).unwrap();
        // the class with a nonzero arrow is the indecomposable
        let p = *d11.iter().find(|&&x| c.rep(x).unwrap().maps[0].get(0, 0) == 1).unwrap();
        assert_eq!(c.hall_number(p, s1, s2).unwrap(), 1);
        assert_eq!(c.hall_number(p, s2, s1).unwrap(), 0);
        let two = c.multiple_of_simple(0, 2).unwrap();
        assert_eq!(c.hall_number(two, s1, s1).unwrap(), 3);
    }

    #[test]
    fn orbit_stabilizer_census() {
        // Σ_λ |G| / a_λ = number of arrow tuples
        let c = RepCategory::new(ValuedQuiver::simply_laced(3, &[(0, 1), (2, 1)]).unwrap(), 2, 5).unwrap();
        for d in c.dimvecs_up_to(5) {
            let group: u128 = d.iter().map(|&x| gl_order(x as usize, 2)).product();
            let entries: u32 = c.shapes(&d).iter().map(|(r, s)| (r * s) as u32).sum();
            let total: u128 = c
                .classes_of(&d)
                .unwrap()
                .iter()
                .map(|&id| group / c.aut(id).unwrap())
                .sum();
            assert_eq!(total, 2u128.pow(entries), "{d:?}");
        }
    }

    #[test]
    fn split_simple_recovers_summands() {
        let c = a2(3);
        for id in c.classes_up_to(4).unwrap() {
            for i in 0..2 {
                let (l0, t) = c.split_simple(id, i).unwrap();
                let rebuilt = if t == 0 {
                    l0
                } else {
                    c.direct_sum(l0, c.multiple_of_simple(i, t).unwrap()).unwrap()
                };
                assert_eq!(rebuilt, id);
            }
        }
    }

    #[test]
    fn euler_form_is_hom_minus_ext() {
        for arrows in [vec![(0, 1)], vec![(1, 0)]] {
            let c = RepCategory::new(ValuedQuiver::simply_laced(2, &arrows).unwrap(), 2, 3).unwrap();
            check_euler(&c, 3);
        }
        let c = RepCategory::new(ValuedQuiver::simply_laced(3, &[(0, 1), (1, 2)]).unwrap(), 2, 3).unwrap();
        check_euler(&c, 3);
    }

    fn check_euler(c: &RepCategory, total: usize) {
        let all = c.classes_up_to(total).unwrap();
        for &a in &all {
            for &b in &all {
                let (h, e) = c.hom_ext(a, b).unwrap();
                assert_eq!(c.euler(&a.dimvec(c.n()), &b.dimvec(c.n())), h as i64 - e as i64);
            }
        }
    }

    #[test]
    fn key_round_trip() {
        let c = a2(2);
        for id in c.classes_up_to(3).unwrap() {
            assert_eq!(ClassId::parse_key(&id.key(2), 2), Some(id));
        }
    }
}
