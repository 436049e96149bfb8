//! Lusztig's algebra `f`: words in the `θ_i` modulo the quantum Serre ideal, with
//! per-weight normal forms computed by linear algebra over `Q(v)`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::cartan::CartanDatum;
use crate::coeffring::{qfact, RationalFn};
use crate::lincomb::LinComb;

pub type Word = Vec<u8>;
pub type FElement = LinComb<Word, RationalFn>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FError {
    #[error("weight of total {0} exceeds the cap {1}")]
    Cap(usize, usize),
    #[error("letter {0} is not a vertex")]
    Letter(u8),
}

#[derive(Debug)]
struct WeightTable {
    /// Reduction of each leading word of the relation space to standard words.
    rewrite: BTreeMap<Word, FElement>,
    basis: Vec<Word>,
}

pub struct FAlgebra {
    cartan: CartanDatum,
    cap: usize,
    tables: Mutex<BTreeMap<Vec<i64>, Arc<WeightTable>>>,
}

impl std::fmt::Debug for FAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FAlgebra").field("cap", &self.cap).finish()
    }
}

/// All words with the given letter multiplicities, in increasing order.
pub fn words_of_weight(nu: &[i64]) -> Vec<Word> {
    fn rec(left: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                cur.push(i as u8);
                rec(left, cur, out);
                cur.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut nu.to_vec(), &mut Vec::new(), &mut out);
    out
}

fn concat(a: &[u8], b: &[u8]) -> Word {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

/// Reduced-row-echelon elimination keyed by leading (largest) word.
fn reduce_by(rows: &BTreeMap<Word, FElement>, x: &FElement) -> FElement {
    let mut x = x.clone();
    loop {
        let hit = x
            .iter()
            .rev()
            .find(|(w, _)| rows.contains_key(*w))
            .map(|(w, c)| (w.clone(), c.clone()));
        let Some((w, c)) = hit else { return x };
        x.add_scaled(&rows[&w], &-&c);
    }
}

impl FAlgebra {
    pub fn new(cartan: CartanDatum, cap: usize) -> Self {
        Self {
            cartan,
            cap,
            tables: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn n(&self) -> usize {
        self.cartan.n()
    }

    pub fn weight(&self, w: &[u8]) -> Vec<i64> {
        let mut nu = vec![0; self.n()];
        for &l in w {
            nu[l as usize] += 1;
        }
        nu
    }

    pub fn one(&self) -> FElement {
        FElement::term(Vec::new(), RationalFn::one())
    }

    pub fn theta(&self, i: usize) -> FElement {
        FElement::term(vec![i as u8], RationalFn::one())
    }

    /// `θ_i^{(n)} = θ_i^n / [n]_{v_i}!`.
    pub fn divided_power(&self, i: usize, n: u32) -> FElement {
        let f = RationalFn::from_poly(qfact(n, self.cartan.eps(i)));
        FElement::term(vec![i as u8; n as usize], f.recip().expect("nonzero"))
    }

    /// Free-algebra Serre element `Σ_k (-1)^k θ_i^{(k)} θ_j θ_i^{(b-k)}`, `b = 1 - a_ij`.
    pub fn serre_element(&self, i: usize, j: usize) -> FElement {
        let b = (1 - self.cartan.a(i, j)) as u32;
        let mut out = FElement::zero();
        for k in 0..=b {
            let w = concat(&concat(&vec![i as u8; k as usize], &[j as u8]), &vec![i as u8; (b - k) as usize]);
            let d = qfact(k, self.cartan.eps(i)) * qfact(b - k, self.cartan.eps(i));
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = RationalFn::from_int(sign) * RationalFn::from_poly(d).recip().unwrap();
            out.add_term(w, c);
        }
        out
    }

    fn table(&self, nu: &[i64]) -> Result<Arc<WeightTable>, FError> {
        let total: i64 = nu.iter().sum();
        if total as usize > self.cap {
            return Err(FError::Cap(total as usize, self.cap));
        }
        if let Some(t) = self.tables.lock().unwrap().get(nu) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.build_table(nu));
        self.tables.lock().unwrap().insert(nu.to_vec(), t.clone());
        Ok(t)
    }

    fn build_table(&self, nu: &[i64]) -> WeightTable {
        let n = self.n();
        let mut rows: BTreeMap<Word, FElement> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let s = self.serre_element(i, j);
                let sw = self.weight(s.keys().next().unwrap());
                let rest: Vec<i64> = nu.iter().zip(&sw).map(|(a, b)| a - b).collect();
                if rest.iter().any(|&x| x < 0) {
                    continue;
                }
                // frame s by every split of the remaining weight into left and right words
                for w in words_of_weight(&rest) {
                    for cut in 0..=w.len() {
                        let (l, r) = w.split_at(cut);
                        let framed = s.map_keys(|k| concat(&concat(l, k), r));
                        self.insert_row(&mut rows, framed);
                    }
                }
            }
        }
        let basis: Vec<Word> = words_of_weight(nu)
            .into_iter()
            .filter(|w| !rows.contains_key(w))
            .collect();
        let rewrite = rows
            .into_iter()
            .map(|(lead, row)| {
                // lead = -(row - lead)
                let mut tail = row;
                tail.add_term(lead.clone(), -RationalFn::one());
                (lead, tail.neg())
            })
            .collect();
        WeightTable { rewrite, basis }
    }

    fn insert_row(&self, rows: &mut BTreeMap<Word, FElement>, x: FElement) {
        let r = reduce_by(rows, &x);
        let Some((lead, c)) = r.last() else { return };
        let lead = lead.clone();
        let r = r.scale(&c.recip().unwrap());
        for other in rows.values_mut() {
            if let Some(d) = other.coeff(&lead).cloned() {
                other.add_scaled(&r, &-&d);
            }
        }
        rows.insert(lead, r);
    }

    /// Standard words spanning `f_ν`.
    pub fn basis(&self, nu: &[i64]) -> Result<Vec<Word>, FError> {
        Ok(self.table(nu)?.basis.clone())
    }

    pub fn dim(&self, nu: &[i64]) -> Result<usize, FError> {
        Ok(self.table(nu)?.basis.len())
    }

    /// Canonical representative modulo the Serre ideal.
    pub fn normal_form(&self, x: &FElement) -> Result<FElement, FError> {
        let mut out = FElement::zero();
        let mut by_weight: BTreeMap<Vec<i64>, Vec<(&Word, &RationalFn)>> = BTreeMap::new();
        for (w, c) in x {
            if let Some(&l) = w.iter().find(|&&l| l as usize >= self.n()) {
                return Err(FError::Letter(l));
            }
            by_weight.entry(self.weight(w)).or_default().push((w, c));
        }
        for (nu, terms) in by_weight {
            let t = self.table(&nu)?;
            for (w, c) in terms {
                match t.rewrite.get(w) {
                    Some(r) => out.add_scaled(r, c),
                    None => out.add_term(w.clone(), c.clone()),
                }
            }
        }
        Ok(out)
    }

    /// Normal form of a single word.
    pub fn normal_word(&self, w: &[u8]) -> Result<FElement, FError> {
        self.normal_form(&FElement::term(w.to_vec(), RationalFn::one()))
    }

    pub fn mul(&self, x: &FElement, y: &FElement) -> Result<FElement, FError> {
        let mut prod = FElement::zero();
        for (a, c) in x {
            for (b, d) in y {
                prod.add_term(concat(a, b), c * d);
            }
        }
        self.normal_form(&prod)
    }

    pub fn to_json(&self, x: &FElement) -> Vec<FTerm> {
        x.iter()
            .map(|(w, c)| FTerm {
                word: w.iter().map(|&l| l as usize + 1).collect(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FTerm {
    pub word: Vec<usize>,
    pub coeff: String,
}
