//! Cartan data: weights as value tuples on the coweight basis, the symmetric
//! form on the root lattice, simple reflections and braid orders.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeffring::{rat, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CartanError {
    #[error("empty index set")]
    Empty,
    #[error("Cartan matrix is not square of size {0}")]
    Shape(usize),
    #[error("a_{i}{i} must be 2")]
    Diagonal { i: usize },
    #[error("a_{i}{j} must be <= 0, and zero exactly when a_{j}{i} is")]
    OffDiagonal { i: usize, j: usize },
    #[error("not symmetrizable by the given epsilon at ({i}, {j})")]
    NotSymmetrizable { i: usize, j: usize },
    #[error("epsilon values must be positive")]
    Epsilon,
    #[error("supplied alpha(d_s) values must be a {rows}x{cols} 0/1 table making the simple roots independent")]
    DValues { rows: usize, cols: usize },
    #[error("vertex index {0} out of range")]
    Index(usize),
    #[error("braid order needs two distinct indices")]
    SameIndex,
}

/// An integral weight, stored as its values on the coweight basis `{h_i} ∪ {d_s}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(vec![0; len])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    /// `λ(h_i)`.
    pub fn h(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    /// `λ(μ)` for a coweight given by coefficients on the coweight basis.
    pub fn eval(&self, mu: &[i64]) -> i64 {
        self.0.iter().zip(mu).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    a: Vec<Vec<i64>>,
    eps: Vec<i64>,
    rank: usize,
    /// `alpha[j]` = values of `α_j` on the coweight basis.
    alpha: Vec<Weight>,
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let piv = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                for k in c..cols {
                    let d = &f * &m[rank][k];
                    m[r][k] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl CartanDatum {
    /// Build from a matrix and symmetrizers; `d_values[j][s] = α_j(d_s)` when given.
    pub fn new(
        a: Vec<Vec<i64>>,
        eps: Vec<i64>,
        d_values: Option<Vec<Vec<i64>>>,
    ) -> Result<Self, CartanError> {
        let n = a.len();
        if n == 0 {
            return Err(CartanError::Empty);
        }
        if eps.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(CartanError::Shape(n));
        }
        if eps.iter().any(|&e| e <= 0) {
            return Err(CartanError::Epsilon);
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(CartanError::Diagonal { i });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if a[i][j] > 0 || ((a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(CartanError::OffDiagonal { i, j });
                }
                if eps[i] * a[i][j] != eps[j] * a[j][i] {
                    return Err(CartanError::NotSymmetrizable { i, j });
                }
            }
        }
        let rank = rank_of(&a);
        let extra = n - rank;
        // α_j(h_i) = a_ij, so the h-block of α_j is column j of A.
        let mut alpha: Vec<Vec<i64>> = (0..n).map(|j| (0..n).map(|i| a[i][j]).collect()).collect();
        match d_values {
            Some(d) => {
                let bad = CartanError::DValues { rows: n, cols: extra };
                if d.len() != n || d.iter().any(|r| r.len() != extra || r.iter().any(|&x| x != 0 && x != 1)) {
                    return Err(bad);
                }
                for (j, row) in d.into_iter().enumerate() {
                    alpha[j].extend(row);
                }
                if rank_of(&alpha) != n {
                    return Err(bad);
                }
            }
            None => {
                for row in alpha.iter_mut() {
                    row.extend(std::iter::repeat(0).take(extra));
                }
                // greedy completion by unit vectors until the simple roots are independent
                for s in 0..extra {
                    let base = rank_of(&alpha);
                    for j in 0..n {
                        alpha[j][n + s] = 1;
                        if rank_of(&alpha) > base {
                            break;
                        }
                        alpha[j][n + s] = 0;
                    }
                }
            }
        }
        Ok(Self {
            a,
            eps,
            rank,
            alpha: alpha.into_iter().map(Weight).collect(),
        })
    }

    /// Cartan datum of a valued graph: `a_ij = -d_ji` with `d_ji = d_ij ε_j / ε_i`.
    pub fn from_valued_edges(
        n: usize,
        edges: &[(usize, usize, i64)],
        eps: Vec<i64>,
        d_values: Option<Vec<Vec<i64>>>,
    ) -> Result<Self, CartanError> {
        if eps.len() != n {
            return Err(CartanError::Shape(n));
        }
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j, dij) in edges {
            if i >= n {
                return Err(CartanError::Index(i));
            }
            if j >= n {
                return Err(CartanError::Index(j));
            }
            let num = dij * eps[j];
            if eps[i] <= 0 || num % eps[i] != 0 {
                return Err(CartanError::NotSymmetrizable { i, j });
            }
            let dji = num / eps[i];
            a[i][j] -= dji;
            a[j][i] -= dij;
        }
        Self::new(a, eps, d_values)
    }

    pub fn preset(name: &str) -> Option<Self> {
        let (a, eps) = match name {
            "A1xA1" => (vec![vec![2, 0], vec![0, 2]], vec![1, 1]),
            "A2" => (vec![vec![2, -1], vec![-1, 2]], vec![1, 1]),
            "B2" => (vec![vec![2, -2], vec![-1, 2]], vec![1, 2]),
            "G2" => (vec![vec![2, -3], vec![-1, 2]], vec![1, 3]),
            "A3" => (
                vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
                vec![1, 1, 1],
            ),
            _ => return None,
        };
        Some(Self::new(a, eps, None).expect("preset is valid"))
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Size of the coweight basis, `2n - r(A)`.
    pub fn coweight_len(&self) -> usize {
        2 * self.n() - self.rank
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn eps(&self, i: usize) -> i64 {
        self.eps[i]
    }

    pub fn epsilons(&self) -> &[i64] {
        &self.eps
    }

    /// `α_j` as a weight.
    pub fn alpha(&self, j: usize) -> &Weight {
        &self.alpha[j]
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.coweight_len())
    }

    /// Weight with the given `h`-values and zero `d_s`-values.
    pub fn weight_from_h(&self, h: &[i64]) -> Weight {
        let mut w = h.to_vec();
        w.resize(self.coweight_len(), 0);
        Weight(w)
    }

    /// `Σ ν_j α_j` for `ν` in the root lattice.
    pub fn root_weight(&self, nu: &[i64]) -> Weight {
        let mut w = vec![0; self.coweight_len()];
        for (j, &c) in nu.iter().enumerate() {
            if c != 0 {
                for (x, y) in w.iter_mut().zip(&self.alpha[j].0) {
                    *x += c * y;
                }
            }
        }
        Weight(w)
    }

    /// The symmetric form on the root lattice, `(α_i, α_j) = ε_i a_ij`.
    pub fn symform(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.n();
        let mut s = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += x[i] * y[j] * self.eps[i] * self.a[i][j];
            }
        }
        s
    }

    /// `(ζ, ν) = Σ ν_i ε_i ζ(h_i)` pairing a weight with a root-lattice element.
    pub fn pair(&self, zeta: &Weight, nu: &[i64]) -> i64 {
        nu.iter()
            .enumerate()
            .map(|(i, &c)| c * self.eps[i] * zeta.h(i))
            .sum()
    }

    /// `s_i λ = λ - λ(h_i) α_i`.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let k = lambda.h(i);
        if k == 0 {
            return lambda.clone();
        }
        lambda - &self.alpha[i].scale(k)
    }

    /// `s_i` on root-lattice coordinates: `s_i(α_j) = α_j - a_ij α_i`.
    pub fn reflect_root(&self, i: usize, nu: &[i64]) -> Vec<i64> {
        let c: i64 = nu.iter().enumerate().map(|(j, &x)| x * self.a[i][j]).sum();
        let mut out = nu.to_vec();
        out[i] -= c;
        out
    }

    /// `s_i μ = μ - α_i(μ) h_i` for a coweight given by basis coefficients.
    pub fn reflect_coweight(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let c = self.alpha[i].eval(mu);
        let mut out = mu.to_vec();
        out[i] -= c;
        out
    }

    /// Coefficients of `ε_i h_i`, the coweight attached to `K̃_{α_i}`.
    pub fn tilde_coweight(&self, nu: &[i64]) -> Vec<i64> {
        let mut mu = vec![0; self.coweight_len()];
        for (i, &c) in nu.iter().enumerate() {
            mu[i] += c * self.eps[i];
        }
        mu
    }

    /// Order of `s_i s_j`; `None` for infinite order.
    pub fn braid_order(&self, i: usize, j: usize) -> Result<Option<u32>, CartanError> {
        if i == j {
            return Err(CartanError::SameIndex);
        }
        if i >= self.n() || j >= self.n() {
            return Err(CartanError::Index(i.max(j)));
        }
        Ok(braid_order_of(self.a[i][j] * self.a[j][i]))
    }
}

pub fn braid_order_of(d: i64) -> Option<u32> {
    match d {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn presets() -> Vec<CartanDatum> {
        ["A1xA1", "A2", "B2", "G2"]
            .iter()
            .map(|n| CartanDatum::preset(n).unwrap())
            .collect()
    }

    #[test]
    fn symform_examples() {
        let a2 = CartanDatum::preset("A2").unwrap();
        assert_eq!(a2.symform(&[1, 0], &[1, 0]), 2);
        assert_eq!(a2.symform(&[1, 0], &[0, 1]), -1);
        let a11 = CartanDatum::preset("A1xA1").unwrap();
        assert_eq!(a11.symform(&[1, 0], &[0, 1]), 0);
        let b2 = CartanDatum::preset("B2").unwrap();
        assert_eq!(b2.symform(&[0, 1], &[0, 1]), 4);
        assert_eq!(b2.symform(&[1, 0], &[0, 1]), b2.symform(&[0, 1], &[1, 0]));
    }

    #[test]
    fn reflect_examples() {
        let a2 = CartanDatum::preset("A2").unwrap();
        let lam = a2.weight_from_h(&[1, 0]);
        assert_eq!(a2.reflect(0, &lam), Weight(vec![-1, 1]));
        let fixed = a2.weight_from_h(&[0, 3]);
        assert_eq!(a2.reflect(0, &fixed), fixed);
        assert_eq!(a2.reflect(0, a2.alpha(0)), -a2.alpha(0));
    }

    #[test]
    fn braid_orders() {
        assert_eq!(braid_order_of(1), Some(3));
        assert_eq!(braid_order_of(0), Some(2));
        assert_eq!(braid_order_of(4), None);
        let g2 = CartanDatum::preset("G2").unwrap();
        assert_eq!(g2.braid_order(0, 1).unwrap(), Some(6));
        assert!(g2.braid_order(1, 1).is_err());
    }

    #[test]
    fn valued_edges_give_preset_matrices() {
        let b2 = CartanDatum::from_valued_edges(2, &[(0, 1, 1)], vec![1, 2], None).unwrap();
        assert_eq!(b2.matrix(), CartanDatum::preset("B2").unwrap().matrix());
        let g2 = CartanDatum::from_valued_edges(2, &[(0, 1, 1)], vec![1, 3], None).unwrap();
        assert_eq!(g2.matrix(), CartanDatum::preset("G2").unwrap().matrix());
    }

    #[test]
    fn degenerate_matrix_gets_independent_roots() {
        // affine A1
        let c = CartanDatum::new(vec![vec![2, -2], vec![-2, 2]], vec![1, 1], None).unwrap();
        assert_eq!(c.rank(), 1);
        assert_eq!(c.coweight_len(), 3);
        let rows: Vec<Vec<i64>> = (0..2).map(|j| c.alpha(j).0.clone()).collect();
        assert_eq!(rank_of(&rows), 2);
        let bad = CartanDatum::new(vec![vec![2, -2], vec![-2, 2]], vec![1, 1], Some(vec![vec![0], vec![0]]));
        assert!(bad.is_err());
    }

    #[test]
    fn rejects_invalid_matrices() {
        assert!(CartanDatum::new(vec![vec![2, -1], vec![0, 2]], vec![1, 1], None).is_err());
        assert!(CartanDatum::new(vec![vec![2, -2], vec![-1, 2]], vec![1, 1], None).is_err());
        assert!(CartanDatum::new(vec![vec![1]], vec![1], None).is_err());
    }

    #[test]
    fn coxeter_relation_on_weights() {
        for c in presets() {
            let m = c.braid_order(0, 1).unwrap().unwrap();
            for k in 0..c.coweight_len() {
                let mut e = vec![0; c.coweight_len()];
                e[k] = 1;
                let start = Weight(e);
                let mut w = start.clone();
                for _ in 0..m {
                    w = c.reflect(0, &c.reflect(1, &w));
                }
                assert_eq!(w, start);
            }
        }
    }

    #[test]
    fn reflection_is_involution_negating_h() {
        let c = CartanDatum::preset("G2").unwrap();
        for x in -2..=2 {
            for y in -2..=2 {
                let w = c.weight_from_h(&[x, y]);
                for i in 0..2 {
                    let r = c.reflect(i, &w);
                    assert_eq!(r.h(i), -w.h(i));
                    assert_eq!(c.reflect(i, &r), w);
                }
            }
        }
    }

    #[test]
    fn root_weight_matches_reflection() {
        for c in presets() {
            for x in -2..=2 {
                for y in -2..=2 {
                    let nu = [x, y];
                    for i in 0..2 {
                        assert_eq!(
                            c.root_weight(&c.reflect_root(i, &nu)),
                            c.reflect(i, &c.root_weight(&nu))
                        );
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reflection_preserves_symform(x in prop::array::uniform2(-3i64..=3), y in prop::array::uniform2(-3i64..=3), which in 0usize..4, i in 0usize..2) {
            let c = &presets()[which];
            let (sx, sy) = (c.reflect_root(i, &x), c.reflect_root(i, &y));
            prop_assert_eq!(c.symform(&sx, &sy), c.symform(&x, &y));
            prop_assert_eq!(c.symform(&x, &y), c.symform(&y, &x));
        }
    }
}
