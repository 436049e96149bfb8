use serde::{Deserialize, Serialize};

use crate::cartan::{CartanDatum, CartanError};

pub const MAX_VERTICES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    /// The value `d_{src,dst}`.
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("a quiver needs between 1 and {MAX_VERTICES} vertices")]
    VertexCount,
    #[error("arrow {0} -> {1} is a loop or mentions a missing vertex")]
    BadArrow(usize, usize),
    #[error("edge values and epsilon must be positive")]
    NonPositive,
    #[error("vertices {0} and {1} are joined more than once")]
    MultipleEdges(usize, usize),
    #[error("the underlying graph must be connected and contain no cycles")]
    NotATree,
    #[error("d_ij * eps_j / eps_i is not an integer on edge {0} -> {1}")]
    ValueCondition(usize, usize),
    #[error("vertex {0} is not a sink")]
    NotSink(usize),
    #[error("vertex {0} is not a source")]
    NotSource(usize),
    #[error("the representation engine handles simply-laced quivers only")]
    NotSimplyLaced,
    #[error(transparent)]
    Cartan(#[from] CartanError),
}

/// A valued quiver `(Γ, d, Ω)` whose underlying graph is a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuedQuiver {
    n: usize,
    arrows: Vec<Arrow>,
    eps: Vec<i64>,
}

impl ValuedQuiver {
    pub fn new(n: usize, arrows: Vec<Arrow>, eps: Vec<i64>) -> Result<Self, QuiverError> {
        if n == 0 || n > MAX_VERTICES || eps.len() != n {
            return Err(QuiverError::VertexCount);
        }
        if eps.iter().any(|&e| e <= 0) {
            return Err(QuiverError::NonPositive);
        }
        let mut seen = std::collections::BTreeSet::new();
        for a in &arrows {
            if a.src >= n || a.dst >= n || a.src == a.dst {
                return Err(QuiverError::BadArrow(a.src, a.dst));
            }
            if a.value <= 0 {
                return Err(QuiverError::NonPositive);
            }
            if !seen.insert((a.src.min(a.dst), a.src.max(a.dst))) {
                return Err(QuiverError::MultipleEdges(a.src, a.dst));
            }
            if (a.value * eps[a.dst]) % eps[a.src] != 0 {
                return Err(QuiverError::ValueCondition(a.src, a.dst));
            }
        }
        if arrows.len() != n - 1 {
            return Err(QuiverError::NotATree);
        }
        // connectivity by flood fill
        let mut reached = vec![false; n];
        let mut stack = vec![0];
        reached[0] = true;
        while let Some(x) = stack.pop() {
            for a in &arrows {
                for (u, w) in [(a.src, a.dst), (a.dst, a.src)] {
                    if u == x && !reached[w] {
                        reached[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(QuiverError::NotATree);
        }
        Ok(Self { n, arrows, eps })
    }

    /// Simply-laced quiver with all values and symmetrizers 1.
    pub fn simply_laced(n: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        Self::new(
            n,
            arrows
                .iter()
                .map(|&(src, dst)| Arrow { src, dst, value: 1 })
                .collect(),
            vec![1; n],
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn eps(&self) -> &[i64] {
        &self.eps
    }

    pub fn is_simply_laced(&self) -> bool {
        self.eps.iter().all(|&e| e == 1) && self.arrows.iter().all(|a| a.value == 1)
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.src != i)
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|a| a.dst != i)
    }

    /// Reverse every arrow at `i`; values are replaced by `d_ji`.
    pub fn reflect_at(&self, i: usize) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.src == i || a.dst == i {
                    Arrow {
                        src: a.dst,
                        dst: a.src,
                        value: a.value * self.eps[a.dst] / self.eps[a.src],
                    }
                } else {
                    *a
                }
            })
            .collect();
        Self {
            n: self.n,
            arrows,
            eps: self.eps.clone(),
        }
    }

    pub fn cartan(&self) -> Result<CartanDatum, QuiverError> {
        let edges: Vec<(usize, usize, i64)> =
            self.arrows.iter().map(|a| (a.src, a.dst, a.value)).collect();
        Ok(CartanDatum::from_valued_edges(
            self.n,
            &edges,
            self.eps.clone(),
            None,
        )?)
    }

    /// `⟨a, b⟩ = Σ ε_i a_i b_i - Σ_{i→j} d_ij ε_j a_i b_j`.
    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = (0..self.n).map(|i| self.eps[i] * a[i] * b[i]).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|ar| ar.value * self.eps[ar.dst] * a[ar.src] * b[ar.dst])
            .sum();
        diag - off
    }

    /// `m(a) = Σ a_i ε_i`.
    pub fn m_of(&self, a: &[i64]) -> i64 {
        a.iter().zip(&self.eps).map(|(x, e)| x * e).sum()
    }
}

pub fn trace(a: &[i64]) -> i64 {
    a.iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_examples() {
        let q = ValuedQuiver::simply_laced(2, &[(0, 1)]).unwrap();
        assert_eq!(q.euler(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.euler(&[1, 0], &[1, 0]), 1);
        assert_eq!(q.euler(&[0, 1], &[1, 0]), 0);
    }

    #[test]
    fn symmetrized_euler_is_symform() {
        for eps in [vec![1, 1], vec![1, 2], vec![1, 3]] {
            let q = ValuedQuiver::new(2, vec![Arrow { src: 0, dst: 1, value: 1 }], eps).unwrap();
            let c = q.cartan().unwrap();
            for a in [[1, 0], [0, 1], [2, 1], [1, 3]] {
                for b in [[1, 0], [0, 1], [1, 1], [3, 2]] {
                    assert_eq!(q.euler(&a, &b) + q.euler(&b, &a), c.symform(&a, &b));
                }
            }
        }
    }

    #[test]
    fn validation() {
        assert!(ValuedQuiver::simply_laced(3, &[(0, 1)]).is_err());
        assert!(ValuedQuiver::simply_laced(2, &[(0, 0)]).is_err());
        assert!(ValuedQuiver::simply_laced(3, &[(0, 1), (1, 0)]).is_err());
        assert!(ValuedQuiver::simply_laced(3, &[(0, 1), (1, 2)]).is_ok());
    }

    #[test]
    fn reflection_reverses_arrows_at_vertex() {
        let q = ValuedQuiver::simply_laced(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(q.is_sink(2) && q.is_source(0));
        let r = q.reflect_at(2);
        assert!(r.is_source(2));
        assert_eq!(r.reflect_at(2), q);
    }
}
