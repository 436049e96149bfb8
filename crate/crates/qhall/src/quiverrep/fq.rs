//! Dense matrices over a prime field `F_q` with small `q`.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    q: u8,
}

impl Fq {
    pub fn new(q: u64) -> Option<Self> {
        if !(2..=251).contains(&q) || !is_prime(q) {
            return None;
        }
        Some(Self { q: q as u8 })
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.q as u16) as u8
    }

    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.q as u16 - b as u16) % self.q as u16) as u8
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.q as u16) as u8
    }

    pub fn neg(&self, a: u8) -> u8 {
        self.sub(0, a)
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero in F_q");
        // a^(q-2)
        let mut acc = 1u8;
        for _ in 0..self.q - 2 {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(&self) -> u8 {
        let q = self.q;
        (1..q)
            .find(|&g| {
                let mut x = g;
                let mut order = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    order += 1;
                }
                order == q - 1
            })
            .unwrap()
    }
}

pub fn is_prime(q: u64) -> bool {
    q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// `|GL(d, F_q)| = prod_{k<d} (q^d - q^k)`.
pub fn gl_order(d: usize, q: u64) -> u128 {
    let qd = (q as u128).pow(d as u32);
    (0..d).map(|k| qd - (q as u128).pow(k as u32)).product()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: u8) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: Fq, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let x = f.add(out.get(i, j), f.mul(a, rhs.get(k, j)));
                    out.set(i, j, x);
                }
            }
        }
        out
    }

    pub fn apply(&self, f: Fq, v: &[u8]) -> Vec<u8> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn sub(&self, f: Fq, rhs: &Matrix) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: Fq) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for k in 0..m.cols {
                    let t = m.get(p, k);
                    m.set(p, k, m.get(r, k));
                    m.set(r, k, t);
                }
            }
            let inv = f.inv(m.get(r, c));
            for k in 0..m.cols {
                m.set(r, k, f.mul(m.get(r, k), inv));
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    for k in 0..m.cols {
                        let x = f.sub(m.get(i, k), f.mul(factor, m.get(r, k)));
                        m.set(i, k, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: Fq) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right null space `{x : Mx = 0}`, as the columns of the result.
    pub fn nullspace(&self, f: Fq) -> Matrix {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(r.get(row, fc)));
            }
        }
        out
    }

    pub fn inverse(&self, f: Fq) -> Option<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j));
            }
        }
        Some(out)
    }

    /// Block matrix `[A B]`.
    pub fn hcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zeros(self.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..rhs.cols {
                out.set(r, self.cols + c, rhs.get(r, c));
            }
        }
        out
    }

    /// Block matrix `[A; B]`.
    pub fn vcat(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..rhs.rows {
            for c in 0..rhs.cols {
                out.set(self.rows + r, self.cols + c, rhs.get(r, c));
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out.set(r, k, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Matrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }
}

/// A subspace of `F_q^n` given by the rows of its reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    pub basis: Matrix,
    pub pivots: Vec<usize>,
}

impl Subspace {
    /// Row space of `m`.
    pub fn span(f: Fq, m: &Matrix) -> Self {
        let (r, pivots) = m.rref(f);
        let rows: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            basis: r.select_rows(&rows),
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `x` modulo the subspace; the result vanishes on pivot columns.
    pub fn reduce(&self, f: Fq, x: &[u8]) -> Vec<u8> {
        let mut y = x.to_vec();
        for (k, &p) in self.pivots.iter().enumerate() {
            let c = y[p];
            if c != 0 {
                for (yj, &bj) in y.iter_mut().zip(self.basis.row(k)) {
                    *yj = f.sub(*yj, f.mul(c, bj));
                }
            }
        }
        y
    }

    pub fn contains(&self, f: Fq, x: &[u8]) -> bool {
        self.reduce(f, x).iter().all(|&c| c == 0)
    }

    /// Coordinates of a member in the echelon basis (read off at pivots).
    pub fn coords(&self, x: &[u8]) -> Vec<u8> {
        self.pivots.iter().map(|&p| x[p]).collect()
    }

    /// Columns not among the pivots; the standard vectors there span a complement.
    pub fn complement_cols(&self) -> Vec<usize> {
        (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// All `k`-dimensional subspaces of `F_q^n`, via reduced echelon forms.
pub fn subspaces(f: Fq, n: usize, k: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut pivots = Vec::with_capacity(k);
    choose(n, k, 0, &mut pivots, &mut |piv| {
        // free entries: row r, column c > piv[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| ((piv[r] + 1)..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (f.q() as usize).pow(free.len() as u32);
        for code in 0..total {
            let mut m = Matrix::zeros(k, n);
            for (r, &p) in piv.iter().enumerate() {
                m.set(r, p, 1);
            }
            let mut x = code;
            for &(r, c) in &free {
                m.set(r, c, (x % f.q() as usize) as u8);
                x /= f.q() as usize;
            }
            out.push(Subspace {
                basis: m,
                pivots: piv.to_vec(),
            });
        }
    });
    out
}

fn choose(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        visit(cur);
        return;
    }
    for c in start..n {
        if n - c < k - cur.len() {
            break;
        }
        cur.push(c);
        choose(n, k, c + 1, cur, visit);
        cur.pop();
    }
}
