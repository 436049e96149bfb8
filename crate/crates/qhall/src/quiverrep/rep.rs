use serde::Serialize;

use super::fq::{Fq, Matrix, Subspace};
use super::quiver::ValuedQuiver;

/// A representation of a simply-laced quiver: a space `F_q^{d_i}` per vertex and a
/// `d_dst x d_src` matrix per arrow (arrows indexed as in the quiver).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

#[derive(Serialize)]
struct RepJson {
    dims: Vec<usize>,
    maps: Vec<Vec<Vec<u8>>>,
}

impl Serialize for Representation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RepJson {
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl Representation {
    pub fn zero_maps(quiver: &ValuedQuiver, dims: Vec<usize>) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.dst], dims[a.src]))
            .collect();
        Self { dims, maps }
    }

    pub fn simple(quiver: &ValuedQuiver, i: usize) -> Self {
        let mut dims = vec![0; quiver.n()];
        dims[i] = 1;
        Self::zero_maps(quiver, dims)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dimvec(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        Representation {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a.direct_sum(b))
                .collect(),
        }
    }

    /// Check that each arrow matrix has the right shape for `quiver`.
    pub fn fits(&self, quiver: &ValuedQuiver) -> bool {
        self.dims.len() == quiver.n()
            && self.maps.len() == quiver.arrows().len()
            && quiver.arrows().iter().zip(&self.maps).all(|(a, m)| {
                m.rows() == self.dims[a.dst] && m.cols() == self.dims[a.src]
            })
    }
}

/// The map `⊕_i Hom(V_i, W_i) → ⊕_{a: s→t} Hom(V_s, W_t)`, `f ↦ (ψ_a f_s - f_t φ_a)_a`.
fn intertwiner_map(quiver: &ValuedQuiver, f: Fq, v: &Representation, w: &Representation) -> Matrix {
    let n = quiver.n();
    let mut dom_off = vec![0; n + 1];
    for i in 0..n {
        dom_off[i + 1] = dom_off[i] + w.dims[i] * v.dims[i];
    }
    let arrows = quiver.arrows();
    let mut cod_off = vec![0; arrows.len() + 1];
    for (k, a) in arrows.iter().enumerate() {
        cod_off[k + 1] = cod_off[k] + w.dims[a.dst] * v.dims[a.src];
    }
    let mut m = Matrix::zeros(cod_off[arrows.len()], dom_off[n]);
    for i in 0..n {
        for r in 0..w.dims[i] {
            for c in 0..v.dims[i] {
                let col = dom_off[i] + r * v.dims[i] + c;
                let mut fi = Matrix::zeros(w.dims[i], v.dims[i]);
                fi.set(r, c, 1);
                for (k, a) in arrows.iter().enumerate() {
                    let mut img = Matrix::zeros(w.dims[a.dst], v.dims[a.src]);
                    if a.src == i {
                        img = w.maps[k].mul(f, &fi);
                    }
                    if a.dst == i {
                        img = img.sub(f, &fi.mul(f, &v.maps[k]));
                    }
                    for (e, &x) in img.data().iter().enumerate() {
                        m.set(cod_off[k] + e, col, x);
                    }
                }
            }
        }
    }
    m
}

/// `(dim Hom(V, W), dim Ext(V, W))` from the intertwiner map's nullity and cokernel.
pub fn hom_ext(quiver: &ValuedQuiver, f: Fq, v: &Representation, w: &Representation) -> (usize, usize) {
    let m = intertwiner_map(quiver, f, v, w);
    let rank = m.rank(f);
    (m.cols() - rank, m.rows() - rank)
}

pub fn hom_dim(quiver: &ValuedQuiver, f: Fq, v: &Representation, w: &Representation) -> usize {
    hom_ext(quiver, f, v, w).0
}

pub fn ext_dim(quiver: &ValuedQuiver, f: Fq, v: &Representation, w: &Representation) -> usize {
    hom_ext(quiver, f, v, w).1
}

/// Multiplicity of the simple `S_i` as a direct summand: vectors at `i` killed by every
/// outgoing arrow, modulo those hit by incoming arrows.
pub fn simple_multiplicity(quiver: &ValuedQuiver, f: Fq, v: &Representation, i: usize) -> usize {
    let d = v.dims[i];
    if d == 0 {
        return 0;
    }
    let mut out = Matrix::zeros(0, d);
    let mut incoming = Matrix::zeros(d, 0);
    for (k, a) in quiver.arrows().iter().enumerate() {
        if a.src == i {
            out = out.vcat(&v.maps[k]);
        }
        if a.dst == i {
            incoming = incoming.hcat(&v.maps[k]);
        }
    }
    let kernel = out.nullspace(f);
    let kdim = kernel.cols();
    // dim(K ∩ I) = dim K + dim I - dim(K + I)
    let idim = incoming.rank(f);
    let sum = kernel.hcat(&incoming).rank(f);
    kdim - (kdim + idim - sum)
}

/// Restriction of `v` to an arrow-invariant subspace tuple and the induced quotient.
pub fn sub_and_quotient(
    quiver: &ValuedQuiver,
    f: Fq,
    v: &Representation,
    subs: &[Subspace],
) -> (Representation, Representation) {
    let n = quiver.n();
    let sub_dims: Vec<usize> = subs.iter().map(|s| s.dim()).collect();
    let quo_dims: Vec<usize> = (0..n).map(|i| v.dims[i] - sub_dims[i]).collect();
    let comp: Vec<Vec<usize>> = subs.iter().map(|s| s.complement_cols()).collect();
    let mut sub_maps = Vec::new();
    let mut quo_maps = Vec::new();
    for (k, a) in quiver.arrows().iter().enumerate() {
        let (s, t) = (a.src, a.dst);
        let phi = &v.maps[k];
        let mut sm = Matrix::zeros(sub_dims[t], sub_dims[s]);
        for c in 0..sub_dims[s] {
            let img = phi.apply(f, subs[s].basis.row(c));
            for (r, x) in subs[t].coords(&img).into_iter().enumerate() {
                sm.set(r, c, x);
            }
        }
        let mut qm = Matrix::zeros(quo_dims[t], quo_dims[s]);
        for (c, &col) in comp[s].iter().enumerate() {
            let mut e = vec![0u8; v.dims[s]];
            e[col] = 1;
            let img = subs[t].reduce(f, &phi.apply(f, &e));
            for (r, &row) in comp[t].iter().enumerate() {
                qm.set(r, c, img[row]);
            }
        }
        sub_maps.push(sm);
        quo_maps.push(qm);
    }
    (
        Representation {
            dims: sub_dims,
            maps: sub_maps,
        },
        Representation {
            dims: quo_dims,
            maps: quo_maps,
        },
    )
}
