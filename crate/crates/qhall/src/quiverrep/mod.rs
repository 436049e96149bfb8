//! Representations of simply-laced quivers over prime fields: linear algebra over
//! `F_q`, isomorphism classification, automorphism counts and Hall numbers.

mod classify;
mod fq;
mod quiver;
mod rep;

pub use classify::{ClassId, ClassInfo, ClassRecord, ClassifyError, DimVec, HallTally, RepCategory};
pub use fq::{gl_order, is_prime, subspaces, Fq, Matrix, Subspace};
pub use quiver::{trace, Arrow, QuiverError, ValuedQuiver, MAX_VERTICES};
pub use rep::{ext_dim, hom_dim, hom_ext, simple_multiplicity, sub_and_quotient, Representation};
