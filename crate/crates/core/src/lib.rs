//! Certified homological computations for finite-dimensional algebras given by quivers with
//! relations: projective resolutions with tri-state dimensions, Gorenstein verdicts, triangular
//! matrix algebras, and Schur functor reports for corner algebras.

pub mod algebra;
pub mod exactla;
pub mod homology;
pub mod module;
pub mod schur;
pub mod triangular;

#[cfg(test)]
pub(crate) mod testkit;
