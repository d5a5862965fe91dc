//! Exact rational computation of symplectic cohomology invariants for
//! invariant structures on nilmanifold models.
//!
//! A model is a finite-dimensional coframe with structure equations
//! d(e^i) given as 2-forms, together with a closed nondegenerate 2-form.
//! The crate computes the cohomology of the exterior differential, of the
//! symplectic codifferential, and of the two mixed quotients attached to
//! both at once; harmonic representatives for a compatible metric; the
//! hard-Lefschetz diagnostics; Lefschetz- and J-decompositions of the
//! resulting groups; and the behavior of all of these along one-parameter
//! deformations of the symplectic form. Everything is computed over the
//! rationals, with no floating point anywhere, so results are exact and
//! reproducible byte for byte.

pub mod algebra;
pub mod basis;
pub mod cli;
pub mod cohomology;
pub mod deformation;
pub mod form;
pub mod index_set;
pub mod manifest;
pub mod matrix;
pub mod operators;
pub mod poly;
pub mod rational;
pub mod report;
pub mod subspace;
pub mod symplectic;
