//! Exact computation of equivariant cellular homology, equivariant Euler
//! characteristics and equivariant Lefschetz numbers for finite diagrams of
//! spaces over a finite index category.
//!
//! A diagram is described combinatorially: a finite base category, a finite
//! set of orbits (set-valued diagrams with one-point colimit), and a labeled
//! ordered simplicial complex whose simplices carry orbit labels together
//! with restriction maps to their facets. On top of that sit chain complexes
//! with coefficient systems, integer Smith-normal-form homology, the isotropy
//! ring with its augmentation to the group of orbit classes, and the
//! fixed-orbit machinery of the equivariant Lefschetz number.

pub mod chains;
pub mod dspace;
pub mod fincat;
pub mod lefschetz;
pub mod isotropy;
pub mod matrix;
pub mod orbits;
pub mod samples;

pub use orbits::UDVector;
