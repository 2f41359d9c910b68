//! Local cohomology of squarefree monomial ideals.
//!
//! Computes Lyubeznik tables, Bass numbers, dual Bass numbers and related
//! invariants of `H^r_I(R)` for squarefree monomial ideals `I` in
//! `R = k[x1, ..., xn]`, exactly over `Q` or `F_p`. Two independent routes are
//! provided: hypercube cohomology complexes built from reduced simplicial
//! cohomology, and linear strands of the minimal free resolution of the
//! Alexander dual ideal.

pub mod cli;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod field;
pub mod hypercube;
pub mod ideal;
pub mod invariants;
pub mod mask;
pub mod matrix;
pub mod resolution;
pub mod simplicial;

pub use complex::{ChainMap, VectorSpaceComplex};
pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use hypercube::{build_hypercube, Hypercube, HypercubeSource};
pub use ideal::MonomialIdeal;
pub use mask::DegreeMask;
pub use matrix::Matrix;
pub use simplicial::SimplicialComplex;
