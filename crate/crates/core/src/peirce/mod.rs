//! Finite-dimensional models of Peirce decompositions and the functors built
//! from them.
//!
//! For an algebra `A` with orthogonal idempotents `e_1, ..., e_m` summing to
//! one, `A` splits as the sum of the blocks `A_ij = e_i A e_j`. The corner
//! functor `P_i M = e_i M` takes `A`-modules to `A_ii`-modules, and
//! `Q_i N = A e_i (x)_{A_ii} N` goes back. Translation functors on
//! `B (x) End(F)` are corners of `M -> M (x) F`.

mod algebra;
mod functors;
mod module;
mod poly;
pub mod random;
mod suite;

pub use algebra::{central_idempotents, matrix_unit, matrix_units, tensor_end, FinDimAlgebra, IdempotentFamily};
pub use functors::*;
pub use module::{hom_dim, hom_space, is_isomorphic, AlgebraModule, Simplicity};
pub use poly::{minimal_polynomial, Poly};
pub use suite::{run_suite, SuiteReport, Tally};
