//! Exact linear algebra over ℚ and prime fields, weak distributive laws
//! between finite-dimensional algebras, iterated weak wreath products and
//! the observable algebras of weak-bialgebra spin chains.
//!
//! Everything is computed with exact field arithmetic; every identity the
//! library claims is checked as literal matrix equality, never up to a
//! tolerance. The layers are:
//!
//! * [`field`] / [`matrix`] — exact scalars and sparse matrices with rank,
//!   reduced row echelon form and idempotent splitting;
//! * [`linmap`] — tensor-shaped linear maps (Kronecker products, flips);
//! * [`algebra`] — algebras, coalgebras and demimonads given by structure
//!   constants, with axiom checkers and idempotent splitting;
//! * [`bialgebra`] — weak bialgebras, their duals, canonical actions and the
//!   canonical weak distributive laws of a dual pair;
//! * [`wdl`] — weak distributive laws between two monads, the induced
//!   idempotent, the binary weak wreath product and binary factorization;
//! * [`wdln`] — families of pairwise-compatible laws, the fusion functors,
//!   the global idempotent, the associative iterated wreath product, the
//!   monad cube and the n-ary factorization checker;
//! * [`spinchain`] — the alternating H/Ĥ chain built from a weak bialgebra
//!   and its observable algebra.

pub mod algebra;
pub mod bialgebra;
pub mod field;
pub mod linmap;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod spinchain;
pub mod wdl;
pub mod wdln;

pub use algebra::{Algebra, Coalgebra, Demimonad};
pub use field::{FieldDesc, Scalar};
pub use linmap::{LinMap, Space};
pub use matrix::Matrix;
pub use report::{CheckItem, CheckReport};
