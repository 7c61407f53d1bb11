//! Exact machinery for equiangular lines at angle `arccos(1/3)`.
//!
//! A set of `n` equiangular lines with common angle `arccos(1/3)` is encoded by
//! a Seidel matrix `S` of order `n` whose largest eigenvalue is at most `3`.
//! Such matrices are in correspondence with root systems: the cone over the
//! graph of `S` has a Gram realisation `A + 2I` by roots of an `A`/`D`/`E`
//! lattice. This crate builds those root systems exactly, acts on them with
//! Weyl groups realised as permutation groups, and counts switching classes.
//!
//! Everything here is `no_std` + `alloc` and free of floating point:
//!
//! - [`linalg`]: arbitrary-precision rank, determinant, characteristic
//!   polynomial, positive-semidefiniteness and Hermite normal form.
//! - [`graph`] and [`canon`]: graphs on at most 32 vertices, switching,
//!   cones, and a canonical key per switching class.
//! - [`lattice`]: root systems `A_n`, `D_n`, `E_6`, `E_7`, `E_8` in doubled
//!   coordinates, reflections, pair-classes and sublattice tests.
//! - [`perm`] and [`orbits`]: Schreier–Sims stabilizer chains, Burnside
//!   subset counting and minimal-image orbit transversals.
//! - [`enumeration`]: the counting pipelines built on all of the above.
#![no_std]

extern crate alloc;

pub mod canon;
pub mod enumeration;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod orbits;
pub mod perm;

pub use canon::{canonical_key, SwitchingClassKey};
pub use graph::Graph;
pub use lattice::{LatticeFamily, LatticeSpec, PairClass, RootVector};
pub use linalg::{IntMatrix, IntPolynomial};
pub use perm::{PermGroup, Permutation};
