//! Permutation-group engine for finding small set-stabilizers in finite
//! solvable permutation groups.
//!
//! Given a solvable group `G` acting on `Ω = {0, …, n−1}`, the [`constructor`]
//! module produces a subset `Δ ⊆ Ω` whose setwise stabilizer `S` has `O²(S)`
//! a (possibly trivial) elementary abelian 3-group, together with a second
//! subset of strictly larger size, and checks every produced set from
//! scratch. The remaining modules supply the machinery: exact permutation
//! arithmetic, stabilizer chains, block systems, the catalog of affine and
//! wreath groups, counting bounds on the power set, and a small
//! group-expression language.
//!
//! The crate is `no_std` and only needs `alloc`. Degrees are limited to
//! [`MAX_DEGREE`] points so that subsets fit in a machine word.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod blocks;
pub mod bounds;
pub mod catalog;
pub mod census;
pub mod constructor;
mod error;
pub mod field;
pub mod group;
pub mod perm;
pub mod speclang;

pub use error::{Error, Result};
pub use group::{Limits, PermGroup, StructureReport};
pub use perm::{CycleData, Permutation, PointSet, MAX_DEGREE};
