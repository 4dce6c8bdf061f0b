//! Exact Schubert calculus on permutations.

pub mod enumcount;
pub mod geom;
pub mod perm;
pub mod poly;
pub mod schubert;
pub mod tableau;
pub mod verify;
pub mod wa;

pub use perm::{Permutation, PermError};
