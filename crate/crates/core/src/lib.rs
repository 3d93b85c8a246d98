//! Spectral block systems of digraphs invariant under a transitive group with
//! a semiregular abelian subgroup.

pub mod abelian;
pub mod automorphism;
pub mod bicayley;
pub mod digraph;
pub mod error;
pub mod gp;
pub mod linalg;
pub mod partition;
pub mod perm;
pub mod roots;
pub mod spectral;
pub mod symbol;

pub use error::{Error, Result};
