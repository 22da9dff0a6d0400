//! Finite Coxeter groups and their Solomon descent algebras, computed over
//! exact rationals.

pub mod algebra;
pub mod automorphisms;
pub mod cartan;
pub mod coxeter;
pub mod error;
pub mod linalg;
pub mod morphisms;
pub mod roots;
pub mod shapes;
pub mod subset;

pub use algebra::{Basis, DescentAlgebra, DescentVector, LoewyProfile, StructureConstants, TauVector};
pub use cartan::{CartanType, Irreducible};
pub use coxeter::{BuildOptions, CoxeterSystem, GroupElement};
pub use error::{Error, Result};
pub use subset::Subset;
