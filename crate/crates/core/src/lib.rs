//! Finite group kernel for Chermak–Delgado analysis.
//!
//! Groups are dense multiplication tables ([`group::FiniteGroup`]);
//! subgroups are bitsets over element indices ([`group::Subgroup`]). On top
//! of that sit the named constructors ([`families`]), the full subgroup
//! lattice ([`lattice`]), the measure `H ↦ |H|·|C_G(H)|` with its maximal
//! fiber and the centralizer lattice ([`analysis`]), and a small textual
//! group language ([`expr`]).

pub mod analysis;
pub mod bitset;
pub mod error;
pub mod expr;
pub mod families;
pub mod field;
pub mod group;
pub mod lattice;
pub mod perm;

pub use error::{Error, ErrorClass, Result};
pub use group::{close_generators, Elem, FiniteGroup, Limits, Subgroup};
pub use lattice::{PosetSelection, SubgroupLattice};
