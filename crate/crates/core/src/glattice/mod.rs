//! Finite groups, their integer lattice representations, and the character
//! lattices attached to a biquadratic extension.

mod group;
mod lattice;

pub use group::{FiniteGroup, Subgroup, MAX_GROUP_ORDER};
pub use lattice::{
    biquadratic_coflasque_lattice, biquadratic_norm_one_lattice, klein_four, permutation_module,
    GLattice, LatticeMap, MAX_LATTICE_RANK,
};
