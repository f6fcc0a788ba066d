// Temporary build scaffold; full module map restored as engines land.
pub mod glattice;
pub mod linalg;

mod error;

pub use error::{Error, Result};
pub use glattice::{
    biquadratic_coflasque_lattice, biquadratic_norm_one_lattice, klein_four, permutation_module,
    FiniteGroup, GLattice, LatticeMap, Subgroup,
};
