//! Two-qutrit entanglement: density matrices, partial transpose, negativity.
//!
//! Single-particle levels are indexed `↑ = 0`, `0 = 1`, `↓ = 2`; the product
//! index of `|αβ>` is `3α + β`.

mod density;
mod eigen;
mod negativity;
mod rdm;
mod states;
mod sweep;

pub use density::{partial_transpose, BasisOrder, TwoQuditDensity, TwoQuditMatrix, HERMITIAN_TOL};
pub use eigen::{hermitian_eigenvalues, jacobi_eigen, symmetric_eigenvalues, JacobiResult};
pub use negativity::{
    block_structure_residual, negativity, schmidt_coefficients, schmidt_negativity_oracle, BlockDecomposition,
    NegativityReport, BLOCK_TOL, NEGATIVE_EIGENVALUE_CUTOFF, PT_BLOCKS, RHO_BLOCKS,
};
pub use rdm::{brute_force_rdm, dicke_two_particle_rdm, equal_probability_expansion, Correlators, BRUTE_FORCE_MAX_N};
pub use states::{named_two_qutrit_state, NamedState, TwoQutritState};
pub use sweep::{
    check_fig1_shape, check_fig2_shape, fig1_data, fig2_data, negativity_at, negativity_sweep, Fig2Series,
    StateFamily, SweepPoint, FIG1_SIZES, FIG2_SIZES,
};
