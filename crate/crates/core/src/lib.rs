//! Dicke states of spin-s ensembles in the occupation-number representation.

pub mod antisym;
pub mod basis;
pub mod bounds;
pub mod coefficients;
pub mod entanglement;
pub mod error;
pub mod io;
pub mod ladder;
pub mod spin;
pub mod tables;

pub use antisym::{
    antisym_count, check_pair_multiplet, elementary_antisym, enumerate_all_antisym, is_antisymmetric,
    FirstQuantizedState,
};
pub use basis::enumerate_basis;
pub use bounds::{basis_count_paper, compare_with_direct, enumeration_bounds, EnumerationParams};
pub use coefficients::{
    closed_form_coefficient, dicke_expansion, dicke_expansion_with, level_weight, DickeExpansion, WeightConvention,
};
pub use entanglement::{
    brute_force_rdm, dicke_two_particle_rdm, equal_probability_expansion, named_two_qutrit_state, negativity,
    negativity_sweep, partial_transpose, schmidt_negativity_oracle, NegativityReport, StateFamily, TwoQuditDensity,
};
pub use error::{DickeError, Result};
pub use ladder::{apply_lowering, apply_raising, highest_weight, oracle_expansion, total_spin_expectation, RawExpansion};
pub use spin::{format_half, mirror, parse_twice, OccupationVector, SpinSpecies};
pub use tables::{load_golden_dir, verify_tables, TableReport, TABLE_TOL};
