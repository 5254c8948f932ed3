//! Exact tight-binding spectrum and eigenstates of zig-zag triangular
//! graphene billiards with `(N-1)²` sites, checked against dense
//! diagonalization.
//!
//! ```
//! use triangulene::{analytic_spectrum, edge_basis, TrianguleneLattice};
//!
//! let lattice = TrianguleneLattice::build(6)?;
//! let table = analytic_spectrum(6)?;
//! assert_eq!(table.total_states(), 25);
//! assert_eq!(table.zero_modes(), 5);
//! assert_eq!(edge_basis(&lattice)?.states.len(), 5);
//! # Ok::<(), triangulene::Error>(())
//! ```

pub mod bloch;
pub mod edge;
pub mod error;
pub mod export;
pub mod lattice;
pub mod oracle;
pub mod spectrum;
pub mod states;
pub mod svg;
pub mod vecops;
pub mod verify;

pub use bloch::{alpha, dispersion, star, KPoint, Star, StarMember};
pub use edge::{build_seed, edge_basis, edge_labels, project_c3v, EdgeBasis, EdgeLabel, SeedState};
pub use error::{Error, Result};
pub use lattice::{layer_count, rotation_center, SiteIndex, Sublattice, TrianguleneLattice};
pub use oracle::{
    build_hamiltonian, chain_reference, completeness_residual, embedding_check, numerical_spectrum, HamiltonianMatrix,
    NumericalSpectrum, ORACLE_MAX_N,
};
pub use spectrum::{
    analytic_spectrum, index_set, quantized_k, state_counts, verify_diophantine, Band, Branch, QuantumNumbers,
    SpectrumTable, StateLabel,
};
pub use states::{build_periodic_state, extend_state, periodic_basis, StateVector, Window};
pub use verify::{verify, Tolerances, VerifyReport};
