//! symring: exact arithmetic in the group ring of the symmetric group.
//!
//! The crate builds symmetry operators as formal linear combinations of
//! permutations with Gaussian-rational coefficients, transforms them with
//! the blockwise Fourier transform on S_N (Young's natural representation
//! on Specht modules), transfers the star involution to individual blocks
//! without inverse-transforming, and decomposes self-adjoint idempotents
//! into pairwise orthogonal primitive self-adjoint parts. A companion
//! Hilbert-space layer realizes the operators on the spin ring and
//! provides the spin-1/2 Heisenberg Hamiltonians.

pub mod characters;
pub mod coeff;
pub mod dft;
pub mod error;
pub mod group_ring;
pub mod heisenberg;
pub mod idempotent;
pub mod io;
pub mod matrix;
pub mod partition;
pub mod perm;
pub mod star_transfer;
pub mod tableau;
pub mod verify;

pub use coeff::Coefficient;
pub use error::{Error, Result};
pub use group_ring::GroupRingElement;
pub use matrix::CMatrix;
pub use partition::Partition;
pub use perm::Permutation;
pub use tableau::{standard_tableaux, StandardTableau, Tableau};

pub use characters::{
    central_idempotent, character_idempotent, character_value, commutation_idempotent,
    CharacterTable, CommutationSymmetry,
};
pub use dft::{dft, idft, natural_rep, specht_module, BlockSpectrum, SpechtModule};
pub use heisenberg::{
    all_configurations, apply_operator, hamiltonian_matrix, in_annihilator, permute_ket,
    symmetry_class_contains, CouplingSign, HilbertVector, SpinConfiguration,
};
pub use idempotent::{
    decompose_self_adjoint, decompose_self_adjoint_spectral, primitive_from_generator,
    primitive_seed_set, weyl_idempotent, young_symmetrizer, SelfAdjointDecomposition,
    SpectralContext,
};
pub use star_transfer::{
    apply_star_map, build_star_map_basis, build_star_map_direct, compute_plam, transpose_reuse,
    PermBasisSet, StarTransferMap,
};
