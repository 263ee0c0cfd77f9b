//! Flat resolutions, Tor, the comparison map `γ: T(H(C′),H(C)) → H(T(C′,C))` and the
//! Künneth sequence.
//!
//! Over ℤ and ℤ/pᵏ every finitely generated flat module is projective, so every module lies in
//! `F^⊥`; flat resolutions are therefore complete. [`ResolutionPair::check`] still verifies it.

mod gamma;
mod kunneth;
mod resolution;
mod signs;
mod tor;

pub use gamma::{
    cycles_map, gamma_is_natural, gamma_morphism, gamma_sigma_square, homology_morphism, reidentify, z_is_natural, z_morphism, Gamma,
    ZMorphism,
};
pub use kunneth::{
    kunneth_report, kunneth_splits, quasi_iso_preservation, quasi_iso_witness, KunnethDegree, KunnethReport, QuasiIsoWitness,
};
pub use resolution::{free_resolution, in_flat_perp, lift_along_resolution, ResolutionCheck, ResolutionPair};
pub use signs::{connecting_homology_identity, connecting_sign_identity, cycles_sequence, tensor_ses, SignIdentity};
pub use tor::{tor, tor_cross_check, tor_from, TorCheck};
