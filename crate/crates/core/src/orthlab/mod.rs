//! Finite-instance checkers for orthogonality, relative flatness, total acyclicity and
//! homotopy orthogonality. Every verdict is relative to the test family it was given.

mod complexes;
mod family;
mod flat;
mod perp;

pub use complexes::{
    degreewise_member, ex_class_member, exact_samples, h_flat_check, homotopy_perp_member, ses_complex, tex_member, tex_member_periodic,
    HFlatVerdict, HomotopyPerp, PeriodicComplex, TexVerdict,
};
pub use family::{enumerate_modules, subgroup_monos, FamilyMono, FiniteModule, TestFamily};
pub use flat::{
    exactness_samples, faithfully_flat_check, lambek_flat_check, relative_flat_check, relative_flat_check_complex, unit_probe,
    FaithfulFlatness, LambekCheck, Pair, RelativeFlatness,
};
pub use perp::{closure_checks, ker_coker_class, right_perp_member, verify_counterexample, ClosureReport, KerCokerWitness, PerpVerdict};
