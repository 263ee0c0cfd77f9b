//! Bounded chain complexes: translation, homology, cones and cylinders, homotopies and
//! connecting morphisms.

mod complex;
mod cone;
mod connecting;
mod homology;
mod homotopy;

pub use complex::{complex_sum, disk, odd, sphere, ChainComplex, ComplexMorphism, ComplexSum, GradedMap};
pub use cone::{cone, cylinder, Cone, Cylinder};
pub use connecting::{connecting_general, connecting_lambek, long_sequence_is_exact, ComplexSes, Connecting, LambekConnecting};
pub use homology::{degree_homology, homology, homology_map, homology_map_at, is_exact, is_quasi_iso, DegreeHomology, Homology};
pub use homotopy::{are_homotopic, is_contractible, Homotopy};
