//! Finitely generated modules over ℤ and ℤ/pᵏ: limits and colimits, tensor, Hom,
//! lifting problems and the flat/injective decision procedures.

mod hom;
mod module;
mod morphism;
mod ops;
mod system;
mod tensor_seq;

pub use hom::{
    ext1, has_lift, has_retraction, has_section, hom_module, hom_morphism, is_flat, is_injective_object, power, precompose_on_powers,
    preimage_element, tensor, tensor_morphism, unvectorize, vectorize, HomModule,
};
pub use module::{describe_factors, FgModule, Ring};
pub use morphism::ModMorphism;
pub use ops::{
    cokernel, column_basis, copairing, direct_sum, factor_through_epi, factor_through_mono, image, image_contained, inverse, is_epi,
    is_exact_at, is_iso, is_mono, kernel, lift_columns, pairing, preimage_lattice, pullback, pushout, section_on_generators, simplify,
    subquotient, Cokernel, DirectSum, Image, Kernel, Pullback, Pushout, SesWitness, Simplified, Subquotient,
};
pub use system::HomSystem;
pub use tensor_seq::{box_product, union_image_sequence, UnionImage};
