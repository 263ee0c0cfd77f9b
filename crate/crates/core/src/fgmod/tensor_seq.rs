use crate::error::{Error, Result};

use super::hom::tensor_morphism;
use super::morphism::ModMorphism;
use super::ops::{cokernel, copairing, direct_sum, factor_through_epi, image, is_epi, is_exact_at, kernel, pairing, Image};

/// `Im T(i₁,A₂) ∪ Im T(A₁,i₂) ↣ T(A₁,A₂) ↠ T(B₁,B₂)` for epimorphisms `u₁`, `u₂`.
#[derive(Clone, Debug)]
pub struct UnionImage {
    pub union: Image,
    pub tensor_map: ModMorphism,
}

impl UnionImage {
    pub fn exact(&self) -> bool {
        is_epi(&self.tensor_map) && is_exact_at(&self.union.mono, &self.tensor_map)
    }
}

pub fn union_image_sequence(u1: &ModMorphism, u2: &ModMorphism) -> Result<UnionImage> {
    if !is_epi(u1) || !is_epi(u2) {
        return Err(Error::NotEpi("union image sequence needs epimorphisms".into()));
    }
    let (a1, a2) = (u1.source(), u2.source());
    let i1 = kernel(u1).inclusion;
    let i2 = kernel(u2).inclusion;
    let left = tensor_morphism(&i1, &ModMorphism::identity(a2))?;
    let right = tensor_morphism(&ModMorphism::identity(a1), &i2)?;
    let sum = direct_sum(&[left.source().clone(), right.source().clone()])?;
    let union = image(&copairing(&left, &right, &sum)?);
    Ok(UnionImage { union, tensor_map: tensor_morphism(u1, u2)? })
}

/// `u₁Tu₂: T(A₁,B₂) ∪_{T(A₁,A₂)} T(B₁,A₂) → T(B₁,B₂)`
pub fn box_product(u1: &ModMorphism, u2: &ModMorphism) -> Result<ModMorphism> {
    let (a1, b1, a2, b2) = (u1.source(), u1.target(), u2.source(), u2.target());
    let f = tensor_morphism(&ModMorphism::identity(a1), u2)?;
    let g = tensor_morphism(u1, &ModMorphism::identity(a2))?;
    let sum = direct_sum(&[f.target().clone(), g.target().clone()])?;
    let q = cokernel(&pairing(&f, &g.neg(), &sum)?);
    let to = copairing(&tensor_morphism(u1, &ModMorphism::identity(b2))?, &tensor_morphism(&ModMorphism::identity(b1), u2)?, &sum)?;
    factor_through_epi(&q.projection, &to)
}
