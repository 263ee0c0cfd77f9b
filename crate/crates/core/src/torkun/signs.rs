use crate::chaincx::{connecting_general, connecting_lambek, homology, homology_map_at, ChainComplex, ComplexMorphism, ComplexSes};
use crate::error::{Error, Result};
use crate::fgmod::is_flat;
use crate::thc::{sigma_translate, tensor_chain_map, tensor_complex, TensorComplex};

use super::gamma::reidentify;

/// `(T(C′,u), T(C′,v))` for a sequence `D ↣ C ↠ E`.
pub fn tensor_ses(cp: &ChainComplex, ses: &ComplexSes) -> Result<(TensorComplex, TensorComplex, TensorComplex, ComplexSes)> {
    let (u, v) = (&ses.left, &ses.right);
    let td = tensor_complex(cp, u.source())?;
    let tc = tensor_complex(cp, u.target())?;
    let te = tensor_complex(cp, v.target())?;
    let id = ComplexMorphism::identity(cp);
    let tu = tensor_chain_map(&td, &tc, &id, u)?;
    let tv = tensor_chain_map(&tc, &te, &id, v)?;
    let s = ComplexSes::new(tu, tv)?;
    Ok((td, tc, te, s))
}

fn check_outer(ses: &ComplexSes) -> Result<()> {
    let (d, e) = (ses.left.source(), ses.right.target());
    if !d.has_zero_differential() || !e.has_zero_differential() {
        return Err(Error::Precondition("outer complexes must have zero differential".into()));
    }
    if !e.degrees().all(|n| is_flat(&e.term(n))) {
        return Err(Error::Precondition("right complex must be degreewise flat".into()));
    }
    Ok(())
}

/// Both sides of `∂(T(C′,u),T(C′,v)) = Σ(C′,D) T(C′,∂(u,v))` as chain maps
/// `T(C′,E) → T(C′,D)(−1)`.
#[derive(Clone, Debug)]
pub struct SignIdentity {
    pub lhs: ComplexMorphism,
    pub rhs: ComplexMorphism,
}

impl SignIdentity {
    pub fn holds(&self) -> bool {
        self.lhs.equals(&self.rhs)
    }
}

/// For `C′` with zero differential.
pub fn connecting_sign_identity(cp: &ChainComplex, ses: &ComplexSes) -> Result<SignIdentity> {
    if !cp.has_zero_differential() {
        return Err(Error::Precondition("first complex must have zero differential".into()));
    }
    check_outer(ses)?;
    let d = ses.left.source();
    let (_, _, te, tses) = tensor_ses(cp, ses)?;
    let lhs = connecting_lambek(&tses)?.connecting;
    let del = connecting_lambek(ses)?.connecting;
    let t_shift = tensor_complex(cp, del.target())?;
    let t_del = tensor_chain_map(&te, &t_shift, &ComplexMorphism::identity(cp), &del)?;
    let sigma = sigma_translate(cp, d, -1)?.forward;
    let rhs = sigma.after(&t_del);
    Ok(SignIdentity { lhs, rhs })
}

/// `∂(T(C′,u),T(C′,v)) = H(Σ(C′,D)) H(T(C′,∂(u,v)))` on homology, for arbitrary `C′`.
/// Returns the degrees in which the identity fails.
pub fn connecting_homology_identity(cp: &ChainComplex, ses: &ComplexSes) -> Result<Vec<i64>> {
    check_outer(ses)?;
    let d = ses.left.source();
    let (_, _, te, tses) = tensor_ses(cp, ses)?;
    let conn = connecting_general(&tses)?;
    let del = connecting_lambek(ses)?.connecting;
    let t_shift = tensor_complex(cp, del.target())?;
    let t_del = tensor_chain_map(&te, &t_shift, &ComplexMorphism::identity(cp), &del)?;
    let sigma = sigma_translate(cp, d, -1)?.forward;
    let (h_shift, h_sigma_t) = (homology(&t_shift.complex), homology(sigma.target()));
    let mut failures = Vec::new();
    for (&n, lhs) in &conn.maps {
        let a = homology_map_at(&t_del, &conn.he, &h_shift, n)?;
        let b = homology_map_at(&sigma, &h_shift, &h_sigma_t, n)?;
        let back = reidentify(&h_sigma_t.at(n), &conn.hd.at(n - 1))?;
        let rhs = back.after(&b).after(&a);
        if !rhs.equals(lhs) {
            failures.push(n);
        }
    }
    Ok(failures)
}

/// The sequence `Z(C) ↣ C ↠ B(C)(−1)`.
pub fn cycles_sequence(c: &ChainComplex) -> Result<ComplexSes> {
    let h = homology(c);
    ComplexSes::new(h.j(), h.delta())
}
