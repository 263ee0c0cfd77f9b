use std::collections::BTreeMap;

use crate::chaincx::{odd, ChainComplex, ComplexMorphism, GradedMap};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::fgmod::{FgModule, HomModule, ModMorphism};

use super::hom::{homgr, unit_vectors, HomComplex, Mode};
use super::tensor::TensorComplex;

/// `u♭: A′ → H(A, A″)` for `u: T(A′,A) → A″` given by its matrix; `h = H(A, A″)`.
pub fn flat_hom(u: &IntMatrix, left: &FgModule, h: &HomModule) -> Result<ModMorphism> {
    let (nl, nr) = (left.num_generators(), h.source.num_generators());
    let mut cols = Vec::with_capacity(nl);
    for i in 0..nl {
        let m = u.block(0, i * nr, u.rows(), nr);
        cols.push(h.coords(&ModMorphism::new(&h.source, &h.target, m)?)?);
    }
    ModMorphism::new(left, &h.module, IntMatrix::from_columns(h.module.num_generators(), &cols))
}

/// `v♯: T(A′,A) → A″` for `v: A′ → H(A, A″)`, as a matrix.
pub fn sharp_hom(v: &ModMorphism, h: &HomModule) -> IntMatrix {
    let (nl, nr) = (v.source().num_generators(), h.source.num_generators());
    let mut u = IntMatrix::zeros(h.target.num_generators(), nl * nr);
    for i in 0..nl {
        u.set_block(0, i * nr, h.to_morphism(&v.matrix().column(i)).matrix());
    }
    u
}

/// `u♭: A → C(A′, A″)` for `u: T(A′,A) → A″`; `h = H(A′, A″)`.
pub fn flat_cotensor(u: &IntMatrix, right: &FgModule, h: &HomModule) -> Result<ModMorphism> {
    let (nl, nr) = (h.source.num_generators(), right.num_generators());
    let mut cols = Vec::with_capacity(nr);
    for j in 0..nr {
        let m = u.select_cols(&(0..nl).map(|i| i * nr + j).collect::<Vec<_>>());
        cols.push(h.coords(&ModMorphism::new(&h.source, &h.target, m)?)?);
    }
    ModMorphism::new(right, &h.module, IntMatrix::from_columns(h.module.num_generators(), &cols))
}

/// `w♯: T(A′,A) → A″` for `w: A → C(A′, A″)`, as a matrix.
pub fn sharp_cotensor(w: &ModMorphism, h: &HomModule) -> IntMatrix {
    let (nl, nr) = (h.source.num_generators(), w.source().num_generators());
    let mut u = IntMatrix::zeros(h.target.num_generators(), nl * nr);
    for j in 0..nr {
        let m = h.to_morphism(&w.matrix().column(j));
        for i in 0..nl {
            for r in 0..u.rows() {
                u.set(r, i * nr + j, m.matrix().get(r, i).clone());
            }
        }
    }
    u
}

fn check_hom(tc: &TensorComplex, hc: &HomComplex) -> Result<()> {
    if hc.source != tc.right {
        return Err(Error::Shape("Hom complex does not match the tensor factor".into()));
    }
    Ok(())
}

fn check_cotensor(tc: &TensorComplex, kc: &HomComplex) -> Result<()> {
    if kc.source != tc.left {
        return Err(Error::Shape("cotensor complex does not match the tensor factor".into()));
    }
    Ok(())
}

/// `π_p v_n = (−1)^{s(n,p)} u♭_{n,p}` for a graded map `u: T(C′,C) → C″` of degree `k`.
pub fn transpose_to_hom<S: Fn(i64, i64) -> bool>(tc: &TensorComplex, hc: &HomComplex, u: &GradedMap, sign: S) -> Result<GradedMap> {
    check_hom(tc, hc)?;
    if u.source != tc.complex || u.target != hc.target {
        return Err(Error::Shape("transpose: map is not out of the tensor complex into the Hom target".into()));
    }
    let k = u.degree;
    let mut comps = BTreeMap::new();
    for n in tc.left.degrees() {
        let src = tc.left.term(n);
        let mut parts = BTreeMap::new();
        for f in hc.factors(n + k) {
            let flat = flat_hom(&tc.restrict(u, n, f.p), &src, &f.hom)?;
            parts.insert(f.p, flat.signed(sign(n, f.p)));
        }
        comps.insert(n, hc.assemble(n + k, &src, &parts));
    }
    GradedMap::new(&tc.left, &hc.complex, k, comps)
}

/// Inverse of [`transpose_to_hom`]: `u_{p,q} = (−1)^{s(p,q)} v♯_{p,q}`.
pub fn transpose_from_hom<S: Fn(i64, i64) -> bool>(tc: &TensorComplex, hc: &HomComplex, v: &GradedMap, sign: S) -> Result<GradedMap> {
    check_hom(tc, hc)?;
    if v.source != tc.left || v.target != hc.complex {
        return Err(Error::Shape("transpose: map is not into the Hom complex".into()));
    }
    let k = v.degree;
    let mut comps = BTreeMap::new();
    for m in tc.complex.degrees() {
        let (src, dst) = (tc.complex.term(m), hc.target.term(m + k));
        let mut mat = IntMatrix::zeros(dst.num_generators(), src.num_generators());
        for s in tc.summands(m) {
            if let Some(f) = hc.factor(s.p + k, s.q) {
                let part = hc.projection(s.p + k, s.q)?.after(&v.component(s.p));
                mat.set_block(0, s.offset, &sharp_hom(&part, &f.hom).signed(sign(s.p, s.q)));
            }
        }
        comps.insert(m, ModMorphism::new(&src, &dst, mat)?);
    }
    GradedMap::new(&tc.complex, &hc.target, k, comps)
}

/// `π_p w_n = (−1)^{s(n,p)} u♭_{p,n}` with `w: C → C(C′,C″)` of the degree of `u`.
pub fn transpose_to_cotensor<S: Fn(i64, i64) -> bool>(tc: &TensorComplex, kc: &HomComplex, u: &GradedMap, sign: S) -> Result<GradedMap> {
    check_cotensor(tc, kc)?;
    if u.source != tc.complex || u.target != kc.target {
        return Err(Error::Shape("transpose: map is not out of the tensor complex into the cotensor target".into()));
    }
    let k = u.degree;
    let mut comps = BTreeMap::new();
    for n in tc.right.degrees() {
        let src = tc.right.term(n);
        let mut parts = BTreeMap::new();
        for f in kc.factors(n + k) {
            let flat = flat_cotensor(&tc.restrict(u, f.p, n), &src, &f.hom)?;
            parts.insert(f.p, flat.signed(sign(n, f.p)));
        }
        comps.insert(n, kc.assemble(n + k, &src, &parts));
    }
    GradedMap::new(&tc.right, &kc.complex, k, comps)
}

/// Inverse of [`transpose_to_cotensor`]: `u_{p,q} = (−1)^{s(q,p)} w♯_{q,p}`.
pub fn transpose_from_cotensor<S: Fn(i64, i64) -> bool>(tc: &TensorComplex, kc: &HomComplex, w: &GradedMap, sign: S) -> Result<GradedMap> {
    check_cotensor(tc, kc)?;
    if w.source != tc.right || w.target != kc.complex {
        return Err(Error::Shape("transpose: map is not into the cotensor complex".into()));
    }
    let k = w.degree;
    let mut comps = BTreeMap::new();
    for m in tc.complex.degrees() {
        let (src, dst) = (tc.complex.term(m), kc.target.term(m + k));
        let mut mat = IntMatrix::zeros(dst.num_generators(), src.num_generators());
        for s in tc.summands(m) {
            if let Some(f) = kc.factor(s.q + k, s.p) {
                let part = kc.projection(s.q + k, s.p)?.after(&w.component(s.q));
                mat.set_block(0, s.offset, &sharp_cotensor(&part, &f.hom).signed(sign(s.q, s.p)));
            }
        }
        comps.insert(m, ModMorphism::new(&src, &dst, mat)?);
    }
    GradedMap::new(&tc.complex, &kc.target, k, comps)
}

fn standard(kc: &HomComplex) -> Result<()> {
    if kc.mode != Mode::Standard {
        return Err(Error::Precondition("the standard adjunction needs the standard cotensor complex".into()));
    }
    Ok(())
}

/// `u: T(C′,C) → C″` to `v: C′ → H(C,C″)`, `v_{n,p} = u♭_{n,p}`.
pub fn adj_tensor_hom(tc: &TensorComplex, hc: &HomComplex, u: &ComplexMorphism) -> Result<ComplexMorphism> {
    ComplexMorphism::from_graded(transpose_to_hom(tc, hc, u.graded(), |_, _| false)?)
}

pub fn adj_hom_tensor(tc: &TensorComplex, hc: &HomComplex, v: &ComplexMorphism) -> Result<ComplexMorphism> {
    ComplexMorphism::from_graded(transpose_from_hom(tc, hc, v.graded(), |_, _| false)?)
}

/// `u: T(C′,C) → C″` to `w: C → C(C′,C″)`, `w_{n,p} = (−1)^{np} u♭_{p,n}`.
pub fn adj_tensor_cotensor(tc: &TensorComplex, kc: &HomComplex, u: &ComplexMorphism) -> Result<ComplexMorphism> {
    standard(kc)?;
    ComplexMorphism::from_graded(transpose_to_cotensor(tc, kc, u.graded(), |n, p| odd(n * p))?)
}

pub fn adj_cotensor_tensor(tc: &TensorComplex, kc: &HomComplex, w: &ComplexMorphism) -> Result<ComplexMorphism> {
    standard(kc)?;
    ComplexMorphism::from_graded(transpose_from_cotensor(tc, kc, w.graded(), |n, p| odd(n * p))?)
}

/// `Θ: Homgr(T(C′,C), C″) ≅ Homgr(C′, H(C,C″))` and its inverse.
#[derive(Clone, Debug)]
pub struct EnrichedAdjunction {
    pub source: HomComplex,
    pub target: HomComplex,
    pub theta: ComplexMorphism,
    pub inverse: ComplexMorphism,
}

fn degreewise<F>(src: &HomComplex, dst: &HomComplex, op: F) -> Result<ComplexMorphism>
where
    F: Fn(&GradedMap) -> Result<GradedMap>,
{
    let mut comps = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&src.complex, &dst.complex) {
        let mut cols = Vec::new();
        for e in unit_vectors(src.complex.term(n).num_generators()) {
            cols.push(dst.coords(&op(&src.to_graded(n, &e))?)?);
        }
        let m = IntMatrix::from_columns(dst.complex.term(n).num_generators(), &cols);
        comps.insert(n, ModMorphism::new(&src.complex.term(n), &dst.complex.term(n), m)?);
    }
    ComplexMorphism::new(&src.complex, &dst.complex, comps)
}

pub fn enriched_adjunction(tc: &TensorComplex, hc: &HomComplex) -> Result<EnrichedAdjunction> {
    let source = homgr(&tc.complex, &hc.target)?;
    let target = homgr(&tc.left, &hc.complex)?;
    let theta = degreewise(&source, &target, |u| transpose_to_hom(tc, hc, u, |_, _| false))?;
    let inverse = degreewise(&target, &source, |v| transpose_from_hom(tc, hc, v, |_, _| false))?;
    Ok(EnrichedAdjunction { source, target, theta, inverse })
}
