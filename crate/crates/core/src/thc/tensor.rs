use std::collections::BTreeMap;

use crate::chaincx::{cone, odd, ChainComplex, ComplexMorphism, Cone, GradedMap};
use crate::error::{Error, Result};
use crate::exactlin::{Int, IntMatrix};
use crate::fgmod::{direct_sum, tensor, FgModule, ModMorphism, Ring};

/// The block `T(C′_p, C_q)` of `T(C′,C)_{p+q}`.
#[derive(Clone, Debug)]
pub struct Summand {
    pub p: i64,
    pub q: i64,
    pub offset: usize,
    pub module: FgModule,
}

/// `T(C′,C)` with `T_n = ⊕_{p+q=n} T(C′_p, C_q)`, summands in ascending `p`.
#[derive(Clone, Debug)]
pub struct TensorComplex {
    pub complex: ChainComplex,
    pub left: ChainComplex,
    pub right: ChainComplex,
    summands: BTreeMap<i64, Vec<Summand>>,
}

pub(crate) fn normalized(m: FgModule) -> FgModule {
    if m.num_generators() == 0 {
        FgModule::zero(m.ring())
    } else {
        m
    }
}

pub(crate) fn sum_module(ring: Ring, modules: &[FgModule]) -> FgModule {
    if modules.iter().all(|m| m.num_generators() == 0) {
        FgModule::zero(ring)
    } else {
        direct_sum(modules).expect("same ring").module
    }
}

pub(crate) fn check_ring(a: &ChainComplex, b: &ChainComplex) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    Ok(())
}

pub fn tensor_complex(cp: &ChainComplex, c: &ChainComplex) -> Result<TensorComplex> {
    check_ring(cp, c)?;
    let ring = c.ring();
    let mut summands = BTreeMap::new();
    if !cp.is_empty_support() && !c.is_empty_support() {
        for n in cp.lo() + c.lo()..=cp.hi() + c.hi() {
            let mut list = Vec::new();
            let mut offset = 0;
            for p in cp.lo().max(n - c.hi())..=cp.hi().min(n - c.lo()) {
                let module = normalized(tensor(&cp.term(p), &c.term(n - p))?);
                let k = module.num_generators();
                list.push(Summand { p, q: n - p, offset, module });
                offset += k;
            }
            summands.insert(n, list);
        }
    }
    let terms: BTreeMap<i64, FgModule> =
        summands.iter().map(|(&n, l)| (n, sum_module(ring, &l.iter().map(|s| s.module.clone()).collect::<Vec<_>>()))).collect();
    let mut diffs = BTreeMap::new();
    for (&n, list) in &summands {
        let Some(below) = summands.get(&(n - 1)) else { continue };
        let (src, dst) = (&terms[&n], &terms[&(n - 1)]);
        let mut m = IntMatrix::zeros(dst.num_generators(), src.num_generators());
        for s in list {
            let (p, q) = (s.p, s.q);
            if let Some(t) = below.iter().find(|t| t.p == p - 1) {
                let b = cp.d(p).matrix().kron(&IntMatrix::identity(c.term(q).num_generators()));
                m.set_block(t.offset, s.offset, &b);
            }
            if let Some(t) = below.iter().find(|t| t.p == p) {
                let b = IntMatrix::identity(cp.term(p).num_generators()).kron(c.d(q).matrix());
                m.set_block(t.offset, s.offset, &b.signed(odd(p)));
            }
        }
        diffs.insert(n, ModMorphism::new_unchecked(src, dst, m));
    }
    let complex = ChainComplex::from_maps(ring, &terms, &diffs)?;
    Ok(TensorComplex { complex, left: cp.clone(), right: c.clone(), summands })
}

impl TensorComplex {
    pub fn summands(&self, n: i64) -> &[Summand] {
        self.summands.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn summand(&self, p: i64, q: i64) -> Option<&Summand> {
        self.summands(p + q).iter().find(|s| s.p == p)
    }

    fn block_module(&self, p: i64, q: i64) -> FgModule {
        self.summand(p, q).map(|s| s.module.clone()).unwrap_or_else(|| FgModule::zero(self.complex.ring()))
    }

    /// `σ_{p,q}: T(C′_p, C_q) → T_{p+q}`
    pub fn sigma(&self, p: i64, q: i64) -> ModMorphism {
        let term = self.complex.term(p + q);
        let src = self.block_module(p, q);
        let mut m = IntMatrix::zeros(term.num_generators(), src.num_generators());
        if let Some(s) = self.summand(p, q) {
            m.set_block(s.offset, 0, &IntMatrix::identity(src.num_generators()));
        }
        ModMorphism::new_unchecked(&src, &term, m)
    }

    /// The projection `T_{p+q} → T(C′_p, C_q)`.
    pub fn projection(&self, p: i64, q: i64) -> ModMorphism {
        let term = self.complex.term(p + q);
        let dst = self.block_module(p, q);
        let mut m = IntMatrix::zeros(dst.num_generators(), term.num_generators());
        if let Some(s) = self.summand(p, q) {
            m.set_block(0, s.offset, &IntMatrix::identity(dst.num_generators()));
        }
        ModMorphism::new_unchecked(&term, &dst, m)
    }

    /// Restriction `u_{p,q} = u_{p+q+k} ∘ σ_{p,q}` of a graded map out of `T`, as a matrix.
    pub fn restrict(&self, u: &GradedMap, p: i64, q: i64) -> IntMatrix {
        let comp = u.component(p + q);
        match self.summand(p, q) {
            Some(s) => comp.matrix().block(0, s.offset, comp.matrix().rows(), s.module.num_generators()),
            None => IntMatrix::zeros(comp.matrix().rows(), 0),
        }
    }
}

/// `μ(f′⊗f)`: `σ_{x,y} ↦ (−1)^{qx} σ_{x+p,y+q} T(f′_x, f_y)` for `f′` of degree `p` and `f` of
/// degree `q`.
pub fn tensor_graded(src: &TensorComplex, dst: &TensorComplex, fp: &GradedMap, f: &GradedMap) -> Result<GradedMap> {
    if fp.source != src.left || fp.target != dst.left || f.source != src.right || f.target != dst.right {
        return Err(Error::Shape("tensor_graded: maps do not match the tensor complexes".into()));
    }
    let (p, q) = (fp.degree, f.degree);
    let mut comps = BTreeMap::new();
    for n in src.complex.degrees() {
        let (s_term, t_term) = (src.complex.term(n), dst.complex.term(n + p + q));
        let mut m = IntMatrix::zeros(t_term.num_generators(), s_term.num_generators());
        for s in src.summands(n) {
            if let Some(t) = dst.summand(s.p + p, s.q + q) {
                let b = fp.component(s.p).matrix().kron(f.component(s.q).matrix());
                m.set_block(t.offset, s.offset, &b.signed(odd(q * s.p)));
            }
        }
        comps.insert(n, ModMorphism::new_unchecked(&s_term, &t_term, m));
    }
    GradedMap::new(&src.complex, &dst.complex, p + q, comps)
}

/// `T(u′, u)` for chain maps.
pub fn tensor_chain_map(src: &TensorComplex, dst: &TensorComplex, up: &ComplexMorphism, u: &ComplexMorphism) -> Result<ComplexMorphism> {
    ComplexMorphism::from_graded(tensor_graded(src, dst, up.graded(), u.graded())?)
}

/// The three sides of the Leibniz identity `D μ(f′⊗f) = μ(Df′⊗f) + (−1)^p μ(f′⊗Df)`.
#[derive(Clone, Debug)]
pub struct Leibniz {
    pub m: GradedMap,
    pub n: GradedMap,
    pub p: GradedMap,
}

impl Leibniz {
    pub fn holds(&self) -> bool {
        self.m.add(&self.n).is_ok_and(|s| s.equals(&self.p))
    }
}

pub fn leibniz(src: &TensorComplex, dst: &TensorComplex, fp: &GradedMap, f: &GradedMap) -> Result<Leibniz> {
    let p = tensor_graded(src, dst, fp, f)?.boundary();
    let m = tensor_graded(src, dst, &fp.boundary(), f)?;
    let n = tensor_graded(src, dst, fp, &f.boundary())?;
    let n = if odd(fp.degree) { n.neg() } else { n };
    Ok(Leibniz { m, n, p })
}

/// `Σ: T(C′, C(r)) ≅ T(C′,C)(r)` and its inverse.
#[derive(Clone, Debug)]
pub struct TranslationIso {
    pub forward: ComplexMorphism,
    pub inverse: ComplexMorphism,
}

fn signed_identity_blocks(src: &TensorComplex, dst: &TensorComplex, src_n: i64, shift: i64, sign: impl Fn(&Summand) -> bool) -> IntMatrix {
    let (s_term, t_term) = (src.complex.term(src_n), dst.complex.term(src_n + shift));
    let mut m = IntMatrix::zeros(t_term.num_generators(), s_term.num_generators());
    for s in src.summands(src_n) {
        if let Some(t) = dst.summand(s.p, s.q + shift) {
            let k = s.module.num_generators();
            m.set_block(t.offset, s.offset, &IntMatrix::identity(k).signed(sign(s)));
        }
    }
    m
}

pub fn sigma_translate(cp: &ChainComplex, c: &ChainComplex, r: i64) -> Result<TranslationIso> {
    let shifted = tensor_complex(cp, &c.translate(r))?;
    let base = tensor_complex(cp, c)?;
    let target = base.complex.translate(r);
    let mut fwd = BTreeMap::new();
    let mut inv = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&shifted.complex, &target) {
        let m = signed_identity_blocks(&shifted, &base, n, r, |s| odd(s.p * r));
        fwd.insert(n, ModMorphism::new_unchecked(&shifted.complex.term(n), &target.term(n), m));
        let m = signed_identity_blocks(&base, &shifted, n + r, -r, |s| odd(s.p * r));
        inv.insert(n, ModMorphism::new_unchecked(&target.term(n), &shifted.complex.term(n), m));
    }
    Ok(TranslationIso {
        forward: ComplexMorphism::new(&shifted.complex, &target, fwd)?,
        inverse: ComplexMorphism::new(&target, &shifted.complex, inv)?,
    })
}

/// `Σ(C′,u) = Σ(C′,D) ⊕ 1: T(C′, Con(u)) → Con(T(C′,u))` together with both rows of the
/// comparison diagram.
#[derive(Clone, Debug)]
pub struct ConeTensorIso {
    pub iso: ComplexMorphism,
    pub tensor_of_cone: TensorComplex,
    pub cone_of_tensor: Cone,
    pub source_cone: Cone,
    /// `T(C′, π)`
    pub tensor_pi: ComplexMorphism,
    /// `T(C′, δ)`
    pub tensor_delta: ComplexMorphism,
    /// `Σ(C′, D): T(C′, D(−1)) → T(C′, D)(−1)`
    pub sigma: ComplexMorphism,
}

impl ConeTensorIso {
    /// Both squares of the diagram commute.
    pub fn diagram_commutes(&self) -> bool {
        let left = self.iso.after(&self.tensor_pi).equals(&self.cone_of_tensor.pi);
        let right = self.cone_of_tensor.delta.after(&self.iso).equals(&self.sigma.after(&self.tensor_delta));
        left && right
    }
}

pub fn cone_tensor_iso(cp: &ChainComplex, u: &ComplexMorphism) -> Result<ConeTensorIso> {
    let (d, c) = (u.source(), u.target());
    let con = cone(u)?;
    let tl = tensor_complex(cp, &con.complex)?;
    let td = tensor_complex(cp, d)?;
    let tc = tensor_complex(cp, c)?;
    let id = ComplexMorphism::identity(cp);
    let tu = tensor_chain_map(&td, &tc, &id, u)?;
    let right = cone(&tu)?;
    let mut comps = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&tl.complex, &right.complex) {
        let (s_term, t_term) = (tl.complex.term(n), right.complex.term(n));
        let d_part = td.complex.term(n - 1).num_generators();
        let mut m = IntMatrix::zeros(t_term.num_generators(), s_term.num_generators());
        for s in tl.summands(n) {
            let (p, q) = (s.p, s.q);
            let (np, nd, nc) = (cp.term(p).num_generators(), d.term(q - 1).num_generators(), c.term(q).num_generators());
            let sign = if odd(p) { Int::from(-1) } else { Int::from(1) };
            for i in 0..np {
                let base = s.offset + i * (nd + nc);
                if let Some(t) = td.summand(p, q - 1) {
                    for j in 0..nd {
                        m.set(t.offset + i * nd + j, base + j, sign.clone());
                    }
                }
                if let Some(t) = tc.summand(p, q) {
                    for j in 0..nc {
                        m.set(d_part + t.offset + i * nc + j, base + nd + j, Int::from(1));
                    }
                }
            }
        }
        comps.insert(n, ModMorphism::new_unchecked(&s_term, &t_term, m));
    }
    let iso = ComplexMorphism::new(&tl.complex, &right.complex, comps)?;
    let tensor_pi = tensor_chain_map(&tc, &tl, &id, &con.pi)?;
    let t_shift = tensor_complex(cp, con.delta.target())?;
    let tensor_delta = tensor_chain_map(&tl, &t_shift, &id, &con.delta)?;
    let sigma = sigma_translate(cp, d, -1)?.forward;
    Ok(ConeTensorIso { iso, tensor_of_cone: tl, cone_of_tensor: right, source_cone: con, tensor_pi, tensor_delta, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::{homology, is_exact, sphere};
    use crate::fgmod::Ring;

    fn z() -> FgModule {
        FgModule::free(Ring::Integers, 1)
    }

    fn doubling() -> ChainComplex {
        ChainComplex::new(Ring::Integers, 0, vec![z(), z()], vec![ModMorphism::scalar(&z(), 2)]).unwrap()
    }

    #[test]
    fn tensor_of_two_doublings() {
        let c = doubling();
        let t = tensor_complex(&c, &c).unwrap();
        assert_eq!(t.complex.d(2).matrix(), &IntMatrix::from_rows(&[vec![2], vec![-2]]));
        assert_eq!(t.complex.d(1).matrix(), &IntMatrix::from_rows(&[vec![2, 2]]));
        // Oracle: H_1 = ker(2 2)/im(2,-2) = ⟨(1,-1)⟩/⟨(2,-2)⟩ and H_0 = Z/2.
        let h = homology(&t.complex);
        assert!(h.module(2).is_zero_module());
        assert_eq!(h.module(1).canonical_form(), vec![Int::from(2)]);
        assert_eq!(h.module(0).canonical_form(), vec![Int::from(2)]);
    }

    #[test]
    fn tensor_with_a_sphere_is_termwise() {
        let a = FgModule::cyclic(Ring::Integers, 3);
        let c = doubling();
        let t = tensor_complex(&sphere(0, &a), &c).unwrap();
        for n in c.degrees() {
            assert!(t.complex.term(n).is_isomorphic(&tensor(&a, &c.term(n)).unwrap()));
        }
        assert_eq!(t.complex.d(1).matrix(), &IntMatrix::from_rows(&[vec![2]]));
    }

    #[test]
    fn sigma_is_an_isomorphism_with_inverse() {
        let c = doubling();
        for r in -2..=2 {
            let s = sigma_translate(&c, &c, r).unwrap();
            assert!(s.forward.is_iso());
            assert!(s.inverse.after(&s.forward).equals(&ComplexMorphism::identity(s.forward.source())));
            assert!(s.forward.after(&s.inverse).equals(&ComplexMorphism::identity(s.forward.target())));
        }
        let s = sigma_translate(&c, &c, 0).unwrap();
        assert!(s.forward.equals(&ComplexMorphism::identity(s.forward.source())));
    }

    #[test]
    fn translation_is_literal_on_the_left() {
        let c = doubling();
        for r in -1..=2 {
            let a = tensor_complex(&c, &c).unwrap().complex.translate(r);
            let b = tensor_complex(&c.translate(r), &c).unwrap().complex;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn cone_iso_of_identity() {
        let c = doubling();
        let k = cone_tensor_iso(&c, &ComplexMorphism::identity(&c)).unwrap();
        assert!(k.iso.is_iso());
        assert!(k.diagram_commutes());
        assert!(is_exact(&k.cone_of_tensor.complex));
        assert!(is_exact(&k.tensor_of_cone.complex));
    }

    #[test]
    fn dg_composition_of_chain_maps_has_no_signs() {
        let c = doubling();
        let t = tensor_complex(&c, &c).unwrap();
        let three = ComplexMorphism::from_fn(&c, &c, |_| ModMorphism::scalar(&z(), 3)).unwrap();
        let g = tensor_chain_map(&t, &t, &three, &three).unwrap();
        for n in t.complex.degrees() {
            let k = t.complex.term(n).num_generators();
            assert_eq!(g.component(n).matrix(), &IntMatrix::scalar(k, &Int::from(9)));
        }
    }
}
