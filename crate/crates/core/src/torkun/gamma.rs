use std::collections::BTreeMap;

use crate::chaincx::{homology, homology_map_at, ChainComplex, ComplexMorphism, DegreeHomology, Homology};
use crate::error::Result;
use crate::fgmod::{copairing, direct_sum, factor_through_epi, factor_through_mono, image, is_epi, is_exact_at, is_mono, ModMorphism};
use crate::thc::{sigma_translate, tensor_chain_map, tensor_complex, TensorComplex};

/// `Z(f)` between the cycle complexes of the given homologies.
pub fn cycles_map(f: &ComplexMorphism, hs: &Homology, ht: &Homology) -> Result<ComplexMorphism> {
    let (zs, zt) = (hs.cycles_complex(), ht.cycles_complex());
    let mut comps = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&zs, &zt) {
        let m = factor_through_mono(&ht.at(n).j, &f.component(n).after(&hs.at(n).j))?;
        comps.insert(n, m.with_ends(&zs.term(n), &zt.term(n))?);
    }
    ComplexMorphism::new(&zs, &zt, comps)
}

/// `H(f)` between the homology complexes of the given homologies.
pub fn homology_morphism(f: &ComplexMorphism, hs: &Homology, ht: &Homology) -> Result<ComplexMorphism> {
    let (a, b) = (hs.homology_complex(), ht.homology_complex());
    let mut comps = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&a, &b) {
        comps.insert(n, homology_map_at(f, hs, ht, n)?.with_ends(&a.term(n), &b.term(n))?);
    }
    ComplexMorphism::new(&a, &b, comps)
}

/// The canonical map between two homology computations of subquotients of the same module
/// with the same cycles and boundaries, e.g. `H_n(C(r))` and `H_{n+r}(C)`.
pub fn reidentify(a: &DegreeHomology, b: &DegreeHomology) -> Result<ModMorphism> {
    let zm = factor_through_mono(&b.j, &a.j)?;
    factor_through_epi(&a.p, &b.p.after(&zm))
}

/// `z(C′,C): T(Z(C′),Z(C)) → Z(T(C′,C))` with `j z = T(j′,j)`.
#[derive(Clone, Debug)]
pub struct ZMorphism {
    pub left: Homology,
    pub right: Homology,
    pub tensor: TensorComplex,
    pub homology: Homology,
    pub cycles_tensor: TensorComplex,
    /// `T(j′,j)`
    pub tensor_j: ComplexMorphism,
    pub z: ComplexMorphism,
}

impl ZMorphism {
    pub fn defining_equation_holds(&self) -> bool {
        self.homology.j().after(&self.z).equals(&self.tensor_j)
    }
}

pub fn z_morphism(cp: &ChainComplex, c: &ChainComplex) -> Result<ZMorphism> {
    let (left, right) = (homology(cp), homology(c));
    let tensor = tensor_complex(cp, c)?;
    let ht = homology(&tensor.complex);
    let cycles_tensor = tensor_complex(&left.cycles_complex(), &right.cycles_complex())?;
    let tensor_j = tensor_chain_map(&cycles_tensor, &tensor, &left.j(), &right.j())?;
    let zt = ht.cycles_complex();
    let mut comps = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&cycles_tensor.complex, &zt) {
        let m = factor_through_mono(&ht.at(n).j, &tensor_j.component(n))?;
        comps.insert(n, m.with_ends(&cycles_tensor.complex.term(n), &zt.term(n))?);
    }
    let z = ComplexMorphism::new(&cycles_tensor.complex, &zt, comps)?;
    Ok(ZMorphism { left, right, tensor, homology: ht, cycles_tensor, tensor_j, z })
}

/// `γ(C′,C): T(H(C′),H(C)) → H(T(C′,C))` with `γ T(p′,p) = p z`, together with `k` and `b`.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub z: ZMorphism,
    pub homology_tensor: TensorComplex,
    /// `T(p′,p)`
    pub tensor_p: ComplexMorphism,
    /// `k_n: Im T(i′,Z(C)) ∪ Im T(Z(C′),i) ↣ T(Z(C′),Z(C))_n`
    pub k: BTreeMap<i64, ModMorphism>,
    /// `b_n` with `j i b = T(j′,j) k`
    pub b: BTreeMap<i64, ModMorphism>,
    pub gamma: ComplexMorphism,
}

pub fn gamma_morphism(cp: &ChainComplex, c: &ChainComplex) -> Result<Gamma> {
    let z = z_morphism(cp, c)?;
    let (l, r) = (&z.left, &z.right);
    let homology_tensor = tensor_complex(&l.homology_complex(), &r.homology_complex())?;
    let tensor_p = tensor_chain_map(&z.cycles_tensor, &homology_tensor, &l.p(), &r.p())?;
    let ht = &z.homology;

    let (zl, zr) = (l.cycles_complex(), r.cycles_complex());
    let t_bz = tensor_complex(&l.boundaries_complex(), &zr)?;
    let t_zb = tensor_complex(&zl, &r.boundaries_complex())?;
    let left_i = tensor_chain_map(&t_bz, &z.cycles_tensor, &l.i(), &ComplexMorphism::identity(&zr))?;
    let right_i = tensor_chain_map(&t_zb, &z.cycles_tensor, &ComplexMorphism::identity(&zl), &r.i())?;
    let mut k = BTreeMap::new();
    let mut b = BTreeMap::new();
    for n in z.cycles_tensor.complex.degrees() {
        let (f, g) = (left_i.component(n), right_i.component(n));
        let sum = direct_sum(&[f.source().clone(), g.source().clone()])?;
        let kn = image(&copairing(&f, &g, &sum)?).mono;
        let d = ht.at(n);
        let bn = factor_through_mono(&d.j.after(&d.i), &z.tensor_j.component(n).after(&kn))?;
        k.insert(n, kn);
        b.insert(n, bn);
    }

    let target = ht.homology_complex();
    let mut comps = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&homology_tensor.complex, &target) {
        let pz = ht.at(n).p.after(&z.z.component(n).with_ends(&z.cycles_tensor.complex.term(n), &ht.at(n).cycles)?);
        let g = factor_through_epi(&tensor_p.component(n), &pz)?;
        comps.insert(n, g.with_ends(&homology_tensor.complex.term(n), &target.term(n))?);
    }
    let gamma = ComplexMorphism::new(&homology_tensor.complex, &target, comps)?;
    Ok(Gamma { z, homology_tensor, tensor_p, k, b, gamma })
}

impl Gamma {
    pub fn component(&self, n: i64) -> ModMorphism {
        self.gamma.component(n)
    }

    /// `k ↣ T(Z′,Z) ↠ T(H′,H)` is exact in every degree.
    pub fn top_row_exact(&self) -> bool {
        self.k.iter().all(|(&n, k)| {
            let p = self.tensor_p.component(n);
            is_mono(k) && is_exact_at(k, &p) && is_epi(&p)
        })
    }

    pub fn defining_equation_holds(&self) -> bool {
        let ht = &self.z.homology;
        self.gamma.after(&self.tensor_p).equals(&ht.p().after(&self.z.z))
    }

    pub fn b_equation_holds(&self) -> bool {
        let ht = &self.z.homology;
        self.b.iter().all(|(&n, b)| {
            let d = ht.at(n);
            d.j.after(&d.i).after(b).equals(&self.z.tensor_j.component(n).after(&self.k[&n]))
        })
    }

    pub fn is_iso(&self) -> bool {
        self.gamma.is_iso()
    }
}

/// `Z(T(u′,u)) z(D′,D) = z(C′,C) T(Z(u′),Z(u))` for `u′: D′ → C′`, `u: D → C`.
pub fn z_is_natural(up: &ComplexMorphism, u: &ComplexMorphism) -> Result<bool> {
    let zd = z_morphism(up.source(), u.source())?;
    let zc = z_morphism(up.target(), u.target())?;
    let tu = tensor_chain_map(&zd.tensor, &zc.tensor, up, u)?;
    let z_tu = cycles_map(&tu, &zd.homology, &zc.homology)?;
    let zup = cycles_map(up, &zd.left, &zc.left)?;
    let zu = cycles_map(u, &zd.right, &zc.right)?;
    let t_zz = tensor_chain_map(&zd.cycles_tensor, &zc.cycles_tensor, &zup, &zu)?;
    Ok(z_tu.after(&zd.z).equals(&zc.z.after(&t_zz)))
}

/// `H(T(u′,u)) γ(D′,D) = γ(C′,C) T(H(u′),H(u))`.
pub fn gamma_is_natural(up: &ComplexMorphism, u: &ComplexMorphism) -> Result<bool> {
    let gd = gamma_morphism(up.source(), u.source())?;
    let gc = gamma_morphism(up.target(), u.target())?;
    let tu = tensor_chain_map(&gd.z.tensor, &gc.z.tensor, up, u)?;
    let h_tu = homology_morphism(&tu, &gd.z.homology, &gc.z.homology)?;
    let hup = homology_morphism(up, &gd.z.left, &gc.z.left)?;
    let hu = homology_morphism(u, &gd.z.right, &gc.z.right)?;
    let t_hh = tensor_chain_map(&gd.homology_tensor, &gc.homology_tensor, &hup, &hu)?;
    Ok(h_tu.after(&gd.gamma).equals(&gc.gamma.after(&t_hh)))
}

/// `H(Σ(C′,C)) γ(C′,C(r)) = γ(C′,C)(r) Σ(H(C′),H(C))`, degree by degree, after identifying
/// `H(C(r))` with `H(C)(r)` and `H(T(C′,C)(r))` with `H(T(C′,C))(r)`.
pub fn gamma_sigma_square(cp: &ChainComplex, c: &ChainComplex, r: i64) -> Result<bool> {
    let shifted = gamma_morphism(cp, &c.translate(r))?;
    let base = gamma_morphism(cp, c)?;
    let sigma = sigma_translate(cp, c, r)?.forward;
    let t_r = homology(sigma.target());

    let hr = &shifted.z.right;
    let hc = &base.z.right;
    let hc_r = hc.homology_complex().translate(r);
    let h_shift = hr.homology_complex();
    let mut iota = BTreeMap::new();
    for n in ChainComplex::joint_degrees(&h_shift, &hc_r) {
        iota.insert(n, reidentify(&hr.at(n), &hc.at(n + r))?.with_ends(&h_shift.term(n), &hc_r.term(n))?);
    }
    let iota = ComplexMorphism::new(&h_shift, &hc_r, iota)?;
    let hl = base.z.left.homology_complex();
    let t_iota_dst = tensor_complex(&hl, &hc_r)?;
    let t_iota = tensor_chain_map(&shifted.homology_tensor, &t_iota_dst, &ComplexMorphism::identity(&hl), &iota)?;
    let sigma_h = sigma_translate(&hl, &hc.homology_complex(), r)?.forward;

    for n in shifted.homology_tensor.complex.degrees() {
        let h_sigma = homology_map_at(&sigma, &shifted.z.homology, &t_r, n)?;
        let back = reidentify(&t_r.at(n), &base.z.homology.at(n + r))?;
        let path_a = back.after(&h_sigma).after(&shifted.component(n));
        let sh = sigma_h.component(n).after(&t_iota.component(n));
        let g = base.component(n + r);
        let path_b = g.with_ends(sh.target(), &base.z.homology.at(n + r).homology)?.after(&sh);
        if !path_a.equals(&path_b) {
            return Ok(false);
        }
    }
    Ok(true)
}
