use std::collections::BTreeMap;

use crate::chaincx::{disk, odd, sphere, ChainComplex, ComplexMorphism, GradedMap};
use crate::error::{Error, Result};
use crate::exactlin::{Int, IntMatrix};
use crate::fgmod::{factor_through_mono, kernel, preimage_element, FgModule, ModMorphism};

use super::adjunction::{transpose_from_cotensor, transpose_from_hom, transpose_to_cotensor, transpose_to_hom};
use super::hom::{cotensor_complex, hom_complex, homgr, unit_vectors, HomComplex, Mode};
use super::tensor::{normalized, tensor_complex, TensorComplex};

/// `α(n,p) = n(n−1)/2 + p(p−1)/2 + (n+p)(n+p+1)/2`
pub fn alpha(n: i64, p: i64) -> i64 {
    n * (n - 1) / 2 + p * (p - 1) / 2 + (n + p) * (n + p + 1) / 2
}

/// `T̄(C′,C) = T(C′,C)/B(T(C′,C))` with `D̄ σ_{p,q} = σ_{p−1,q} T(d′_p, C_q)`. Generators of
/// `T̄_n` are those of `T_n`.
#[derive(Clone, Debug)]
pub struct BarTensor {
    pub complex: ChainComplex,
    pub tensor: TensorComplex,
}

pub fn bar_tensor(cp: &ChainComplex, c: &ChainComplex) -> Result<BarTensor> {
    let tensor = tensor_complex(cp, c)?;
    let t = &tensor.complex;
    let ring = t.ring();
    let mut terms = BTreeMap::new();
    for n in t.degrees() {
        let rels = t.term(n).relations().hstack(t.d(n + 1).matrix());
        terms.insert(n, normalized(FgModule::new(ring, rels)));
    }
    let mut diffs = BTreeMap::new();
    for n in t.degrees() {
        if n - 1 < t.lo() {
            continue;
        }
        let (src, dst) = (&terms[&n], &terms[&(n - 1)]);
        let mut m = IntMatrix::zeros(dst.num_generators(), src.num_generators());
        for s in tensor.summands(n) {
            if let Some(below) = tensor.summand(s.p - 1, s.q) {
                let b = cp.d(s.p).matrix().kron(&IntMatrix::identity(c.term(s.q).num_generators()));
                m.set_block(below.offset, s.offset, &b);
            }
        }
        diffs.insert(n, ModMorphism::new(src, dst, m)?);
    }
    let complex = ChainComplex::from_maps(ring, &terms, &diffs)?;
    Ok(BarTensor { complex, tensor })
}

impl BarTensor {
    /// A graded map out of `T̄` read as a graded map out of `T`.
    pub fn lift(&self, u: &GradedMap) -> Result<GradedMap> {
        if u.source != self.complex {
            return Err(Error::Shape("map is not out of the bar tensor complex".into()));
        }
        let t = &self.tensor.complex;
        let comps =
            u.components().iter().map(|(&n, f)| (n, ModMorphism::new_unchecked(&t.term(n), f.target(), f.matrix().clone()))).collect();
        GradedMap::new(t, &u.target, u.degree, comps)
    }

    /// A graded map out of `T` that kills boundaries, read on `T̄`.
    pub fn descend(&self, u: &GradedMap) -> Result<GradedMap> {
        let mut comps = BTreeMap::new();
        for (&n, f) in u.components() {
            comps.insert(n, f.with_ends(&self.complex.term(n), f.target())?);
        }
        GradedMap::new(&self.complex, &u.target, u.degree, comps)
    }
}

/// The cycles `Z(K)` of a Hom-type complex, with differential `f ↦ ±d″∘f`.
#[derive(Clone, Debug)]
pub struct CycleComplex {
    pub complex: ChainComplex,
    pub ambient: HomComplex,
    inclusions: BTreeMap<i64, ModMorphism>,
}

fn cycle_complex(ambient: HomComplex, alternate: bool) -> Result<CycleComplex> {
    let k = &ambient.complex;
    let ring = k.ring();
    let mut inclusions = BTreeMap::new();
    let mut terms = BTreeMap::new();
    for n in k.degrees() {
        let z = kernel(&k.d(n));
        let module = normalized(z.module.clone());
        inclusions.insert(n, ModMorphism::new_unchecked(&module, &k.term(n), z.inclusion.matrix().clone()));
        terms.insert(n, module);
    }
    let mut diffs = BTreeMap::new();
    for n in k.degrees() {
        if n - 1 < k.lo() {
            continue;
        }
        let j = &inclusions[&n];
        let post = GradedMap::differential(&ambient.target);
        let mut cols = Vec::new();
        for x in j.matrix().columns() {
            let g = post.compose(&ambient.to_graded(n, &x))?;
            let g = if alternate && odd(n) { g.neg() } else { g };
            cols.push(ambient.coords(&g)?);
        }
        let phi = ModMorphism::new(&terms[&n], &k.term(n - 1), IntMatrix::from_columns(k.term(n - 1).num_generators(), &cols))?;
        diffs.insert(n, factor_through_mono(&inclusions[&(n - 1)], &phi)?);
    }
    let complex = ChainComplex::from_maps(ring, &terms, &diffs)?;
    Ok(CycleComplex { complex, ambient, inclusions })
}

impl CycleComplex {
    /// `j_n: Z_n → K_n`
    pub fn inclusion(&self, n: i64) -> ModMorphism {
        self.inclusions.get(&n).cloned().unwrap_or_else(|| ModMorphism::zero(&self.complex.term(n), &self.ambient.complex.term(n)))
    }

    pub fn to_graded(&self, n: i64, x: &[Int]) -> GradedMap {
        self.ambient.to_graded(n, &self.inclusion(n).apply(x))
    }

    /// Coordinates in `Z_n` of a cycle of degree `n`, or an error if it is not a cycle.
    pub fn coords(&self, g: &GradedMap) -> Result<Vec<Int>> {
        let y = self.ambient.coords(g)?;
        preimage_element(&self.inclusion(g.degree), &y)?.ok_or_else(|| Error::NotComplex("element is not a cycle".into()))
    }

    /// Factors a family `X_m → K_{m+k}` through the inclusions.
    fn corestrict(&self, v: &GradedMap) -> Result<GradedMap> {
        let mut comps = BTreeMap::new();
        for m in v.source.degrees() {
            let f = v.component(m);
            comps.insert(m, factor_through_mono(&self.inclusion(m + v.degree), &f)?);
        }
        GradedMap::new(&v.source, &self.complex, v.degree, comps)
    }

    /// Composes a family `X_m → Z_{m+k}` with the inclusions.
    fn widen(&self, v: &GradedMap) -> Result<GradedMap> {
        let mut comps = BTreeMap::new();
        for m in v.source.degrees() {
            comps.insert(m, self.inclusion(m + v.degree).after(&v.component(m)));
        }
        GradedMap::new(&v.source, &self.ambient.complex, v.degree, comps)
    }
}

/// `H̄(C,C″) = Z(H(C,C″))` with differential `Z(H(C,d″))`.
pub fn bar_hom(c: &ChainComplex, cpp: &ChainComplex) -> Result<CycleComplex> {
    cycle_complex(hom_complex(c, cpp)?, false)
}

/// `C̄(C′,C″) = Z(C(C′,C″))` for the bar-modified cotensor, with differential `Z(C(C′,d″))`.
pub fn bar_cotensor(cp: &ChainComplex, cpp: &ChainComplex) -> Result<CycleComplex> {
    cycle_complex(cotensor_complex(cp, cpp, Mode::Bar)?, false)
}

/// `Homgr‾(C′,C)_n = Ch(C′, C(n))` with differential `u ↦ d(n)∘u`.
pub fn homgr_bar(cp: &ChainComplex, c: &ChainComplex) -> Result<CycleComplex> {
    cycle_complex(homgr(cp, c)?, true)
}

fn bar_hom_sign(_n: i64, p: i64) -> bool {
    odd(p)
}

fn bar_cotensor_sign(n: i64, p: i64) -> bool {
    odd(alpha(n, p))
}

/// `T̄(C′,C) → C″` to `C′ → H̄(C,C″)`, `v_{n,p} = (−1)^p u♭_{n,p}`.
pub fn bar_adj_tensor_hom(bt: &BarTensor, bh: &CycleComplex, u: &ComplexMorphism) -> Result<ComplexMorphism> {
    let v = transpose_to_hom(&bt.tensor, &bh.ambient, &bt.lift(u.graded())?, bar_hom_sign)?;
    ComplexMorphism::from_graded(bh.corestrict(&v)?)
}

/// `C′ → H̄(C,C″)` to `T̄(C′,C) → C″`, `u_{p,q} = (−1)^q v♯_{p,q}`.
pub fn bar_adj_hom_tensor(bt: &BarTensor, bh: &CycleComplex, v: &ComplexMorphism) -> Result<ComplexMorphism> {
    let u = transpose_from_hom(&bt.tensor, &bh.ambient, &bh.widen(v.graded())?, bar_hom_sign)?;
    ComplexMorphism::from_graded(bt.descend(&u)?)
}

/// `T̄(C′,C) → C″` to `C → C̄(C′,C″)`, `w_{n,p} = (−1)^{α(n,p)} u♭_{p,n}`.
pub fn bar_adj_tensor_cotensor(bt: &BarTensor, bc: &CycleComplex, u: &ComplexMorphism) -> Result<ComplexMorphism> {
    bar_mode(bc)?;
    let w = transpose_to_cotensor(&bt.tensor, &bc.ambient, &bt.lift(u.graded())?, bar_cotensor_sign)?;
    ComplexMorphism::from_graded(bc.corestrict(&w)?)
}

pub fn bar_adj_cotensor_tensor(bt: &BarTensor, bc: &CycleComplex, w: &ComplexMorphism) -> Result<ComplexMorphism> {
    bar_mode(bc)?;
    let u = transpose_from_cotensor(&bt.tensor, &bc.ambient, &bc.widen(w.graded())?, bar_cotensor_sign)?;
    ComplexMorphism::from_graded(bt.descend(&u)?)
}

fn bar_mode(bc: &CycleComplex) -> Result<()> {
    if bc.ambient.mode != Mode::Bar {
        return Err(Error::Precondition("the bar adjunction needs the bar cotensor complex".into()));
    }
    Ok(())
}

/// `T(Sʳ(A′), C) → T̄(Dʳ(A′), C)`, `σ_{r,q} ↦ (−1)^q σ_{r,q}`.
pub fn bar_tensor_disk_iso(a: &FgModule, r: i64, c: &ChainComplex) -> Result<ComplexMorphism> {
    let src = tensor_complex(&sphere(r, a), c)?;
    let bt = bar_tensor(&disk(r, a), c)?;
    let mut comps = BTreeMap::new();
    for n in src.complex.degrees() {
        let (s_term, t_term) = (src.complex.term(n), bt.complex.term(n));
        let mut m = IntMatrix::zeros(t_term.num_generators(), s_term.num_generators());
        if let (Some(s), Some(t)) = (src.summand(r, n - r), bt.tensor.summand(r, n - r)) {
            m.set_block(t.offset, s.offset, &IntMatrix::identity(s.module.num_generators()).signed(odd(n - r)));
        }
        comps.insert(n, ModMorphism::new(&s_term, &t_term, m)?);
    }
    ComplexMorphism::new(&src.complex, &bt.complex, comps)
}

/// `H(C, Sʳ⁻¹(A″)) → H̄(C, Dʳ(A″))`, `g ↦ ((−1)ⁿ g, g∘d)` in the factors of degree `r−1`
/// and `r`.
pub fn bar_hom_disk_iso(c: &ChainComplex, a: &FgModule, r: i64) -> Result<ComplexMorphism> {
    let src = hom_complex(c, &sphere(r - 1, a))?;
    let dr = disk(r, a);
    let bh = bar_hom(c, &dr)?;
    let mut comps = BTreeMap::new();
    for n in src.complex.degrees() {
        let mut cols = Vec::new();
        for e in unit_vectors(src.complex.term(n).num_generators()) {
            let g = src.to_graded(n, &e);
            let p = r - 1 - n;
            let gp = g.component(p);
            let mut f = BTreeMap::new();
            f.insert(p, gp.signed(odd(n)).with_ends(&c.term(p), &dr.term(r - 1))?);
            f.insert(p + 1, gp.after(&c.d(p + 1)).with_ends(&c.term(p + 1), &dr.term(r))?);
            cols.push(bh.coords(&GradedMap::new(c, &dr, n, f)?)?);
        }
        let t_term = bh.complex.term(n);
        let m = IntMatrix::from_columns(t_term.num_generators(), &cols);
        comps.insert(n, ModMorphism::new(&src.complex.term(n), &t_term, m)?);
    }
    ComplexMorphism::new(&src.complex, &bh.complex, comps)
}

/// An isomorphism of bar Homgr complexes built degreewise from a bar transpose.
#[derive(Clone, Debug)]
pub struct HomgrBarIso {
    pub source: CycleComplex,
    pub target: CycleComplex,
    pub map: ComplexMorphism,
}

fn homgr_bar_iso<F>(source: CycleComplex, target: CycleComplex, op: F) -> Result<HomgrBarIso>
where
    F: Fn(&GradedMap) -> Result<GradedMap>,
{
    let mut comps = BTreeMap::new();
    for n in source.complex.degrees() {
        let mut cols = Vec::new();
        for e in unit_vectors(source.complex.term(n).num_generators()) {
            cols.push(target.coords(&op(&source.to_graded(n, &e))?)?);
        }
        let t_term = target.complex.term(n);
        let m = IntMatrix::from_columns(t_term.num_generators(), &cols);
        comps.insert(n, ModMorphism::new(&source.complex.term(n), &t_term, m)?);
    }
    let map = ComplexMorphism::new(&source.complex, &target.complex, comps)?;
    Ok(HomgrBarIso { source, target, map })
}

/// `Homgr‾(T̄(C′,C), C″) ≅ Homgr‾(C′, H̄(C,C″))`
pub fn homgr_bar_hom_iso(cp: &ChainComplex, c: &ChainComplex, cpp: &ChainComplex) -> Result<HomgrBarIso> {
    let bt = bar_tensor(cp, c)?;
    let bh = bar_hom(c, cpp)?;
    let source = homgr_bar(&bt.complex, cpp)?;
    let target = homgr_bar(cp, &bh.complex)?;
    homgr_bar_iso(source, target, |u| {
        let v = transpose_to_hom(&bt.tensor, &bh.ambient, &bt.lift(u)?, bar_hom_sign)?;
        bh.corestrict(&v)
    })
}

/// `Homgr‾(T̄(C′,C), C″) ≅ Homgr‾(C, C̄(C′,C″))`
pub fn homgr_bar_cotensor_iso(cp: &ChainComplex, c: &ChainComplex, cpp: &ChainComplex) -> Result<HomgrBarIso> {
    let bt = bar_tensor(cp, c)?;
    let bc = bar_cotensor(cp, cpp)?;
    let source = homgr_bar(&bt.complex, cpp)?;
    let target = homgr_bar(c, &bc.complex)?;
    homgr_bar_iso(source, target, |u| {
        let w = transpose_to_cotensor(&bt.tensor, &bc.ambient, &bt.lift(u)?, bar_cotensor_sign)?;
        bc.corestrict(&w)
    })
}
