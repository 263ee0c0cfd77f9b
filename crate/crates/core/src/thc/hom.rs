use std::collections::BTreeMap;

use crate::chaincx::{odd, ChainComplex, ComplexMorphism, GradedMap};
use crate::error::{Error, Result};
use crate::exactlin::{Int, IntMatrix};
use crate::fgmod::{hom_module, FgModule, HomModule, ModMorphism};

use super::tensor::{check_ring, sum_module};

/// Sign placement in the differential of a Hom-type complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `D(f) = d″f − (−1)ⁿ f d`
    Standard,
    /// `D(f) = d″f − (−1)ⁿ⁻¹ f d′`, the modified cotensor of the bar situation.
    Bar,
}

/// The factor `H(C_p, C″_{p+n})` of `H_n`.
#[derive(Clone, Debug)]
pub struct Factor {
    pub p: i64,
    pub offset: usize,
    pub hom: HomModule,
}

/// `H(C,C″)_n = ∏_p H(C_p, C″_{p+n})`, factors in ascending `p`. Elements of `H_n` are graded
/// maps of degree `n`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: ChainComplex,
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub mode: Mode,
    factors: BTreeMap<i64, Vec<Factor>>,
}

/// Alias for the elements `f_p: C′_p → C_{p+n}` of Hom-type complexes.
pub type GradedFamily = GradedMap;

pub fn hom_complex(c: &ChainComplex, cpp: &ChainComplex) -> Result<HomComplex> {
    build(c, cpp, Mode::Standard)
}

/// `C(C′,C″)` with the requested sign placement; at module level it coincides with Hom.
pub fn cotensor_complex(cp: &ChainComplex, cpp: &ChainComplex, mode: Mode) -> Result<HomComplex> {
    build(cp, cpp, mode)
}

/// `Homgr(C′,C)`, the dg-hom of complexes.
pub fn homgr(cp: &ChainComplex, c: &ChainComplex) -> Result<HomComplex> {
    build(cp, c, Mode::Standard)
}

fn build(src: &ChainComplex, dst: &ChainComplex, mode: Mode) -> Result<HomComplex> {
    check_ring(src, dst)?;
    let ring = src.ring();
    let mut factors = BTreeMap::new();
    if !src.is_empty_support() && !dst.is_empty_support() {
        for n in dst.lo() - src.hi()..=dst.hi() - src.lo() {
            let mut list = Vec::new();
            let mut offset = 0;
            for p in src.lo().max(dst.lo() - n)..=src.hi().min(dst.hi() - n) {
                let hom = hom_module(&src.term(p), &dst.term(p + n))?;
                let k = hom.module.num_generators();
                list.push(Factor { p, offset, hom });
                offset += k;
            }
            factors.insert(n, list);
        }
    }
    let terms: BTreeMap<i64, FgModule> =
        factors.iter().map(|(&n, l)| (n, sum_module(ring, &l.iter().map(|f| f.hom.module.clone()).collect::<Vec<_>>()))).collect();
    let mut hc = HomComplex {
        complex: ChainComplex::from_maps(ring, &terms, &BTreeMap::new())?,
        source: src.clone(),
        target: dst.clone(),
        mode,
        factors,
    };
    let mut diffs = BTreeMap::new();
    for &n in hc.factors.keys() {
        if !hc.factors.contains_key(&(n - 1)) {
            continue;
        }
        let mut cols = Vec::new();
        for e in unit_vectors(hc.complex.term(n).num_generators()) {
            let g = hc.to_graded(n, &e);
            cols.push(hc.coords(&hc.differential(&g))?);
        }
        let m = IntMatrix::from_columns(hc.complex.term(n - 1).num_generators(), &cols);
        diffs.insert(n, ModMorphism::new_unchecked(&terms[&n], &terms[&(n - 1)], m));
    }
    hc.complex = ChainComplex::from_maps(ring, &terms, &diffs)?;
    Ok(hc)
}

pub(crate) fn unit_vectors(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut e = vec![Int::from(0); n];
            e[i] = Int::from(1);
            e
        })
        .collect()
}

impl HomComplex {
    pub fn factors(&self, n: i64) -> &[Factor] {
        self.factors.get(&n).map_or(&[], Vec::as_slice)
    }

    pub fn factor(&self, n: i64, p: i64) -> Option<&Factor> {
        self.factors(n).iter().find(|f| f.p == p)
    }

    /// The graded map of degree `n` with coordinates `x` in `H_n`.
    pub fn to_graded(&self, n: i64, x: &[Int]) -> GradedMap {
        let mut comps = BTreeMap::new();
        for f in self.factors(n) {
            let k = f.hom.module.num_generators();
            comps.insert(f.p, f.hom.to_morphism(&x[f.offset..f.offset + k]));
        }
        GradedMap::new(&self.source, &self.target, n, comps).expect("factor ends")
    }

    /// Coordinates in `H_n` of a graded map of degree `n`.
    pub fn coords(&self, g: &GradedMap) -> Result<Vec<Int>> {
        if g.source != self.source || g.target != self.target {
            return Err(Error::Shape("graded map does not belong to this Hom complex".into()));
        }
        let mut x = Vec::new();
        for f in self.factors(g.degree) {
            x.extend(f.hom.coords(&g.component(f.p))?);
        }
        Ok(x)
    }

    /// `D(f) = d″f − ε f d` with `ε = (−1)ⁿ` in standard mode and `−(−1)ⁿ` in bar mode.
    pub fn differential(&self, g: &GradedMap) -> GradedMap {
        match self.mode {
            Mode::Standard => g.boundary(),
            Mode::Bar => {
                let d = GradedMap::differential(&g.target).compose(g).expect("ends");
                let right = g.compose(&GradedMap::differential(&g.source)).expect("ends");
                d.add(&if odd(g.degree) { right.neg() } else { right }).expect("parallel")
            }
        }
    }

    /// `π_p: H_n → H(C_p, C″_{p+n})`
    pub fn projection(&self, n: i64, p: i64) -> Result<ModMorphism> {
        let f = self.factor(n, p).ok_or_else(|| Error::Shape(format!("no factor ({n}, {p})")))?;
        let term = self.complex.term(n);
        let k = f.hom.module.num_generators();
        let mut m = IntMatrix::zeros(k, term.num_generators());
        m.set_block(0, f.offset, &IntMatrix::identity(k));
        Ok(ModMorphism::new_unchecked(&term, &f.hom.module, m))
    }

    /// A module map `X → H_n` from the family of its components `π_p ∘ φ`, given as morphisms
    /// into the factor modules.
    pub fn assemble(&self, n: i64, source: &FgModule, parts: &BTreeMap<i64, ModMorphism>) -> ModMorphism {
        let term = self.complex.term(n);
        let mut m = IntMatrix::zeros(term.num_generators(), source.num_generators());
        for f in self.factors(n) {
            if let Some(part) = parts.get(&f.p) {
                m.set_block(f.offset, 0, part.matrix());
            }
        }
        ModMorphism::new_unchecked(source, &term, m)
    }

    pub fn is_cycle(&self, g: &GradedMap) -> bool {
        self.differential(g).is_zero()
    }
}

/// `Σ: Homgr(C′(r), C) ≅ Homgr(C′,C)(−r)`, `(f_p) ↦ ((−1)^{nr} f_{p−r})`.
pub fn homgr_translate(cp: &ChainComplex, c: &ChainComplex, r: i64) -> Result<ComplexMorphism> {
    let src = homgr(&cp.translate(r), c)?;
    let base = homgr(cp, c)?;
    let target = base.complex.translate(-r);
    let mut comps = BTreeMap::new();
    for n in src.complex.degrees() {
        let mut cols = Vec::new();
        for e in unit_vectors(src.complex.term(n).num_generators()) {
            let g = src.to_graded(n, &e);
            let mut moved = BTreeMap::new();
            for (&p, f) in g.components() {
                moved.insert(p + r, f.signed(odd(n * r)).with_ends(&cp.term(p + r), &c.term(p + n))?);
            }
            let h = GradedMap::new(cp, c, n - r, moved)?;
            cols.push(base.coords(&h)?);
        }
        let m = IntMatrix::from_columns(target.term(n).num_generators(), &cols);
        comps.insert(n, ModMorphism::new(&src.complex.term(n), &target.term(n), m)?);
    }
    ComplexMorphism::new(&src.complex, &target, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::{are_homotopic, disk, homology, is_exact, sphere};
    use crate::fgmod::Ring;

    fn z() -> FgModule {
        FgModule::free(Ring::Integers, 1)
    }

    fn doubling() -> ChainComplex {
        ChainComplex::new(Ring::Integers, 0, vec![z(), z()], vec![ModMorphism::scalar(&z(), 2)]).unwrap()
    }

    #[test]
    fn hom_out_of_a_sphere_is_termwise() {
        let c = doubling();
        let h = hom_complex(&sphere(0, &z()), &c).unwrap();
        assert_eq!(h.complex.d(1).matrix(), &IntMatrix::from_rows(&[vec![2]]));
        let a = FgModule::cyclic(Ring::Integers, 4);
        let b = FgModule::cyclic(Ring::Integers, 6);
        let g = homgr(&sphere(0, &a), &sphere(0, &b)).unwrap();
        assert_eq!(g.complex.degrees(), 0..=0);
        assert_eq!(g.complex.term(0).canonical_form(), vec![Int::from(2)]);
    }

    #[test]
    fn differential_squares_to_zero_in_both_modes() {
        let c = doubling();
        for mode in [Mode::Standard, Mode::Bar] {
            let h = cotensor_complex(&c, &c, mode).unwrap();
            assert_eq!(h.complex.degrees(), -1..=1);
        }
        let h = hom_complex(&c, &c).unwrap();
        // D_1 sends (f_0: C_0 → C_1) to (d f_0, −(−1)¹ f_0 d) = (2 f, 2 f).
        assert_eq!(h.complex.d(1).matrix(), &IntMatrix::from_rows(&[vec![2], vec![2]]));
        let b = cotensor_complex(&c, &c, Mode::Bar).unwrap();
        assert_eq!(b.complex.d(1).matrix(), &IntMatrix::from_rows(&[vec![2], vec![-2]]));
    }

    #[test]
    fn identity_is_a_cycle_and_nullhomotopy_matches_boundaries() {
        let c = doubling();
        let h = homgr(&c, &c).unwrap();
        let id = ComplexMorphism::identity(&c);
        assert!(h.is_cycle(id.graded()));
        let x = h.coords(id.graded()).unwrap();
        let hom = homology(&h.complex);
        let class = hom.at(0);
        let z = crate::fgmod::factor_through_mono(
            &class.j,
            &ModMorphism::new(&FgModule::free(Ring::Integers, 1), &h.complex.term(0), IntMatrix::column_vector(&x)).unwrap(),
        )
        .unwrap();
        let in_h = class.p.after(&z);
        let zero = ComplexMorphism::zero(&c, &c);
        assert_eq!(in_h.is_zero(), are_homotopic(&zero, &id).unwrap().is_some());
    }

    #[test]
    fn homgr_into_a_disk_is_exact() {
        let c = doubling();
        assert!(is_exact(&homgr(&c, &disk(1, &z())).unwrap().complex));
        assert!(is_exact(&homgr(&disk(0, &z()), &c).unwrap().complex));
    }

    #[test]
    fn translation_is_literal_on_the_right() {
        let c = doubling();
        for r in -1..=2 {
            let a = hom_complex(&c, &c).unwrap().complex.translate(r);
            let b = hom_complex(&c, &c.translate(r)).unwrap().complex;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn homgr_translation_iso() {
        let c = doubling();
        for r in -2..=2 {
            let s = homgr_translate(&c, &c, r).unwrap();
            assert!(s.is_iso());
        }
    }
}
