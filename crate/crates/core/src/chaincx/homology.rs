use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fgmod::{cokernel, factor_through_epi, factor_through_mono, image, inverse, is_iso, kernel, FgModule, ModMorphism};

use super::complex::{ChainComplex, ComplexMorphism};

/// Cycles, boundaries and homology in one degree.
#[derive(Clone, Debug)]
pub struct DegreeHomology {
    pub cycles: FgModule,
    /// `j_n: Z_n → C_n`
    pub j: ModMorphism,
    pub boundaries: FgModule,
    /// `i_n: B_n → Z_n`
    pub i: ModMorphism,
    /// `δ_{n+1}: C_{n+1} ↠ B_n`, the corestriction of `d_{n+1}`.
    pub delta: ModMorphism,
    pub homology: FgModule,
    /// `p_n: Z_n ↠ H_n`
    pub p: ModMorphism,
}

/// `Z(C)`, `B(C)`, `H(C)` and the structure maps, degree by degree.
#[derive(Clone, Debug)]
pub struct Homology {
    pub complex: ChainComplex,
    degrees: BTreeMap<i64, DegreeHomology>,
}

pub fn degree_homology(c: &ChainComplex, n: i64) -> DegreeHomology {
    let z = kernel(&c.d(n));
    let b = image(&c.d(n + 1));
    let i = factor_through_mono(&z.inclusion, &b.mono).expect("boundaries are cycles");
    let h = cokernel(&i);
    DegreeHomology { cycles: z.module, j: z.inclusion, boundaries: b.module, i, delta: b.epi, homology: h.module, p: h.projection }
}

pub fn homology(c: &ChainComplex) -> Homology {
    let degrees = c.degrees().map(|n| (n, degree_homology(c, n))).collect();
    Homology { complex: c.clone(), degrees }
}

impl Homology {
    pub fn at(&self, n: i64) -> DegreeHomology {
        self.degrees.get(&n).cloned().unwrap_or_else(|| degree_homology(&self.complex, n))
    }

    pub fn module(&self, n: i64) -> FgModule {
        self.degrees.get(&n).map_or_else(|| FgModule::zero(self.complex.ring()), |d| d.homology.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.values().all(|d| d.homology.is_zero_module())
    }

    fn graded<F: Fn(&DegreeHomology) -> FgModule>(&self, f: F, shift: i64) -> ChainComplex {
        let terms: BTreeMap<i64, FgModule> = self.degrees.iter().map(|(&n, d)| (n + shift, f(d))).collect();
        ChainComplex::from_maps(self.complex.ring(), &terms, &BTreeMap::new()).expect("zero differential")
    }

    /// `Z(C)` with zero differential.
    pub fn cycles_complex(&self) -> ChainComplex {
        self.graded(|d| d.cycles.clone(), 0)
    }

    /// `B(C)` with zero differential.
    pub fn boundaries_complex(&self) -> ChainComplex {
        self.graded(|d| d.boundaries.clone(), 0)
    }

    /// `H(C)` with zero differential.
    pub fn homology_complex(&self) -> ChainComplex {
        self.graded(|d| d.homology.clone(), 0)
    }

    /// `j: Z(C) → C`
    pub fn j(&self) -> ComplexMorphism {
        let z = self.cycles_complex();
        ComplexMorphism::from_fn(&z, &self.complex, |n| self.at(n).j.with_ends(&z.term(n), &self.complex.term(n)).expect("j"))
            .expect("j is a chain map")
    }

    /// `i: B(C) → Z(C)`
    pub fn i(&self) -> ComplexMorphism {
        let b = self.boundaries_complex();
        let z = self.cycles_complex();
        ComplexMorphism::from_fn(&b, &z, |n| self.at(n).i.with_ends(&b.term(n), &z.term(n)).expect("i")).expect("i")
    }

    /// `p: Z(C) → H(C)`
    pub fn p(&self) -> ComplexMorphism {
        let z = self.cycles_complex();
        let h = self.homology_complex();
        ComplexMorphism::from_fn(&z, &h, |n| self.at(n).p.with_ends(&z.term(n), &h.term(n)).expect("p")).expect("p")
    }

    /// `δ: C → B(C)(−1)`, in degree `n` the corestriction `C_n ↠ B_{n−1}`.
    pub fn delta(&self) -> ComplexMorphism {
        let b = self.boundaries_complex().translate(-1);
        ComplexMorphism::from_fn(&self.complex, &b, |n| self.at(n - 1).delta.with_ends(&self.complex.term(n), &b.term(n)).expect("delta"))
            .expect("delta is a chain map")
    }

    /// For a zero-differential complex, the canonical isomorphism `p_n ∘ j_n⁻¹: C_n → H_n`.
    pub fn identification(&self, n: i64) -> Result<ModMorphism> {
        let d = self.at(n);
        let jinv = inverse(&d.j).map_err(|_| Error::Precondition(format!("nonzero differential at degree {n}")))?;
        Ok(d.p.after(&jinv))
    }
}

/// `H_n(u)`, through `Z(u)` with `j ∘ Z(u) = u ∘ j′` and `H(u) ∘ p′ = p ∘ Z(u)`.
pub fn homology_map_at(u: &ComplexMorphism, hs: &Homology, ht: &Homology, n: i64) -> Result<ModMorphism> {
    let (s, t) = (hs.at(n), ht.at(n));
    let zu = factor_through_mono(&t.j, &u.component(n).after(&s.j))?;
    factor_through_epi(&s.p, &t.p.after(&zu))
}

/// The induced graded map on homology.
pub fn homology_map(u: &ComplexMorphism) -> Result<ComplexMorphism> {
    let hs = homology(u.source());
    let ht = homology(u.target());
    let (a, b) = (hs.homology_complex(), ht.homology_complex());
    let mut comps = BTreeMap::new();
    for n in ChainComplex::joint_degrees(u.source(), u.target()) {
        let m = homology_map_at(u, &hs, &ht, n)?;
        comps.insert(n, m.with_ends(&a.term(n), &b.term(n))?);
    }
    ComplexMorphism::new(&a, &b, comps)
}

pub fn is_exact(c: &ChainComplex) -> bool {
    c.degrees().all(|n| degree_homology(c, n).homology.is_zero_module())
}

pub fn is_quasi_iso(u: &ComplexMorphism) -> Result<bool> {
    let hs = homology(u.source());
    let ht = homology(u.target());
    for n in ChainComplex::joint_degrees(u.source(), u.target()) {
        if !is_iso(&homology_map_at(u, &hs, &ht, n)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::complex::{disk, sphere};
    use crate::exactlin::{Int, IntMatrix};
    use crate::fgmod::{is_exact_at, Ring};

    fn z() -> FgModule {
        FgModule::free(Ring::Integers, 1)
    }

    fn doubling() -> ChainComplex {
        ChainComplex::new(Ring::Integers, 0, vec![z(), z()], vec![ModMorphism::scalar(&z(), 2)]).unwrap()
    }

    #[test]
    fn multiplication_by_two() {
        let h = homology(&doubling());
        assert!(h.module(1).is_zero_module());
        assert_eq!(h.module(0).canonical_form(), vec![Int::from(2)]);
    }

    #[test]
    fn disks_and_spheres() {
        let m = FgModule::new(Ring::Integers, IntMatrix::from_rows(&[vec![3], vec![0]]));
        assert!(is_exact(&disk(4, &m)));
        let h = homology(&sphere(2, &m));
        assert!(h.module(2).is_isomorphic(&m));
        assert!(homology(&sphere(0, &z())).module(0).is_isomorphic(&z()));
    }

    #[test]
    fn cycles_sequence_is_exact() {
        let c = doubling();
        let h = homology(&c);
        let (j, delta) = (h.j(), h.delta());
        for n in c.degrees() {
            assert!(is_exact_at(&j.component(n), &delta.component(n)));
        }
    }

    #[test]
    fn quasi_isomorphisms() {
        let c = doubling();
        assert!(is_quasi_iso(&ComplexMorphism::identity(&c)).unwrap());
        let d = disk(1, &z());
        assert!(is_quasi_iso(&ComplexMorphism::zero(&d, &ChainComplex::zero(Ring::Integers))).unwrap());
        let s = sphere(0, &z());
        let two = ComplexMorphism::from_fn(&s, &s, |_| ModMorphism::scalar(&z(), 2)).unwrap();
        assert!(!is_quasi_iso(&two).unwrap());
    }
}
