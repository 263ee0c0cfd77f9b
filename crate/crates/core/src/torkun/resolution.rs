use std::collections::BTreeMap;

use crate::chaincx::{homology, is_quasi_iso, sphere, ChainComplex, ComplexMorphism};
use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::fgmod::{column_basis, ext1, is_epi, is_exact_at, is_flat, lift_columns, simplify, FgModule, ModMorphism, Ring};

/// A flat resolution `F → S⁰(M)`.
///
/// Over ℤ/pᵏ the periodic resolution is cut off after `truncated_at`; it is exact below that
/// degree and the augmentation is a quasi-isomorphism through degree `truncated_at − 1`.
#[derive(Clone, Debug)]
pub struct ResolutionPair {
    pub object: FgModule,
    pub resolution: ChainComplex,
    pub augmentation: ComplexMorphism,
    pub truncated_at: Option<i64>,
}

/// Result of re-checking the defining properties of a resolution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionCheck {
    pub degreewise_flat: bool,
    pub augmentation_epi: bool,
    pub exact: bool,
    /// `B_n(F) ∈ F^⊥` in every degree.
    pub complete: bool,
}

impl ResolutionCheck {
    pub fn holds(&self) -> bool {
        self.degreewise_flat && self.augmentation_epi && self.exact && self.complete
    }
}

/// `X ∈ F^⊥`: over ℤ and ℤ/pᵏ every finitely generated flat module is a summand of some
/// `Rⁿ`, so `Ext¹(R, X) = 0` decides membership.
pub fn in_flat_perp(x: &FgModule) -> Result<bool> {
    Ok(ext1(&FgModule::free(x.ring(), 1), x)?.is_zero_module())
}

fn pair(
    object: &FgModule,
    terms: Vec<FgModule>,
    diffs: Vec<ModMorphism>,
    eps: IntMatrix,
    truncated_at: Option<i64>,
) -> Result<ResolutionPair> {
    let ring = object.ring();
    let resolution = ChainComplex::new(ring, 0, terms, diffs)?;
    let eps = ModMorphism::new(&resolution.term(0), object, eps)?;
    let mut comps = BTreeMap::new();
    comps.insert(0, eps);
    let augmentation = ComplexMorphism::new(&resolution, &sphere(0, object), comps)?;
    Ok(ResolutionPair { object: object.clone(), resolution, augmentation, truncated_at })
}

/// Over ℤ: `0 → F₁ → F₀ ↠ M` read off the presentation, `length` is ignored.
/// Over ℤ/pᵏ: the diagonal presentation continued 2-periodically by `×p^e`, `×p^{k−e}`
/// up to degree `length`.
pub fn free_resolution(m: &FgModule, length: usize) -> Result<ResolutionPair> {
    let ring = m.ring();
    let n = m.num_generators();
    let out = match ring {
        Ring::Integers => {
            let f0 = FgModule::free(ring, n);
            let rels = column_basis(m.relations());
            if rels.cols() == 0 {
                pair(m, vec![f0], vec![], IntMatrix::identity(n), None)?
            } else {
                let f1 = FgModule::free(ring, rels.cols());
                let d1 = ModMorphism::new(&f1, &f0, rels)?;
                pair(m, vec![f0, f1], vec![d1], IntMatrix::identity(n), None)?
            }
        }
        Ring::PrimePower { .. } => {
            let q = ring.modulus().expect("modulus");
            let s = simplify(m);
            let factors = s.module.canonical_form();
            let torsion: Vec<usize> = (0..factors.len()).filter(|&i| factors[i] != q).collect();
            let f0 = FgModule::free(ring, factors.len());
            let eps = s.to_old.matrix().clone();
            if torsion.is_empty() {
                pair(m, vec![f0], vec![], eps, None)?
            } else {
                let len = length.max(1);
                let ft = FgModule::free(ring, torsion.len());
                let mut terms = vec![f0.clone()];
                let mut diffs = Vec::new();
                for deg in 1..=len {
                    let mut d = if deg == 1 {
                        IntMatrix::zeros(factors.len(), torsion.len())
                    } else {
                        IntMatrix::zeros(torsion.len(), torsion.len())
                    };
                    for (c, &i) in torsion.iter().enumerate() {
                        let row = if deg == 1 { i } else { c };
                        let e = &factors[i];
                        d.set(row, c, if deg % 2 == 1 { e.clone() } else { &q / e });
                    }
                    let target = if deg == 1 { &f0 } else { &ft };
                    diffs.push(ModMorphism::new(&ft, target, d)?);
                    terms.push(ft.clone());
                }
                pair(m, terms, diffs, eps, Some(len as i64))?
            }
        }
    };
    debug_assert!(out.check().map(|c| c.holds()).unwrap_or(false));
    Ok(out)
}

impl ResolutionPair {
    /// `ε: F₀ → M`
    pub fn epsilon(&self) -> ModMorphism {
        self.augmentation.component(0)
    }

    /// Highest degree in which the resolution computes the right thing.
    pub fn length(&self) -> i64 {
        self.resolution.hi().max(0)
    }

    pub fn check(&self) -> Result<ResolutionCheck> {
        let c = &self.resolution;
        let degreewise_flat = c.degrees().all(|n| is_flat(&c.term(n)));
        let eps = self.epsilon();
        let augmentation_epi = is_epi(&eps);
        let exact = match self.truncated_at {
            None => is_quasi_iso(&self.augmentation)?,
            Some(top) => {
                let h = homology(c);
                is_exact_at(&c.d(1), &eps) && (1..top).all(|n| h.module(n).is_zero_module())
            }
        };
        let h = homology(c);
        let mut complete = true;
        for n in c.degrees() {
            complete &= in_flat_perp(&h.at(n).boundaries)?;
        }
        Ok(ResolutionCheck { degreewise_flat, augmentation_epi, exact, complete })
    }

    /// Whether the resolution is long enough to compute `Torₙ`.
    pub fn covers(&self, n: i64) -> bool {
        self.truncated_at.is_none_or(|t| t > n)
    }
}

/// A chain map `f̃: P_A → P_B` over `f`, built degree by degree by lifting through `ε_B`
/// and then through the differentials of `P_B`.
pub fn lift_along_resolution(f: &ModMorphism, pa: &ResolutionPair, pb: &ResolutionPair) -> Result<ComplexMorphism> {
    if f.source() != &pa.object || f.target() != &pb.object {
        return Err(Error::Shape("morphism does not match the resolved objects".into()));
    }
    if let Some(t) = pb.truncated_at {
        if pa.length() > t {
            return Err(Error::Precondition("target resolution is shorter than the source".into()));
        }
    }
    let (fa, fb) = (&pa.resolution, &pb.resolution);
    let mut comps = BTreeMap::new();
    let top = fa.hi().max(0);
    let mut prev: Option<ModMorphism> = None;
    for n in 0..=top {
        let (src, dst) = (fa.term(n), fb.term(n));
        let target_cols = match &prev {
            None => f.after(&pa.epsilon()).matrix().clone(),
            Some(p) => p.after(&fa.d(n)).matrix().clone(),
        };
        let through = if n == 0 { pb.epsilon() } else { fb.d(n) };
        let x = if src.num_generators() == 0 {
            IntMatrix::zeros(dst.num_generators(), 0)
        } else if target_cols.is_zero() {
            IntMatrix::zeros(dst.num_generators(), src.num_generators())
        } else {
            lift_columns(&through, &target_cols).map_err(|e| Error::NoFactorization(format!("lifting fails in degree {n}: {e}")))?
        };
        let g = ModMorphism::new(&src, &dst, x)?;
        comps.insert(n, g.clone());
        prev = Some(g);
    }
    ComplexMorphism::new(fa, fb, comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::are_homotopic;
    use crate::exactlin::Int;

    fn zr(d: i64) -> FgModule {
        FgModule::cyclic(Ring::Integers, d)
    }

    #[test]
    fn cyclic_group_over_the_integers() {
        let r = free_resolution(&zr(2), 1).unwrap();
        assert_eq!(r.resolution.degrees(), 0..=1);
        assert_eq!(r.resolution.d(1).matrix(), &IntMatrix::from_rows(&[vec![2]]));
        assert!(r.check().unwrap().holds());
    }

    #[test]
    fn free_modules_resolve_themselves() {
        let r = free_resolution(&FgModule::free(Ring::Integers, 3), 2).unwrap();
        assert_eq!(r.resolution.degrees(), 0..=0);
        assert!(r.check().unwrap().holds());
        let ring = Ring::prime_power(5, 2).unwrap();
        let r = free_resolution(&FgModule::free(ring, 2), 4).unwrap();
        assert_eq!(r.resolution.degrees(), 0..=0);
    }

    #[test]
    fn periodic_resolution_over_p_squared() {
        let ring = Ring::prime_power(3, 2).unwrap();
        let r = free_resolution(&FgModule::cyclic(ring, 3), 3).unwrap();
        assert_eq!(r.resolution.degrees(), 0..=3);
        for n in 1..=3 {
            assert_eq!(r.resolution.d(n).matrix(), &IntMatrix::from_rows(&[vec![3]]));
        }
        let h = homology(&r.resolution);
        assert!(h.module(1).is_zero_module() && h.module(2).is_zero_module());
        assert!(r.check().unwrap().holds());
    }

    #[test]
    fn periodic_resolution_mixed_exponents() {
        let ring = Ring::prime_power(2, 3).unwrap();
        let m = FgModule::from_factors(ring, &[Int::from(2), Int::from(4), Int::from(8)]);
        let r = free_resolution(&m, 4).unwrap();
        assert!(r.check().unwrap().holds());
        assert_eq!(r.resolution.term(2).num_generators(), 2);
    }

    #[test]
    fn lifting_two_to_four() {
        let (a, b) = (zr(2), zr(4));
        let f = ModMorphism::new(&a, &b, IntMatrix::from_rows(&[vec![2]])).unwrap();
        let (pa, pb) = (free_resolution(&a, 1).unwrap(), free_resolution(&b, 1).unwrap());
        let lift = lift_along_resolution(&f, &pa, &pb).unwrap();
        assert_eq!(lift.component(0).matrix(), &IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(lift.component(1).matrix(), &IntMatrix::from_rows(&[vec![1]]));
        let eps_lift = pb.augmentation.after(&lift);
        assert!(eps_lift.component(0).equals(&f.after(&pa.epsilon())));
    }

    #[test]
    fn identity_and_zero_lifts() {
        let m = FgModule::new(Ring::Integers, IntMatrix::from_rows(&[vec![2, 0], vec![4, 6]]));
        let p = free_resolution(&m, 1).unwrap();
        let id = lift_along_resolution(&ModMorphism::identity(&m), &p, &p).unwrap();
        assert!(id.equals(&ComplexMorphism::identity(&p.resolution)));
        let zero = lift_along_resolution(&ModMorphism::zero(&m, &m), &p, &p).unwrap();
        let z = ComplexMorphism::zero(&p.resolution, &p.resolution);
        assert!(are_homotopic(&zero, &z).unwrap().is_some());
    }

    #[test]
    fn lifts_over_prime_powers_are_homotopic() {
        let ring = Ring::prime_power(2, 2).unwrap();
        let a = FgModule::cyclic(ring, 2);
        let p = free_resolution(&a, 3).unwrap();
        let f = ModMorphism::identity(&a);
        let l = lift_along_resolution(&f, &p, &p).unwrap();
        let id = ComplexMorphism::identity(&p.resolution);
        assert!(are_homotopic(&l, &id).unwrap().is_some());
    }
}
