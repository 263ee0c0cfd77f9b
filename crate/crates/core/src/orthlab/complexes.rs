use std::collections::BTreeMap;

use rand::Rng;

use crate::chaincx::{are_homotopic, cone, disk, homology, is_exact, sphere, ChainComplex, ComplexMorphism};
use crate::error::{Error, Result};
use crate::exactlin::{Int, IntMatrix};
use crate::fgmod::{image, is_flat, kernel, FgModule, ModMorphism, Ring};
use crate::random;
use crate::thc::{homgr, tensor_complex};

/// `C ∈ ex(X)`: exact and every term satisfies `pred`. With `pred` always true this is
/// plain exactness; dropping exactness gives `Ch(K)`.
pub fn ex_class_member<F: Fn(&FgModule) -> bool>(pred: F, c: &ChainComplex) -> bool {
    is_exact(c) && c.degrees().all(|n| pred(&c.term(n)))
}

/// `Ch(K)` membership.
pub fn degreewise_member<F: Fn(&FgModule) -> bool>(pred: F, c: &ChainComplex) -> bool {
    c.degrees().all(|n| pred(&c.term(n)))
}

/// A 2-periodic complex `⋯ → F →d_even F →d_odd F → ⋯` on a free ℤ/pᵏ-module, with `d_n`
/// equal to `d_odd` for odd `n`.
#[derive(Clone, Debug)]
pub struct PeriodicComplex {
    pub d_even: ModMorphism,
    pub d_odd: ModMorphism,
    /// Degrees `0..=3`, i.e. `d₁ = d_odd`, `d₂ = d_even`, `d₃ = d_odd`.
    pub window: ChainComplex,
    /// Degrees of the window whose homology is that of the unbounded complex.
    pub interior: std::ops::RangeInclusive<i64>,
}

impl PeriodicComplex {
    pub fn new(d_even: ModMorphism, d_odd: ModMorphism) -> Result<Self> {
        let f = d_even.source().clone();
        if d_even.target() != &f || d_odd.source() != &f || d_odd.target() != &f {
            return Err(Error::Shape("periodic differentials must be endomorphisms of one module".into()));
        }
        if f.ring().is_integers() || !is_flat(&f) {
            return Err(Error::Precondition("periodic complexes live on a free Z/p^k-module".into()));
        }
        if !d_even.after(&d_odd).is_zero() || !d_odd.after(&d_even).is_zero() {
            return Err(Error::NotComplex("periodic differentials do not compose to zero".into()));
        }
        let window = ChainComplex::new(f.ring(), 0, vec![f.clone(); 4], vec![d_odd.clone(), d_even.clone(), d_odd.clone()])?;
        Ok(Self { d_even, d_odd, window, interior: 1..=2 })
    }

    /// `⋯ →p^{k−j} R →p^j R → ⋯`, the complete resolution of `ℤ/pʲ`.
    pub fn complete_resolution(ring: Ring, j: u32) -> Result<Self> {
        let Ring::PrimePower { p, k } = ring else {
            return Err(Error::BadRing("complete resolutions need Z/p^k".into()));
        };
        if j == 0 || j >= k {
            return Err(Error::Precondition(format!("need 0 < {j} < {k}")));
        }
        let r = FgModule::free(ring, 1);
        let scalar = |e: u32| ModMorphism::new(&r, &r, IntMatrix::scalar(1, &Int::from(p.pow(e))));
        Self::new(scalar(k - j)?, scalar(j)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TexVerdict {
    pub exact: bool,
    pub flat: bool,
    /// `T(S⁰(E), C)` exact for the injective cogenerator `E`.
    pub tensor_exact: bool,
}

impl TexVerdict {
    pub fn holds(&self) -> bool {
        self.exact && self.flat && self.tensor_exact
    }
}

/// Over ℤ the only finitely generated injective is 0, so only `ex(F)` is tested.
pub fn tex_member(c: &ChainComplex) -> Result<TexVerdict> {
    let exact = is_exact(c);
    let flat = degreewise_member(is_flat, c);
    let tensor_exact = if c.ring().is_integers() {
        exact
    } else {
        let e = sphere(0, &FgModule::free(c.ring(), 1));
        is_exact(&tensor_complex(&e, c)?.complex)
    };
    Ok(TexVerdict { exact, flat, tensor_exact })
}

/// The same test over one period of a periodic complex.
pub fn tex_member_periodic(pc: &PeriodicComplex) -> Result<TexVerdict> {
    let w = &pc.window;
    let h = homology(w);
    let exact = pc.interior.clone().all(|n| h.module(n).is_zero_module());
    let flat = degreewise_member(is_flat, w);
    let e = sphere(0, &FgModule::free(w.ring(), 1));
    let t = tensor_complex(&e, w)?;
    let ht = homology(&t.complex);
    let tensor_exact = pc.interior.clone().all(|n| ht.module(n).is_zero_module());
    Ok(TexVerdict { exact, flat, tensor_exact })
}

/// Indices of sample complexes `E` with `T(E, C)` not exact.
#[derive(Clone, Debug)]
pub struct HFlatVerdict {
    pub failures: Vec<usize>,
    pub tested: usize,
}

impl HFlatVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn h_flat_check(c: &ChainComplex, sample: &[ChainComplex]) -> Result<HFlatVerdict> {
    let mut failures = Vec::new();
    for (i, e) in sample.iter().enumerate() {
        if !is_exact(e) {
            return Err(Error::Precondition(format!("sample complex {i} is not exact")));
        }
        if !is_exact(&tensor_complex(e, c)?.complex) {
            failures.push(i);
        }
    }
    Ok(HFlatVerdict { failures, tested: sample.len() })
}

/// `Ker v ↣ B ↠ Im v` as a complex in degrees `lo..=lo+2`.
pub fn ses_complex(v: &ModMorphism, lo: i64) -> Result<ChainComplex> {
    let k = kernel(v);
    let im = image(v);
    ChainComplex::new(v.source().ring(), lo, vec![im.module, v.source().clone(), k.module], vec![im.epi, k.inclusion])
}

/// Random exact complexes: short exact sequences, disks and cones of identities.
pub fn exact_samples<R: Rng>(rng: &mut R, ring: Ring, count: usize, bound: i64) -> Vec<ChainComplex> {
    let mut out = Vec::new();
    if ring.is_integers() {
        let z = FgModule::free(ring, 1);
        out.push(ses_complex(&cokernel_of_scalar(&z, 2), 0).expect("exact"));
    }
    while out.len() < count {
        let lo = rng.gen_range(-1..=1);
        let c = match rng.gen_range(0..3) {
            0 => {
                let b = random::module(rng, ring, 3, bound);
                let t = random::module(rng, ring, 3, bound);
                ses_complex(&random::morphism(rng, &b, &t, bound), lo).expect("exact")
            }
            1 => disk(lo + 1, &random::small_module(rng, ring, 2, 4)),
            _ => {
                let x = random::bounded_free_complex(rng, ring, lo..=lo, 2, 2, bound);
                cone(&ComplexMorphism::identity(&x)).expect("cone").complex
            }
        };
        out.push(c);
    }
    out.truncate(count);
    out
}

/// `ℤ → ℤ/c`, the quotient map.
fn cokernel_of_scalar(z: &FgModule, c: i64) -> ModMorphism {
    let q = FgModule::cyclic(z.ring(), c);
    ModMorphism::new(z, &q, IntMatrix::identity(1)).expect("quotient")
}

#[derive(Clone, Debug, Default)]
pub struct HomotopyPerp {
    /// `(index in K, n)` with `Hₙ(Homgr(C,D)) ≠ 0`.
    pub failures: Vec<(usize, i64)>,
    /// `(index in K, n)` where the null-homotopy test of cycles disagrees with the homology.
    pub cross_check_failures: Vec<(usize, i64)>,
}

impl HomotopyPerp {
    pub fn is_member(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn consistent(&self) -> bool {
        self.cross_check_failures.is_empty()
    }
}

/// `D ∈ K^{⊥h}`. Each `Hₙ(Homgr(C,D))` is also compared with whether every chain map
/// `C → D(n)` coming from a cycle generator is null-homotopic.
pub fn homotopy_perp_member(d: &ChainComplex, k: &[ChainComplex]) -> Result<HomotopyPerp> {
    let mut out = HomotopyPerp::default();
    for (i, c) in k.iter().enumerate() {
        let hc = homgr(c, d)?;
        let h = homology(&hc.complex);
        for n in hc.complex.degrees() {
            let vanishes = h.module(n).is_zero_module();
            if !vanishes {
                out.failures.push((i, n));
            }
            let dn = d.translate(n);
            let j = h.at(n).j;
            let mut all_null = true;
            for x in j.matrix().columns() {
                let g = hc.to_graded(n, &x);
                let comps: BTreeMap<i64, ModMorphism> =
                    g.components().iter().map(|(&p, f)| Ok((p, f.with_ends(&c.term(p), &dn.term(p))?))).collect::<Result<_>>()?;
                let f = ComplexMorphism::new(c, &dn, comps)?;
                if are_homotopic(&ComplexMorphism::zero(c, &dn), &f)?.is_none() {
                    all_null = false;
                    break;
                }
            }
            if all_null != vanishes {
                out.cross_check_failures.push((i, n));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::cylinder;

    fn z() -> FgModule {
        FgModule::free(Ring::Integers, 1)
    }

    fn doubling() -> ChainComplex {
        ChainComplex::new(Ring::Integers, 0, vec![z(), z()], vec![ModMorphism::scalar(&z(), 2)]).unwrap()
    }

    #[test]
    fn ex_examples() {
        assert!(ex_class_member(is_flat, &disk(1, &z())));
        assert!(!ex_class_member(|_| true, &sphere(0, &z())));
        assert!(!ex_class_member(is_flat, &doubling()));
        assert!(degreewise_member(is_flat, &doubling()));
    }

    #[test]
    fn periodic_complexes() {
        let r = Ring::from_modulus(4).unwrap();
        let pc = PeriodicComplex::complete_resolution(r, 1).unwrap();
        assert!(tex_member_periodic(&pc).unwrap().holds());
        let r8 = Ring::from_modulus(8).unwrap();
        for j in 1..3 {
            assert!(tex_member_periodic(&PeriodicComplex::complete_resolution(r8, j).unwrap()).unwrap().holds());
        }
        let f = FgModule::free(r8, 1);
        let two = ModMorphism::scalar(&f, 2);
        let four = ModMorphism::scalar(&f, 4);
        let pc = PeriodicComplex::new(four.clone(), four).unwrap();
        assert!(!tex_member_periodic(&pc).unwrap().exact);
        assert!(PeriodicComplex::new(two.clone(), two).is_err());
    }

    #[test]
    fn tex_on_bounded_complexes() {
        assert!(tex_member(&disk(0, &z())).unwrap().holds());
        assert!(!tex_member(&doubling()).unwrap().holds());
        let r = Ring::from_modulus(9).unwrap();
        assert!(tex_member(&disk(2, &FgModule::free(r, 2))).unwrap().holds());
    }

    #[test]
    fn h_flatness() {
        let mut g = random::rng(11);
        let sample = exact_samples(&mut g, Ring::Integers, 12, 3);
        assert!(sample.iter().all(is_exact));
        assert!(h_flat_check(&doubling(), &sample).unwrap().holds());
        assert!(h_flat_check(&ChainComplex::zero(Ring::Integers), &sample).unwrap().holds());
        let bad = sphere(0, &FgModule::cyclic(Ring::Integers, 2));
        assert!(!h_flat_check(&bad, &sample).unwrap().holds());
        assert!(h_flat_check(&bad, &[doubling()]).is_err());
    }

    #[test]
    fn homotopy_orthogonality() {
        let s = sphere(0, &z());
        let r = homotopy_perp_member(&s, std::slice::from_ref(&s)).unwrap();
        assert!(!r.is_member() && r.consistent());
        let d = disk(1, &z());
        let r = homotopy_perp_member(&d, &[s.clone(), doubling(), d.clone()]).unwrap();
        assert!(r.is_member() && r.consistent());
        assert!(homotopy_perp_member(&s, &[]).unwrap().is_member());
        let r = homotopy_perp_member(&doubling(), &[sphere(1, &FgModule::cyclic(Ring::Integers, 2)), s]).unwrap();
        assert!(r.consistent());
    }

    #[test]
    fn homotopy_perp_is_invariant() {
        let base = [sphere(0, &z()), sphere(1, &FgModule::cyclic(Ring::Integers, 2))];
        let k: Vec<ChainComplex> = base.iter().flat_map(|c| (-6..=6).map(move |p| c.translate(p))).collect();
        let unit = ChainComplex::new(Ring::Integers, 0, vec![z(), z()], vec![ModMorphism::identity(&z())]).unwrap();
        for d in [doubling(), unit] {
            let m = homotopy_perp_member(&d, &k).unwrap();
            assert!(m.consistent());
            let cyl = cylinder(&ComplexMorphism::identity(&d)).unwrap();
            assert_eq!(homotopy_perp_member(&cyl.complex, &k).unwrap().is_member(), m.is_member());
            for p in -2..=2 {
                assert_eq!(homotopy_perp_member(&d.translate(p), &k).unwrap().is_member(), m.is_member());
            }
        }
    }
}
