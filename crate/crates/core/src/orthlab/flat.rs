use rand::Rng;

use crate::chaincx::{ChainComplex, ComplexMorphism};
use crate::error::{Error, Result};
use crate::fgmod::{hom_module, is_exact_at, is_flat, is_injective_object, is_mono, kernel, tensor_morphism, FgModule, ModMorphism, Ring};
use crate::random;
use crate::thc::{tensor_chain_map, tensor_complex};

use super::family::TestFamily;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambekCheck {
    pub flat: bool,
    /// `Hom(P, R)` is injective.
    pub dual_injective: bool,
}

impl LambekCheck {
    pub fn agrees(&self) -> bool {
        self.flat == self.dual_injective
    }
}

/// `P` flat ⇔ `Hom(P, R)` injective, with `R` the injective cogenerator of ℤ/pᵏ.
pub fn lambek_flat_check(p: &FgModule) -> Result<LambekCheck> {
    let ring = p.ring();
    if ring.is_integers() {
        return Err(Error::BadRing("the Lambek test needs Z/p^k".into()));
    }
    let dual = hom_module(p, &FgModule::free(ring, 1))?.module;
    Ok(LambekCheck { flat: is_flat(p), dual_injective: is_injective_object(&dual) })
}

/// Per relevant family mono `u`, whether `T(u, P)` is mono.
#[derive(Clone, Debug)]
pub struct RelativeFlatness {
    pub per_mono: Vec<(ModMorphism, bool)>,
}

impl RelativeFlatness {
    pub fn holds(&self) -> bool {
        self.per_mono.iter().all(|(_, b)| *b)
    }
}

/// `K₁`-flatness of `P`: `T(−,P)` keeps the family monos with cokernel in `K₁` mono.
pub fn relative_flat_check(p: &FgModule, k1: &TestFamily) -> Result<RelativeFlatness> {
    let id = ModMorphism::identity(p);
    let mut per_mono = Vec::new();
    for u in k1.relevant_monos() {
        let t = tensor_morphism(&u.mono, &id)?;
        per_mono.push((u.mono.clone(), is_mono(&t)));
    }
    Ok(RelativeFlatness { per_mono })
}

/// The complex version, for monos of complexes given explicitly.
pub fn relative_flat_check_complex(p: &ChainComplex, monos: &[ComplexMorphism]) -> Result<Vec<bool>> {
    let id = ComplexMorphism::identity(p);
    let mut out = Vec::new();
    for u in monos {
        let src = tensor_complex(u.source(), p)?;
        let dst = tensor_complex(u.target(), p)?;
        let t = tensor_chain_map(&src, &dst, u, &id)?;
        out.push(t.source().degrees().all(|n| is_mono(&t.component(n))));
    }
    Ok(out)
}

/// A composable pair `A → B → C`.
pub type Pair = (ModMorphism, ModMorphism);

/// `0 → R → 0`, which is not exact and becomes exact after `T(P,−)` only for `P = 0`.
pub fn unit_probe(ring: Ring) -> Pair {
    let r = FgModule::free(ring, 1);
    let z = FgModule::zero(ring);
    (ModMorphism::zero(&z, &r), ModMorphism::zero(&r, &z))
}

/// Random composable pairs, about half of them exact.
pub fn exactness_samples<R: Rng>(rng: &mut R, ring: Ring, count: usize, bound: i64) -> Vec<Pair> {
    let mut out = vec![unit_probe(ring)];
    while out.len() < count {
        let b = random::module(rng, ring, 3, bound);
        let c = random::module(rng, ring, 3, bound);
        let v = random::morphism(rng, &b, &c, bound);
        let pair = if rng.gen_bool(0.5) {
            let k = kernel(&v).inclusion;
            (k, v)
        } else {
            let a = random::module(rng, ring, 3, bound);
            (random::morphism(rng, &a, &b, bound), v)
        };
        out.push(pair);
    }
    out
}

#[derive(Clone, Debug)]
pub struct FaithfulFlatness {
    pub flat: bool,
    /// Sample indices where exactness of `(u,v)` and of `(T(P,u),T(P,v))` disagree.
    pub disagreements: Vec<usize>,
}

impl FaithfulFlatness {
    pub fn holds(&self) -> bool {
        self.flat && self.disagreements.is_empty()
    }
}

/// `P` flat and `T(P,−)` reflects exactness on the sample. The unit probe is always included.
pub fn faithfully_flat_check(p: &FgModule, samples: &[Pair]) -> Result<FaithfulFlatness> {
    let id = ModMorphism::identity(p);
    let probe = unit_probe(p.ring());
    let mut disagreements = Vec::new();
    for (i, (u, v)) in std::iter::once(&probe).chain(samples).enumerate() {
        let before = is_exact_at(u, v);
        let after = is_exact_at(&tensor_morphism(&id, u)?, &tensor_morphism(&id, v)?);
        if before != after {
            disagreements.push(i);
        }
    }
    Ok(FaithfulFlatness { flat: is_flat(p), disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Int;

    fn ring(q: u64) -> Ring {
        Ring::from_modulus(q).unwrap()
    }

    #[test]
    fn lambek_examples() {
        let r = ring(9);
        assert!(lambek_flat_check(&FgModule::free(r, 2)).unwrap() == LambekCheck { flat: true, dual_injective: true });
        let c = lambek_flat_check(&FgModule::cyclic(r, 3)).unwrap();
        assert!(!c.flat && c.agrees());
        assert!(lambek_flat_check(&FgModule::zero(r)).unwrap().agrees());
        assert!(lambek_flat_check(&FgModule::zero(Ring::Integers)).is_err());
        let f = TestFamily::all_modules(ring(8), 16).unwrap();
        for m in &f.modules {
            assert!(lambek_flat_check(m).unwrap().agrees());
        }
    }

    #[test]
    fn relative_flatness() {
        let z = Ring::Integers;
        let p = FgModule::cyclic(z, 2);
        assert!(relative_flat_check(&p, &TestFamily::empty(z)).unwrap().holds());
        let one = FgModule::free(z, 1);
        let two = FgModule::free(z, 2);
        let incl = ModMorphism::new(&one, &two, crate::exactlin::IntMatrix::from_rows(&[vec![1], vec![0]])).unwrap();
        let double = ModMorphism::scalar(&one, 2);
        let fam = TestFamily::new(z, vec![one.clone(), FgModule::cyclic(z, 2)], vec![incl, double]).unwrap();
        let r = relative_flat_check(&p, &fam).unwrap();
        assert_eq!(r.per_mono.iter().map(|x| x.1).collect::<Vec<_>>(), vec![true, false]);
        let free_only = fam.with_class(vec![one]);
        assert!(relative_flat_check(&p, &free_only).unwrap().holds());
        assert!(relative_flat_check(&two, &fam).unwrap().holds());
    }

    #[test]
    fn faithful_flatness() {
        let z = Ring::Integers;
        let mut g = random::rng(3);
        let samples = exactness_samples(&mut g, z, 30, 4);
        assert!(faithfully_flat_check(&FgModule::free(z, 1), &samples).unwrap().holds());
        assert!(faithfully_flat_check(&FgModule::free(z, 2), &samples).unwrap().holds());
        assert!(!faithfully_flat_check(&FgModule::zero(z), &[]).unwrap().holds());
        let t = FgModule::from_factors(z, &[Int::from(2)]);
        assert!(!faithfully_flat_check(&t, &samples).unwrap().holds());
    }
}
