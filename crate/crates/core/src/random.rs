//! Seeded generators for matrices, modules and complexes.

use num_integer::Integer;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chaincx::{homology, ChainComplex, ComplexMorphism, GradedMap};
use crate::exactlin::{kernel_basis, Int, IntMatrix};
use crate::fgmod::{hom_module, FgModule, ModMorphism, Ring};
use crate::thc::homgr;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `[−bound, bound]` over ℤ, in `[0, pᵏ)` over ℤ/pᵏ.
pub fn entry<R: Rng>(rng: &mut R, ring: Ring, bound: i64) -> Int {
    match ring.modulus_u64() {
        None => Int::from(rng.gen_range(-bound..=bound)),
        Some(q) => Int::from(rng.gen_range(0..q)),
    }
}

pub fn matrix<R: Rng>(rng: &mut R, ring: Ring, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols).map(|_| entry(rng, ring, bound)).collect();
    IntMatrix::new(rows, cols, data).expect("shape")
}

/// A module on at most `max_gens` generators with at most `max_gens` random relations.
pub fn module<R: Rng>(rng: &mut R, ring: Ring, max_gens: usize, bound: i64) -> FgModule {
    let gens = rng.gen_range(0..=max_gens);
    let rels = rng.gen_range(0..=max_gens);
    FgModule::new(ring, matrix(rng, ring, gens, rels, bound))
}

/// A random combination of the generators of `Hom(A,B)`.
pub fn morphism<R: Rng>(rng: &mut R, a: &FgModule, b: &FgModule, bound: i64) -> ModMorphism {
    let h = hom_module(a, b).expect("same ring");
    let coords: Vec<Int> = (0..h.module.num_generators()).map(|_| entry(rng, a.ring(), bound)).collect();
    h.to_morphism(&coords)
}

/// A finite cyclic-sum module `⊕ ℤ/dᵢ` (or `ℤ/pᵉ` summands over ℤ/pᵏ) with small orders.
pub fn small_module<R: Rng>(rng: &mut R, ring: Ring, max_summands: usize, bound: i64) -> FgModule {
    let n = rng.gen_range(0..=max_summands);
    let factors: Vec<Int> = (0..n)
        .map(|_| match ring.modulus_u64() {
            None => Int::from(rng.gen_range(0..=bound.max(1))),
            Some(_) => {
                let q = ring.modulus().expect("modulus");
                let e = rng.gen_range(0..=prime_exponent(&q));
                prime_of(&q).pow(e)
            }
        })
        .collect();
    FgModule::from_factors(ring, &factors)
}

fn prime_of(q: &Int) -> Int {
    let mut p = Int::from(2);
    while !q.is_multiple_of(&p) {
        p += 1;
    }
    p
}

fn prime_exponent(q: &Int) -> u32 {
    let p = prime_of(q);
    let (mut k, mut r) = (0, q.clone());
    while r.is_multiple_of(&p) && r > Int::from(1) {
        r /= &p;
        k += 1;
    }
    k
}

/// A free complex with `ranks[i]` in degree `lo + i`. The lowest differential is arbitrary;
/// each higher one is a random combination of a kernel basis of the one below.
pub fn free_complex<R: Rng>(rng: &mut R, ring: Ring, lo: i64, ranks: &[usize], bound: i64) -> ChainComplex {
    let terms: Vec<FgModule> = ranks.iter().map(|&r| FgModule::free(ring, r)).collect();
    let modulus = ring.modulus();
    let mut diffs: Vec<ModMorphism> = Vec::new();
    for i in 1..terms.len() {
        let (src, dst) = (&terms[i], &terms[i - 1]);
        let m = match diffs.last() {
            None => matrix(rng, ring, dst.num_generators(), src.num_generators(), bound),
            Some(below) => {
                let k = kernel_basis(below.matrix(), modulus.as_ref()).expect("modulus");
                if k.cols() == 0 {
                    IntMatrix::zeros(dst.num_generators(), src.num_generators())
                } else {
                    let coeffs = matrix(rng, ring, k.cols(), src.num_generators(), bound.min(2));
                    &k * &coeffs
                }
            }
        };
        diffs.push(ModMorphism::new(src, dst, m).expect("free source"));
    }
    if terms.is_empty() {
        return ChainComplex::zero(ring);
    }
    ChainComplex::new(ring, lo, terms, diffs).expect("d∘d = 0 by construction")
}

/// Random support `[lo, lo + len)` with `len ≤ max_len` and ranks `≤ max_rank`.
pub fn bounded_free_complex<R: Rng>(
    rng: &mut R,
    ring: Ring,
    lo_range: std::ops::RangeInclusive<i64>,
    max_len: usize,
    max_rank: usize,
    bound: i64,
) -> ChainComplex {
    let lo = rng.gen_range(lo_range);
    let len = rng.gen_range(1..=max_len.max(1));
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    free_complex(rng, ring, lo, &ranks, bound)
}

/// A random element of `Homgr(src, dst)` in degree `degree`.
pub fn graded_map<R: Rng>(rng: &mut R, src: &ChainComplex, dst: &ChainComplex, degree: i64, bound: i64) -> GradedMap {
    let hc = homgr(src, dst).expect("same ring");
    if !hc.complex.degrees().contains(&degree) {
        return GradedMap::zero(src, dst, degree);
    }
    let n = hc.complex.term(degree).num_generators();
    let x: Vec<Int> = (0..n).map(|_| entry(rng, src.ring(), bound)).collect();
    hc.to_graded(degree, &x)
}

/// A random chain map, as a combination of generators of the degree 0 cycles of `Homgr(src, dst)`.
pub fn chain_map<R: Rng>(rng: &mut R, src: &ChainComplex, dst: &ChainComplex, bound: i64) -> ComplexMorphism {
    let hc = homgr(src, dst).expect("same ring");
    if !hc.complex.degrees().contains(&0) {
        return ComplexMorphism::zero(src, dst);
    }
    let j = homology(&hc.complex).at(0).j;
    let coeffs: Vec<Int> = (0..j.matrix().cols()).map(|_| entry(rng, src.ring(), bound)).collect();
    let x = j.matrix().mul_vec(&coeffs);
    ComplexMorphism::from_graded(hc.to_graded(0, &x)).expect("cycles of Homgr are chain maps")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_complexes_are_complexes() {
        let mut r = rng(7);
        for ring in [Ring::Integers, Ring::prime_power(3, 2).unwrap()] {
            for _ in 0..20 {
                let c = bounded_free_complex(&mut r, ring, -1..=1, 4, 3, 3);
                for n in c.degrees() {
                    assert!(c.d(n).after(&c.d(n + 1)).is_zero());
                }
            }
        }
    }

    #[test]
    fn random_chain_maps_are_chain_maps() {
        let mut r = rng(5);
        for _ in 0..10 {
            let a = bounded_free_complex(&mut r, Ring::Integers, 0..=1, 3, 2, 3);
            let b = bounded_free_complex(&mut r, Ring::Integers, 0..=1, 3, 2, 3);
            let u = chain_map(&mut r, &a, &b, 3);
            assert!(u.graded().is_chain_map());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = bounded_free_complex(&mut rng(11), Ring::Integers, 0..=0, 4, 3, 4);
        let b = bounded_free_complex(&mut rng(11), Ring::Integers, 0..=0, 4, 3, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn small_modules_over_prime_powers() {
        let ring = Ring::prime_power(2, 3).unwrap();
        let mut r = rng(1);
        for _ in 0..10 {
            let m = small_module(&mut r, ring, 3, 4);
            assert!(m.canonical_form().iter().all(|d| Int::from(8).is_multiple_of(d)));
        }
    }
}
