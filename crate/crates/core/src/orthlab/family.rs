use std::collections::{BTreeSet, HashSet};

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{Int, IntMatrix};
use crate::fgmod::{cokernel, image, is_mono, simplify, FgModule, ModMorphism, Ring};

/// A family mono together with its cokernel.
#[derive(Clone, Debug)]
pub struct FamilyMono {
    pub mono: ModMorphism,
    pub cokernel: FgModule,
}

/// A finite stand-in for a class `K`: the class itself (`modules`) and the monos a lifting
/// test ranges over.
#[derive(Clone, Debug)]
pub struct TestFamily {
    pub ring: Ring,
    pub modules: Vec<FgModule>,
    pub monos: Vec<FamilyMono>,
}

impl TestFamily {
    pub fn new(ring: Ring, modules: Vec<FgModule>, monos: Vec<ModMorphism>) -> Result<Self> {
        for m in &modules {
            if m.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), m.ring().to_string()));
            }
        }
        let mut out = Vec::new();
        for u in monos {
            if u.source().ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), u.source().ring().to_string()));
            }
            if !is_mono(&u) {
                return Err(Error::NotMono(format!("{u:?}")));
            }
            let cokernel = simplify(&cokernel(&u).module).module;
            out.push(FamilyMono { mono: u, cokernel });
        }
        Ok(Self { ring, modules, monos: out })
    }

    pub fn empty(ring: Ring) -> Self {
        Self { ring, modules: Vec::new(), monos: Vec::new() }
    }

    /// All modules of order at most `max_order` over ℤ/pᵏ, with every subgroup inclusion
    /// among them.
    pub fn all_modules(ring: Ring, max_order: u64) -> Result<Self> {
        let modules = enumerate_modules(ring, max_order)?;
        let mut monos = Vec::new();
        for b in &modules {
            monos.extend(subgroup_monos(b)?);
        }
        Self::new(ring, modules, monos)
    }

    /// Same monos, class replaced.
    pub fn with_class(&self, modules: Vec<FgModule>) -> Self {
        Self { ring: self.ring, modules, monos: self.monos.clone() }
    }

    pub fn contains(&self, m: &FgModule) -> bool {
        self.modules.iter().any(|k| k.is_isomorphic(m))
    }

    /// Monos whose cokernel lies in the class.
    pub fn relevant_monos(&self) -> impl Iterator<Item = &FamilyMono> {
        self.monos.iter().filter(|u| self.contains(&u.cokernel))
    }

    /// Re-verifies that every mono is mono with the recorded cokernel.
    pub fn check(&self) -> bool {
        self.monos.iter().all(|u| is_mono(&u.mono) && cokernel(&u.mono).module.is_isomorphic(&u.cokernel))
    }

    pub fn describe(&self) -> String {
        format!("{} modules, {} monos over {}", self.modules.len(), self.monos.len(), self.ring)
    }
}

/// Partitions of `total` into parts at most `max_part`, in decreasing order.
fn partitions(total: u32, max_part: u32) -> Vec<Vec<u32>> {
    if total == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Modules `⊕ ℤ/p^{eᵢ}` of order at most `max_order`, one per exponent partition.
pub fn enumerate_modules(ring: Ring, max_order: u64) -> Result<Vec<FgModule>> {
    let Ring::PrimePower { p, k } = ring else {
        return Err(Error::BadRing("module enumeration needs Z/p^k".into()));
    };
    let mut out = Vec::new();
    let mut e = 0u32;
    while p.checked_pow(e).is_some_and(|o| o <= max_order) {
        for part in partitions(e, k) {
            let factors: Vec<Int> = part.iter().map(|&x| Int::from(p.pow(x))).collect();
            out.push(FgModule::from_factors(ring, &factors));
        }
        e += 1;
    }
    Ok(out)
}

/// Elements of a finite module in the coordinates of its diagonal presentation.
pub struct FiniteModule {
    pub module: FgModule,
    pub orders: Vec<u64>,
    /// Diagonal presentation → `module`.
    pub to_old: ModMorphism,
    pub diagonal: FgModule,
}

impl FiniteModule {
    pub fn new(m: &FgModule) -> Result<Self> {
        let s = simplify(m);
        let mut orders = Vec::new();
        for i in 0..s.module.num_generators() {
            let d = diagonal_entry(&s.module, i);
            let d = d.to_u64().filter(|&d| d > 0).ok_or_else(|| Error::Precondition("module is not finite".into()))?;
            orders.push(d);
        }
        Ok(Self { module: m.clone(), orders, to_old: s.to_old, diagonal: s.module })
    }

    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn element(&self, mut idx: u64) -> Vec<u64> {
        self.orders
            .iter()
            .map(|&d| {
                let x = idx % d;
                idx /= d;
                x
            })
            .collect()
    }

    pub fn index(&self, x: &[u64]) -> u64 {
        let mut idx = 0;
        for (i, &d) in self.orders.iter().enumerate().rev() {
            idx = idx * d + x[i] % d;
        }
        idx
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.element(a), self.element(b));
        let s: Vec<u64> = x.iter().zip(&y).zip(&self.orders).map(|((a, b), d)| (a + b) % d).collect();
        self.index(&s)
    }

    /// Coordinates of an element in the original presentation.
    pub fn to_original(&self, idx: u64) -> Vec<Int> {
        let x: Vec<Int> = self.element(idx).into_iter().map(Int::from).collect();
        self.to_old.apply(&x)
    }

    /// Every subgroup as a sorted element set, with a generating set.
    pub fn subgroups(&self) -> Vec<(BTreeSet<u64>, Vec<u64>)> {
        let n = self.order();
        let trivial: BTreeSet<u64> = [0].into_iter().collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        seen.insert(vec![0]);
        let mut out = vec![(trivial, Vec::new())];
        let mut i = 0;
        while i < out.len() {
            let (s, gens) = out[i].clone();
            for g in 0..n {
                if s.contains(&g) {
                    continue;
                }
                let mut t = s.clone();
                let mut frontier: Vec<u64> = s.iter().copied().collect();
                while let Some(x) = frontier.pop() {
                    let y = self.add(x, g);
                    if t.insert(y) {
                        frontier.push(y);
                    }
                }
                let key: Vec<u64> = t.iter().copied().collect();
                if seen.insert(key) {
                    let mut gs = gens.clone();
                    gs.push(g);
                    out.push((t, gs));
                }
            }
            i += 1;
        }
        out
    }
}

fn diagonal_entry(m: &FgModule, i: usize) -> Int {
    let r = m.relations();
    (0..r.cols()).map(|j| r.get(i, j).clone()).find(|x| !x.is_zero()).unwrap_or_else(|| m.ring().free_factor())
}

/// One inclusion `S ↣ B` for every subgroup `S` of a finite module `B`, with `S` in diagonal form.
pub fn subgroup_monos(b: &FgModule) -> Result<Vec<ModMorphism>> {
    let fm = FiniteModule::new(b)?;
    let ring = b.ring();
    let mut out = Vec::new();
    for (_, gens) in fm.subgroups() {
        let cols: Vec<Vec<Int>> = gens.iter().map(|&g| fm.to_original(g)).collect();
        let src = FgModule::free(ring, cols.len());
        let f = ModMorphism::new(&src, b, IntMatrix::from_columns(b.num_generators(), &cols))?;
        let im = image(&f);
        let s = simplify(&im.module);
        out.push(im.mono.after(&s.to_old));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(q: u64) -> Ring {
        Ring::from_modulus(q).unwrap()
    }

    #[test]
    fn module_counts() {
        assert_eq!(enumerate_modules(ring(4), 16).unwrap().len(), 9);
        assert_eq!(enumerate_modules(ring(8), 16).unwrap().len(), 11);
        assert_eq!(enumerate_modules(ring(3), 27).unwrap().len(), 4);
        assert!(enumerate_modules(Ring::Integers, 16).is_err());
    }

    #[test]
    fn subgroup_counts() {
        let v4 = FgModule::from_factors(ring(2), &[Int::from(2), Int::from(2)]);
        assert_eq!(subgroup_monos(&v4).unwrap().len(), 5);
        let e4 = FgModule::from_factors(ring(2), &vec![Int::from(2); 4]);
        assert_eq!(FiniteModule::new(&e4).unwrap().subgroups().len(), 67);
        let z4z2 = FgModule::from_factors(ring(4), &[Int::from(4), Int::from(2)]);
        assert_eq!(subgroup_monos(&z4z2).unwrap().len(), 8);
    }

    #[test]
    fn family_records_cokernels() {
        let f = TestFamily::all_modules(ring(4), 16).unwrap();
        assert!(f.check());
        let z4 = FgModule::cyclic(ring(4), 4);
        let two = ModMorphism::scalar(&z4, 2);
        assert!(TestFamily::new(ring(4), vec![], vec![two]).is_err());
    }
}
