use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactlin::IntMatrix;
use crate::fgmod::{direct_sum, is_iso, FgModule, ModMorphism, Ring};

/// `(-1)^n` as a negation flag.
pub fn odd(n: i64) -> bool {
    n.rem_euclid(2) == 1
}

/// Bounded chain complex with differentials `d_n: C_n → C_{n-1}`. Terms outside the
/// support `[lo, hi]` are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    terms: Vec<FgModule>,
    /// `diffs[i] = d_{lo+i+1}`
    diffs: Vec<ModMorphism>,
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainComplex[{}..={}] over {}", self.lo, self.hi(), self.ring)?;
        let mut m = f.debug_map();
        for n in self.degrees() {
            m.entry(&n, &self.term(n).describe());
        }
        m.finish()
    }
}

impl ChainComplex {
    /// `terms[i]` sits in degree `lo + i`; `diffs[i]: terms[i+1] → terms[i]`.
    pub fn new(ring: Ring, lo: i64, terms: Vec<FgModule>, diffs: Vec<ModMorphism>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::NotComplex(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for t in &terms {
            if t.ring() != ring {
                return Err(Error::RingMismatch(ring.to_string(), t.ring().to_string()));
            }
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.source() != &terms[i + 1] || d.target() != &terms[i] {
                return Err(Error::NotComplex(format!("differential in degree {} has wrong ends", lo + i as i64 + 1)));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].after(&diffs[i]).is_zero() {
                return Err(Error::NotComplex(format!("d∘d ≠ 0 at degree {}", lo + i as i64 + 1)));
            }
        }
        Ok(Self { ring, lo, terms, diffs })
    }

    /// Builds a complex from sparse data; gaps are filled with zero modules.
    pub fn from_maps(ring: Ring, terms: &BTreeMap<i64, FgModule>, diffs: &BTreeMap<i64, ModMorphism>) -> Result<Self> {
        let degrees: Vec<i64> = terms.keys().chain(diffs.keys()).copied().collect();
        let (Some(&lo0), Some(&hi0)) = (degrees.iter().min(), degrees.iter().max()) else {
            return Ok(Self::zero(ring));
        };
        let lo = diffs.keys().map(|n| n - 1).chain([lo0]).min().unwrap_or(lo0);
        let hi = hi0;
        let zero = FgModule::zero(ring);
        let ts: Vec<FgModule> = (lo..=hi).map(|n| terms.get(&n).cloned().unwrap_or_else(|| zero.clone())).collect();
        let mut ds = Vec::new();
        for n in lo + 1..=hi {
            let (s, t) = (&ts[(n - lo) as usize], &ts[(n - 1 - lo) as usize]);
            ds.push(match diffs.get(&n) {
                Some(d) => d.clone(),
                None => ModMorphism::zero(s, t),
            });
        }
        Self::new(ring, lo, ts, ds)
    }

    pub fn zero(ring: Ring) -> Self {
        Self { ring, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn is_empty_support(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, n: i64) -> FgModule {
        if n < self.lo || n > self.hi() {
            FgModule::zero(self.ring)
        } else {
            self.terms[(n - self.lo) as usize].clone()
        }
    }

    /// `d_n: C_n → C_{n-1}`
    pub fn d(&self, n: i64) -> ModMorphism {
        if n > self.lo && n <= self.hi() {
            self.diffs[(n - self.lo - 1) as usize].clone()
        } else {
            ModMorphism::zero(&self.term(n), &self.term(n - 1))
        }
    }

    pub fn has_zero_differential(&self) -> bool {
        self.diffs.iter().all(ModMorphism::is_zero)
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(FgModule::num_generators).sum()
    }

    /// `C(p)_n = C_{n+p}` with differential `(-1)^p d_{n+p}`.
    pub fn translate(&self, p: i64) -> ChainComplex {
        Self { ring: self.ring, lo: self.lo - p, terms: self.terms.clone(), diffs: self.diffs.iter().map(|d| d.signed(odd(p))).collect() }
    }

    /// Every degree in `[lo, hi]` of both complexes.
    pub fn joint_degrees(a: &ChainComplex, b: &ChainComplex) -> std::ops::RangeInclusive<i64> {
        Self::span(&[a, b])
    }

    /// Smallest interval containing the supports of all the complexes.
    pub fn span(cs: &[&ChainComplex]) -> std::ops::RangeInclusive<i64> {
        let live: Vec<&&ChainComplex> = cs.iter().filter(|c| !c.is_empty_support()).collect();
        match (live.iter().map(|c| c.lo).min(), live.iter().map(|c| c.hi()).max()) {
            (Some(lo), Some(hi)) => lo..=hi,
            #[allow(clippy::reversed_empty_ranges)]
            _ => 0..=-1,
        }
    }
}

/// `Dⁿ(A)`: `A` in degrees `n` and `n-1` joined by the identity.
pub fn disk(n: i64, a: &FgModule) -> ChainComplex {
    ChainComplex::new(a.ring(), n - 1, vec![a.clone(), a.clone()], vec![ModMorphism::identity(a)]).expect("disk")
}

/// `Sⁿ(A)`: `A` concentrated in degree `n`.
pub fn sphere(n: i64, a: &FgModule) -> ChainComplex {
    ChainComplex::new(a.ring(), n, vec![a.clone()], vec![]).expect("sphere")
}

/// A family of module maps `f_p: C′_p → C_{p+degree}`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub degree: i64,
    components: BTreeMap<i64, ModMorphism>,
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedMap(degree {}) ", self.degree)?;
        f.debug_map().entries(self.components.iter().map(|(k, v)| (k, v.matrix().to_string()))).finish()
    }
}

impl GradedMap {
    /// Components not listed are zero. Each listed component must have the right ends.
    pub fn new(source: &ChainComplex, target: &ChainComplex, degree: i64, components: BTreeMap<i64, ModMorphism>) -> Result<Self> {
        for (&p, f) in &components {
            if f.source() != &source.term(p) || f.target() != &target.term(p + degree) {
                return Err(Error::Shape(format!("component {p} has wrong ends")));
            }
        }
        let components = components.into_iter().filter(|(_, f)| !f.matrix().is_zero()).collect();
        Ok(Self { source: source.clone(), target: target.clone(), degree, components })
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex, degree: i64) -> Self {
        Self { source: source.clone(), target: target.clone(), degree, components: BTreeMap::new() }
    }

    /// `f_p: C′_p → C_{p+degree}`
    pub fn component(&self, p: i64) -> ModMorphism {
        self.components.get(&p).cloned().unwrap_or_else(|| ModMorphism::zero(&self.source.term(p), &self.target.term(p + self.degree)))
    }

    /// Source degrees where both ends can be nonzero.
    pub fn active_degrees(&self) -> Vec<i64> {
        self.source.degrees().filter(|&p| p + self.degree >= self.target.lo() && p + self.degree <= self.target.hi()).collect()
    }

    pub fn equals(&self, other: &GradedMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.degree == other.degree
            && self.active_degrees().into_iter().all(|p| self.component(p).equals(&other.component(p)))
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(ModMorphism::is_zero)
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        if self.source != other.source || self.target != other.target || self.degree != other.degree {
            return Err(Error::Shape("graded maps are not parallel".into()));
        }
        let comps = self.active_degrees().into_iter().map(|p| (p, self.component(p).add(&other.component(p)).expect("parallel"))).collect();
        GradedMap::new(&self.source, &self.target, self.degree, comps)
    }

    pub fn neg(&self) -> GradedMap {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            components: self.components.iter().map(|(&p, f)| (p, f.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.add(&other.neg())
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        if other.target != self.source {
            return Err(Error::Shape("graded maps are not composable".into()));
        }
        let comps = other.active_degrees().into_iter().map(|p| (p, self.component(p + other.degree).after(&other.component(p)))).collect();
        GradedMap::new(&other.source, &self.target, self.degree + other.degree, comps)
    }

    /// The differential of the target as a degree −1 graded map.
    pub fn differential(c: &ChainComplex) -> GradedMap {
        let comps = c.degrees().map(|n| (n, c.d(n))).collect();
        GradedMap::new(c, c, -1, comps).expect("differential")
    }

    /// `d∘f − (−1)^{degree} f∘d′`, the boundary in the Hom complex.
    pub fn boundary(&self) -> GradedMap {
        let d = GradedMap::differential(&self.target);
        let dp = GradedMap::differential(&self.source);
        let left = d.compose(self).expect("ends");
        let right = self.compose(&dp).expect("ends");
        left.sub(&if odd(self.degree) { right.neg() } else { right }).expect("parallel")
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.boundary().is_zero()
    }

    pub fn components(&self) -> &BTreeMap<i64, ModMorphism> {
        &self.components
    }
}

/// Chain map `u: C′ → C` with `u_{n-1} d′_n = d_n u_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexMorphism(GradedMap);

impl fmt::Debug for ComplexMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMorphism{:?}", self.0)
    }
}

impl ComplexMorphism {
    pub fn new(source: &ChainComplex, target: &ChainComplex, components: BTreeMap<i64, ModMorphism>) -> Result<Self> {
        Self::from_graded(GradedMap::new(source, target, 0, components)?)
    }

    pub fn from_graded(g: GradedMap) -> Result<Self> {
        if g.degree != 0 {
            return Err(Error::Shape("chain maps have degree 0".into()));
        }
        let degrees = ChainComplex::joint_degrees(&g.source, &g.target);
        for n in degrees.clone().chain([degrees.end() + 1]) {
            let lhs = g.component(n - 1).after(&g.source.d(n));
            let rhs = g.target.d(n).after(&g.component(n));
            if !lhs.equals(&rhs) {
                return Err(Error::NotComplex(format!("chain map condition fails in degree {n}")));
            }
        }
        Ok(Self(g))
    }

    pub fn from_fn<F: Fn(i64) -> ModMorphism>(source: &ChainComplex, target: &ChainComplex, f: F) -> Result<Self> {
        let comps = ChainComplex::joint_degrees(source, target).map(|n| (n, f(n))).collect();
        Self::new(source, target, comps)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        Self(GradedMap::new(c, c, 0, c.degrees().map(|n| (n, ModMorphism::identity(&c.term(n)))).collect()).expect("identity"))
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self(GradedMap::zero(source, target, 0))
    }

    pub fn source(&self) -> &ChainComplex {
        &self.0.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.0.target
    }

    pub fn component(&self, n: i64) -> ModMorphism {
        self.0.component(n)
    }

    pub fn graded(&self) -> &GradedMap {
        &self.0
    }

    pub fn compose(&self, other: &ComplexMorphism) -> Result<ComplexMorphism> {
        Ok(Self(self.0.compose(&other.0)?))
    }

    /// `self ∘ other`, panicking on mismatched ends.
    pub fn after(&self, other: &ComplexMorphism) -> ComplexMorphism {
        self.compose(other).expect("composable chain maps")
    }

    pub fn add(&self, other: &ComplexMorphism) -> Result<ComplexMorphism> {
        Ok(Self(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &ComplexMorphism) -> Result<ComplexMorphism> {
        Ok(Self(self.0.sub(&other.0)?))
    }

    pub fn neg(&self) -> ComplexMorphism {
        Self(self.0.neg())
    }

    pub fn equals(&self, other: &ComplexMorphism) -> bool {
        self.0.equals(&other.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Degreewise isomorphism.
    pub fn is_iso(&self) -> bool {
        ChainComplex::joint_degrees(self.source(), self.target()).all(|n| is_iso(&self.component(n)))
    }

    /// `u(p)_n = u_{n+p}`
    pub fn translate(&self, p: i64) -> ComplexMorphism {
        let s = self.source().translate(p);
        let t = self.target().translate(p);
        let comps = self.0.components.iter().map(|(&n, f)| (n - p, f.clone())).collect();
        Self(GradedMap::new(&s, &t, 0, comps).expect("translate"))
    }
}

/// `C ⊕ C′` with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct ComplexSum {
    pub complex: ChainComplex,
    pub injections: [ComplexMorphism; 2],
    pub projections: [ComplexMorphism; 2],
}

pub fn complex_sum(a: &ChainComplex, b: &ChainComplex) -> Result<ComplexSum> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().to_string(), b.ring().to_string()));
    }
    let degrees = ChainComplex::joint_degrees(a, b);
    let lo = *degrees.start();
    let sums: BTreeMap<i64, _> = degrees.clone().map(|n| (n, direct_sum(&[a.term(n), b.term(n)]).expect("ring"))).collect();
    let terms: Vec<FgModule> = degrees.clone().map(|n| sums[&n].module.clone()).collect();
    let diffs: Vec<ModMorphism> = degrees
        .clone()
        .skip(1)
        .map(|n| {
            let m = IntMatrix::block_diag(&[a.d(n).matrix(), b.d(n).matrix()]);
            ModMorphism::new(&sums[&n].module, &sums[&(n - 1)].module, m).expect("block diagonal differential")
        })
        .collect();
    let complex = ChainComplex::new(a.ring(), lo, terms, diffs)?;
    let inj = |k: usize, src: &ChainComplex| {
        ComplexMorphism::from_fn(src, &complex, |n| {
            sums.get(&n).map_or_else(|| ModMorphism::zero(&src.term(n), &complex.term(n)), |s| s.injections[k].clone())
        })
    };
    let proj = |k: usize, dst: &ChainComplex| {
        ComplexMorphism::from_fn(&complex, dst, |n| {
            sums.get(&n).map_or_else(|| ModMorphism::zero(&complex.term(n), &dst.term(n)), |s| s.projections[k].clone())
        })
    };
    Ok(ComplexSum { injections: [inj(0, a)?, inj(1, b)?], projections: [proj(0, a)?, proj(1, b)?], complex })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgModule {
        FgModule::free(Ring::Integers, 1)
    }

    #[test]
    fn translation_signs() {
        let d1 = disk(1, &z());
        assert_eq!(d1.translate(0), d1);
        let t = d1.translate(-1);
        assert_eq!((t.lo(), t.hi()), (1, 2));
        assert_eq!(t.d(2).matrix(), &IntMatrix::from_rows(&[vec![-1]]));
        assert_eq!(d1.translate(1).translate(2), d1.translate(3));
        let s = sphere(2, &z());
        assert!(s.translate(5).has_zero_differential());
    }

    #[test]
    fn d_squared_is_checked() {
        let m = z();
        let one = ModMorphism::identity(&m);
        assert!(ChainComplex::new(Ring::Integers, 0, vec![m.clone(), m.clone(), m.clone()], vec![one.clone(), one]).is_err());
    }

    #[test]
    fn chain_map_condition_is_checked() {
        let c = disk(1, &z());
        let mut comps = BTreeMap::new();
        comps.insert(1, ModMorphism::identity(&z()));
        assert!(ComplexMorphism::new(&c, &c, comps.clone()).is_err());
        comps.insert(0, ModMorphism::identity(&z()));
        assert!(ComplexMorphism::new(&c, &c, comps).is_ok());
    }

    #[test]
    fn sums_of_complexes() {
        let s = complex_sum(&disk(1, &z()), &sphere(3, &z())).unwrap();
        assert_eq!(s.complex.degrees(), 0..=3);
        assert_eq!(s.complex.term(0).num_generators(), 1);
        let round = s.projections[0].after(&s.injections[0]);
        assert!(round.equals(&ComplexMorphism::identity(&disk(1, &z()))));
    }
}
