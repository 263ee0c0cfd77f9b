use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fgmod::{hom_module, HomSystem, ModMorphism};

use super::complex::{ChainComplex, ComplexMorphism, GradedMap};

/// `s` with `d s + s d′ = to − from`.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub from: ComplexMorphism,
    pub to: ComplexMorphism,
    /// `s_n: C′_n → C_{n+1}`
    pub components: GradedMap,
}

impl Homotopy {
    pub fn new(from: ComplexMorphism, to: ComplexMorphism, components: GradedMap) -> Result<Self> {
        if from.source() != to.source() || from.target() != to.target() {
            return Err(Error::Shape("homotopy endpoints are not parallel".into()));
        }
        if components.degree != 1 || &components.source != from.source() || &components.target != from.target() {
            return Err(Error::Shape("homotopy components must be a degree 1 map between the same complexes".into()));
        }
        let diff = to.graded().sub(from.graded())?;
        if !components.boundary().equals(&diff) {
            return Err(Error::NotExact("d s + s d differs from the difference of the endpoints".into()));
        }
        Ok(Self { from, to, components })
    }
}

/// A homotopy from `u` to `v`, found by solving `d s_n + s_{n−1} d′ = v_n − u_n`, or `None`.
pub fn are_homotopic(u: &ComplexMorphism, v: &ComplexMorphism) -> Result<Option<Homotopy>> {
    if u.source() != v.source() || u.target() != v.target() {
        return Err(Error::Shape("are_homotopic: endpoints differ".into()));
    }
    let (cp, c) = (u.source(), u.target());
    let degrees: Vec<i64> = cp.degrees().collect();
    let unknown_degrees: Vec<i64> = degrees.iter().copied().filter(|&n| n + 1 >= c.lo() && n < c.hi()).collect();
    let equation_degrees: Vec<i64> = degrees.iter().copied().filter(|&n| n >= c.lo() && n <= c.hi()).collect();
    let mut unknowns = Vec::new();
    for &n in &unknown_degrees {
        unknowns.push(hom_module(&cp.term(n), &c.term(n + 1))?);
    }
    let mut equations = Vec::new();
    for &n in &equation_degrees {
        equations.push(hom_module(&cp.term(n), &c.term(n))?);
    }
    let eq_index: BTreeMap<i64, usize> = equation_degrees.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let system = HomSystem::new(unknowns, equations, |k, s| {
        let n = unknown_degrees[k];
        let mut out = Vec::new();
        if let Some(&l) = eq_index.get(&n) {
            out.push((l, c.d(n + 1).after(s)));
        }
        if let Some(&l) = eq_index.get(&(n + 1)) {
            out.push((l, s.after(&cp.d(n + 1))));
        }
        Ok(out)
    })?;
    let rhs: Vec<ModMorphism> = equation_degrees.iter().map(|&n| v.component(n).sub(&u.component(n)).expect("parallel")).collect();
    let Some(sol) = system.solve(&rhs)? else {
        return Ok(None);
    };
    let comps = unknown_degrees.iter().copied().zip(sol).collect();
    let s = GradedMap::new(cp, c, 1, comps)?;
    Homotopy::new(u.clone(), v.clone(), s).map(Some)
}

/// Whether the identity of `c` is null-homotopic.
pub fn is_contractible(c: &ChainComplex) -> Result<bool> {
    let id = ComplexMorphism::identity(c);
    Ok(are_homotopic(&ComplexMorphism::zero(c, c), &id)?.is_some())
}
