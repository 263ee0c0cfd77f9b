use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactlin::IntMatrix;
use crate::fgmod::{direct_sum, FgModule, ModMorphism};

use super::complex::{ChainComplex, ComplexMorphism, GradedMap};
use super::homotopy::Homotopy;

/// `Con(u)` for `u: C′ → C`, with `Con(u)_n = C′_{n−1} ⊕ C_n` and
/// `d(x, y) = (−d′x, u x + d y)`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    /// `π: C → Con(u)`, `y ↦ (0, y)`
    pub pi: ComplexMorphism,
    /// `δ: Con(u) → C′(−1)`, `(x, y) ↦ x`
    pub delta: ComplexMorphism,
}

/// `Cyl(u)_n = C′_n ⊕ C′_{n−1} ⊕ C_n` with `d(a, x, y) = (d′a − x, −d′x, u x + d y)`.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub complex: ChainComplex,
    /// `ũ: C′ → Cyl(u)`, `a ↦ (a, 0, 0)`
    pub tilde_u: ComplexMorphism,
    /// `β: Cyl(u) → C`, `(a, x, y) ↦ u a + y`
    pub beta: ComplexMorphism,
    /// `β̃: C → Cyl(u)`, `y ↦ (0, 0, y)`
    pub beta_section: ComplexMorphism,
    /// `π̃: Cyl(u) → Con(u)`, `(a, x, y) ↦ (x, y)`
    pub to_cone: ComplexMorphism,
    /// `β̃β ∼ 1` via `s(a, x, y) = (0, −a, 0)`
    pub homotopy: Homotopy,
    pub cone: Cone,
}

fn degree_range(u: &ComplexMorphism, extra_top: i64) -> std::ops::RangeInclusive<i64> {
    let r = ChainComplex::joint_degrees(u.source(), u.target());
    if r.is_empty() {
        r
    } else {
        *r.start()..=*r.end() + extra_top
    }
}

fn block(rows: &[usize], cols: &[usize], entries: &[(usize, usize, IntMatrix)]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.iter().sum(), cols.iter().sum());
    for (r, c, b) in entries {
        let r0: usize = rows[..*r].iter().sum();
        let c0: usize = cols[..*c].iter().sum();
        m.set_block(r0, c0, b);
    }
    m
}

pub fn cone(u: &ComplexMorphism) -> Result<Cone> {
    let (cp, c) = (u.source(), u.target());
    let range = degree_range(u, 1);
    let sums: BTreeMap<i64, _> = range.clone().map(|n| (n, direct_sum(&[cp.term(n - 1), c.term(n)]).expect("ring"))).collect();
    let term = |n: i64| sums.get(&n).map_or_else(|| FgModule::zero(c.ring()), |s| s.module.clone());
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in range.clone() {
        terms.insert(n, term(n));
        if sums.contains_key(&(n - 1)) {
            let rows = [cp.term(n - 2).num_generators(), c.term(n - 1).num_generators()];
            let cols = [cp.term(n - 1).num_generators(), c.term(n).num_generators()];
            let m = block(
                &rows,
                &cols,
                &[(0, 0, -cp.d(n - 1).matrix()), (1, 0, u.component(n - 1).matrix().clone()), (1, 1, c.d(n).matrix().clone())],
            );
            diffs.insert(n, ModMorphism::new(&term(n), &term(n - 1), m)?);
        }
    }
    let complex = ChainComplex::from_maps(c.ring(), &terms, &diffs)?;
    let pi = ComplexMorphism::from_fn(c, &complex, |n| match sums.get(&n) {
        Some(s) => s.injections[1].with_ends(&c.term(n), &complex.term(n)).expect("pi"),
        None => ModMorphism::zero(&c.term(n), &complex.term(n)),
    })?;
    let shifted = cp.translate(-1);
    let delta = ComplexMorphism::from_fn(&complex, &shifted, |n| match sums.get(&n) {
        Some(s) => s.projections[0].with_ends(&complex.term(n), &shifted.term(n)).expect("delta"),
        None => ModMorphism::zero(&complex.term(n), &shifted.term(n)),
    })?;
    Ok(Cone { complex, pi, delta })
}

pub fn cylinder(u: &ComplexMorphism) -> Result<Cylinder> {
    let (cp, c) = (u.source(), u.target());
    let con = cone(u)?;
    let range = degree_range(u, 1);
    let sizes = |n: i64| [cp.term(n).num_generators(), cp.term(n - 1).num_generators(), c.term(n).num_generators()];
    let sums: BTreeMap<i64, _> = range.clone().map(|n| (n, direct_sum(&[cp.term(n), cp.term(n - 1), c.term(n)]).expect("ring"))).collect();
    let term = |n: i64| sums.get(&n).map_or_else(|| FgModule::zero(c.ring()), |s| s.module.clone());
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in range.clone() {
        terms.insert(n, term(n));
        if sums.contains_key(&(n - 1)) {
            let (rows, cols) = (sizes(n - 1), sizes(n));
            let m = block(
                &rows,
                &cols,
                &[
                    (0, 0, cp.d(n).matrix().clone()),
                    (0, 1, -&IntMatrix::identity(cols[1])),
                    (1, 1, -cp.d(n - 1).matrix()),
                    (2, 1, u.component(n - 1).matrix().clone()),
                    (2, 2, c.d(n).matrix().clone()),
                ],
            );
            diffs.insert(n, ModMorphism::new(&term(n), &term(n - 1), m)?);
        }
    }
    let complex = ChainComplex::from_maps(c.ring(), &terms, &diffs)?;
    let hom = |src: &FgModule, dst: &FgModule, m: IntMatrix| ModMorphism::new(src, dst, m).expect("structure map");
    let tilde_u = ComplexMorphism::from_fn(cp, &complex, |n| {
        let s = sizes(n);
        hom(&cp.term(n), &complex.term(n), block(&s, &[s[0]], &[(0, 0, IntMatrix::identity(s[0]))]))
    })?;
    let beta = ComplexMorphism::from_fn(&complex, c, |n| {
        let s = sizes(n);
        hom(&complex.term(n), &c.term(n), block(&[s[2]], &s, &[(0, 0, u.component(n).matrix().clone()), (0, 2, IntMatrix::identity(s[2]))]))
    })?;
    let beta_section = ComplexMorphism::from_fn(c, &complex, |n| {
        let s = sizes(n);
        hom(&c.term(n), &complex.term(n), block(&s, &[s[2]], &[(2, 0, IntMatrix::identity(s[2]))]))
    })?;
    let to_cone = ComplexMorphism::from_fn(&complex, &con.complex, |n| {
        let s = sizes(n);
        hom(
            &complex.term(n),
            &con.complex.term(n),
            block(&[s[1], s[2]], &s, &[(0, 1, IntMatrix::identity(s[1])), (1, 2, IntMatrix::identity(s[2]))]),
        )
    })?;
    let mut comps = BTreeMap::new();
    for n in range {
        let (s, t) = (sizes(n), sizes(n + 1));
        comps.insert(n, hom(&complex.term(n), &complex.term(n + 1), block(&t, &s, &[(1, 0, -&IntMatrix::identity(s[0]))])));
    }
    let s = GradedMap::new(&complex, &complex, 1, comps)?;
    let homotopy = Homotopy::new(beta_section.after(&beta), ComplexMorphism::identity(&complex), s)?;
    Ok(Cylinder { complex, tilde_u, beta, beta_section, to_cone, homotopy, cone: con })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::complex::{disk, sphere};
    use crate::chaincx::homology::{homology, is_exact, is_quasi_iso};
    use crate::exactlin::Int;
    use crate::fgmod::{is_exact_at, Ring};

    fn z() -> FgModule {
        FgModule::free(Ring::Integers, 1)
    }

    fn sample() -> ChainComplex {
        let m = FgModule::free(Ring::Integers, 2);
        let d = ModMorphism::new(&m, &m, IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]])).unwrap();
        ChainComplex::new(Ring::Integers, 0, vec![m.clone(), m], vec![d]).unwrap()
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let c = sample();
        assert!(is_exact(&cone(&ComplexMorphism::identity(&c)).unwrap().complex));
    }

    #[test]
    fn cone_of_zero_source() {
        let c = sample();
        let k = cone(&ComplexMorphism::zero(&ChainComplex::zero(Ring::Integers), &c)).unwrap();
        for n in c.degrees() {
            assert!(k.complex.term(n).is_isomorphic(&c.term(n)));
            assert_eq!(k.complex.d(n).matrix(), c.d(n).matrix());
        }
    }

    #[test]
    fn cone_of_doubling_on_sphere() {
        let s = sphere(0, &z());
        let two = ComplexMorphism::from_fn(&s, &s, |_| ModMorphism::scalar(&z(), 2)).unwrap();
        let k = cone(&two).unwrap();
        let h = homology(&k.complex);
        assert_eq!(h.module(0).canonical_form(), vec![Int::from(2)]);
        assert!(h.module(1).is_zero_module());
    }

    #[test]
    fn cone_and_cylinder_sequences_are_exact() {
        let c = sample();
        let d = disk(1, &z());
        let u = ComplexMorphism::from_fn(&d, &c, |n| {
            let m = if n == 1 { IntMatrix::from_rows(&[vec![1], vec![0]]) } else { IntMatrix::from_rows(&[vec![2], vec![0]]) };
            ModMorphism::new(&d.term(n), &c.term(n), m).unwrap()
        })
        .unwrap();
        let cyl = cylinder(&u).unwrap();
        for n in -1..=3 {
            assert!(is_exact_at(&cyl.cone.pi.component(n), &cyl.cone.delta.component(n)));
            assert!(is_exact_at(&cyl.tilde_u.component(n), &cyl.to_cone.component(n)));
        }
        assert!(cyl.beta.after(&cyl.tilde_u).equals(&u));
        assert!(cyl.beta.after(&cyl.beta_section).equals(&ComplexMorphism::identity(&c)));
        assert!(is_quasi_iso(&cyl.beta).unwrap());
    }
}
