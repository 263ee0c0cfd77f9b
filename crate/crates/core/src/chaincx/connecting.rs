use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fgmod::{factor_through_epi, factor_through_mono, is_exact_at, lift_columns, section_on_generators, ModMorphism, SesWitness};

use super::complex::{ChainComplex, ComplexMorphism};
use super::homology::{homology, Homology};

/// A degreewise short exact sequence of complexes `D ↣ C ↠ E`.
#[derive(Clone, Debug)]
pub struct ComplexSes {
    pub left: ComplexMorphism,
    pub right: ComplexMorphism,
}

impl ComplexSes {
    pub fn new(left: ComplexMorphism, right: ComplexMorphism) -> Result<Self> {
        if left.target() != right.source() {
            return Err(Error::Shape("sequence maps are not composable".into()));
        }
        let degrees = ChainComplex::span(&[left.source(), left.target(), right.target()]);
        for n in degrees {
            SesWitness::new(left.component(n), right.component(n))?;
        }
        Ok(Self { left, right })
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        ChainComplex::span(&[self.left.source(), self.left.target(), self.right.target()])
    }
}

/// The connecting maps `∂_n: H_n(E) → H_{n−1}(D)` together with all three homologies.
#[derive(Clone, Debug)]
pub struct Connecting {
    pub hd: Homology,
    pub hc: Homology,
    pub he: Homology,
    pub maps: BTreeMap<i64, ModMorphism>,
}

/// Snake-lemma chase on generators: lift a cycle of `E` through `v`, apply `d`, pull back
/// through `u`, and read off its homology class.
pub fn connecting_general(ses: &ComplexSes) -> Result<Connecting> {
    let (u, v) = (&ses.left, &ses.right);
    let (d, c, e) = (u.source(), u.target(), v.target());
    let (hd, hc, he) = (homology(d), homology(c), homology(e));
    let mut maps = BTreeMap::new();
    for n in ses.degrees() {
        let (en, dn1) = (he.at(n), hd.at(n - 1));
        let classes = section_on_generators(&en.p)?;
        let cycles = en.j.matrix() * &classes;
        let lifted = lift_columns(&v.component(n), &cycles)?;
        let boundary = c.d(n).matrix() * &lifted;
        let pulled = lift_columns(&u.component(n - 1), &boundary)?;
        let as_cycles = lift_columns(&dn1.j, &pulled)?;
        let m = dn1.p.matrix() * &as_cycles;
        maps.insert(n, ModMorphism::new(&en.homology, &dn1.homology, m)?);
    }
    Ok(Connecting { hd, hc, he, maps })
}

/// Checks exactness of `H_n(D) → H_n(C) → H_n(E) → H_{n−1}(D) → H_{n−1}(C)` in every degree.
pub fn long_sequence_is_exact(ses: &ComplexSes, conn: &Connecting) -> Result<bool> {
    use super::homology::homology_map_at;
    let (u, v) = (&ses.left, &ses.right);
    for n in ses.degrees() {
        let hu = homology_map_at(u, &conn.hd, &conn.hc, n)?;
        let hv = homology_map_at(v, &conn.hc, &conn.he, n)?;
        let hu1 = homology_map_at(u, &conn.hd, &conn.hc, n - 1)?;
        let del = &conn.maps[&n];
        if !(is_exact_at(&hu, &hv) && is_exact_at(&hv, del) && is_exact_at(del, &hu1)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image factorization `∂ = m(−1) ∘ e` for a sequence whose outer complexes have zero
/// differential: `e v = δ` and `u m = j i`.
#[derive(Clone, Debug)]
pub struct LambekConnecting {
    /// `e: E → B(C)(−1)`
    pub e: ComplexMorphism,
    /// `m: B(C) → D`
    pub m: ComplexMorphism,
    /// `∂ = m(−1) ∘ e: E → D(−1)`
    pub connecting: ComplexMorphism,
}

pub fn connecting_lambek(ses: &ComplexSes) -> Result<LambekConnecting> {
    let (u, v) = (&ses.left, &ses.right);
    let (d, c, e) = (u.source(), u.target(), v.target());
    if !d.has_zero_differential() || !e.has_zero_differential() {
        return Err(Error::Precondition("outer complexes must have zero differential".into()));
    }
    let hc = homology(c);
    let delta = hc.delta();
    let b = hc.boundaries_complex();
    let b_shift = delta.target().clone();
    let ji = hc.j().after(&hc.i());
    let degrees = ses.degrees();
    let lo = *degrees.start();
    let hi = *degrees.end() + 1;
    let e_map = ComplexMorphism::from_fn(e, &b_shift, |n| {
        factor_through_epi(&v.component(n), &delta.component(n)).expect("δ vanishes on the image of u")
    })?;
    let m_map = ComplexMorphism::from_fn(&b, d, |n| {
        factor_through_mono(&u.component(n), &ji.component(n)).expect("boundaries map into the kernel of v")
    })?;
    let m_shift = m_map.translate(-1);
    let mut comps = BTreeMap::new();
    for n in lo..=hi {
        comps.insert(n, m_shift.component(n).after(&e_map.component(n)));
    }
    let connecting = ComplexMorphism::new(e, &d.translate(-1), comps)?;
    Ok(LambekConnecting { e: e_map, m: m_map, connecting })
}
