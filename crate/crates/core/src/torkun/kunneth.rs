use crate::chaincx::{cone, homology, homology_map_at, is_exact, is_quasi_iso, ChainComplex, ComplexMorphism, Homology};
use crate::error::{Error, Result};
use crate::fgmod::{cokernel, direct_sum, has_retraction, is_flat, is_iso, is_mono, kernel, tensor_morphism, FgModule, ModMorphism, Ring};
use crate::thc::{cone_tensor_iso, tensor_chain_map, tensor_complex};

use super::gamma::{gamma_morphism, Gamma};
use super::tor::tor;

/// One degree of `T(H(C′),H(C)) ↣ H(T(C′,C)) ↠ Tor₁(H(C′),H(C))`.
#[derive(Clone, Debug)]
pub struct KunnethDegree {
    pub n: i64,
    /// `⊕_{p+q=n} T(H_p(C′),H_q(C))`
    pub left_term: FgModule,
    /// `Hₙ(T(C′,C))`
    pub middle: FgModule,
    /// `⊕_{p+q=n} Tor₁(H_p(C′),H_{q−1}(C))`
    pub right_term: FgModule,
    pub gamma: ModMorphism,
    pub cokernel: FgModule,
    /// `Ker T(H(C′), i(−1))ₙ`
    pub kernel_term: FgModule,
    pub gamma_mono: bool,
    pub cokernel_matches: bool,
    pub kernel_matches: bool,
}

impl KunnethDegree {
    pub fn exact(&self) -> bool {
        self.gamma_mono && self.cokernel_matches
    }
}

#[derive(Clone, Debug)]
pub struct KunnethReport {
    pub ring: Ring,
    pub degrees: Vec<KunnethDegree>,
}

impl KunnethReport {
    pub fn exact(&self) -> bool {
        self.degrees.iter().all(KunnethDegree::exact)
    }

    pub fn identification_holds(&self) -> bool {
        self.degrees.iter().all(|d| d.kernel_matches)
    }

    pub fn degree(&self, n: i64) -> Option<&KunnethDegree> {
        self.degrees.iter().find(|d| d.n == n)
    }
}

fn sum_of(ring: Ring, parts: Vec<FgModule>) -> Result<FgModule> {
    if parts.is_empty() {
        return Ok(FgModule::zero(ring));
    }
    Ok(direct_sum(&parts)?.module)
}

fn check_flat_cycles(h: &Homology, what: &str) -> Result<()> {
    for n in h.complex.degrees() {
        let d = h.at(n);
        if !is_flat(&d.boundaries) || !is_flat(&d.cycles) {
            return Err(Error::Precondition(format!("{what}: B or Z not flat in degree {n}")));
        }
    }
    Ok(())
}

pub fn kunneth_report(cp: &ChainComplex, c: &ChainComplex) -> Result<KunnethReport> {
    let hc = homology(c);
    check_flat_cycles(&hc, "second complex")?;
    let g = gamma_morphism(cp, c)?;
    let ring = c.ring();
    let hl = &g.z.left;
    let (lo, hi) = if cp.is_empty_support() || c.is_empty_support() { (0, -1) } else { (cp.lo() + c.lo(), cp.hi() + c.hi() + 1) };
    let mut degrees = Vec::new();
    for n in lo..=hi {
        let gamma = g.component(n);
        let left_term = g.homology_tensor.complex.term(n);
        let middle = g.z.homology.module(n);
        let mut tors = Vec::new();
        let mut kers = Vec::new();
        for p in cp.degrees() {
            let q = n - p;
            let hp = hl.module(p);
            tors.push(tor(1, &hp, &hc.module(q - 1))?);
            let i = hc.at(q - 1).i;
            kers.push(kernel(&tensor_morphism(&ModMorphism::identity(&hp), &i)?).module);
        }
        let right_term = sum_of(ring, tors)?;
        let kernel_term = sum_of(ring, kers)?;
        let coker = cokernel(&gamma).module;
        degrees.push(KunnethDegree {
            n,
            gamma_mono: is_mono(&gamma),
            cokernel_matches: coker.is_isomorphic(&right_term),
            kernel_matches: coker.is_isomorphic(&kernel_term),
            left_term,
            middle,
            right_term,
            cokernel: coker,
            kernel_term,
            gamma,
        });
    }
    Ok(KunnethReport { ring, degrees })
}

/// Every `γₙ` has a retraction and `Hₙ(T(C′,C)) ≅ left ⊕ right`.
pub fn kunneth_splits(cp: &ChainComplex, c: &ChainComplex) -> Result<bool> {
    let (hl, hc) = (homology(cp), homology(c));
    for (h, what) in [(&hl, "first complex"), (&hc, "second complex")] {
        for n in h.complex.degrees() {
            if !is_flat(&h.at(n).boundaries) {
                return Err(Error::Precondition(format!("{what}: B not projective in degree {n}")));
            }
        }
    }
    check_flat_cycles(&hc, "second complex")?;
    let report = kunneth_report(cp, c)?;
    for d in &report.degrees {
        if !d.gamma_mono {
            return Ok(false);
        }
        let both = sum_of(report.ring, vec![d.left_term.clone(), d.right_term.clone()])?;
        if !d.middle.is_isomorphic(&both) || has_retraction(&d.gamma)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The steps of the cone argument for `T(C′,u)` being a quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct QuasiIsoWitness {
    pub cone_exact: bool,
    pub gamma_iso: bool,
    pub tensor_of_cone_exact: bool,
    pub cone_iso_commutes: bool,
    pub cone_of_tensor_exact: bool,
    /// Direct comparison of `H(T(C′,u))`.
    pub direct: bool,
}

impl QuasiIsoWitness {
    pub fn holds(&self) -> bool {
        self.cone_exact && self.gamma_iso && self.tensor_of_cone_exact && self.cone_iso_commutes && self.cone_of_tensor_exact && self.direct
    }
}

fn flat_nonnegative(c: &ChainComplex) -> bool {
    c.degrees().all(|n| is_flat(&c.term(n)) && (n >= 0 || c.term(n).is_zero_module()))
}

pub fn quasi_iso_witness(cp: &ChainComplex, u: &ComplexMorphism) -> Result<QuasiIsoWitness> {
    if !is_quasi_iso(u)? {
        return Err(Error::Precondition("not a quasi-isomorphism".into()));
    }
    if !flat_nonnegative(u.source()) || !flat_nonnegative(u.target()) {
        return Err(Error::Precondition("complexes must be degreewise flat and zero in negative degrees".into()));
    }
    let con = cone(u)?;
    let cone_exact = is_exact(&con.complex);
    let g: Gamma = gamma_morphism(cp, &con.complex)?;
    let iso = cone_tensor_iso(cp, u)?;
    let tensor_of_cone_exact = is_exact(&iso.tensor_of_cone.complex);
    let cone_of_tensor_exact = is_exact(&iso.cone_of_tensor.complex);
    let td = tensor_complex(cp, u.source())?;
    let tc = tensor_complex(cp, u.target())?;
    let tensor_u = tensor_chain_map(&td, &tc, &ComplexMorphism::identity(cp), u)?;
    let (hs, ht) = (homology(tensor_u.source()), homology(tensor_u.target()));
    let mut direct = true;
    for n in ChainComplex::joint_degrees(tensor_u.source(), tensor_u.target()) {
        direct &= is_iso(&homology_map_at(&tensor_u, &hs, &ht, n)?);
    }
    Ok(QuasiIsoWitness {
        cone_exact,
        gamma_iso: g.is_iso(),
        tensor_of_cone_exact,
        cone_iso_commutes: iso.iso.is_iso() && iso.diagram_commutes(),
        cone_of_tensor_exact,
        direct,
    })
}

/// `T(C′,u)` is a quasi-isomorphism, argued through `γ(C′, Con(u))` and `Σ(C′,u)`.
pub fn quasi_iso_preservation(cp: &ChainComplex, u: &ComplexMorphism) -> Result<bool> {
    Ok(quasi_iso_witness(cp, u)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chaincx::{cylinder, disk, sphere};
    use crate::exactlin::Int;

    fn z() -> FgModule {
        FgModule::free(Ring::Integers, 1)
    }

    fn doubling() -> ChainComplex {
        ChainComplex::new(Ring::Integers, 0, vec![z(), z()], vec![ModMorphism::scalar(&z(), 2)]).unwrap()
    }

    #[test]
    fn doubling_pair() {
        let c = doubling();
        let r = kunneth_report(&c, &c).unwrap();
        let d1 = r.degree(1).unwrap();
        assert!(d1.left_term.is_zero_module());
        assert_eq!(d1.middle.canonical_form(), vec![Int::from(2)]);
        assert_eq!(d1.right_term.canonical_form(), vec![Int::from(2)]);
        assert!(r.exact() && r.identification_holds());
        assert!(kunneth_splits(&c, &c).unwrap());
    }

    #[test]
    fn free_sphere_has_no_tor() {
        let c = doubling();
        let s = sphere(1, &FgModule::free(Ring::Integers, 2));
        let r = kunneth_report(&c, &s).unwrap();
        assert!(r.exact());
        for d in &r.degrees {
            assert!(d.right_term.is_zero_module());
            assert!(is_iso(&d.gamma));
        }
    }

    #[test]
    fn disks_kill_everything() {
        let c = doubling();
        let r = kunneth_report(&c, &disk(1, &z())).unwrap();
        for d in &r.degrees {
            assert!(d.left_term.is_zero_module() && d.middle.is_zero_module() && d.right_term.is_zero_module());
        }
    }

    #[test]
    fn torsion_in_cycles_is_rejected() {
        let c = sphere(0, &FgModule::cyclic(Ring::Integers, 2));
        assert!(matches!(kunneth_report(&doubling(), &c), Err(Error::Precondition(_))));
    }

    #[test]
    fn quasi_isomorphisms_are_preserved() {
        let c = doubling();
        assert!(quasi_iso_preservation(&c, &ComplexMorphism::identity(&c)).unwrap());
        let unit = ChainComplex::new(Ring::Integers, 0, vec![z(), z()], vec![ModMorphism::identity(&z())]).unwrap();
        let to_zero = ComplexMorphism::zero(&unit, &ChainComplex::zero(Ring::Integers));
        assert!(quasi_iso_preservation(&c, &to_zero).unwrap());
        let u = ComplexMorphism::identity(&c);
        let cyl = cylinder(&u).unwrap();
        assert!(quasi_iso_preservation(&sphere(0, &FgModule::cyclic(Ring::Integers, 4)), &cyl.tilde_u).unwrap());
    }
}
