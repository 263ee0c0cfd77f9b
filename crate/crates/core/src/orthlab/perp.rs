use std::collections::HashMap;

use crate::error::Result;
use crate::exactlin::{Int, IntMatrix};
use crate::fgmod::{cokernel, direct_sum, has_lift, hom_module, is_mono, preimage_element, simplify, FgModule, ModMorphism, SesWitness};

use super::family::{subgroup_monos, FiniteModule, TestFamily};

/// Outcome of a `K^⊥` test, relative to the monos of a test family.
#[derive(Clone, Debug)]
pub enum PerpVerdict {
    /// Every tested map extends; `checked` monos had cokernel in the class.
    Member { checked: usize },
    /// `map: A → X` does not extend along `mono: A ↣ B`.
    Counterexample { mono: ModMorphism, map: ModMorphism },
}

impl PerpVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, PerpVerdict::Member { .. })
    }
}

/// Whether `f` fails to extend along `u` for the given mono, found by restriction
/// `Hom(B,X) → Hom(A,X)` on a generating set of `Hom(A,X)`.
fn unliftable(u: &ModMorphism, x: &FgModule) -> Result<Option<ModMorphism>> {
    let hb = hom_module(u.target(), x)?;
    let ha = hom_module(u.source(), x)?;
    let restrict = hb.induced(&ha, |l| Ok(l.after(u)))?;
    let n = ha.module.num_generators();
    for i in 0..n {
        let mut e = vec![Int::from(0); n];
        e[i] = Int::from(1);
        if preimage_element(&restrict, &e)?.is_none() {
            return Ok(Some(ha.to_morphism(&e)));
        }
    }
    Ok(None)
}

/// `X ∈ K^⊥` relative to `K`: every map `A → X` extends along every family mono `A ↣ B`
/// with cokernel in the class.
pub fn right_perp_member(x: &FgModule, k: &TestFamily) -> Result<PerpVerdict> {
    let mut checked = 0;
    for u in k.relevant_monos() {
        checked += 1;
        if let Some(map) = unliftable(&u.mono, x)? {
            return Ok(PerpVerdict::Counterexample { mono: u.mono.clone(), map });
        }
    }
    Ok(PerpVerdict::Member { checked })
}

/// Re-checks a counterexample: the mono is mono and `has_lift` finds no extension.
pub fn verify_counterexample(mono: &ModMorphism, map: &ModMorphism) -> Result<bool> {
    Ok(is_mono(mono) && has_lift(mono, map)?.is_none())
}

struct MemberCache<'a> {
    family: &'a TestFamily,
    seen: HashMap<Vec<Int>, bool>,
}

impl MemberCache<'_> {
    fn member(&mut self, m: &FgModule) -> Result<bool> {
        let key = m.canonical_form();
        if let Some(&b) = self.seen.get(&key) {
            return Ok(b);
        }
        let b = right_perp_member(&m.canonical_module(), self.family)?.is_member();
        self.seen.insert(key, b);
        Ok(b)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ClosureReport {
    pub members: Vec<FgModule>,
    pub iso_failures: Vec<String>,
    pub retract_failures: Vec<String>,
    pub product_failures: Vec<String>,
    pub extension_failures: Vec<String>,
    pub extensions_checked: usize,
    pub products_checked: usize,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.iso_failures.is_empty()
            && self.retract_failures.is_empty()
            && self.product_failures.is_empty()
            && self.extension_failures.is_empty()
    }
}

/// `M` on an extra generator killed by a relation, with the old generators mixed in.
fn represent(m: &FgModule) -> FgModule {
    let n = m.num_generators();
    let r = m.relations();
    let mut rels = IntMatrix::zeros(n + 1, r.cols() + 1);
    rels.set_block(0, 0, r);
    rels.set(n, r.cols(), Int::from(1));
    if n > 0 {
        rels.set(0, r.cols(), Int::from(1));
        rels.set(n, r.cols(), Int::from(1));
    }
    FgModule::new(m.ring(), rels)
}

fn sub_multisets(factors: &[Int]) -> Vec<Vec<Int>> {
    let mut out: Vec<Vec<Int>> = vec![vec![]];
    for f in factors {
        let mut more: Vec<Vec<Int>> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.push(f.clone());
                t
            })
            .collect();
        out.append(&mut more);
    }
    out.sort();
    out.dedup();
    out
}

/// Closure of the family-relative `K^⊥` under isomorphism, retracts, finite sums and
/// extensions, tested on `samples` and on the monos of the family.
pub fn closure_checks(k: &TestFamily, samples: &[FgModule]) -> Result<ClosureReport> {
    let mut cache = MemberCache { family: k, seen: HashMap::new() };
    let mut rep = ClosureReport::default();
    let mut flags = Vec::new();
    for m in samples {
        let direct = right_perp_member(m, k)?.is_member();
        flags.push(direct);
        let again = right_perp_member(&represent(m), k)?.is_member();
        if direct != again {
            rep.iso_failures.push(m.describe());
        }
        cache.seen.insert(m.canonical_form(), direct);
        if direct {
            rep.members.push(m.clone());
        }
    }
    for m in rep.members.clone() {
        for part in sub_multisets(&m.canonical_form()) {
            let r = FgModule::from_factors(m.ring(), &part);
            if !cache.member(&r)? {
                rep.retract_failures.push(format!("{} is a retract of {}", r.describe(), m.describe()));
            }
        }
    }
    for i in 0..samples.len() {
        for j in i..samples.len() {
            let s = direct_sum(&[samples[i].clone(), samples[j].clone()])?.module;
            rep.products_checked += 1;
            if cache.member(&s)? != (flags[i] && flags[j]) {
                rep.product_failures.push(format!("{} + {}", samples[i].describe(), samples[j].describe()));
            }
        }
    }
    for u in &k.monos {
        if cache.member(u.mono.source())? && cache.member(&u.cokernel)? {
            rep.extensions_checked += 1;
            if !cache.member(u.mono.target())? {
                rep.extension_failures.push(format!(
                    "{} >-> {} ->> {}",
                    u.mono.source().describe(),
                    u.mono.target().describe(),
                    u.cokernel.describe()
                ));
            }
        }
    }
    Ok(rep)
}

/// Witnesses for `A ∈ Coker(K↣L)` (a sequence `K ↣ L ↠ A`) and `A ∈ Ker(K↠L)`
/// (a sequence `A ↣ K ↠ L`), or `None` when the bounded search finds nothing.
#[derive(Clone, Debug)]
pub struct KerCokerWitness {
    pub coker: Option<SesWitness>,
    pub ker: Option<SesWitness>,
    pub max_order: u64,
}

fn candidate_monos(targets: &[FgModule], extra: &[&TestFamily], max_order: u64) -> Result<Vec<ModMorphism>> {
    let mut out = Vec::new();
    for t in targets {
        if let Ok(fm) = FiniteModule::new(t) {
            if fm.order() <= max_order {
                out.extend(subgroup_monos(t)?);
            }
        }
    }
    for f in extra {
        out.extend(f.monos.iter().map(|u| u.mono.clone()));
    }
    Ok(out)
}

fn ses_of(u: &ModMorphism) -> Result<SesWitness> {
    let c = cokernel(u);
    let s = simplify(&c.module);
    SesWitness::new(u.clone(), s.to_new.after(&c.projection))
}

pub fn ker_coker_class(k: &TestFamily, l: &TestFamily, a: &FgModule, max_order: u64) -> Result<KerCokerWitness> {
    let mut coker = None;
    for u in candidate_monos(&l.modules, &[k, l], max_order)? {
        if l.contains(u.target()) && k.contains(u.source()) && cokernel(&u).module.is_isomorphic(a) {
            coker = Some(ses_of(&u)?);
            break;
        }
    }
    let mut ker = None;
    for u in candidate_monos(&k.modules, &[k, l], max_order)? {
        if k.contains(u.target()) && u.source().is_isomorphic(a) && l.contains(&cokernel(&u).module) {
            ker = Some(ses_of(&u)?);
            break;
        }
    }
    Ok(KerCokerWitness { coker, ker, max_order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgmod::{is_injective_object, Ring};

    fn ring(q: u64) -> Ring {
        Ring::from_modulus(q).unwrap()
    }

    fn all(q: u64) -> TestFamily {
        TestFamily::all_modules(ring(q), 16).unwrap()
    }

    #[test]
    fn zero_is_always_a_member() {
        let f = all(4);
        assert!(right_perp_member(&FgModule::zero(ring(4)), &f).unwrap().is_member());
    }

    #[test]
    fn z2_over_z4_has_a_counterexample() {
        let f = all(4);
        let k = f.with_class(vec![FgModule::cyclic(ring(4), 2)]);
        let x = FgModule::cyclic(ring(4), 2);
        match right_perp_member(&x, &k).unwrap() {
            PerpVerdict::Counterexample { mono, map } => {
                assert!(verify_counterexample(&mono, &map).unwrap());
                assert!(cokernel(&mono).module.is_isomorphic(&x));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn z4_is_self_injective() {
        let f = all(4);
        let x = FgModule::free(ring(4), 1);
        assert!(right_perp_member(&x, &f).unwrap().is_member());
    }

    #[test]
    fn full_family_detects_injectives() {
        for q in [4, 8] {
            let f = all(q);
            for x in &f.modules {
                assert_eq!(right_perp_member(x, &f).unwrap().is_member(), is_injective_object(x), "{}", x.describe());
            }
        }
    }

    #[test]
    fn closure_on_the_full_family() {
        let f = all(4);
        let rep = closure_checks(&f, &f.modules).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.members.len(), 3);
        assert!(rep.extensions_checked > 0);
    }

    #[test]
    fn coker_class_witness() {
        let z4 = FgModule::free(ring(4), 1);
        let two = ModMorphism::scalar(&z4, 2);
        assert!(!is_mono(&two));
        let fam = TestFamily::new(ring(4), vec![z4.clone()], vec![]).unwrap();
        let w = ker_coker_class(&fam, &fam, &FgModule::cyclic(ring(4), 2), 16).unwrap();
        assert!(w.coker.is_none() && w.ker.is_none());
        let z = FgModule::free(Ring::Integers, 1);
        let fam = TestFamily::new(Ring::Integers, vec![z.clone()], vec![ModMorphism::scalar(&z, 2)]).unwrap();
        let w = ker_coker_class(&fam, &fam, &FgModule::cyclic(Ring::Integers, 2), 16).unwrap();
        let s = w.coker.unwrap();
        assert!(s.left.source().is_isomorphic(&z) && s.right.target().is_isomorphic(&FgModule::cyclic(Ring::Integers, 2)));
        let e = TestFamily::empty(ring(4));
        let w = ker_coker_class(&e, &e, &FgModule::cyclic(ring(4), 2), 16).unwrap();
        assert!(w.coker.is_none() && w.ker.is_none());
    }

    #[test]
    fn zero_in_class_gives_trivial_witness() {
        let a = FgModule::cyclic(ring(4), 2);
        let fam = TestFamily::new(ring(4), vec![FgModule::zero(ring(4)), a.clone()], vec![]).unwrap();
        let w = ker_coker_class(&fam, &fam, &a, 16).unwrap();
        assert!(w.coker.unwrap().left.source().is_zero_module());
    }
}
