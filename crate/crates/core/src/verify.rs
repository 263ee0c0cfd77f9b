//! Randomized and exhaustive check suites shared by the command line tool and the
//! acceptance tests.
use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::chaincx::{
    complex_sum, cone, connecting_general, connecting_lambek, homology, homology_map_at, long_sequence_is_exact, sphere, ChainComplex,
    ComplexMorphism, ComplexSes,
};
use crate::error::Result;
use crate::exactlin::{snf, Int, IntMatrix};
use crate::fgmod::{
    box_product, cokernel, is_epi, is_flat, is_injective_object, is_mono, union_image_sequence, FgModule, ModMorphism, Ring,
};
use crate::orthlab::{
    closure_checks, exact_samples, h_flat_check, lambek_flat_check, right_perp_member, tex_member_periodic, PeriodicComplex, TestFamily,
};
use crate::random;
use crate::thc::{
    adj_cotensor_tensor, adj_hom_tensor, adj_tensor_cotensor, adj_tensor_hom, bar_adj_cotensor_tensor, bar_adj_hom_tensor,
    bar_adj_tensor_cotensor, bar_adj_tensor_hom, bar_cotensor, bar_hom, bar_tensor, cone_tensor_iso, cotensor_complex, hom_complex, homgr,
    homgr_bar, leibniz, sigma_translate, tensor_chain_map, tensor_complex, HomComplex, Mode,
};
use crate::torkun::{cycles_sequence, kunneth_report, kunneth_splits, reidentify, tor};

/// One failed check, with the inputs needed to replay it.
#[derive(Clone, Debug)]
pub struct Failure {
    pub case: usize,
    pub check: String,
    pub complexes: Vec<(String, ChainComplex)>,
    pub modules: Vec<(String, FgModule)>,
    pub morphisms: Vec<(String, ModMorphism)>,
}

impl Failure {
    fn new(case: usize, check: impl Into<String>) -> Self {
        Self { case, check: check.into(), complexes: Vec::new(), modules: Vec::new(), morphisms: Vec::new() }
    }

    fn complex(mut self, name: &str, c: &ChainComplex) -> Self {
        self.complexes.push((name.into(), c.clone()));
        self
    }

    fn module(mut self, name: &str, m: &FgModule) -> Self {
        self.modules.push((name.into(), m.clone()));
        self
    }

    fn morphism(mut self, name: &str, f: &ModMorphism) -> Self {
        self.morphisms.push((name.into(), f.clone()));
        self
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self { name: name.into(), cases: 0, checks: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.checks > 0
    }

    fn check(&mut self, ok: bool, fail: impl FnOnce() -> Failure) {
        self.checks += 1;
        if !ok {
            self.failures.push(fail());
        }
    }

    /// An `Err` counts as a failed check.
    fn check_result(&mut self, r: Result<bool>, fail: impl FnOnce() -> Failure) {
        match r {
            Ok(ok) => self.check(ok, fail),
            Err(e) => {
                self.checks += 1;
                let mut f = fail();
                f.check = format!("{} ({e})", f.check);
                self.failures.push(f);
            }
        }
    }

    pub fn summary(&self) -> String {
        format!("{}: {} cases, {} checks, {} failures", self.name, self.cases, self.checks, self.failures.len())
    }
}

fn gcd_of_minors(m: &IntMatrix, k: usize) -> Int {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    let mut g = Int::zero();
    for r in subsets(m.rows(), k) {
        for c in subsets(m.cols(), k) {
            g = g.gcd(&m.select_rows(&r).select_cols(&c).determinant());
        }
    }
    g
}

/// Invariant factors `d₁, …` from determinantal divisors, for the first `k` indices.
fn determinantal_factors(m: &IntMatrix, k: usize) -> Vec<Int> {
    let mut out = Vec::new();
    let mut prev = Int::one();
    for i in 1..=k.min(m.rows()).min(m.cols()) {
        let g = gcd_of_minors(m, i);
        if g.is_zero() {
            out.push(Int::zero());
            prev = Int::zero();
            continue;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn snf_checks(m: &IntMatrix) -> std::result::Result<(), String> {
    let s = snf(m);
    let d = &(&s.u * m) * &s.v;
    if d != s.d {
        return Err("U M V != D".into());
    }
    if !s.u.determinant().abs().is_one() || !s.v.determinant().abs().is_one() {
        return Err("U or V not unimodular".into());
    }
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d.get(i, j).is_zero() {
                return Err("D not diagonal".into());
            }
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        if w[0].is_negative() || (!w[1].is_zero() && (w[0].is_zero() || !w[1].is_multiple_of(&w[0]))) {
            return Err(format!("divisibility fails on {diag:?}"));
        }
    }
    if m.rows().max(m.cols()) <= 6 {
        let k = 3.min(diag.len());
        if determinantal_factors(m, k) != diag[..k] {
            return Err("invariant factors disagree with determinantal divisors".into());
        }
    }
    Ok(())
}

/// Random integer matrices of size up to `max_dim` with entries in `[−bound, bound]`.
pub fn snf_suite(seed: u64, cases: usize, max_dim: usize, bound: i64) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut rep = SuiteReport::new("snf");
    for case in 0..cases {
        let (r, c) = (rng.gen_range(1..=max_dim), rng.gen_range(1..=max_dim));
        let m = random::matrix(&mut rng, Ring::Integers, r, c, bound);
        rep.cases += 1;
        let res = snf_checks(&m);
        rep.check(res.is_ok(), || {
            let f = FgModule::free(Ring::Integers, c);
            let t = FgModule::free(Ring::Integers, r);
            Failure::new(case, res.unwrap_err()).morphism("m", &ModMorphism::new(&f, &t, m.clone()).expect("free"))
        });
    }
    rep
}

/// `Tor₁(ℤ/a, ℤ/b) ≅ ℤ/gcd(a,b)` and `Tor₂ = 0` for `1 ≤ a, b ≤ max`.
pub fn tor_table(max: i64) -> SuiteReport {
    let z = Ring::Integers;
    let mut rep = SuiteReport::new("tor-table");
    for a in 1..=max {
        for b in 1..=max {
            rep.cases += 1;
            let (ma, mb) = (FgModule::cyclic(z, a), FgModule::cyclic(z, b));
            let expected = FgModule::cyclic(z, a.gcd(&b));
            let case = rep.cases - 1;
            let fail = |what: &str| Failure::new(case, format!("{what} for Z/{a}, Z/{b}")).module("a", &ma).module("b", &mb);
            let t1 = tor(1, &ma, &mb).map(|t| t.is_isomorphic(&expected));
            rep.check_result(t1, || fail("Tor1"));
            let t2 = tor(2, &ma, &mb).map(|t| t.is_zero_module());
            rep.check_result(t2, || fail("Tor2"));
        }
    }
    rep
}

/// A free complex over ℤ with support in `[0, 3]`, differential entries in `[−bound, bound]`
/// and total rank at most `max_total`.
pub fn kunneth_complex<R: Rng>(rng: &mut R, max_total: usize, bound: i64) -> ChainComplex {
    loop {
        let lo = rng.gen_range(0..=3);
        let hi = rng.gen_range(lo..=3);
        let mut ranks: Vec<usize> = (lo..=hi).map(|_| rng.gen_range(0..=3)).collect();
        while ranks.iter().sum::<usize>() > max_total {
            let i = rng.gen_range(0..ranks.len());
            ranks[i] = ranks[i].saturating_sub(1);
        }
        let c = random::free_complex(rng, Ring::Integers, lo, &ranks, bound);
        if c.degrees().all(|n| c.d(n).matrix().max_abs() <= Int::from(bound)) {
            return c;
        }
    }
}

/// Künneth on random pairs of free complexes: γ mono, cokernel ≅ Tor, and a splitting.
pub fn kunneth_random(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut rep = SuiteReport::new("kunneth-random");
    for case in 0..cases {
        let a = kunneth_complex(&mut rng, 6, 5);
        let b = kunneth_complex(&mut rng, 6, 5);
        rep.cases += 1;
        let fail = |what: &str| Failure::new(case, what).complex("left", &a).complex("right", &b);
        match kunneth_report(&a, &b) {
            Ok(k) => {
                for d in &k.degrees {
                    rep.check(d.gamma_mono, || fail(&format!("gamma not mono in degree {}", d.n)));
                    rep.check(d.cokernel_matches, || fail(&format!("cokernel is not Tor in degree {}", d.n)));
                }
            }
            Err(e) => rep.check(false, || fail(&format!("kunneth report: {e}"))),
        }
        rep.check_result(kunneth_splits(&a, &b), || fail("no splitting"));
    }
    rep
}

/// `ℤ ×2→ ℤ` in degrees 1, 0.
pub fn doubling_complex() -> ChainComplex {
    let z = FgModule::free(Ring::Integers, 1);
    ChainComplex::new(Ring::Integers, 0, vec![z.clone(), z.clone()], vec![ModMorphism::scalar(&z, 2)]).expect("complex")
}

/// The tensor square of the doubling complex: homology `ℤ/2, ℤ/2, 0` in degrees 0, 1, 2.
pub fn rp2_golden() -> SuiteReport {
    let mut rep = SuiteReport::new("kunneth-rp2");
    let c = doubling_complex();
    rep.cases = 1;
    let fail = |what: &str| Failure::new(0, what).complex("left", &c).complex("right", &c);
    let z2 = FgModule::cyclic(Ring::Integers, 2);
    let t = tensor_complex(&c, &c).expect("tensor");
    let h = homology(&t.complex);
    rep.check(h.module(0).is_isomorphic(&z2), || fail("H0 != Z/2"));
    rep.check(h.module(1).is_isomorphic(&z2), || fail("H1 != Z/2"));
    rep.check(h.module(2).is_zero_module(), || fail("H2 != 0"));
    match kunneth_report(&c, &c) {
        Ok(k) => {
            rep.check(k.exact(), || fail("sequence not exact"));
            let d1 = k.degree(1);
            rep.check(
                d1.is_some_and(|d| {
                    d.left_term.is_zero_module() && d.right_term.is_isomorphic(&z2) && d.middle.is_isomorphic(&d.right_term)
                }),
                || fail("degree 1 is not 0 -> Z/2 -> Z/2"),
            );
        }
        Err(e) => rep.check(false, || fail(&format!("kunneth report: {e}"))),
    }
    rep
}

/// A small complex: free, a sphere on a torsion module, or the sum of both.
pub fn small_complex<R: Rng>(rng: &mut R, ring: Ring) -> ChainComplex {
    let free = random::bounded_free_complex(rng, ring, -1..=1, 3, 2, 3);
    let n = rng.gen_range(-1..=1);
    let torsion = sphere(n, &random::small_module(rng, ring, 2, 6));
    match rng.gen_range(0..4) {
        0 => torsion,
        1 => complex_sum(&free, &torsion).expect("same ring").complex,
        _ => free,
    }
}

/// A random chain map `src → t` for a target drawn from `target`, retried a few times to
/// avoid the zero map.
fn nonzero_map<R: Rng, F: FnMut(&mut R) -> ChainComplex>(
    rng: &mut R,
    src: &ChainComplex,
    mut target: F,
) -> (ChainComplex, ComplexMorphism) {
    let mut last = None;
    for _ in 0..20 {
        let t = target(rng);
        let u = random::chain_map(rng, src, &t, 3);
        if !u.graded().is_zero() {
            return (t, u);
        }
        last = Some((t, u));
    }
    last.expect("at least one attempt")
}

fn case_ring(case: usize) -> Ring {
    if case % 3 == 2 {
        Ring::prime_power(2, 2).expect("ring")
    } else {
        Ring::Integers
    }
}

fn squares_to_zero(c: &ChainComplex) -> bool {
    c.degrees().all(|n| c.d(n - 1).after(&c.d(n)).is_zero())
}

/// `Hom(C, g)` for `g: C″ → E`, between two Hom complexes with the same source.
fn post_compose(src: &HomComplex, dst: &HomComplex, g: &ComplexMorphism) -> Result<ComplexMorphism> {
    let mut comps = BTreeMap::new();
    for n in src.complex.degrees() {
        let s = src.complex.term(n);
        let t = dst.complex.term(n);
        let mut cols = Vec::new();
        for i in 0..s.num_generators() {
            let mut e = vec![Int::zero(); s.num_generators()];
            e[i] = Int::one();
            cols.push(dst.coords(&g.graded().compose(&src.to_graded(n, &e))?)?);
        }
        comps.insert(n, ModMorphism::new(&s, &t, IntMatrix::from_columns(t.num_generators(), &cols))?);
    }
    ComplexMorphism::new(&src.complex, &dst.complex, comps)
}

/// Sign conventions: `D² = 0` for every construction, adjunction round trips and
/// naturality, Leibniz, translation isos and the cone comparison.
pub fn sign_suite(seed: u64, cases: usize) -> SuiteReport {
    run_signs(seed, cases, false)
}

/// Only the round trips and naturality of the standard and bar adjunctions.
pub fn adjunction_suite(seed: u64, cases: usize) -> SuiteReport {
    run_signs(seed, cases, true)
}

fn run_signs(seed: u64, cases: usize, adjunctions_only: bool) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut rep = SuiteReport::new(if adjunctions_only { "adjunctions" } else { "signs" });
    for case in 0..cases {
        let ring = case_ring(case);
        let cp = small_complex(&mut rng, ring);
        let c = small_complex(&mut rng, ring);
        let tc = tensor_complex(&cp, &c).expect("same ring");
        let (cpp, u) = nonzero_map(&mut rng, &tc.complex, |g| small_complex(g, ring));
        rep.cases += 1;
        let fail = |what: &str| Failure::new(case, what).complex("c1", &cp).complex("c", &c).complex("c2", &cpp);
        let r = sign_case(&mut rng, &mut rep, case, [&cp, &c, &cpp], &u, adjunctions_only);
        if let Err(e) = r {
            rep.check(false, || fail(&format!("error: {e}")));
        }
    }
    rep
}

fn sign_case<R: Rng>(
    rng: &mut R,
    rep: &mut SuiteReport,
    case: usize,
    [cp, c, cpp]: [&ChainComplex; 3],
    u: &ComplexMorphism,
    adjunctions_only: bool,
) -> Result<()> {
    let fail = |what: &str| Failure::new(case, what).complex("c1", cp).complex("c", c).complex("c2", cpp);
    let tc = tensor_complex(cp, c)?;
    let hc = hom_complex(c, cpp)?;
    let kc = cotensor_complex(cp, cpp, Mode::Standard)?;
    let kb = cotensor_complex(cp, cpp, Mode::Bar)?;
    let bt = bar_tensor(cp, c)?;
    let bh = bar_hom(c, cpp)?;
    let bc = bar_cotensor(cp, cpp)?;
    let hg = homgr(cp, c)?;
    let hgb = homgr_bar(cp, c)?;
    if !adjunctions_only {
        for (name, k) in [
            ("tensor", &tc.complex),
            ("hom", &hc.complex),
            ("cotensor", &kc.complex),
            ("cotensor bar", &kb.complex),
            ("bar tensor", &bt.complex),
            ("bar hom", &bh.complex),
            ("bar cotensor", &bc.complex),
            ("homgr", &hg.complex),
            ("homgr bar", &hgb.complex),
        ] {
            rep.check(squares_to_zero(k), || fail(&format!("D^2 != 0 for {name}")));
        }
    }

    let v = adj_tensor_hom(&tc, &hc, u)?;
    rep.check(adj_hom_tensor(&tc, &hc, &v)?.equals(u), || fail("tensor-hom round trip"));
    let w = adj_tensor_cotensor(&tc, &kc, u)?;
    rep.check(adj_cotensor_tensor(&tc, &kc, &w)?.equals(u), || fail("tensor-cotensor round trip"));

    let (e, g) = nonzero_map(rng, cpp, |g| small_complex(g, cp.ring()));
    let he = hom_complex(c, &e)?;
    let lhs = adj_tensor_hom(&tc, &he, &g.after(u))?;
    let rhs = post_compose(&hc, &he, &g)?.after(&v);
    rep.check(lhs.equals(&rhs), || fail("tensor-hom naturality").complex("e", &e));

    let ub = random::chain_map(rng, &bt.complex, cpp, 3);
    let vb = bar_adj_tensor_hom(&bt, &bh, &ub)?;
    rep.check(bar_adj_hom_tensor(&bt, &bh, &vb)?.equals(&ub), || fail("bar tensor-hom round trip"));
    let wb = bar_adj_tensor_cotensor(&bt, &bc, &ub)?;
    rep.check(bar_adj_cotensor_tensor(&bt, &bc, &wb)?.equals(&ub), || fail("bar tensor-cotensor round trip"));

    if adjunctions_only {
        return Ok(());
    }

    let (a, b) = (rng.gen_range(-1..=1), rng.gen_range(-1..=1));
    let fp = random::graded_map(rng, cp, cpp, a, 3);
    let f = random::graded_map(rng, c, &e, b, 3);
    let dst = tensor_complex(cpp, &e)?;
    rep.check(leibniz(&tc, &dst, &fp, &f)?.holds(), || fail(&format!("Leibniz in degrees {a}, {b}")).complex("e", &e));

    let r = rng.gen_range(-2..=2);
    let s = sigma_translate(cp, c, r)?;
    let both = s.forward.after(&s.inverse).equals(&ComplexMorphism::identity(s.forward.target()))
        && s.inverse.after(&s.forward).equals(&ComplexMorphism::identity(s.forward.source()));
    rep.check(both, || fail(&format!("Sigma inverse for r = {r}")));
    let (e, uc) = nonzero_map(rng, c, |g| small_complex(g, cp.ring()));
    let te = tensor_complex(cp, &e)?;
    let id = ComplexMorphism::identity(cp);
    let t_shift_src = tensor_complex(cp, &c.translate(r))?;
    let t_shift_dst = tensor_complex(cp, &e.translate(r))?;
    let t_ur = tensor_chain_map(&t_shift_src, &t_shift_dst, &id, &uc.translate(r))?;
    let t_u = tensor_chain_map(&tc, &te, &id, &uc)?.translate(r);
    let se = sigma_translate(cp, &e, r)?;
    rep.check(se.forward.after(&t_ur).equals(&t_u.after(&s.forward)), || fail(&format!("Sigma naturality for r = {r}")).complex("e", &e));

    let ci = cone_tensor_iso(cp, &uc)?;
    rep.check(ci.iso.is_iso() && ci.diagram_commutes(), || fail("cone comparison").complex("e", &e));
    Ok(())
}

/// Connecting morphisms: the image factorization agrees with the snake chase, `∂(j,δ) = i(−1)`,
/// and cone sequences have exact long sequences.
pub fn connecting_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut rep = SuiteReport::new("connecting");
    for case in 0..cases {
        let ring = case_ring(case);
        let c = small_complex(&mut rng, ring);
        let d = small_complex(&mut rng, ring);
        rep.cases += 1;
        let fail = |what: &str| Failure::new(case, what).complex("c", &c).complex("d", &d);
        if let Err(e) = connecting_case(&mut rng, &mut rep, &c, &d, &fail) {
            rep.check(false, || fail(&format!("error: {e}")));
        }
    }
    rep
}

fn connecting_case<R: Rng, F: Fn(&str) -> Failure>(
    rng: &mut R,
    rep: &mut SuiteReport,
    c: &ChainComplex,
    d: &ChainComplex,
    fail: &F,
) -> Result<()> {
    let ses = cycles_sequence(c)?;
    let general = connecting_general(&ses)?;
    let lam = connecting_lambek(&ses)?;
    let h_shift = homology(lam.connecting.target());
    for (&n, g) in &general.maps {
        let hl = homology_map_at(&lam.connecting, &general.he, &h_shift, n)?;
        let back = reidentify(&h_shift.at(n), &general.hd.at(n - 1))?;
        rep.check(back.after(&hl).equals(g), || fail(&format!("Lambek and general connecting maps differ in degree {n}")));
    }
    let h = homology(c);
    let i_shift = h.i().translate(-1);
    for n in c.lo()..=c.hi() + 1 {
        rep.check(lam.connecting.component(n).matrix() == i_shift.component(n).matrix(), || {
            fail(&format!("connecting map of (j, delta) is not i(-1) in degree {n}"))
        });
    }
    let (_, u) = nonzero_map(rng, d, |_| c.clone());
    let con = cone(&u)?;
    let ses = ComplexSes::new(con.pi.clone(), con.delta.clone())?;
    let conn = connecting_general(&ses)?;
    rep.check_result(long_sequence_is_exact(&ses, &conn), || fail("cone long sequence not exact"));
    Ok(())
}

fn random_epi<R: Rng>(rng: &mut R, ring: Ring, target: &FgModule) -> ModMorphism {
    loop {
        let extra = random::module(rng, ring, 2, 4);
        let src = crate::fgmod::direct_sum(&[FgModule::free(ring, target.num_generators()), extra]).expect("sum").module;
        let f = random::morphism(rng, &src, target, 4);
        let g = ModMorphism::new(&src, target, {
            let mut m = f.matrix().clone();
            for i in 0..target.num_generators() {
                for j in 0..target.num_generators() {
                    m.set(i, j, if i == j { Int::one() } else { Int::zero() });
                }
            }
            m
        });
        if let Ok(g) = g {
            if is_epi(&g) {
                return g;
            }
        }
    }
}

/// A mono `A ↣ A ⊕ F` with `F` free, composed with a random shear of the sum.
fn random_flat_cokernel_mono<R: Rng>(rng: &mut R, ring: Ring) -> ModMorphism {
    let a = random::small_module(rng, ring, 2, 4);
    let f = FgModule::free(ring, rng.gen_range(0..=2));
    let sum = crate::fgmod::direct_sum(&[a.clone(), f.clone()]).expect("sum");
    let shear = random::morphism(rng, &f, &a, 3);
    let twist = ModMorphism::identity(&sum.module).add(&sum.injections[0].after(&shear).after(&sum.projections[1])).expect("same ends");
    twist.after(&sum.injections[0])
}

/// The union sequence for random epis, and `u₁ □ u₂` mono for monos with flat cokernels.
pub fn tensor_sequence_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut rep = SuiteReport::new("tensor-sequence");
    for case in 0..cases {
        let ring = case_ring(case);
        rep.cases += 1;
        let b1 = random::small_module(&mut rng, ring, 2, 6);
        let b2 = random::small_module(&mut rng, ring, 2, 6);
        let e1 = random_epi(&mut rng, ring, &b1);
        let e2 = random_epi(&mut rng, ring, &b2);
        let res = union_image_sequence(&e1, &e2).map(|u| u.exact());
        rep.check_result(res, || Failure::new(case, "union sequence not exact").morphism("u1", &e1).morphism("u2", &e2));
        let m1 = random_flat_cokernel_mono(&mut rng, ring);
        let m2 = random_flat_cokernel_mono(&mut rng, ring);
        let pre = is_mono(&m1) && is_mono(&m2) && is_flat(&cokernel(&m1).module) && is_flat(&cokernel(&m2).module);
        rep.check(pre, || Failure::new(case, "generator produced a bad mono").morphism("u1", &m1).morphism("u2", &m2));
        let res = box_product(&m1, &m2).map(|b| is_mono(&b));
        rep.check_result(res, || Failure::new(case, "box product not mono").morphism("u1", &m1).morphism("u2", &m2));
    }
    rep
}

/// Exhaustive checks over all modules of order at most `max_order` over `ring = ℤ/pᵏ`.
pub fn orthlab_sweep(ring: Ring, max_order: u64) -> SuiteReport {
    let mut rep = SuiteReport::new(&format!("orthlab {ring}"));
    let fam = match TestFamily::all_modules(ring, max_order) {
        Ok(f) => f,
        Err(e) => {
            rep.check(false, || Failure::new(0, format!("family: {e}")));
            return rep;
        }
    };
    rep.check(fam.check(), || Failure::new(0, "family monos"));
    for (i, x) in fam.modules.iter().enumerate() {
        rep.cases += 1;
        let fail = |what: &str| Failure::new(i, what).module("x", x);
        let perp = right_perp_member(x, &fam).map(|v| v.is_member() == is_injective_object(x));
        rep.check_result(perp, || fail("perp membership disagrees with injectivity"));
        rep.check_result(lambek_flat_check(x).map(|l| l.agrees()), || fail("Lambek flatness test disagrees"));
    }
    rep.check_result(closure_checks(&fam, &fam.modules).map(|c| c.holds()), || Failure::new(0, "closure checks"));
    if let Ring::PrimePower { k, .. } = ring {
        for j in 1..k {
            let res = PeriodicComplex::complete_resolution(ring, j).and_then(|pc| tex_member_periodic(&pc)).map(|v| v.holds());
            rep.check_result(res, || Failure::new(j as usize, format!("complete resolution j = {j} not in tex")));
        }
    }
    rep
}

/// Bounded below free complexes are h-flat against exact samples; `S⁰(ℤ/2)` is not.
pub fn h_flat_suite(seed: u64, cases: usize, samples: usize) -> SuiteReport {
    let mut rng = random::rng(seed);
    let mut rep = SuiteReport::new("h-flat");
    let z = Ring::Integers;
    let sample = exact_samples(&mut rng, z, samples, 3);
    for case in 0..cases {
        let c = random::bounded_free_complex(&mut rng, z, 0..=2, 3, 2, 3);
        rep.cases += 1;
        rep.check_result(h_flat_check(&c, &sample).map(|v| v.holds()), || Failure::new(case, "free complex not h-flat").complex("c", &c));
    }
    let bad = sphere(0, &FgModule::cyclic(z, 2));
    rep.check_result(h_flat_check(&bad, &sample).map(|v| !v.holds()), || {
        Failure::new(cases, "S0(Z/2) passed as h-flat").complex("c", &bad)
    });
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_small() {
        let r = snf_suite(1, 40, 5, 9);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn determinantal_oracle() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(determinantal_factors(&m, 3), vec![Int::from(2), Int::from(6), Int::from(12)]);
    }

    #[test]
    fn tor_small() {
        assert!(tor_table(6).passed());
    }

    #[test]
    fn rp2() {
        let r = rp2_golden();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn suites_small() {
        for r in [kunneth_random(3, 5), sign_suite(3, 6), connecting_suite(3, 6), tensor_sequence_suite(3, 6), h_flat_suite(3, 3, 5)] {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn sweep_z4() {
        let r = orthlab_sweep(Ring::prime_power(2, 2).unwrap(), 16);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
