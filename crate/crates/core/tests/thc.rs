use std::collections::BTreeMap;

use homalg::chaincx::{complex_sum, ChainComplex, ComplexMorphism};
use homalg::exactlin::{Int, IntMatrix};
use homalg::fgmod::{is_iso, ModMorphism, Ring};
use homalg::random;
use homalg::thc::{adj_tensor_hom, hom_complex, tensor_chain_map, tensor_complex, HomComplex};
use homalg::verify::{adjunction_suite, sign_suite, small_complex};
use proptest::prelude::*;

fn ring(i: u8) -> Ring {
    if i.is_multiple_of(2) {
        Ring::Integers
    } else {
        Ring::from_modulus(4).unwrap()
    }
}

/// `g ↦ g∘f` from `H(C, C″)` to `H(D, C″)` for `f: D → C`.
fn pre_compose(src: &HomComplex, dst: &HomComplex, f: &ComplexMorphism) -> ComplexMorphism {
    let mut comps = BTreeMap::new();
    for n in src.complex.degrees() {
        let (s, t) = (src.complex.term(n), dst.complex.term(n));
        let cols: Vec<Vec<Int>> = (0..s.num_generators())
            .map(|i| {
                let mut e = vec![Int::from(0); s.num_generators()];
                e[i] = Int::from(1);
                dst.coords(&src.to_graded(n, &e).compose(f.graded()).unwrap()).unwrap()
            })
            .collect();
        comps.insert(n, ModMorphism::new(&s, &t, IntMatrix::from_columns(t.num_generators(), &cols)).unwrap());
    }
    ComplexMorphism::new(&src.complex, &dst.complex, comps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sign_conventions(seed in any::<u64>()) {
        let r = sign_suite(seed, 4);
        prop_assert!(r.passed(), "{:?}", r.failures);
        let r = adjunction_suite(seed ^ 5, 4);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn translation_is_literal(seed in any::<u64>(), r in 0u8..2, shift in -3i64..=3) {
        let mut g = random::rng(seed);
        let cp = small_complex(&mut g, ring(r));
        let c = small_complex(&mut g, ring(r));
        let a = tensor_complex(&cp.translate(shift), &c).unwrap().complex;
        let b = tensor_complex(&cp, &c).unwrap().complex.translate(shift);
        for n in ChainComplex::joint_degrees(&a, &b) {
            prop_assert!(a.term(n) == b.term(n));
            prop_assert!(a.d(n).matrix() == b.d(n).matrix());
        }
    }

    #[test]
    fn tensor_is_biadditive(seed in any::<u64>(), r in 0u8..2) {
        let mut g = random::rng(seed);
        let (a, a2, c) = (small_complex(&mut g, ring(r)), small_complex(&mut g, ring(r)), small_complex(&mut g, ring(r)));
        let s = complex_sum(&a, &a2).unwrap();
        let id = ComplexMorphism::identity(&c);
        let (ta, ta2, ts) = (tensor_complex(&a, &c).unwrap(), tensor_complex(&a2, &c).unwrap(), tensor_complex(&s.complex, &c).unwrap());
        let t1 = tensor_chain_map(&ta, &ts, &s.injections[0], &id).unwrap();
        let t2 = tensor_chain_map(&ta2, &ts, &s.injections[1], &id).unwrap();
        let both = complex_sum(&ta.complex, &ta2.complex).unwrap();
        for n in both.complex.degrees() {
            let m = t1.component(n).matrix().hstack(t2.component(n).matrix());
            let f = ModMorphism::new(&both.complex.term(n), &ts.complex.term(n), m).unwrap();
            prop_assert!(is_iso(&f));
        }
    }

    #[test]
    fn tensor_hom_is_natural_in_the_first_two_slots(seed in any::<u64>(), r in 0u8..2) {
        let mut g = random::rng(seed);
        let (cp, c, cpp) = (small_complex(&mut g, ring(r)), small_complex(&mut g, ring(r)), small_complex(&mut g, ring(r)));
        let tc = tensor_complex(&cp, &c).unwrap();
        let hc = hom_complex(&c, &cpp).unwrap();
        let u = random::chain_map(&mut g, &tc.complex, &cpp, 3);
        let v = adj_tensor_hom(&tc, &hc, &u).unwrap();

        let dp = small_complex(&mut g, ring(r));
        let fp = random::chain_map(&mut g, &dp, &cp, 3);
        let td = tensor_complex(&dp, &c).unwrap();
        let tf = tensor_chain_map(&td, &tc, &fp, &ComplexMorphism::identity(&c)).unwrap();
        prop_assert!(adj_tensor_hom(&td, &hc, &u.after(&tf)).unwrap().equals(&v.after(&fp)));

        let d = small_complex(&mut g, ring(r));
        let f = random::chain_map(&mut g, &d, &c, 3);
        let te = tensor_complex(&cp, &d).unwrap();
        let hd = hom_complex(&d, &cpp).unwrap();
        let tf = tensor_chain_map(&te, &tc, &ComplexMorphism::identity(&cp), &f).unwrap();
        let rhs = pre_compose(&hc, &hd, &f).after(&v);
        prop_assert!(adj_tensor_hom(&te, &hd, &u.after(&tf)).unwrap().equals(&rhs));
    }
}
