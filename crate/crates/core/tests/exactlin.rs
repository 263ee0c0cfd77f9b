use homalg::exactlin::{kernel_basis, snf, solve_int_linear, Int, IntMatrix};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(move |(r, c)| prop::collection::vec(-bound..=bound, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_unimodular_diagonalization(m in matrix(8, 9)) {
        let s = snf(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[1].is_zero() || (&w[1] % &w[0]).is_zero());
        }
        prop_assert!(d.iter().all(|x| !x.is_negative()));
    }

    #[test]
    fn solve_recovers_consistent_systems(m in matrix(6, 9), seed in prop::collection::vec(-5i64..=5, 6)) {
        let x: Vec<Int> = seed[..m.cols()].iter().map(|&v| Int::from(v)).collect();
        let b = m.mul_vec(&x);
        let y = solve_int_linear(&m, &b, None).unwrap().expect("consistent");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn kernel_basis_spans_the_kernel(m in matrix(5, 4), coeffs in prop::collection::vec(-4i64..=4, 5)) {
        let k = kernel_basis(&m, None).unwrap();
        prop_assert!((&m * &k).is_zero());
        let c: Vec<Int> = coeffs[..k.cols()].iter().map(|&v| Int::from(v)).collect();
        let x = k.mul_vec(&c);
        prop_assert!(m.mul_vec(&x).iter().all(Zero::is_zero));
        prop_assert!(solve_int_linear(&k, &x, None).unwrap().is_some());
    }

    #[test]
    fn kernel_modulo_prime_powers(m in matrix(4, 7)) {
        let q = Int::from(8);
        let k = kernel_basis(&m, Some(&q)).unwrap();
        let mk = &m * &k;
        prop_assert!(mk.entries().iter().all(|x| (x % &q).is_zero()));
    }
}
