use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, IntMatrix};
use super::snf::{snf, SnfDecomposition};
use super::LinAlgError;

/// Normal form of a fixed matrix, reused across many right-hand sides.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: usize,
    cols: usize,
    rank: usize,
    diag: Vec<Int>,
    snf: SnfDecomposition,
}

impl Solver {
    pub fn new(m: &IntMatrix) -> Self {
        let snf = snf(m);
        let diag = snf.diagonal();
        let rank = diag.iter().take_while(|d| !d.is_zero()).count();
        Self { rows: m.rows(), cols: m.cols(), rank, diag, snf }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn decomposition(&self) -> &SnfDecomposition {
        &self.snf
    }

    /// Some `x` with `M·x = b`, or `None`.
    pub fn solve(&self, b: &[Int]) -> Result<Option<Vec<Int>>, LinAlgError> {
        if b.len() != self.rows {
            return Err(LinAlgError::DimensionMismatch { op: "solve", left: (self.rows, self.cols), right: (b.len(), 1) });
        }
        let c = self.snf.u.mul_vec(b);
        let mut y = vec![Int::zero(); self.cols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                let (q, r) = ci.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.snf.v.mul_vec(&y)))
    }

    /// Solves `M·X = B` column by column.
    pub fn solve_matrix(&self, b: &IntMatrix) -> Result<Option<IntMatrix>, LinAlgError> {
        let mut cols = Vec::with_capacity(b.cols());
        for j in 0..b.cols() {
            match self.solve(&b.column(j))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(IntMatrix::from_columns(self.cols, &cols)))
    }

    /// Lattice basis of `{x : M·x = 0}` as columns.
    pub fn kernel(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.rank..self.cols).collect();
        self.snf.v.select_cols(&idx)
    }
}

fn with_modulus(m: &IntMatrix, modulus: &Int) -> IntMatrix {
    m.hstack(&IntMatrix::scalar(m.rows(), modulus))
}

fn check_modulus(modulus: Option<&Int>) -> Result<(), LinAlgError> {
    match modulus {
        Some(q) if !q.is_positive() => Err(LinAlgError::BadModulus(q.clone())),
        _ => Ok(()),
    }
}

/// Returns `x` with `M·x = b`, or `M·x ≡ b (mod modulus)` when a modulus is given.
/// Under a modulus the entries of `x` are reduced into `[0, modulus)`.
pub fn solve_int_linear(m: &IntMatrix, b: &[Int], modulus: Option<&Int>) -> Result<Option<Vec<Int>>, LinAlgError> {
    check_modulus(modulus)?;
    match modulus {
        None => Solver::new(m).solve(b),
        Some(q) => {
            let sol = Solver::new(&with_modulus(m, q)).solve(b)?;
            Ok(sol.map(|x| x[..m.cols()].iter().map(|xi| xi.mod_floor(q)).collect()))
        }
    }
}

/// Generators of `{x : M·x ≡ 0}` as columns; over ℤ a lattice basis. Under a modulus
/// the entries are reduced into `[0, modulus)` and columns vanishing mod it are dropped.
pub fn kernel_basis(m: &IntMatrix, modulus: Option<&Int>) -> Result<IntMatrix, LinAlgError> {
    check_modulus(modulus)?;
    match modulus {
        None => Ok(Solver::new(m).kernel()),
        Some(q) => {
            let full = Solver::new(&with_modulus(m, q)).kernel();
            let n = m.cols();
            let cols: Vec<Vec<Int>> = full
                .columns()
                .into_iter()
                .map(|c| c[..n].iter().map(|x| x.mod_floor(q)).collect::<Vec<_>>())
                .filter(|c| c.iter().any(|x| !x.is_zero()))
                .collect();
            Ok(IntMatrix::from_columns(n, &cols))
        }
    }
}

/// Whether `v` lies in the column lattice of `l`.
pub fn in_column_span(l: &IntMatrix, v: &[Int]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    Solver::new(l).solve(v).ok().flatten().is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn division_examples() {
        let m = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_int_linear(&m, &iv(&[4]), None).unwrap(), Some(iv(&[2])));
        assert_eq!(solve_int_linear(&m, &iv(&[3]), None).unwrap(), None);
    }

    #[test]
    fn modular_example_against_search() {
        let m = IntMatrix::from_rows(&[vec![2]]);
        let five = Int::from(5);
        let got = solve_int_linear(&m, &iv(&[3]), Some(&five)).unwrap();
        let searched: Vec<i64> = (0..5).filter(|x| (2 * x - 3) % 5 == 0).collect();
        assert_eq!(got, Some(iv(&searched)));
        assert_eq!(got, Some(iv(&[4])));
    }

    #[test]
    fn dimension_mismatch_is_error() {
        let m = IntMatrix::from_rows(&[vec![1, 2]]);
        assert!(solve_int_linear(&m, &iv(&[1, 2]), None).is_err());
        assert!(solve_int_linear(&m, &iv(&[1]), Some(&Int::from(0))).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&IntMatrix::from_rows(&[vec![1, 1]]), None).unwrap();
        assert_eq!(k.shape(), (2, 1));
        assert!(k.column(0) == iv(&[1, -1]) || k.column(0) == iv(&[-1, 1]));
        assert_eq!(kernel_basis(&IntMatrix::identity(2), None).unwrap().cols(), 0);
        let k4 = kernel_basis(&IntMatrix::from_rows(&[vec![2]]), Some(&Int::from(4))).unwrap();
        let searched: Vec<i64> = (1..4).filter(|x| (2 * x) % 4 == 0).collect();
        assert_eq!(searched, vec![2]);
        assert_eq!(k4, IntMatrix::from_rows(&[vec![2]]));
    }

    fn system() -> impl Strategy<Value = (IntMatrix, Vec<i64>)> {
        (0usize..=5, 0usize..=5).prop_flat_map(|(r, c)| {
            (
                proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v)),
                proptest::collection::vec(-9i64..=9, c),
            )
        })
    }

    proptest! {
        #[test]
        fn consistent_systems_are_solved((m, x) in system()) {
            let b = m.mul_vec(&iv(&x));
            let sol = solve_int_linear(&m, &b, None).unwrap().expect("solvable by construction");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }

        #[test]
        fn modular_systems_are_solved((m, x) in system(), q in 2i64..=12) {
            let q = Int::from(q);
            let b: Vec<Int> = m.mul_vec(&iv(&x)).iter().map(|v| v + &q * 3).collect();
            let sol = solve_int_linear(&m, &b, Some(&q)).unwrap().expect("solvable by construction");
            for (l, r) in m.mul_vec(&sol).iter().zip(&b) {
                prop_assert!(((l - r) % &q).is_zero());
            }
        }

        #[test]
        fn kernel_columns_vanish_and_span((m, x) in system()) {
            let k = kernel_basis(&m, None).unwrap();
            for c in k.columns() {
                prop_assert!(m.mul_vec(&c).iter().all(Zero::is_zero));
            }
            // project a random vector into the kernel through the normal form and re-express it
            let s = Solver::new(&m);
            let v = s.decomposition().v.clone();
            let vinv = s.decomposition().v_inv.clone();
            let mut y = vinv.mul_vec(&iv(&x));
            for yi in y.iter_mut().take(s.rank()) {
                *yi = Int::zero();
            }
            let z = v.mul_vec(&y);
            prop_assert!(m.mul_vec(&z).iter().all(Zero::is_zero));
            prop_assert!(in_column_span(&k, &z));
        }

        #[test]
        fn modular_kernel_columns_vanish((m, _x) in system(), q in 2i64..=9) {
            let q = Int::from(q);
            let k = kernel_basis(&m, Some(&q)).unwrap();
            for c in k.columns() {
                prop_assert!(m.mul_vec(&c).iter().all(|e| (e % &q).is_zero()));
            }
        }
    }
}
