use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, IntMatrix};

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, nonnegative, `d₁ | d₂ | …`.
///
/// The inverses of `U` and `V` are carried along because every cokernel and kernel
/// computation downstream needs both directions of the change of basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    /// Diagonal entries `d_0 … d_{min(r,c)-1}`, zeros included.
    pub fn diagonal(&self) -> Vec<Int> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries; they always come first.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().take_while(|d| !d.is_zero()).count()
    }

    /// Checks all the structural invariants against the source matrix.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        let (r, c) = m.shape();
        if self.u.shape() != (r, r) || self.v.shape() != (c, c) || self.d.shape() != (r, c) {
            return false;
        }
        if &(&self.u * m) * &self.v != self.d {
            return false;
        }
        if &self.u * &self.u_inv != IntMatrix::identity(r) || &self.v * &self.v_inv != IntMatrix::identity(c) {
            return false;
        }
        for i in 0..r {
            for j in 0..c {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        if diag.iter().any(Signed::is_negative) {
            return false;
        }
        diag.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[t] += c·row[s]
    fn add_row(&mut self, t: usize, s: usize, c: &Int) {
        self.a.add_row_multiple(t, s, c);
        self.u.add_row_multiple(t, s, c);
        self.u_inv.add_col_multiple(s, t, &-c);
    }

    /// col[t] += c·col[s]
    fn add_col(&mut self, t: usize, s: usize, c: &Int) {
        self.a.add_col_multiple(t, s, c);
        self.v.add_col_multiple(t, s, c);
        self.v_inv.add_row_multiple(s, t, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|b| ax < b.2) {
                    let unit = ax.is_one();
                    best = Some((i, j, ax));
                    if unit {
                        break;
                    }
                }
            }
            if best.as_ref().is_some_and(|b| b.2.is_one()) {
                break;
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn step(&mut self, t: usize) -> bool {
        let (rows, cols) = self.a.shape();
        loop {
            let Some((pi, pj)) = self.min_pivot(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let x = self.a.get(i, t);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.add_row(i, t, &-q);
                clean &= self.a.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let x = self.a.get(t, j);
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.add_col(j, t, &-q);
                clean &= self.a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(self.a.get(i, j) % &p).is_zero()));
            match bad_row {
                Some(i) => self.add_row(t, i, &Int::one()),
                None => {
                    if p.is_negative() {
                        self.negate_row(t);
                    }
                    return true;
                }
            }
        }
    }
}

/// Smith normal form with the smallest-absolute-value pivot strategy.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let (r, c) = m.shape();
    let mut red = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    for t in 0..r.min(c) {
        if !red.step(t) {
            break;
        }
    }
    SnfDecomposition { u: red.u, d: red.a, v: red.v, u_inv: red.u_inv, v_inv: red.v_inv }
}

/// Invariant factors of the cokernel of `m` viewed as a presentation: all diagonal
/// entries of the normal form, padded with zeros up to the row count.
pub fn invariant_factors(m: &IntMatrix) -> Vec<Int> {
    let s = snf(m);
    let mut diag = s.diagonal();
    diag.resize(m.rows(), Int::zero());
    diag
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    /// Independent oracle: the k-th determinantal divisor is the gcd of all k×k minors,
    /// and d_k = Δ_k / Δ_{k-1}.
    fn determinantal_diagonal(m: &IntMatrix) -> Vec<Int> {
        use subsets::combinations;
        let (r, c) = m.shape();
        let mut out = Vec::new();
        let mut prev = Int::one();
        for k in 1..=r.min(c) {
            let mut g = Int::zero();
            for rs in combinations(r, k) {
                for cs in combinations(c, k) {
                    g = g.gcd(&m.select_rows(&rs).select_cols(&cs).determinant());
                }
            }
            if g.is_zero() {
                out.extend(std::iter::repeat_n(Int::zero(), r.min(c) - out.len()));
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    mod subsets {
        pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
            fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    go(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            go(0, n, k, &mut Vec::new(), &mut out);
            out
        }
    }

    #[test]
    fn two_by_two_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = snf(&m);
        assert!(s.verify(&m));
        assert_eq!(s.diagonal(), ints(&[2, 4]));
        assert_eq!(determinantal_diagonal(&m), ints(&[2, 4]));
    }

    #[test]
    fn identity_is_fixed() {
        let m = IntMatrix::identity(4);
        let s = snf(&m);
        assert_eq!(s.d, m);
        assert_eq!(s.u, m);
        assert_eq!(s.v, m);
    }

    #[test]
    fn zero_matrix() {
        let m = IntMatrix::zeros(2, 3);
        let s = snf(&m);
        assert_eq!(s.d, m);
        assert!(s.verify(&m));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn empty_shapes() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let m = IntMatrix::zeros(r, c);
            assert!(snf(&m).verify(&m));
        }
    }

    #[test]
    fn divisibility_needs_mixing() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = snf(&m);
        assert!(s.verify(&m));
        assert_eq!(s.diagonal(), ints(&[1, 6]));
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..=5, 0usize..=5)
            .prop_flat_map(|(r, c)| proptest::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMatrix::from_i64(r, c, &v)))
    }

    proptest! {
        #[test]
        fn snf_invariants(m in small_matrix()) {
            let s = snf(&m);
            prop_assert!(s.verify(&m));
            prop_assert_eq!(s.u.determinant().abs(), Int::one());
            prop_assert_eq!(s.v.determinant().abs(), Int::one());
        }

        #[test]
        fn snf_matches_determinantal_divisors(m in small_matrix()) {
            prop_assert_eq!(snf(&m).diagonal(), determinantal_diagonal(&m));
        }
    }
}
