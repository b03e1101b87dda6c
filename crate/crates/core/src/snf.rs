//! Smith normal form over the integers, with both transforms and their
//! inverses, plus the integer linear solvers built on top of it.
//!
//! Pivoting picks the nonzero entry of least absolute value in the active
//! block and reduces its row and column completely before moving on; a pivot
//! that fails to divide the rest of the block absorbs the offending row, so
//! the divisibility chain holds on exit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    u_inv: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
}

impl SmithDecomposition {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The diagonal of `D`, including trailing zeros up to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Nonzero diagonal entries (units included).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn u_inverse(&self) -> &IntMatrix {
        &self.u_inv
    }

    pub fn v_inverse(&self) -> &IntMatrix {
        &self.v_inv
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

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
        self.v_inv.add_row_multiple(src, dst, &-k);
    }

    fn negate_col(&mut self, j: usize) {
        self.a.negate_col(j);
        self.v.negate_col(j);
        self.v_inv.negate_row(j);
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a[(t, t)].abs();
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)].abs();
            if !x.is_zero() && x < best_abs {
                best = (i, t);
                best_abs = x;
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a[(t, j)].abs();
            if !x.is_zero() && x < best_abs {
                best = (t, j);
                best_abs = x;
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let (rows, cols) = self.a.shape();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let q = &self.a[(i, t)] / &pivot;
                    self.add_row(i, t, &-q);
                    clean &= self.a[(i, t)].is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let q = &self.a[(t, j)] / &pivot;
                    self.add_col(j, t, &-q);
                    clean &= self.a[(t, j)].is_zero();
                }
                if !clean {
                    let (i, j) = self.smallest_in_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let bad_row = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
                match bad_row {
                    Some(i) => self.add_row(t, i, &BigInt::from(1)),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_col(t);
            }
            t += 1;
        }
        t
    }
}

/// Smith normal form of `m` with unimodular transforms.
pub fn snf(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = m.shape();
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let rank = r.run();
    SmithDecomposition {
        u: r.u,
        d: r.a,
        v: r.v,
        u_inv: r.u_inv,
        v_inv: r.v_inv,
        rank,
    }
}

/// Basis (as columns) of the integer kernel `{x in Z^cols : M x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let s = snf(m);
    let idx: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_cols(&idx)
}

/// Reusable solver for `M x = b` over the integers.
#[derive(Clone, Debug)]
pub struct IntSolver {
    smith: SmithDecomposition,
}

impl IntSolver {
    pub fn new(m: &IntMatrix) -> Self {
        IntSolver { smith: snf(m) }
    }

    pub fn cols(&self) -> usize {
        self.smith.v.rows()
    }

    /// Some integer solution of `M x = b`, or `None` when there is none.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let s = &self.smith;
        let y = s.u.mul_vec(b);
        let mut z = vec![BigInt::zero(); s.v.rows()];
        for (i, yi) in y.iter().enumerate() {
            if i < s.rank {
                let d = &s.d[(i, i)];
                let (q, r) = yi.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                z[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(s.v.mul_vec(&z))
    }
}

/// One-shot integer solve of `M x = b`.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    IntSolver::new(m).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check(mat: &IntMatrix) -> SmithDecomposition {
        let s = snf(mat);
        assert_eq!(&(&s.u * mat) * &s.v, s.d);
        assert_eq!(&s.u * s.u_inverse(), IntMatrix::identity(mat.rows()));
        assert_eq!(&s.v * s.v_inverse(), IntMatrix::identity(mat.cols()));
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if !w[1].is_zero() || !w[0].is_zero() {
                assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        s
    }

    #[test]
    fn one_by_one_is_already_diagonal() {
        let s = check(&m(&[vec![3]]));
        assert_eq!(s.d, m(&[vec![3]]));
        assert_eq!(s.u, m(&[vec![1]]));
        assert_eq!(s.v, m(&[vec![1]]));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries 2, |det| = 8
        let s = check(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix_untouched() {
        let z = IntMatrix::zeros(2, 3);
        let s = check(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn divisibility_repair() {
        // diag(2, 3) must become diag(1, 6)
        let s = check(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        let b = vec![BigInt::from(4), BigInt::from(8)];
        let x = solve_integer(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve_integer(&a, &[BigInt::from(1), BigInt::from(1)]).is_none());
        assert!(solve_integer(&m(&[vec![2]]), &[BigInt::from(3)]).is_none());
    }

    #[test]
    fn empty_shapes() {
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.rank(), 0);
        let s = check(&IntMatrix::zeros(0, 2));
        assert_eq!(s.v.rows(), 2);
    }
}
