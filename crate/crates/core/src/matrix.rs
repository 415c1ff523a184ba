//! Dense matrices with exact determinants via fraction-free elimination.

use crate::error::{Error, Result};
use crate::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Scalar> ExactMatrix<T> {
    /// Wraps a row-major entry vector. Panics unless `entries.len() == rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must be rows * cols"
        );
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds from per-row vectors, rejecting ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::RaggedMatrix);
        }
        Ok(ExactMatrix {
            rows: height,
            cols: width,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    /// Determinant by Bareiss fraction-free elimination with row pivoting.
    /// Every interior division is exact over an integral domain, so no
    /// intermediate value leaves the scalar ring. The empty matrix has
    /// determinant one.
    pub fn determinant(&self) -> Result<T> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut m = self.entries.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n - 1 {
            if m[idx(k, k)].is_zero() {
                match (k + 1..n).find(|&r| !m[idx(r, k)].is_zero()) {
                    Some(r) => {
                        for j in 0..n {
                            m.swap(idx(k, j), idx(r, j));
                        }
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = m[idx(k, k)].clone() * m[idx(i, j)].clone()
                        - m[idx(i, k)].clone() * m[idx(k, j)].clone();
                    m[idx(i, j)] = t / prev.clone();
                }
                m[idx(i, k)] = T::zero();
            }
            prev = m[idx(k, k)].clone();
        }
        let det = m[idx(n - 1, n - 1)].clone();
        Ok(if negate { -det } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rational};
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rat_int(n)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Cofactor expansion along the first row, the slow independent check.
    fn cofactor_det(m: &ExactMatrix<Rational>) -> Rational {
        let n = m.rows();
        if n == 0 {
            return rat_int(1);
        }
        if n == 1 {
            return m.at(0, 0).clone();
        }
        let mut det = rat_int(0);
        for j in 0..n {
            let minor = ExactMatrix::from_rows(
                (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&c| c != j)
                            .map(|c| m.at(i, c).clone())
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let term = m.at(0, j).clone() * cofactor_det(&minor);
            det = if j % 2 == 0 { det + term } else { det - term };
        }
        det
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(mat(&[]).determinant().unwrap(), rat_int(1));
        assert_eq!(mat(&[&[1]]).determinant().unwrap(), rat_int(1));
        assert_eq!(
            mat(&[&[1, 1], &[4, 16]]).determinant().unwrap(),
            rat_int(12)
        );
        assert_eq!(mat(&[&[1, 1], &[1, 1]]).determinant().unwrap(), rat_int(0));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).determinant().unwrap(), rat_int(-1));
        assert_eq!(
            mat(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]])
                .determinant()
                .unwrap(),
            rat_int(5)
        );
    }

    #[test]
    fn zero_column_means_singular() {
        assert_eq!(
            mat(&[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6]])
                .determinant()
                .unwrap(),
            rat_int(0)
        );
    }

    #[test]
    fn non_square_is_rejected() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(
            m.determinant(),
            Err(Error::NonSquareMatrix { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let r = ExactMatrix::from_rows(vec![vec![rat_int(1)], vec![rat_int(1), rat_int(2)]]);
        assert!(matches!(r, Err(Error::RaggedMatrix)));
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(
            n in 1usize..=4,
            vals in proptest::collection::vec(-6i64..=6, 16)
        ) {
            let m = ExactMatrix::from_rows(
                (0..n).map(|i| (0..n).map(|j| rat_int(vals[i * 4 + j])).collect()).collect()
            ).unwrap();
            prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
        }

        #[test]
        fn swapping_rows_flips_the_sign(vals in proptest::collection::vec(-6i64..=6, 9)) {
            let m = ExactMatrix::from_rows(
                (0..3).map(|i| (0..3).map(|j| rat_int(vals[i * 3 + j])).collect()).collect()
            ).unwrap();
            let swapped = ExactMatrix::from_rows(
                [1usize, 0, 2].iter().map(|&i| (0..3).map(|j| vals[i * 3 + j]).map(rat_int).collect()).collect()
            ).unwrap();
            prop_assert_eq!(swapped.determinant().unwrap(), -m.determinant().unwrap());
        }
    }
}
