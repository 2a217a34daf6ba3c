//! Dense matrices over cyclotomic fields.

use std::fmt;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::cyclo::CycNum;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![CycNum::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = CycNum::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        CycMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycNum) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CycMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[CycNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Self::from_fn(self.rows, other.cols, |r, c| {
            (0..self.cols)
                .filter(|&k| !self[(r, k)].is_zero() && !other[(k, c)].is_zero())
                .map(|k| &self[(r, k)] * &other[(k, c)])
                .sum()
        })
    }

    pub fn scale(&self, s: &CycNum) -> CycMatrix {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Row-reduce a copy; returns the reduced matrix, the pivot columns, and the
    /// determinant factor accumulated from swaps and pivot scalings.
    fn eliminate(&self) -> (Vec<Vec<CycNum>>, Vec<usize>, CycNum) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut factor = CycNum::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap(p, r);
                factor = -factor;
            }
            let pivot = m[r][c].clone();
            let inv = pivot.inv().expect("nonzero pivot");
            factor = &factor * &pivot;
            for v in m[r].iter_mut().skip(c) {
                *v = &*v * &inv;
            }
            for i in r + 1..self.rows {
                if m[i][c].is_zero() {
                    continue;
                }
                let f = m[i][c].clone();
                for k in c..self.cols {
                    if !m[r][k].is_zero() {
                        let t = &m[r][k] * &f;
                        m[i][k] = &m[i][k] - &t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots, factor)
    }

    pub fn det(&self) -> CycNum {
        assert!(self.is_square(), "determinant of non-square matrix");
        if self.rows == 0 {
            return CycNum::one();
        }
        let (_, pivots, factor) = self.eliminate();
        if pivots.len() < self.rows {
            CycNum::zero()
        } else {
            factor
        }
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1.len()
    }

    pub fn to_complex(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(CycNum::to_complex).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for CycMatrix {
    type Output = CycNum;
    fn index(&self, (r, c): (usize, usize)) -> &CycNum {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut CycNum {
        &mut self.data[r * self.cols + c]
    }
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Floating-point matrix product, used only by the diagnostic layer.
pub(crate) fn complex_mul(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> CycMatrix {
        CycMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| CycNum::from_int(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn integer_determinants() {
        assert_eq!(int_matrix(&[&[-2, 1], &[1, -2]]).det(), CycNum::from_int(3));
        assert_eq!(int_matrix(&[&[0, 1], &[1, 0]]).det(), CycNum::from_int(-1));
        assert_eq!(
            int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).det(),
            CycNum::zero()
        );
        assert_eq!(int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn cyclotomic_determinant() {
        let z = |k| CycNum::zeta(3, k);
        let m = CycMatrix::from_rows(vec![vec![z(1), z(2)], vec![z(2), z(1)]]);
        assert_eq!(m.det(), z(2) - z(1));
    }

    #[test]
    fn product_and_transpose() {
        let a = int_matrix(&[&[1, 2], &[3, 4], &[5, 6]]);
        let b = a.transpose();
        assert_eq!(b.rows(), 2);
        let p = b.mul(&a);
        assert_eq!(p, int_matrix(&[&[35, 44], &[44, 56]]));
        assert!(p.is_symmetric());
        assert_eq!(CycMatrix::identity(2).mul(&p), p);
    }
}
