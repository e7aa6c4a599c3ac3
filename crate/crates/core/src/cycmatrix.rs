//! Dense matrices over [`Cyclotomic`] scalars.

use std::ops::{Index, IndexMut};

use crate::scalars::Cyclotomic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, &Cyclotomic::one())
    }

    pub fn scalar(n: usize, c: &Cyclotomic) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<Cyclotomic> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged matrix");
        CycMatrix { rows: r, cols: c, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] = &out[(i, j)] + &t;
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Cyclotomic) -> CycMatrix {
        CycMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> CycMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn pow(&self, e: u64) -> CycMatrix {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols)).fold(Cyclotomic::zero(), |acc, i| &acc + &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    /// Exactly one nonzero entry in every row and every column.
    pub fn is_generalized_permutation(&self) -> bool {
        let rows_ok = (0..self.rows).all(|i| (0..self.cols).filter(|&j| !self[(i, j)].is_zero()).count() == 1);
        let cols_ok = (0..self.cols).all(|j| (0..self.rows).filter(|&i| !self[(i, j)].is_zero()).count() == 1);
        rows_ok && cols_ok
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn determinant(&self) -> Cyclotomic {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Cyclotomic::one();
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = Cyclotomic::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Cyclotomic::zero(),
                }
            }
            let prev_inv = prev.inv().expect("Bareiss pivots are nonzero");
            for i in k + 1..n {
                let aik = a[(i, k)].clone();
                for j in k + 1..n {
                    let t = &(&a[(k, k)] * &a[(i, j)]) - &(&aik * &a[(k, j)]);
                    a[(i, j)] = &t * &prev_inv;
                }
                a[(i, k)] = Cyclotomic::zero();
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Rank by Gaussian elimination; zero entries are skipped, so sparse
    /// systems are cheap.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Cyclotomic>> =
            (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
            rows.swap(rank, p);
            let inv = rows[rank][col].inv().expect("pivot is nonzero");
            let pivot_row: Vec<Cyclotomic> = rows[rank].iter().map(|x| x * &inv).collect();
            for r in rank + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let f = rows[r][col].clone();
                for k in col..self.cols {
                    if !pivot_row[k].is_zero() {
                        let t = &f * &pivot_row[k];
                        rows[r][k] = &rows[r][k] - &t;
                    }
                }
            }
            rows[rank] = pivot_row;
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Inverse by Gauss-Jordan elimination; `None` for singular matrices.
    pub fn inverse(&self) -> Option<CycMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(col, p);
            inv.swap_rows(col, p);
            let f = a[(col, col)].inv().ok()?;
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &f;
                inv[(col, j)] = &inv[(col, j)] * &f;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let g = a[(r, col)].clone();
                for j in 0..n {
                    let t = &g * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - &t;
                    let t = &g * &inv[(col, j)];
                    inv[(r, j)] = &inv[(r, j)] - &t;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = Cyclotomic;
    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> CycMatrix {
        CycMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Cyclotomic::from_integer(v)).collect()).collect())
    }

    /// Permutation expansion, for cross-checking small determinants.
    fn leibniz(m: &CycMatrix) -> Cyclotomic {
        fn rec(m: &CycMatrix, row: usize, used: &mut Vec<bool>, sign: bool) -> Cyclotomic {
            let n = m.rows();
            if row == n {
                return if sign { -Cyclotomic::one() } else { Cyclotomic::one() };
            }
            let mut acc = Cyclotomic::zero();
            for c in 0..n {
                if used[c] {
                    continue;
                }
                let inversions = (c + 1..n).filter(|&k| used[k]).count() % 2 == 1;
                used[c] = true;
                let sub = rec(m, row + 1, used, sign ^ inversions);
                used[c] = false;
                acc = &acc + &(&m[(row, c)] * &sub);
            }
            acc
        }
        rec(m, 0, &mut vec![false; m.rows()], false)
    }

    #[test]
    fn determinant_matches_leibniz() {
        let w = Cyclotomic::primitive_root(3);
        let m = CycMatrix::from_rows(vec![
            vec![w.clone(), Cyclotomic::from_integer(2), Cyclotomic::zero()],
            vec![Cyclotomic::zero(), Cyclotomic::zero(), w.clone()],
            vec![Cyclotomic::from_fraction(1, 2), Cyclotomic::one(), &w * &w],
        ]);
        assert_eq!(m.determinant(), leibniz(&m));
        let p = int(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(p.determinant(), Cyclotomic::one());
        assert!(p.is_generalized_permutation());
    }

    #[test]
    fn singular_and_rank() {
        let m = int(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert!(m.determinant().is_zero());
        assert_eq!(m.rank(), 2);
        assert_eq!(CycMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(CycMatrix::identity(4).rank(), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let w = Cyclotomic::primitive_root(5);
        let m = CycMatrix::from_rows(vec![
            vec![Cyclotomic::zero(), w.clone(), Cyclotomic::one()],
            vec![Cyclotomic::from_integer(3), Cyclotomic::zero(), Cyclotomic::zero()],
            vec![Cyclotomic::one(), Cyclotomic::one(), &w * &w],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), CycMatrix::identity(3));
        assert!(int(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
