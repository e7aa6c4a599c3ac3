//! Integer matrix normal forms.
//!
//! Everything here works over the integers with arbitrary precision entries.
//! Two normal forms are provided:
//!
//! * the Smith normal form `U·A·V = S` with unimodular `U`, `V`, used for
//!   abelian group quotients and for solving integer linear systems;
//! * the skew (symplectic) normal form `Uᵀ·M·U` of an alternating matrix,
//!   consisting of `2×2` blocks `[0 k; -k 0]` with `k_1 | k_2 | ...` followed
//!   by zeros.
//!
//! Pivots are always the nonzero entry of minimal absolute value, with ties
//! broken by the lowest `(row, col)` index in row-major order.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "ragged matrix: expected {c} columns, found {}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { rows: r, cols: c, data })
    }

    /// Builds a matrix from `i64` rows; panics on ragged input.
    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
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

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
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
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn is_alternating(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                self[(i, i)].is_zero() && (0..i).all(|j| self[(i, j)] == -&self[(j, i)])
            })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// Entries converted to `i64`; panics if some entry does not fit.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.to_i64().expect("entry exceeds i64")).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// `U·A·V = S` with `S` diagonal, nonnegative, each entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Diagonal of `S` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

/// Position of the nonzero entry with least absolute value in the submatrix
/// starting at `(from, from)`; ties go to the lowest `(row, col)`.
fn min_pivot(a: &IntMatrix, from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in from..a.rows() {
        for j in from..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut rank = 0;

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_pivot(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        v_inv.swap_rows(t, pj);

        loop {
            let mut dirty = false;
            // clear column t below the pivot
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                let neg = -q;
                s.add_row_multiple(i, t, &neg);
                u.add_row_multiple(i, t, &neg);
                if !s[(i, t)].is_zero() {
                    dirty = true;
                }
            }
            // clear row t right of the pivot
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                let neg = -&q;
                s.add_col_multiple(j, t, &neg);
                v.add_col_multiple(j, t, &neg);
                // V ← V·E where E adds -q·col t to col j; V⁻¹ ← E⁻¹·V⁻¹ adds q·row j to row t
                v_inv.add_row_multiple(t, j, &q);
                if !s[(t, j)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is smaller than the pivot: move it into place
                let (pi, pj) = min_pivot_in_cross(&s, t);
                s.swap_rows(t, pi);
                u.swap_rows(t, pi);
                s.swap_cols(t, pj);
                v.swap_cols(t, pj);
                v_inv.swap_rows(t, pj);
                continue;
            }
            // pivot must divide the remaining block
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        rank += 1;
    }

    SmithDecomposition { u, s, v, v_inv, rank }
}

/// Smallest nonzero entry in row `t` and column `t` restricted to the active block.
fn min_pivot_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs = a[(t, t)].abs();
    for i in t..a.rows() {
        let v = &a[(i, t)];
        if !v.is_zero() && v.abs() < best_abs {
            best = (i, t);
            best_abs = v.abs();
        }
    }
    for j in t..a.cols() {
        let v = &a[(t, j)];
        if !v.is_zero() && v.abs() < best_abs {
            best = (t, j);
            best_abs = v.abs();
        }
    }
    best
}

/// `Uᵀ·M·U` is block diagonal with blocks `[0 k_i; -k_i 0]` then zeros.
#[derive(Clone, Debug)]
pub struct AlternatingDecomposition {
    pub u: IntMatrix,
    pub block_values: Vec<BigInt>,
    pub zero_tail: usize,
}

impl AlternatingDecomposition {
    /// The block matrix the decomposition claims `Uᵀ·M·U` equals.
    pub fn normal_form(&self) -> IntMatrix {
        let n = 2 * self.block_values.len() + self.zero_tail;
        let mut out = IntMatrix::zeros(n, n);
        for (b, k) in self.block_values.iter().enumerate() {
            out[(2 * b, 2 * b + 1)] = k.clone();
            out[(2 * b + 1, 2 * b)] = -k;
        }
        out
    }
}

/// Basis change on an alternating form: `e_dst ← e_dst + k·e_src`.
fn congruence_add(m: &mut IntMatrix, u: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    m.add_col_multiple(dst, src, k);
    m.add_row_multiple(dst, src, k);
    u.add_col_multiple(dst, src, k);
}

fn congruence_swap(m: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    m.swap_cols(a, b);
    m.swap_rows(a, b);
    u.swap_cols(a, b);
}

pub fn alternating_normal_form(m: &IntMatrix) -> Result<AlternatingDecomposition> {
    if !m.is_alternating() {
        return Err(Error::NotAlternating);
    }
    let n = m.rows();
    let mut w = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut blocks = Vec::new();
    let mut p = 0;

    while p + 1 < n {
        let Some((i, j)) = min_pivot(&w, p) else { break };
        // min over an alternating block lands in the upper triangle
        debug_assert!(i < j);
        congruence_swap(&mut w, &mut u, p, i);
        let j = if j == p { i } else { j };
        congruence_swap(&mut w, &mut u, p + 1, j);
        if w[(p, p + 1)].is_negative() {
            congruence_swap(&mut w, &mut u, p, p + 1);
        }

        loop {
            let k = w[(p, p + 1)].clone();
            let mut dirty = false;
            for r in p + 2..n {
                if !w[(p, r)].is_zero() {
                    let q = -w[(p, r)].div_floor(&k);
                    congruence_add(&mut w, &mut u, r, p + 1, &q);
                    dirty |= !w[(p, r)].is_zero();
                }
                if !w[(p + 1, r)].is_zero() {
                    // m[p+1][r] + q·m[p+1][p] = m[p+1][r] - q·k
                    let q = w[(p + 1, r)].div_floor(&k);
                    congruence_add(&mut w, &mut u, r, p, &q);
                    dirty |= !w[(p + 1, r)].is_zero();
                }
            }
            if dirty {
                // bring the smallest remainder in rows p, p+1 to (p, p+1)
                let mut best: Option<(usize, usize, BigInt)> = None;
                for row in [p, p + 1] {
                    for c in p + 2..n {
                        let v = w[(row, c)].abs();
                        if !v.is_zero() && best.as_ref().map_or(true, |b| v < b.2) {
                            best = Some((row, c, v));
                        }
                    }
                }
                let (row, c, _) = best.expect("dirty implies a nonzero remainder");
                if row == p + 1 {
                    congruence_swap(&mut w, &mut u, p, p + 1);
                }
                congruence_swap(&mut w, &mut u, p + 1, c);
                if w[(p, p + 1)].is_negative() {
                    congruence_swap(&mut w, &mut u, p, p + 1);
                }
                continue;
            }
            let bad = (p + 2..n)
                .flat_map(|i| (p + 2..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w[(i, j)].is_multiple_of(&k));
            match bad {
                Some((i, _)) => congruence_add(&mut w, &mut u, p, i, &BigInt::one()),
                None => break,
            }
        }
        blocks.push(w[(p, p + 1)].clone());
        p += 2;
    }

    let out = AlternatingDecomposition { u, block_values: blocks, zero_tail: n - p };
    let check = out.u.transpose().mul(m).mul(&out.u);
    if check != out.normal_form() {
        return Err(Error::Internal("alternating normal form failed re-verification".into()));
    }
    Ok(out)
}

/// Solves `A·x = b` over the integers using a precomputed Smith decomposition.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    snf: SmithDecomposition,
}

impl IntegerSolver {
    pub fn new(a: &IntMatrix) -> Self {
        IntegerSolver { snf: smith_normal_form(a) }
    }

    /// Some integer solution of `A·x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.snf.u.mul_vec(b);
        let n = self.snf.v.rows();
        let mut y = vec![BigInt::zero(); n];
        for (i, ci) in c.iter().enumerate() {
            if i < self.snf.rank {
                let s = &self.snf.s[(i, i)];
                if !ci.is_multiple_of(s) {
                    return None;
                }
                y[i] = ci / s;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&y))
    }

    /// Basis of the integer kernel `{x : A·x = 0}` as columns of `V`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.snf.rank..self.snf.v.cols()).map(|j| self.snf.v.column(j)).collect()
    }
}

/// Solves `A·x ≡ b (mod modulus)`; a zero modulus means exact equality.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], modulus: &BigInt) -> Option<Vec<BigInt>> {
    let (m, n) = (a.rows(), a.cols());
    if modulus.is_zero() {
        return IntegerSolver::new(a).solve(b);
    }
    // A·x + modulus·y = b
    let mut aug = IntMatrix::zeros(m, n + m);
    for i in 0..m {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n + i)] = modulus.clone();
    }
    IntegerSolver::new(&aug).solve(b).map(|mut x| {
        x.truncate(n);
        for v in &mut x {
            *v = v.mod_floor(modulus);
        }
        x
    })
}

/// Basis of the integer kernel of `A`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    IntegerSolver::new(a).kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        let c = rows.first().map_or(0, Vec::len);
        IntMatrix::from_i64_rows(rows, c)
    }

    fn check_smith(a: &IntMatrix, d: &SmithDecomposition) {
        assert_eq!(d.u.mul(a).mul(&d.v), d.s);
        assert!(d.s.is_diagonal());
        assert_eq!(d.v.mul(&d.v_inv), IntMatrix::identity(a.cols()));
        assert!(d.u.determinant().abs().is_one());
        assert!(d.v.determinant().abs().is_one());
        let diag = d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
    }

    #[test]
    fn smith_identity() {
        let a = IntMatrix::identity(2);
        let d = smith_normal_form(&a);
        assert_eq!(d.s, a);
        assert_eq!(d.u, a);
        assert_eq!(d.v, a);
    }

    #[test]
    fn smith_diag_2_3() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        let d = smith_normal_form(&a);
        check_smith(&a, &d);
        assert_eq!(d.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn smith_2468() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let d = smith_normal_form(&a);
        check_smith(&a, &d);
        assert_eq!(d.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn smith_empty_and_zero() {
        let d = smith_normal_form(&IntMatrix::zeros(0, 0));
        assert_eq!(d.rank, 0);
        let z = IntMatrix::zeros(2, 3);
        let d = smith_normal_form(&z);
        check_smith(&z, &d);
        assert_eq!(d.rank, 0);
    }

    #[test]
    fn alternating_already_normal() {
        let a = m(&[vec![0, 1], vec![-1, 0]]);
        let d = alternating_normal_form(&a).unwrap();
        assert_eq!(d.block_values, vec![BigInt::from(1)]);
        assert_eq!(d.u, IntMatrix::identity(2));
    }

    #[test]
    fn alternating_two_blocks_of_two() {
        let a = m(&[vec![0, 2, 0, 0], vec![-2, 0, 0, 0], vec![0, 0, 0, 2], vec![0, 0, -2, 0]]);
        let d = alternating_normal_form(&a).unwrap();
        assert_eq!(d.block_values, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(d.zero_tail, 0);
    }

    #[test]
    fn alternating_rejects_symmetric() {
        let a = m(&[vec![0, 1], vec![1, 0]]);
        assert!(matches!(alternating_normal_form(&a), Err(Error::NotAlternating)));
        let b = m(&[vec![1, 0], vec![0, 0]]);
        assert!(matches!(alternating_normal_form(&b), Err(Error::NotAlternating)));
    }

    #[test]
    fn solve_mod_examples() {
        // 2x ≡ 1 mod 4 has no solution, 3x ≡ 1 mod 4 has x = 3
        let a = m(&[vec![2]]);
        assert!(solve_mod(&a, &[BigInt::from(1)], &BigInt::from(4)).is_none());
        let a = m(&[vec![3]]);
        let x = solve_mod(&a, &[BigInt::from(1)], &BigInt::from(4)).unwrap();
        assert_eq!(x, vec![BigInt::from(3)]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[vec![1, 2, 3]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    fn random_matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-bound..=bound, rows * cols)
            .prop_map(move |v| IntMatrix::from_i64_rows(&v.chunks(cols).map(<[i64]>::to_vec).collect::<Vec<_>>(), cols))
    }

    fn random_alternating(n: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |v| {
            let mut a = IntMatrix::zeros(n, n);
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let x = BigInt::from(it.next().unwrap());
                    a[(j, i)] = -&x;
                    a[(i, j)] = x;
                }
            }
            a
        })
    }

    proptest! {
        #[test]
        fn smith_invariants(a in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| random_matrix(r, c, 12))) {
            let d = smith_normal_form(&a);
            check_smith(&a, &d);
        }

        #[test]
        fn smith_diagonal_matches_minor_gcds_2x2(a in random_matrix(2, 2, 20)) {
            // d1 = gcd of entries, d1*d2 = |det|
            let d = smith_normal_form(&a);
            let g = (0..2).flat_map(|i| (0..2).map(move |j| (i, j)))
                .fold(BigInt::zero(), |g, (i, j)| g.gcd(&a[(i, j)]));
            prop_assert_eq!(&d.s[(0, 0)], &g);
            prop_assert_eq!(&d.s[(0, 0)] * &d.s[(1, 1)], a.determinant().abs());
        }

        #[test]
        fn alternating_6x6(a in random_alternating(6, 9)) {
            let d = alternating_normal_form(&a).unwrap();
            prop_assert_eq!(d.u.transpose().mul(&a).mul(&d.u), d.normal_form());
            prop_assert!(d.u.determinant().abs().is_one());
            for k in &d.block_values {
                prop_assert!(k.is_positive());
            }
            for w in d.block_values.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            let det = a.determinant();
            if !det.is_zero() {
                let prod: BigInt = d.block_values.iter().product();
                prop_assert_eq!(det.abs(), &prod * &prod);
            }
        }

        #[test]
        fn alternating_odd_sizes(a in (1usize..6).prop_flat_map(|n| random_alternating(n.max(2), 5))) {
            let d = alternating_normal_form(&a).unwrap();
            prop_assert_eq!(d.u.transpose().mul(&a).mul(&d.u), d.normal_form());
        }
    }
}
