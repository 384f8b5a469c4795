use std::fmt;

use super::field::{Field, FieldElem};
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

/// Result of a row reduction: the reduced echelon form, its pivot columns and rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Solved {
        particular: Vec<FieldElem>,
        kernel: Vec<Vec<FieldElem>>,
    },
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(field: Field, n: usize, c: FieldElem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(field: Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.p();
        Ok(Self {
            field,
            rows,
            cols,
            data: data.into_iter().map(|x| x % p).collect(),
        })
    }

    /// Builds a matrix from signed integer rows, reducing modulo p.
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged matrix rows".into()));
            }
            data.extend(r.iter().map(|&x| field.from_i64(x)));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<FieldElem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            debug_assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m.data[i * m.cols + j] = x;
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn data(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let row = other.row(k);
                for (j, &b) in row.iter().enumerate() {
                    acc[j] = (acc[j] + a * b as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.mul_add(acc, a, b))
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat { data, ..self.clone() }
    }

    pub fn scale(&self, c: FieldElem) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { data, ..self.clone() }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Mat, c: FieldElem) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let f = self.field;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.mul_add(*a, b, c);
        }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = block.get(r, c);
            }
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.field, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.data[i * cols.len() + j] = self.get(r, c);
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.data[r * m.cols + j] = f.mul(v, inv);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v != 0 {
                        m.data[i * m.cols + j] = f.mul_add(m.get(i, j), neg, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref { mat: m, pivots, rank }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn image_dim(&self) -> usize {
        self.rank()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let Rref { mat, pivots, .. } = self.rref();
        kernel_from_rref(&mat, &pivots)
    }

    /// Basis of the column space, as columns of the original matrix.
    pub fn image_basis(&self) -> Vec<Vec<FieldElem>> {
        let Rref { pivots, .. } = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn solve(&self, b: &[FieldElem]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} entries, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Mat::zeros(self.field, self.rows, self.cols + 1);
        aug.paste(0, 0, self);
        for (i, &x) in b.iter().enumerate() {
            aug.set(i, self.cols, x);
        }
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut particular = vec![0; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            particular[c] = mat.get(r, self.cols);
        }
        let coeffs = mat.submatrix(&(0..mat.rows).collect::<Vec<_>>(), &(0..self.cols).collect::<Vec<_>>());
        let kernel = kernel_from_rref(&coeffs, &pivots);
        Ok(Solution::Solved { particular, kernel })
    }

    pub fn determinant(&self) -> FieldElem {
        assert!(self.is_square());
        let f = self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if pr != c {
                m.swap_rows(pr, c);
                det = f.neg(det);
            }
            let pivot = m.get(c, c);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot);
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..n {
                    let v = m.get(c, j);
                    m.data[i * n + j] = f.mul_add(m.get(i, j), neg, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(self.field, n, 2 * n);
        aug.paste(0, 0, self);
        aug.paste(0, n, &Mat::identity(self.field, n));
        let Rref { mat, pivots, .. } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(mat.submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
    }

    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.pow(self.rows.max(1) as u64).is_zero()
    }
}

fn kernel_from_rref(mat: &Mat, pivots: &[usize]) -> Vec<Vec<FieldElem>> {
    let f = mat.field;
    let mut is_pivot = vec![false; mat.cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..mat.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; mat.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(mat.get(r, free));
            }
            v
        })
        .collect()
}

/// Row-reduces a list of vectors and returns a basis of their span.
pub fn span_basis(field: Field, dim: usize, vectors: &[Vec<FieldElem>]) -> Vec<Vec<FieldElem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::zeros(field, vectors.len(), dim);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &x) in v.iter().enumerate() {
            m.data[i * dim + j] = x;
        }
    }
    let Rref { mat, rank, .. } = m.rref();
    (0..rank).map(|r| mat.row(r).to_vec()).collect()
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[F_{}; {}x{}]", self.field.p(), self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> Field {
        Field::new(p).unwrap()
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = Mat::identity(f(7), 2);
        let r = id.rref();
        assert_eq!(r.mat, id);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_zero_has_rank_zero() {
        let z = Mat::zeros(f(7), 3, 2);
        let r = z.rref();
        assert_eq!(r.mat, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());
    }

    #[test]
    fn dependent_rows_over_f5() {
        let m = Mat::from_rows(f(5), &[[2, 4], [1, 2]]).unwrap();
        assert_eq!(m.rref().rank, 1);
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let id = Mat::identity(f(11), 3);
        match id.solve(&[3, 7, 10]).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert_eq!(particular, vec![3, 7, 10]);
                assert!(kernel.is_empty());
            }
            Solution::Inconsistent => panic!("identity system is consistent"),
        }
    }

    #[test]
    fn solve_zero_system_has_full_kernel() {
        let z = Mat::zeros(f(3), 2, 3);
        match z.solve(&[0, 0]).unwrap() {
            Solution::Solved { kernel, .. } => assert_eq!(kernel.len(), 3),
            Solution::Inconsistent => panic!(),
        }
        assert_eq!(z.solve(&[1, 0]).unwrap(), Solution::Inconsistent);
    }

    #[test]
    fn solve_single_equation_over_f2() {
        let a = Mat::from_rows(f(2), &[[1, 1]]).unwrap();
        match a.solve(&[1]).unwrap() {
            Solution::Solved { particular, kernel } => {
                assert_eq!(particular, vec![1, 0]);
                assert_eq!(kernel, vec![vec![1, 1]]);
            }
            Solution::Inconsistent => panic!(),
        }
    }

    #[test]
    fn solve_rejects_shape_mismatch() {
        let a = Mat::identity(f(3), 2);
        assert!(a.solve(&[1]).is_err());
    }

    #[test]
    fn kernel_and_image_dims() {
        let z = Mat::zeros(f(3), 3, 3);
        assert_eq!((z.kernel_dim(), z.image_dim()), (3, 0));
        let id = Mat::identity(f(3), 3);
        assert_eq!((id.kernel_dim(), id.image_dim()), (0, 3));
        let e = Mat::from_rows(f(3), &[[1, 0], [0, 0]]).unwrap();
        assert_eq!((e.kernel_dim(), e.image_dim()), (1, 1));
    }

    #[test]
    fn inverse_and_determinant_agree() {
        let m = Mat::from_rows(f(7), &[[2, 1], [1, 1]]).unwrap();
        assert_eq!(m.determinant(), 1);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(f(7), 2));
        let s = Mat::from_rows(f(7), &[[1, 2], [2, 4]]).unwrap();
        assert_eq!(s.determinant(), 0);
        assert!(s.inverse().is_none());
    }

    fn arb_mat() -> impl Strategy<Value = Mat> {
        (prop::sample::select(vec![2u32, 3, 5, 101]), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0..p, r * c)
                .prop_map(move |d| Mat::from_vec(Field::new(p).unwrap(), r, c, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_mat()) {
            prop_assert_eq!(m.kernel_dim() + m.image_dim(), m.cols());
        }

        #[test]
        fn rref_idempotent(m in arb_mat()) {
            let once = m.rref().mat;
            prop_assert_eq!(once.rref().mat, once);
        }

        #[test]
        fn solve_is_exact(m in arb_mat(), seed in 0u32..1000) {
            let field = m.field();
            let x: Vec<u32> = (0..m.cols()).map(|i| (seed.wrapping_mul(31).wrapping_add(i as u32 * 7)) % field.p()).collect();
            let b = m.mul_vec(&x);
            match m.solve(&b).unwrap() {
                Solution::Solved { particular, kernel } => {
                    prop_assert_eq!(m.mul_vec(&particular), b);
                    for k in kernel {
                        prop_assert!(m.mul_vec(&k).iter().all(|&v| v == 0));
                    }
                }
                Solution::Inconsistent => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }
    }
}

impl serde::Serialize for Mat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Mat", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        st.serialize_field("entries", &self.to_rows())?;
        st.end()
    }
}
