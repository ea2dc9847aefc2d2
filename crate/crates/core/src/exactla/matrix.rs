use std::fmt;
use std::ops::Mul;

use super::{Field, LinalgError, Scalar};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: Mat,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows; every entry must belong to `field`.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(LinalgError::Shape(format!(
                    "ragged rows: expected {c} entries, found {}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(LinalgError::MixedField);
                }
                data.push(x);
            }
        }
        Ok(Mat {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Builds a matrix with an explicit shape (so empty shapes such as 0×3 are expressible).
    pub fn from_vec(
        field: Field,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Mat, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| x.field() != field) {
            return Err(LinalgError::MixedField);
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| field.from_i64(x)));
        }
        Mat {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        debug_assert_eq!(x.field(), self.field);
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::MixedField);
        }
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = vec![self.field.zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                *slot = &*slot + &(a * b);
            }
        }
        out
    }

    fn zip_with(&self, other: &Mat, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Mat {
        assert_eq!(self.field, other.field, "mixed field descriptors");
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch"
        );
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Horizontal concatenation; `rows` is needed when `parts` is empty.
    pub fn hstack(field: Field, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.set_block(0, off, m);
            off += m.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.set_block(off, 0, m);
            off += m.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.set_block(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, m: &Mat) {
        for i in 0..m.rows {
            for j in 0..m.cols {
                self.set(r0 + i, c0 + j, m.get(i, j).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut out = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, self.rows, idx.len());
        for (jj, &j) in idx.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut out = Mat::zeros(self.field, idx.len(), self.cols);
        for (ii, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(ii, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Flattens row-major into a single column vector.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    /// Reduced row-echelon form (unique), rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = reduce_rows(&mut rows, self.cols);
        let rank = pivots.len();
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for row in rows {
            data.extend(row);
        }
        Rref {
            rank,
            pivots,
            reduced: Mat {
                field: self.field,
                rows: self.rows,
                cols: self.cols,
                data,
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Columns form a basis of the null space.
    pub fn kernel_basis(&self) -> Mat {
        let Rref {
            rank,
            pivots,
            reduced,
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        let mut k = Mat::zeros(self.field, self.cols, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, self.field.one());
            for (r, &p) in pivots.iter().enumerate().take(rank) {
                let x = reduced.get(r, f);
                if !x.is_zero() {
                    k.set(p, col, -x);
                }
            }
        }
        k
    }

    /// Some `x` with `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows, "solve: row mismatch");
        assert_eq!(self.field, b.field, "mixed field descriptors");
        let aug = Mat::hstack(self.field, self.rows, &[self, b]);
        let Rref {
            pivots, reduced, ..
        } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, reduced.get(r, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(self.field, n, &[self, &Mat::identity(self.field, n)]);
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        Some(r.reduced.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn column_space(&self) -> Mat {
        let r = self.rref();
        self.select_columns(&r.pivots)
    }

    /// Entries rendered as exact strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

/// In-place Gauss-Jordan elimination on `rows` (each of length `cols`); returns the pivots.
fn reduce_rows(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].height())
        else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(c) {
                *x = &*x * &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            let f = other[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                if pivot_row[j].is_zero() {
                    continue;
                }
                other[j] = &other[j] - &(&f * &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).expect("matrix product")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Coordinates with respect to a fixed basis of a subspace (columns of `basis`).
#[derive(Clone, Debug)]
pub struct Subspace {
    basis: Mat,
    pivot_rows: Vec<usize>,
    pivot_inverse: Mat,
}

impl Subspace {
    /// `basis` must have full column rank.
    pub fn new(basis: Mat) -> Result<Subspace, LinalgError> {
        let r = basis.transpose().rref();
        if r.rank != basis.cols() {
            return Err(LinalgError::Shape("subspace basis is not independent".into()));
        }
        let sub = basis.select_rows(&r.pivots);
        let pivot_inverse = sub.inverse().expect("pivot rows are independent");
        Ok(Subspace {
            basis,
            pivot_rows: r.pivots,
            pivot_inverse,
        })
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of every column of `m`, or `None` if some column lies outside.
    pub fn coords_mat(&self, m: &Mat) -> Option<Mat> {
        let c = &self.pivot_inverse * &m.select_rows(&self.pivot_rows);
        (&self.basis * &c == *m).then_some(c)
    }

    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let m = Mat::from_columns(self.basis.field(), self.basis.rows(), &[v.to_vec()]);
        self.coords_mat(&m).map(|c| c.column(0))
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }
}

/// Incrementally grown spanning set kept in semi-echelon form; answers membership.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Field,
    len: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBasis {
    pub fn new(field: Field, len: usize) -> EchelonBasis {
        EchelonBasis {
            field,
            len,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.len, "vector length");
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let f = w[*p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `false` when it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        let w: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        debug_assert_eq!(self.field, inv.field());
        self.rows.push((p, w));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn rref_identity_and_zero() {
        let r = Mat::identity(q(), 2).rref();
        assert_eq!((r.rank, r.pivots), (2, vec![0, 1]));
        let r = Mat::zeros(q(), 2, 3).rref();
        assert_eq!((r.rank, r.pivots.len()), (0, 0));
    }

    #[test]
    fn rref_rank_one() {
        let m = Mat::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!((r.rank, r.pivots.clone()), (1, vec![0]));
        assert_eq!(r.reduced, Mat::from_i64(q(), &[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Mat::identity(q(), 3).kernel_basis().cols(), 0);
        let k = Mat::zeros(q(), 2, 2).kernel_basis();
        assert_eq!(k.cols(), 2);
        assert_eq!(k.rank(), 2);
        let m = Mat::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let k = m.kernel_basis();
        assert_eq!(k, Mat::from_i64(q(), &[&[-2], &[1]]));
        assert!((&m * &k).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = Mat::from_i64(q(), &[&[3, 1], &[-1, 5]]);
        assert_eq!(Mat::identity(q(), 2).solve(&b), Some(b.clone()));
        assert_eq!(Mat::zeros(q(), 2, 2).solve(&b), None);
        let a = Mat::from_i64(q(), &[&[1, 2], &[2, 4]]);
        let rhs = Mat::from_i64(q(), &[&[1], &[2]]);
        let x = a.solve(&rhs).unwrap();
        assert_eq!(&a * &x, rhs);
        assert_eq!(x, Mat::from_i64(q(), &[&[1], &[0]]));
    }

    #[test]
    fn inverse_round_trip() {
        let f = Field::prime(101).unwrap();
        let m = Mat::from_i64(f, &[&[2, 1], &[7, 3]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(Mat::from_i64(f, &[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(Mat::identity(f, 0).inverse().unwrap().rows(), 0);
    }

    #[test]
    fn mixed_fields_rejected_at_construction() {
        let rows = vec![vec![q().one(), Field::Prime(5).one()]];
        assert_eq!(Mat::from_rows(q(), rows), Err(LinalgError::MixedField));
        let a = Mat::identity(q(), 2);
        let b = Mat::identity(Field::Prime(5), 2);
        assert_eq!(a.try_mul(&b), Err(LinalgError::MixedField));
    }

    #[test]
    fn subspace_coordinates() {
        let basis = Mat::from_i64(q(), &[&[1, 0], &[1, 1], &[0, 2]]);
        let s = Subspace::new(basis).unwrap();
        let v: Vec<Scalar> = [2, 5, 6].iter().map(|&x| q().from_i64(x)).collect();
        let c = s.coords(&v).unwrap();
        assert_eq!(c, vec![q().from_i64(2), q().from_i64(3)]);
        let w: Vec<Scalar> = [1, 0, 0].iter().map(|&x| q().from_i64(x)).collect();
        assert!(!s.contains(&w));
    }

    #[test]
    fn echelon_membership() {
        let mut e = EchelonBasis::new(q(), 3);
        let v = |a: i64, b: i64, c: i64| vec![q().from_i64(a), q().from_i64(b), q().from_i64(c)];
        assert!(e.insert(&v(1, 1, 0)));
        assert!(e.insert(&v(0, 1, 1)));
        assert!(!e.insert(&v(1, 2, 1)));
        assert!(e.contains(&v(2, 3, 1)));
        assert!(!e.contains(&v(0, 0, 1)));
    }
}
