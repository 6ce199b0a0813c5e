//! Exact linear algebra over the rationals.
//!
//! Everything in the algebra kernel goes through this module: dense matrices,
//! reduced row echelon forms, kernels and an incrementally maintained echelon
//! basis used for subspace membership tests.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact ground-field scalar.
pub type Scalar = BigRational;

/// Sparse vector keyed by coordinate index.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `p/q` or `p`, the form used in reports and in the DSL.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Adds `factor * src` into `dst`, dropping entries that cancel.
pub fn sparse_axpy(dst: &mut SparseVec, factor: &Scalar, src: &SparseVec) {
    if factor.is_zero() {
        return;
    }
    for (&k, v) in src {
        let entry = dst.entry(k).or_insert_with(Scalar::zero);
        *entry += factor * v;
        if entry.is_zero() {
            dst.remove(&k);
        }
    }
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn left_apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Scalar::zero(); self.cols];
        for (r, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    *o += x * m;
                }
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, PivotRule::First);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.len()
    }

    /// Basis of `{x : self * x = 0}` as column vectors, one per free column.
    pub fn kernel(&self) -> Kernel {
        let mut ech = Echelon::new(self.cols, PivotRule::First);
        for r in 0..self.rows {
            ech.insert(self.row(r).to_vec());
        }
        ech.kernel()
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                for c in 0..n {
                    a.swap(p * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] / &pivot;
                for c in col..n {
                    let delta = &f * &a[col * n + c];
                    a[r * n + c] -= delta;
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && !self.determinant().is_zero()
    }

    /// Inverse by Gauss-Jordan elimination, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut ech = Echelon::new(2 * n, PivotRule::First);
        for r in 0..n {
            let mut row = self.row(r).to_vec();
            row.extend((0..n).map(|c| if c == r { Scalar::one() } else { Scalar::zero() }));
            ech.insert(row);
        }
        if (0..n).any(|c| !ech.is_pivot(c)) {
            return None;
        }
        let rows = (0..n)
            .map(|c| ech.row_for_pivot(c).expect("pivot present")[n..].to_vec())
            .collect();
        Some(Matrix::from_rows(rows, n))
    }
}

/// Solution space of a homogeneous system, with the free column of each basis
/// vector. Each basis vector is 1 at its own free column and 0 at the other
/// free columns, so coordinates of any kernel element can be read off there.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub basis: Vec<Vec<Scalar>>,
    pub free_columns: Vec<usize>,
}

impl Kernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coordinates(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.free_columns.iter().map(|&c| v[c].clone()).collect()
    }
}

/// Which nonzero column of an inserted vector becomes its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    First,
    Last,
}

/// A subspace of `K^dim` kept in fully reduced echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rule: PivotRule,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    pivot_row: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(dim: usize, rule: PivotRule) -> Self {
        Echelon {
            dim,
            rule,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<Scalar>>>(dim: usize, vectors: I) -> Self {
        let mut e = Echelon::new(dim, PivotRule::First);
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// The row whose pivot is `col`.
    pub fn row_for_pivot(&self, col: usize) -> Option<&[Scalar]> {
        self.pivot_row.get(&col).map(|&r| self.rows[r].as_slice())
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        debug_assert_eq!(v.len(), self.dim);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v.to_vec()))
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let pivot = match self.rule {
            PivotRule::First => v.iter().position(|x| !x.is_zero()),
            PivotRule::Last => v.iter().rposition(|x| !x.is_zero()),
        };
        let Some(p) = pivot else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.pivot_row.insert(p, self.rows.len());
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// Kernel of the linear map whose rows span this echelon form.
    pub fn kernel(&self) -> Kernel {
        let free: Vec<usize> = (0..self.dim).filter(|c| !self.is_pivot(*c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.dim];
                x[f] = Scalar::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        x[p] = -row[f].clone();
                    }
                }
                x
            })
            .collect();
        Kernel {
            basis,
            free_columns: free,
        }
    }

    /// Coordinates of `v` (assumed in the span) with respect to `rows()`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Scalar::zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (x, r) in rebuilt.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x += c * r;
                }
            }
        }
        (rebuilt.as_slice() == v).then_some(coords)
    }
}

/// Reduced echelon form over sparse rows, pivot at the first nonzero entry.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    dim: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl SparseEchelon {
    pub fn new(dim: usize) -> Self {
        SparseEchelon {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Rows with their pivot columns, in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(&p, r)| (p, r))
    }

    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let hits: Vec<usize> = v.keys().copied().filter(|k| self.rows.contains_key(k)).collect();
        for p in hits {
            if let Some(c) = v.get(&p).cloned() {
                sparse_axpy(&mut v, &-c, &self.rows[&p]);
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&p, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        for x in v.values_mut() {
            *x *= &inv;
        }
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                sparse_axpy(row, &-c, &v);
            }
        }
        self.rows.insert(p, v);
        true
    }

    /// Basis of the common null space of the rows, as dense vectors.
    pub fn kernel(&self) -> Kernel {
        let free: Vec<usize> = (0..self.dim).filter(|c| !self.rows.contains_key(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.dim];
                x[f] = Scalar::one();
                for (&p, row) in &self.rows {
                    if let Some(c) = row.get(&f) {
                        x[p] = -c.clone();
                    }
                }
                x
            })
            .collect();
        Kernel {
            basis,
            free_columns: free,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn kernel_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.dim(), 2);
        for v in &k.basis {
            let col = Matrix::from_rows(v.iter().map(|x| vec![x.clone()]).collect(), 1);
            assert!(a.mul(&col).is_zero());
        }
        assert_eq!(k.free_columns, vec![1, 2]);
    }

    #[test]
    fn determinant_and_rank() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.determinant(), int(1));
        assert_eq!(a.rank(), 2);
        let b = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(b.determinant(), int(0));
        assert_eq!(b.rank(), 1);
        let c = m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 3]]);
        assert_eq!(c.determinant(), int(-3));
    }

    #[test]
    fn echelon_membership_and_coordinates() {
        let mut e = Echelon::new(3, PivotRule::Last);
        assert!(e.insert(vec![int(1), int(0), int(1)]));
        assert!(e.insert(vec![int(0), int(1), int(1)]));
        assert!(!e.insert(vec![int(1), int(-1), int(0)]));
        assert!(e.contains(&[int(2), int(3), int(5)]));
        assert!(!e.contains(&[int(0), int(0), int(1)]));
        let v = vec![int(2), int(3), int(5)];
        let coords = e.coordinates(&v).unwrap();
        let mut rebuilt = vec![int(0); 3];
        for (c, row) in coords.iter().zip(e.rows()) {
            for (x, r) in rebuilt.iter_mut().zip(row) {
                *x += c * r;
            }
        }
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn inverse_and_sparse_echelon() {
        let a = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.mul(&a.inverse().unwrap()), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());

        let mut e = SparseEchelon::new(3);
        assert!(e.insert(dense_to_sparse(&[int(1), int(1), int(0)])));
        assert!(!e.insert(dense_to_sparse(&[int(2), int(2), int(0)])));
        assert!(e.insert(dense_to_sparse(&[int(0), int(1), int(1)])));
        let k = e.kernel();
        assert_eq!(k.basis, vec![vec![int(1), int(-1), int(1)]]);
    }

    #[test]
    fn scalar_formatting() {
        assert_eq!(format_scalar(&frac(-2, 4)), "-1/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }
}
