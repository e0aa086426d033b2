//! Dense exact linear algebra: vectors, matrices, echelon-form subspaces
//! and quotient spaces.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vector {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

/// `y += c·x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    debug_assert_eq!(y.len(), x.len());
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(c * xi);
        }
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// Nonzero entries of a dense vector.
pub fn support(v: &[Scalar]) -> impl Iterator<Item = (usize, &Scalar)> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero())
}

/// Kronecker product of coordinate vectors, index `(i, j) ↦ i·|b| + j`.
pub fn kron(a: &[Scalar], b: &[Scalar]) -> Vector {
    let mut out = zeros(a.len() * b.len());
    for (i, x) in support(a) {
        for (j, y) in support(b) {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>, cols: usize) -> Result<Mat, LinalgError> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinalgError::DimensionMismatch { expected: cols, found: row.len() });
            }
            data.extend(row);
        }
        Ok(Mat { rows: r, cols, data })
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Mat {
        let mut m = Mat::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, x) in support(c) {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    /// `M·v`; panics on a length mismatch.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix/vector dimension mismatch");
        let nz: Vec<(usize, &Scalar)> = support(v).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                nz.iter().fold(Scalar::zero(), |acc, (j, x)| {
                    let a = &row[*j];
                    if a.is_zero() {
                        acc
                    } else {
                        acc + a * *x
                    }
                })
            })
            .collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for (k, a) in support(self.row(i)) {
                let brow = other.row(k);
                for (j, b) in support(brow) {
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: add(&self.data, &other.data) }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat { rows: self.rows, cols: self.cols, data: sub(&self.data, &other.data) }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: scale(c, &self.data) }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let rows: Vec<Vector> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let (reduced, pivots) = rref_rows(rows, self.cols);
        let m = Mat::from_rows(reduced, self.cols).expect("rows keep their width");
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{x : M·x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let vectors = free.iter().map(|&f| {
            let mut v = zeros(self.cols);
            v[f] = Scalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, f);
            }
            v
        });
        Subspace::from_vectors(self.cols, vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.rows, self.columns())
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Mat::zeros(0, 0));
        }
        let rows: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend(unit_vector(n, i));
                r
            })
            .collect();
        let (reduced, pivots) = rref_rows(rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| reduced[i][n + j].clone()))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for (j, a) in support(self.row(i)) {
                for k in 0..other.rows {
                    for (l, b) in support(other.row(k)) {
                        out.set(i * other.rows + k, j * other.cols + l, a * b);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Gauss-Jordan elimination on a list of rows; drops zero rows.
fn rref_rows(mut rows: Vec<Vector>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            rows[r] = scale(&inv, &rows[r]);
        }
        let pivot_row = rows[r].clone();
        let nz: Vec<usize> = (c..cols).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &nz {
                row[j] = &row[j] - &(&factor * &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// Solves `A·x = b`, returning the solution with every free variable set
/// to zero, or `None` when the system is inconsistent.
pub fn solve(a: &Mat, b: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::DimensionMismatch { expected: a.rows(), found: b.len() });
    }
    let rows: Vec<Vector> = (0..a.rows())
        .map(|i| {
            let mut r = a.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let (reduced, pivots) = rref_rows(rows, a.cols() + 1);
    if pivots.last() == Some(&a.cols()) {
        return Ok(None);
    }
    let mut x = zeros(a.cols());
    for (k, &p) in pivots.iter().enumerate() {
        x[p] = reduced[k][a.cols()].clone();
    }
    Ok(Some(x))
}

/// Solves `A·X = B` column by column, all-or-nothing.
pub fn solve_many(a: &Mat, b: &Mat) -> Result<Option<Mat>, LinalgError> {
    let mut cols = Vec::with_capacity(b.cols());
    for j in 0..b.cols() {
        match solve(a, &b.column(j))? {
            Some(x) => cols.push(x),
            None => return Ok(None),
        }
    }
    Ok(Some(Mat::from_columns(&cols, a.cols())))
}

/// A linear subspace stored by its reduced echelon basis, so that equal
/// subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let rows: Vec<Vector> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), ambient, "vector outside the ambient space"))
            .filter(|v| !is_zero(v))
            .collect();
        let (basis, pivots) = rref_rows(rows, ambient);
        Subspace { ambient, basis, pivots }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace { ambient, basis: vec![], pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::from_vectors(ambient, (0..ambient).map(|i| unit_vector(ambient, i)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating the pivot coordinates.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -&r[p];
                axpy(&mut r, &c, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Linear combination of the basis vectors.
    pub fn combine(&self, coords: &[Scalar]) -> Vector {
        let mut out = zeros(self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, row);
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// First basis vector of `self` not contained in `other`.
    pub fn first_outside(&self, other: &Subspace) -> Option<&Vector> {
        self.basis.iter().find(|v| !other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_vectors(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        // Solve Σ a_i u_i = Σ b_j v_j.
        let cols: Vec<Vector> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(|v| scale(&-Scalar::one(), v)))
            .collect();
        if cols.is_empty() {
            return Subspace::zero(self.ambient);
        }
        let k = Mat::from_columns(&cols, self.ambient).kernel();
        let vecs = k.basis.iter().map(|c| self.combine(&c[..self.dim()]));
        Subspace::from_vectors(self.ambient, vecs.collect::<Vec<_>>())
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Mat {
        Mat::from_columns(&self.basis, self.ambient)
    }
}

/// `V / W` for `V = 𝕜^n`, realized on the non-pivot coordinates of `W`.
#[derive(Clone, Debug)]
pub struct Quotient {
    relations: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    pub fn new(ambient: usize, relations: Subspace) -> Result<Quotient, LinalgError> {
        if relations.ambient() != ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: ambient,
                found: relations.ambient(),
            });
        }
        let free = (0..ambient).filter(|c| !relations.pivots.contains(c)).collect();
        Ok(Quotient { relations, free })
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.relations.ambient()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn project(&self, v: &[Scalar]) -> Vector {
        let r = self.relations.reduce(v);
        self.free.iter().map(|&i| r[i].clone()).collect()
    }

    pub fn section(&self, q: &[Scalar]) -> Vector {
        let mut v = zeros(self.ambient());
        for (c, &i) in q.iter().zip(&self.free) {
            v[i] = c.clone();
        }
        v
    }

    pub fn projection_matrix(&self) -> Mat {
        let n = self.ambient();
        let cols: Vec<Vector> = (0..n).map(|i| self.project(&unit_vector(n, i))).collect();
        Mat::from_columns(&cols, self.dim())
    }

    pub fn section_matrix(&self) -> Mat {
        let cols: Vec<Vector> =
            (0..self.dim()).map(|i| self.section(&unit_vector(self.dim(), i))).collect();
        Mat::from_columns(&cols, self.ambient())
    }
}

/// Sparse vector keyed by an ordered basis label; never stores zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sparse<K: Ord> {
    entries: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> Default for Sparse<K> {
    fn default() -> Self {
        Sparse { entries: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Scalar) -> Self {
        let mut s = Self::new();
        s.add_term(k, &c);
        s
    }

    pub fn add_term(&mut self, k: K, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let v = match self.entries.remove(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if !v.is_zero() {
            self.entries.insert(k, v);
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Sparse<K>) {
        for (k, v) in &other.entries {
            self.add_term(k.clone(), &(c * v));
        }
    }

    pub fn get(&self, k: &K) -> Scalar {
        self.entries.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Linear extension of a rule on basis labels.
    pub fn map<L: Ord + Clone>(&self, f: impl Fn(&K) -> Sparse<L>) -> Sparse<L> {
        let mut out = Sparse::new();
        for (k, c) in &self.entries {
            out.add_scaled(c, &f(k));
        }
        out
    }

    pub fn sub(&self, other: &Sparse<K>) -> Sparse<K> {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), other);
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut s = Sparse::new();
        for (k, c) in iter {
            s.add_term(k, &c);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_ratio(n, 1)
    }

    fn mat(rows: &[&[i64]]) -> Mat {
        let cols = rows[0].len();
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
            .unwrap()
    }

    #[test]
    fn solve_picks_zero_free_variables() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve(&a, &[q(1), q(2)]).unwrap(), Some(vec![q(1), q(0)]));
        assert_eq!(solve(&a, &[q(1), q(3)]).unwrap(), None);
        assert!(solve(&a, &[q(1)]).is_err());
    }

    #[test]
    fn rank_and_kernel() {
        let a = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[q(-2), q(1)]));
        assert_eq!(Mat::zeros(3, 3).kernel().dim(), 3);
    }

    #[test]
    fn inverse_round_trip() {
        let a = mat(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn quotient_by_line() {
        let rel = Subspace::from_vectors(4, [vec![q(1), q(1), q(0), q(0)]]);
        let quot = Quotient::new(4, rel.clone()).unwrap();
        assert_eq!(quot.dim(), 3);
        assert!(quot.projection_matrix().mul(&quot.section_matrix()).is_identity());
        assert_eq!(quot.projection_matrix().kernel(), rel);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(3, [vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::from_vectors(3, [vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(a.intersection(&b), Subspace::from_vectors(3, [vec![q(0), q(1), q(0)]]));
    }

    #[test]
    fn sparse_drops_zeros() {
        let mut s: Sparse<i64> = Sparse::single(3, q(2));
        s.add_term(3, &q(-2));
        assert!(s.is_zero());
    }
}
