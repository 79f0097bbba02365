//! Dense matrices over a [`Field`] and exact row reduction.

use std::collections::BTreeMap;
use std::fmt;

use crate::field::{Cx, Field};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (r, c): (usize, usize)) -> &F {
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn scalar_identity(n: usize, x: F) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn data(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn adjoint(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.fadd(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.fsub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, x: &F) -> Self {
        if x.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|a| a.fmul(x)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| a.fneg()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    /// `self += x * o`
    pub fn add_scaled(&mut self, o: &Self, x: &F) {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        if x.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            a.add_mul(b, x);
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out: Self = Matrix::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        out.data[r * o.cols + c].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let mut out = vec![F::zero(); self.rows];
        for (r, o) in out.iter_mut().enumerate() {
            for (c, x) in v.iter().enumerate() {
                o.add_mul(&self[(r, c)], x);
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn trace(&self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows.min(self.cols) {
            t = t.fadd(&self[(i, i)]);
        }
        t
    }

    /// Trace of `self * o` without forming the product.
    pub fn trace_product(&self, o: &Self) -> F {
        let mut t = F::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                t.add_mul(&self[(i, k)], &o[(k, i)]);
            }
        }
        t
    }

    pub fn kron(&self, o: &Self) -> Self {
        Matrix::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            self[(r / o.rows, c / o.cols)].fmul(&o[(r % o.rows, c % o.cols)])
        })
    }

    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let mut m = Matrix::zeros(a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                m[(r, c)] = a[(r, c)].clone();
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                m[(a.rows + r, a.cols + c)] = b[(r, c)].clone();
            }
        }
        m
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (h, w) = (a.rows, a.cols);
        Matrix::from_fn(h + c.rows, w + b.cols, |r, col| match (r < h, col < w) {
            (true, true) => a[(r, col)].clone(),
            (true, false) => b[(r, col - w)].clone(),
            (false, true) => c[(r - h, col)].clone(),
            (false, false) => d[(r - h, col - w)].clone(),
        })
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r..self.cols).all(|c| self[(r, c)] == self[(c, r)].fneg()))
    }

    /// Skew-adjoint for the standard hermitian product.
    pub fn is_skew_adjoint(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|r| (r..self.cols).all(|c| self[(r, c)] == self[(c, r)].conj().fneg()))
    }

    pub fn is_self_adjoint(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r..self.cols).all(|c| self[(r, c)] == self[(c, r)].conj()))
    }

    /// Real coordinates of all entries, row-major.
    pub fn real_coords(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.data.len() * F::REAL_DIM);
        for x in &self.data {
            x.push_real(&mut out);
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r).to_vec());
        }
        e.rank()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert(self.row(r).to_vec());
        }
        e.nullspace()
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return F::zero();
            };
            if p != col {
                for c in 0..n {
                    a.data.swap(p * n + c, col * n + c);
                }
                det = det.fneg();
            }
            let piv = a[(col, col)].clone();
            det = det.fmul(&piv);
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].fdiv(&piv);
                for c in col..n {
                    let v = a[(col, c)].fmul(&f);
                    a[(r, c)] = a[(r, c)].fsub(&v);
                }
            }
        }
        det
    }

    pub fn to_c64(&self) -> crate::numeric::CMat {
        crate::numeric::CMat::from_fn(self.rows, self.cols, |r, c| self[(r, c)].to_c64())
    }
}

impl Matrix<Scalar> {
    pub fn to_complex(&self) -> Matrix<Cx> {
        self.map(|x| Cx::real(x.clone()))
    }

    pub fn int(rows: Vec<Vec<i64>>) -> Self {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(Scalar::int).collect()).collect())
    }
}

impl Matrix<Cx> {
    /// The real matrix, if every entry is real.
    pub fn to_real(&self) -> Option<Matrix<Scalar>> {
        self.data.iter().all(Cx::is_real).then(|| self.map(|x| x.re.clone()))
    }
}

/// Sparse row: sorted `(column, value)` pairs with nonzero values.
pub type SparseRow<F> = Vec<(usize, F)>;

fn sparse_from_dense<F: Field>(v: &[F]) -> SparseRow<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// `a - k * b` for sparse rows.
fn sparse_sub_scaled<F: Field>(a: &SparseRow<F>, b: &SparseRow<F>, k: &F) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, b[j].1.fmul(k).fneg()));
            j += 1;
        } else {
            let v = a[i].1.fsub(&b[j].1.fmul(k));
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn sparse_get<F: Field>(row: &SparseRow<F>, col: usize) -> Option<&F> {
    row.binary_search_by_key(&col, |x| x.0).ok().map(|i| &row[i].1)
}

/// Incremental reduced row echelon form of a set of vectors of fixed length.
///
/// Rows are kept fully reduced, so the coordinates of a vector in the span
/// are its entries at the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    len: usize,
    rows: Vec<SparseRow<F>>,
    /// pivot column -> row index
    pivots: BTreeMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(len: usize) -> Self {
        Echelon { len, rows: Vec::new(), pivots: BTreeMap::new() }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce_sparse(&self, mut v: SparseRow<F>) -> SparseRow<F> {
        // rows are fully reduced, so one pass over pivots present in v suffices
        let mut idx = 0;
        while idx < v.len() {
            let (col, coef) = (v[idx].0, v[idx].1.clone());
            if let Some(&r) = self.pivots.get(&col) {
                v = sparse_sub_scaled(&v, &self.rows[r], &coef);
                // v[idx] has been eliminated; entries before idx are untouched
            } else {
                idx += 1;
            }
        }
        v
    }

    /// Residual of `v` modulo the span (zero iff `v` lies in the span).
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let r = self.reduce_sparse(sparse_from_dense(v));
        let mut out = vec![F::zero(); self.len];
        for (c, x) in r {
            out[c] = x;
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        self.reduce_sparse(sparse_from_dense(v)).is_empty()
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vec<F>) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        self.insert_sparse(sparse_from_dense(&v))
    }

    pub fn insert_sparse(&mut self, v: SparseRow<F>) -> bool {
        let mut r = self.reduce_sparse(v);
        if r.is_empty() {
            return false;
        }
        let (pc, pv) = (r[0].0, r[0].1.clone());
        if !pv.is_one() {
            for x in r.iter_mut() {
                x.1 = x.1.fdiv(&pv);
            }
        }
        for row in self.rows.iter_mut() {
            if let Some(k) = sparse_get(row, pc).cloned() {
                *row = sparse_sub_scaled(row, &r, &k);
            }
        }
        self.pivots.insert(pc, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Coordinates of `v` with respect to [`Echelon::basis`], if `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.rows.iter().map(|row| v[row[0].0].clone()).collect())
    }

    /// The reduced basis rows, in insertion order.
    pub fn basis(&self) -> Vec<Vec<F>> {
        self.rows
            .iter()
            .map(|row| {
                let mut out = vec![F::zero(); self.len];
                for (c, x) in row {
                    out[*c] = x.clone();
                }
                out
            })
            .collect()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Basis of the solution space of `row . x = 0` for all inserted rows.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for free in (0..self.len).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![F::zero(); self.len];
            v[free] = F::one();
            for row in &self.rows {
                if let Some(x) = sparse_get(row, free) {
                    v[row[0].0] = x.fneg();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Solves `a x = b`. Returns a particular solution and a basis of the homogeneous solutions.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<(Vec<F>, Vec<Vec<F>>)> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let mut e = Echelon::new(n + 1);
    for r in 0..a.rows() {
        let mut row = a.row(r).to_vec();
        row.push(b[r].clone());
        e.insert(row);
    }
    if e.pivot_columns().contains(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for row in e.basis() {
        let p = row.iter().position(|v| !v.is_zero()).unwrap();
        x[p] = row[n].clone();
    }
    let homog = e
        .nullspace()
        .into_iter()
        .filter(|v| v[n].is_zero())
        .map(|mut v| {
            v.pop();
            v
        })
        .collect();
    Some((x, homog))
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse<F: Field>(a: &Matrix<F>) -> Option<Matrix<F>> {
    assert!(a.is_square(), "inverse of non-square matrix");
    let n = a.rows();
    let mut e = Echelon::new(2 * n);
    for r in 0..n {
        let mut row = a.row(r).to_vec();
        row.extend((0..n).map(|c| if c == r { F::one() } else { F::zero() }));
        e.insert(row);
    }
    if e.rank() < n || e.pivot_columns().iter().any(|&p| p >= n) {
        return None;
    }
    let mut out = Matrix::zeros(n, n);
    for row in e.basis() {
        let p = row.iter().position(|v| !v.is_zero()).unwrap();
        for c in 0..n {
            out[(p, c)] = row[n + c].clone();
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::int(n)
    }

    #[test]
    fn product_and_det() {
        let a = Matrix::int(vec![vec![1, 2], vec![3, 4]]);
        let b = Matrix::int(vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b), Matrix::int(vec![vec![2, 1], vec![4, 3]]));
        assert_eq!(a.det(), q(-2));
        assert_eq!(Matrix::<Scalar>::identity(3).det(), q(1));
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::new(3);
        assert!(e.insert(vec![q(1), q(1), q(0)]));
        assert!(e.insert(vec![q(0), q(1), q(1)]));
        assert!(!e.insert(vec![q(1), q(2), q(1)]));
        let v = vec![q(2), q(5), q(3)];
        let c = e.coordinates(&v).unwrap();
        let rebuilt: Vec<Scalar> = (0..3)
            .map(|i| e.basis().iter().zip(&c).map(|(b, x)| &b[i] * x).sum())
            .collect();
        assert_eq!(rebuilt, v);
        assert!(e.coordinates(&[q(0), q(0), q(1)]).is_none());
    }

    #[test]
    fn nullspace_and_solve() {
        let a = Matrix::int(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let (x, h) = solve(&a, &[q(6), q(12)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(6), q(12)]);
        assert_eq!(h.len(), 2);
        assert!(solve(&a, &[q(1), q(1)]).is_none());
    }
}
