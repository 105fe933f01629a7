//! Dense exact linear algebra over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix with exact entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;

    fn index(&self, (r, c): (usize, usize)) -> &F {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pub matrix: Matrix<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn scalar(n: usize, value: &F) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    /// `cols` is needed to shape a matrix with no rows.
    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(columns: &[Vec<F>], rows: usize) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(rows.len(), cols, |r, c| F::from_i64(rows[r][c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(F::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
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
                        let cur = &out[(i, j)];
                        out[(i, j)] = cur.add(&a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on a shape mismatch (internal use).
    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix shapes")
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |r, c| self[(rows[r], c)].clone())
    }

    /// Reduced row echelon form (Gauss-Jordan). Pivots are taken in column
    /// order, so the pivot set is the lexicographically first set of
    /// independent columns.
    pub fn rref(&self) -> Echelon<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m[(row, c)].mul(&inv);
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let delta = factor.mul(&m[(row, c)]);
                    if !delta.is_zero() {
                        let v = m[(r, c)].sub(&delta);
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn rank(&self) -> usize {
        // Forward elimination only; cheaper than the full reduced form.
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, p);
            let inv = m[(rank, col)].inv().expect("nonzero pivot");
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].mul(&inv);
                for c in col..m.cols {
                    let delta = factor.mul(&m[(rank, c)]);
                    if !delta.is_zero() {
                        let v = m[(r, c)].sub(&delta);
                        m[(r, c)] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column, ordered
    /// by free column index.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let ech = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &p) in ech.pivots.iter().enumerate() {
                v[p] = ech.matrix[(r, free)].neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Nullspace basis as the columns of a `cols x nullity` matrix.
    pub fn kernel_matrix(&self) -> Self {
        Self::from_columns(&self.nullspace(), self.cols)
    }

    /// Basis of `{y : y * self = 0}` as the rows of a matrix.
    pub fn left_kernel_matrix(&self) -> Self {
        let basis = self.transpose().nullspace();
        Self::from_fn(basis.len(), self.rows, |r, c| basis[r][c].clone())
    }

    /// A basis of the column space, taken from the pivot columns.
    pub fn column_space(&self) -> Self {
        let ech = self.rref();
        self.select_columns(&ech.pivots)
    }

    pub fn cokernel_dim(&self) -> usize {
        self.rows - self.rank()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = self.hstack(&Matrix::from_columns(&[b.to_vec()], self.rows));
        let ech = aug.rref();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in ech.pivots.iter().enumerate() {
            x[p] = ech.matrix[(r, self.cols)].clone();
        }
        Ok(Some(x))
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, rhs: &Self) -> Result<Option<Self>> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch("solve_matrix row counts".into()));
        }
        let aug = self.hstack(rhs);
        let ech = aug.rref();
        if ech.pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (r, &p) in ech.pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = ech.matrix[(r, self.cols + c)].clone();
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let ech = self.hstack(&Self::identity(n)).rref();
        if ech.pivots.len() < n || ech.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(ech.matrix.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, i| acc.add(&self[(i, i)]))
    }

    /// Monic characteristic polynomial `det(t I - M)`, via reduction to
    /// upper Hessenberg form followed by the standard three-term recurrence.
    pub fn char_poly(&self) -> Result<Polynomial<F>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            h.swap_rows(i, m);
            h.swap_cols(i, m);
            let inv = h[(m, m - 1)].inv().expect("nonzero pivot");
            for k in m + 1..n {
                if h[(k, m - 1)].is_zero() {
                    continue;
                }
                let u = h[(k, m - 1)].mul(&inv);
                for c in 0..n {
                    let v = h[(k, c)].sub(&u.mul(&h[(m, c)]));
                    h[(k, c)] = v;
                }
                for r in 0..n {
                    let v = h[(r, m)].add(&u.mul(&h[(r, k)]));
                    h[(r, m)] = v;
                }
            }
        }
        let mut polys: Vec<Polynomial<F>> = vec![Polynomial::one()];
        for m in 0..n {
            let t_minus = Polynomial::new(vec![h[(m, m)].neg(), F::one()]);
            let mut p = t_minus.mul(&polys[m]);
            let mut prod = F::one();
            for i in (0..m).rev() {
                prod = prod.mul(&h[(i + 1, i)]);
                if prod.is_zero() {
                    break;
                }
                let coef = h[(i, m)].mul(&prod);
                p = p.sub(&polys[i].scale(&coef));
            }
            polys.push(p);
        }
        Ok(polys.pop().expect("n+1 polynomials"))
    }
}

type SparseRow<F> = Vec<(usize, F)>;

/// `a - c * b` for rows sorted by column.
fn sparse_axpy<F: Field>(a: &[(usize, F)], c: &F, b: &[(usize, F)]) -> SparseRow<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A linear system stored by sparse rows. Elimination takes pivots in
/// column order, so `nullspace` returns the same basis as
/// `Matrix::nullspace` on the dense form.
#[derive(Clone, Debug)]
pub struct SparseSystem<F> {
    cols: usize,
    rows: Vec<SparseRow<F>>,
}

impl<F: Field> SparseSystem<F> {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds a row given as `(column, value)` pairs; repeated columns are summed.
    pub fn push_row(&mut self, mut entries: Vec<(usize, F)>) {
        entries.sort_by_key(|e| e.0);
        let mut row: SparseRow<F> = Vec::with_capacity(entries.len());
        for (c, x) in entries {
            assert!(c < self.cols, "column out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 = last.1.add(&x),
                _ => row.push((c, x)),
            }
        }
        row.retain(|e| !e.1.is_zero());
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows.len(), self.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                m[(r, *c)] = x.clone();
            }
        }
        m
    }

    /// Echelon rows with unit leading entries, in increasing pivot column.
    fn forward(&self) -> Vec<SparseRow<F>> {
        let mut buckets: BTreeMap<usize, Vec<SparseRow<F>>> = BTreeMap::new();
        for row in &self.rows {
            buckets.entry(row[0].0).or_default().push(row.clone());
        }
        let mut pivots = Vec::new();
        while let Some((col, mut group)) = buckets.pop_first() {
            let best = (0..group.len()).min_by_key(|&k| group[k].len()).expect("nonempty bucket");
            let mut pivot = group.swap_remove(best);
            let inv = pivot[0].1.inv().expect("nonzero leading entry");
            for e in pivot.iter_mut() {
                e.1 = e.1.mul(&inv);
            }
            for row in group {
                let reduced = sparse_axpy(&row, &row[0].1, &pivot);
                if let Some(&(lead, _)) = reduced.first() {
                    debug_assert!(lead > col);
                    buckets.entry(lead).or_default().push(reduced);
                }
            }
            pivots.push(pivot);
        }
        pivots
    }

    /// Reduced row echelon form as sparse rows.
    fn reduced(&self) -> Vec<SparseRow<F>> {
        let mut rows = self.forward();
        let index: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, r)| (r[0].0, k)).collect();
        for i in (0..rows.len()).rev() {
            let targets: Vec<(usize, F)> = rows[i][1..]
                .iter()
                .filter_map(|(c, x)| index.get(c).map(|&k| (k, x.clone())))
                .collect();
            for (k, x) in targets {
                rows[i] = sparse_axpy(&rows[i], &x, &rows[k]);
            }
        }
        rows
    }

    pub fn rank(&self) -> usize {
        self.forward().len()
    }

    /// Basis of the solution space, one vector per free column, ordered by
    /// free column index.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let rows = self.reduced();
        let mut is_pivot = vec![false; self.cols];
        for r in &rows {
            is_pivot[r[0].0] = true;
        }
        let mut by_free: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
        for r in &rows {
            for (c, x) in &r[1..] {
                by_free.entry(*c).or_default().push((r[0].0, x.neg()));
            }
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.cols];
                v[free] = F::one();
                for (p, x) in by_free.remove(&free).unwrap_or_default() {
                    v[p] = x;
                }
                v
            })
            .collect()
    }
}

/// Dense univariate polynomial, coefficients in ascending degree.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "t")?,
                1 => write!(f, "{c}*t")?,
                _ if c.is_one() => write!(f, "t^{d}")?,
                _ => write!(f, "{c}*t^{d}")?,
            }
        }
        Ok(())
    }
}

impl<F: Field> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial { coeffs: vec![F::one()] }
    }

    /// `t^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![F::zero(); n + 1];
        coeffs[n] = F::one();
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = F::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs
                        .get(i)
                        .unwrap_or(&zero)
                        .add(other.coeffs.get(i).unwrap_or(&zero))
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&F::one().neg()))
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c.mul(&F::from_i64(d as i64)))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().expect("nonzero leading");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub(&c.mul(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading")),
        }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Evaluates the polynomial at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        let n = m.rows();
        self.coeffs
            .iter()
            .rev()
            .fold(Matrix::zeros(n, n), |acc, c| acc.mul(m).add(&Matrix::scalar(n, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rational};
    use proptest::prelude::*;

    type Q = Rational;

    fn q(rows: &[Vec<i64>]) -> Matrix<Q> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn rank_of_identity() {
        for n in 0..6 {
            assert_eq!(Matrix::<Q>::identity(n).rank(), n);
        }
    }

    #[test]
    fn nullspace_of_row_of_ones() {
        let m = q(&[vec![1, 1]]);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![Q::integer(-1), Q::integer(1)]]);
        assert_eq!(m.cokernel_dim(), 0);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q(&[vec![1, 2], vec![2, 4]]);
        let x = m.solve(&[Q::integer(3), Q::integer(6)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), vec![Q::integer(3), Q::integer(6)]);
        assert!(m.solve(&[Q::integer(3), Q::integer(7)]).unwrap().is_none());
        assert!(m.solve(&[Q::integer(3)]).is_err());
    }

    #[test]
    fn char_poly_examples() {
        let swap = q(&[vec![0, 1], vec![1, 0]]);
        let p = swap.char_poly().unwrap();
        assert_eq!(p.coeffs(), &[Q::integer(-1), Q::zero(), Q::one()]);

        let upper = q(&[vec![0, 3, 1], vec![0, 0, 7], vec![0, 0, 0]]);
        assert_eq!(upper.char_poly().unwrap(), Polynomial::monomial(3));

        let two = q(&[vec![2]]);
        assert_eq!(two.char_poly().unwrap().coeffs(), &[Q::integer(-2), Q::one()]);

        assert!(q(&[vec![1, 2]]).char_poly().is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = q(&[vec![2, 1], vec![1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(q(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn prime_field_rank_differs() {
        let rows = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(Matrix::<Q>::from_i64_rows(&rows).rank(), 2);
        assert_eq!(Matrix::<Fp<2>>::from_i64_rows(&rows).rank(), 1);
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    fn square_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), n))
    }

    /// Leibniz-formula determinant over polynomials: an independent oracle
    /// for the Hessenberg route.
    fn char_poly_leibniz(m: &Matrix<Q>) -> Polynomial<Q> {
        let n = m.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Polynomial::zero();
        loop {
            let mut term = Polynomial::one();
            for (i, &j) in perm.iter().enumerate() {
                let entry = if i == j {
                    Polynomial::new(vec![m[(i, j)].neg(), Q::one()])
                } else {
                    Polynomial::new(vec![m[(i, j)].neg()])
                };
                term = term.mul(&entry);
            }
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| perm[i] > perm[j])
                .count();
            if inversions % 2 == 1 {
                term = term.scale(&Q::integer(-1));
            }
            total = total.add(&term);
            // next permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        total
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in small_matrix(6)) {
            let m = q(&rows);
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            prop_assert_eq!(m.rref().pivots.len(), m.rank());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(m.cokernel_dim(), m.rows() - m.rank());
        }

        #[test]
        fn sparse_system_agrees_with_dense(rows in small_matrix(6)) {
            let m = q(&rows);
            let mut sys = SparseSystem::new(m.cols());
            for r in 0..m.rows() {
                sys.push_row((0..m.cols()).map(|c| (c, m[(r, c)].clone())).collect());
            }
            prop_assert_eq!(sys.rank(), m.rank());
            prop_assert_eq!(sys.nullspace(), m.nullspace());
        }

        #[test]
        fn char_poly_matches_leibniz(rows in square_matrix(5)) {
            let m = q(&rows);
            prop_assert_eq!(m.char_poly().unwrap(), char_poly_leibniz(&m));
        }

        #[test]
        fn char_poly_transpose_invariant(rows in square_matrix(6)) {
            let m = q(&rows);
            prop_assert_eq!(m.char_poly().unwrap(), m.transpose().char_poly().unwrap());
        }

        #[test]
        fn cayley_hamilton(rows in square_matrix(5)) {
            let m = q(&rows);
            prop_assert!(m.char_poly().unwrap().eval_matrix(&m).is_zero());
        }
    }
}
