//! Dense matrices over an exact field.

use std::collections::HashMap;
use std::fmt;

use crate::field::Field;

/// A dense row-major matrix with entries in `F`.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let v = f.add(out.get(i, j), &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &F::Elem) -> Matrix<F> {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| f.mul(x, c)).collect(),
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<F>) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    /// Columns `start..end` as a new matrix.
    pub fn column_range(&self, start: usize, end: usize) -> Matrix<F> {
        Self::from_fn(&self.field, self.rows, end - start, |i, j| self.get(i, start + j).clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows, "row mismatch in concatenation");
        Self::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn rank(&self) -> usize {
        self.field.rank_of(self.rows, self.cols, &self.data)
    }

    /// Reduced row echelon form and its pivot columns. Elimination runs on
    /// sparse rows, taking the sparsest candidate row as each pivot.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let f = &self.field;
        let mut rows: Vec<SparseRow<F::Elem>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !f.is_zero(self.get(i, j)))
                    .map(|j| (j, self.get(i, j).clone()))
                    .collect()
            })
            .collect();
        let mut used = vec![false; self.rows];
        let mut pivots = Vec::new();
        let mut order = Vec::new();
        for c in 0..self.cols {
            if order.len() == self.rows {
                break;
            }
            let entry = |row: &SparseRow<F::Elem>| row.binary_search_by_key(&c, |(j, _)| *j).ok();
            let Some(p) = (0..self.rows)
                .filter(|&i| !used[i] && entry(&rows[i]).is_some())
                .min_by_key(|&i| rows[i].len())
            else {
                continue;
            };
            let inv = f.inv(&rows[p][entry(&rows[p]).unwrap()].1);
            let prow: SparseRow<F::Elem> = rows[p].iter().map(|(j, v)| (*j, f.mul(v, &inv))).collect();
            for i in 0..self.rows {
                if i == p {
                    continue;
                }
                if let Some(k) = entry(&rows[i]) {
                    let a = rows[i][k].1.clone();
                    rows[i] = axpy(f, &rows[i], &a, &prow);
                }
            }
            rows[p] = prow;
            used[p] = true;
            pivots.push(c);
            order.push(p);
        }
        let mut m = Matrix::zeros(f, self.rows, self.cols);
        for (r, &p) in order.iter().enumerate() {
            for (j, v) in &rows[p] {
                m.set(r, *j, v.clone());
            }
        }
        (m, pivots)
    }

    /// Basis of the null space as the columns of a `cols × (cols − rank)`
    /// matrix, one basis vector per free column in increasing order.
    pub fn kernel_basis(&self) -> Matrix<F> {
        let f = &self.field;
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, f.one());
            for (row, &pc) in pivots.iter().enumerate() {
                let v = f.neg(red.get(row, fc));
                k.set(pc, t, v);
            }
        }
        k
    }

    /// Solves `self · X = rhs` for a matrix `self` with linearly independent
    /// columns. Returns `None` when some column of `rhs` is outside the span.
    pub fn solve_independent(&self, rhs: &Matrix<F>) -> Option<Matrix<F>> {
        assert_eq!(self.rows, rhs.rows, "row mismatch in solve");
        let f = &self.field;
        let (red, pivots) = self.hconcat(rhs).rref();
        if pivots.len() < self.cols || pivots[..self.cols].iter().enumerate().any(|(i, &p)| i != p) {
            panic!("solve_independent called with dependent columns");
        }
        if pivots.len() > self.cols {
            return None;
        }
        Some(Matrix::from_fn(f, self.cols, rhs.cols, |i, j| {
            red.get(i, self.cols + j).clone()
        }))
    }
}

/// Plain Gaussian elimination rank, used for fields without a specialised
/// routine.
pub(crate) fn gauss_rank<F: Field>(f: &F, rows: usize, cols: usize, mut a: Vec<F::Elem>) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !f.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(&a[rank * cols + c]);
        for i in rank + 1..rows {
            let factor = f.mul(&a[i * cols + c], &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let v = f.sub(&a[i * cols + j], &f.mul(&factor, &a[rank * cols + j]));
                a[i * cols + j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// A sparse row: `(column, value)` pairs sorted by column, no zeros.
pub type SparseRow<E> = Vec<(usize, E)>;

/// Rank of the matrix with the given sparse rows, by incremental reduction
/// against pivots keyed on their leading column.
pub fn sparse_rank<F: Field>(f: &F, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> usize {
    let mut pivots: HashMap<usize, SparseRow<F::Elem>> = HashMap::new();
    for mut row in rows {
        while let Some((c, lead)) = row.first().cloned() {
            match pivots.get(&c) {
                Some(p) => row = axpy(f, &row, &lead, p),
                None => {
                    let inv = f.inv(&lead);
                    let normalized = row.into_iter().map(|(j, v)| (j, f.mul(&v, &inv))).collect();
                    pivots.insert(c, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `row − a·pivot`.
fn axpy<F: Field>(f: &F, row: &SparseRow<F::Elem>, a: &F::Elem, pivot: &SparseRow<F::Elem>) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, v) = if take_row {
            i += 1;
            (row[i - 1].0, row[i - 1].1.clone())
        } else if take_pivot {
            j += 1;
            (pivot[j - 1].0, f.neg(&f.mul(a, &pivot[j - 1].1)))
        } else {
            i += 1;
            j += 1;
            (row[i - 1].0, f.sub(&row[i - 1].1, &f.mul(a, &pivot[j - 1].1)))
        };
        if !f.is_zero(&v) {
            out.push((col, v));
        }
    }
    out
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field.spec())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.field.render(self.get(i, j))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.field.render(self.get(i, j))).collect())
            .collect();
        let width = cells.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
        for row in cells {
            let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}
