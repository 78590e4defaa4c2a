//! Dense exact linear algebra: ranks, solving, nullspaces and quotient bases.
//!
//! Every routine pivots on the first nonzero entry scanning top-down, so all
//! derived bases are reproducible from run to run.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

/// A dense matrix over a single field, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            data: (0..rows * cols).map(|_| field.zero()).collect(),
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Mat {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Mat {
            field,
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Result<Mat> {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension(format!(
                    "column of length {} in a {rows}-row matrix",
                    col.len()
                )));
            }
            for (r, v) in col.iter().enumerate() {
                if v.field() != field {
                    return Err(Error::FieldMismatch(field, v.field()));
                }
                m.data[r * m.cols + c] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Result<Mat> {
        Mat::new(field, v.len(), 1, v.to_vec())
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry from another field");
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat> {
        self.same_field(rhs)?;
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
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

    /// Applies the matrix to a coordinate vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out: Vec<Scalar> = (0..self.rows).map(|_| self.field.zero()).collect();
        for (i, slot) in out.iter_mut().enumerate() {
            for (j, x) in v.iter().enumerate() {
                if x.field() != self.field {
                    return Err(Error::FieldMismatch(self.field, x.field()));
                }
                let a = self.get(i, j);
                if !a.is_zero() && !x.is_zero() {
                    *slot = &*slot + &(a * x);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        self.same_field(rhs)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension(format!(
                "sum of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        self.add(&rhs.scale(&(-&self.field.one())))
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Mat {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Horizontal concatenation `[a | b | ...]`; all blocks need the same row count.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Mat]) -> Result<Mat> {
        let mut cols = Vec::new();
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch(field, b.field));
            }
            if b.rows != rows {
                return Err(Error::Dimension(format!("hstack of {} and {rows} rows", b.rows)));
            }
            cols.extend(b.columns());
        }
        Mat::from_columns(field, rows, &cols)
    }

    pub fn vstack(field: Field, cols: usize, blocks: &[&Mat]) -> Result<Mat> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.field != field {
                return Err(Error::FieldMismatch(field, b.field));
            }
            if b.cols != cols {
                return Err(Error::Dimension(format!("vstack of {} and {cols} columns", b.cols)));
            }
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let cols: Vec<Vec<Scalar>> = idx.iter().map(|&c| self.column(c)).collect();
        Mat::from_columns(self.field, self.rows, &cols).expect("columns of self")
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend(self.row(r).iter().cloned());
        }
        Mat {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(found) = (prow..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, prow);
            let inv = m.get(prow, col).inv().expect("nonzero pivot");
            for c in col..m.cols {
                let idx = prow * m.cols + c;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for r in 0..m.rows {
                if r == prow || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let p = m.data[prow * m.cols + c].clone();
                    if p.is_zero() {
                        continue;
                    }
                    let idx = r * m.cols + c;
                    m.data[idx] = &m.data[idx] - &(&factor * &p);
                }
            }
            pivots.push(col);
            prow += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(Error::Dimension(format!(
                "solve with {} equations and a right-hand side of {} rows",
                self.rows, b.rows
            )));
        }
        let aug = Mat::hstack(self.field, self.rows, &[self, b])?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (row, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[p * b.cols + j] = r.get(row, self.cols + j).clone();
            }
        }
        Ok(Some(x))
    }

    /// Basis of `{x : self * x = 0}` as columns, one per free column.
    pub fn nullspace(&self) -> Mat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(self.field, self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            out.data[f * free.len() + k] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                let v = r.get(row, f);
                if !v.is_zero() {
                    out.data[p * free.len() + k] = -v;
                }
            }
        }
        out
    }

    /// A basis of the column space, taken from the original columns at pivot positions.
    pub fn column_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Mat::identity(self.field, self.rows)).ok()??;
        if self.rank() == self.rows {
            Some(x)
        } else {
            None
        }
    }

    /// Whether every column of `other` lies in the column span of `self`.
    pub fn spans(&self, other: &Mat) -> Result<bool> {
        Ok(self.solve(other)?.is_some())
    }

    /// Entrywise reduction into F_p; `None` if some denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: u32) -> Option<Mat> {
        let data = self.data.iter().map(|s| s.reduce_mod(p)).collect::<Option<Vec<_>>>()?;
        Some(Mat {
            field: Field::Prime(p),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Bases realizing the quotient `k^ambient / span(subspace)`.
///
/// Returns `(project, lift)` with `project * lift = I`, `project * subspace = 0`
/// and `project` of full row rank `ambient - rank(subspace)`. The lift picks the
/// standard basis vectors at non-pivot positions of the subspace's echelon form.
pub fn quotient_basis(field: Field, ambient: usize, subspace: &Mat) -> Result<(Mat, Mat)> {
    if subspace.field() != field {
        return Err(Error::FieldMismatch(field, subspace.field()));
    }
    if subspace.rows() != ambient {
        return Err(Error::Dimension(format!(
            "subspace vectors of length {} in ambient dimension {ambient}",
            subspace.rows()
        )));
    }
    let (echelon, pivots) = subspace.transpose().rref();
    let free: Vec<usize> = (0..ambient).filter(|c| !pivots.contains(c)).collect();
    let q = free.len();
    let mut lift = Mat::zeros(field, ambient, q);
    let mut project = Mat::zeros(field, q, ambient);
    for (k, &f) in free.iter().enumerate() {
        lift.set(f, k, field.one());
        project.set(k, f, field.one());
        // v - sum_i v[p_i] r_i has zero pivot coordinates; read off the rest.
        for (i, &p) in pivots.iter().enumerate() {
            let e = echelon.get(i, f);
            if !e.is_zero() {
                project.set(k, p, -e);
            }
        }
    }
    Ok((project, lift))
}
