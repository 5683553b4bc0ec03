use std::fmt;

use super::{RingElem, RingSpec};
use crate::error::{Error, Result};

/// Dense row-major matrix over a [`RingSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<RingElem>,
}

impl Matrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_elems(
        ring: RingSpec,
        rows: usize,
        cols: usize,
        data: Vec<RingElem>,
    ) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !ring.contains(x)) {
            return Err(Error::IncompatibleRing(format!(
                "{bad:?} is not an element of {ring}"
            )));
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from row-major integer entries, reduced into `ring`.
    pub fn from_i64(ring: RingSpec, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix {
            ring,
            rows,
            cols,
            data: entries.iter().map(|&x| ring.from_i64(x)).collect(),
        }
    }

    pub fn diagonal(ring: RingSpec, entries: &[i64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(ring, n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, ring.from_i64(x));
        }
        m
    }

    pub fn column(ring: RingSpec, entries: Vec<RingElem>) -> Self {
        let rows = entries.len();
        Matrix {
            ring,
            rows,
            cols: 1,
            data: entries,
        }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
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

    pub fn entries(&self) -> &[RingElem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: RingElem) {
        debug_assert!(self.ring.contains(&x));
        self.data[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.ring.is_zero(x))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[RingElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<RingElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    fn check_ring(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::IncompatibleRing(format!(
                "{} vs {}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape or ring mismatch.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.try_mul(other).expect("matrix product")
    }

    pub fn try_add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let r = self.ring;
        Ok(Matrix {
            ring: r,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| r.add(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.try_add(other).expect("matrix sum")
    }

    pub fn neg(&self) -> Matrix {
        let r = self.ring;
        Matrix {
            data: self.data.iter().map(|a| r.neg(a)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RingElem) -> Matrix {
        let r = self.ring;
        Matrix {
            data: self.data.iter().map(|a| r.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Entrywise image under an arbitrary map into another ring.
    pub fn map_entries(&self, target: RingSpec, f: impl Fn(&RingElem) -> RingElem) -> Matrix {
        Matrix {
            ring: target,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.ring, rows.len(), cols.len());
        for (oi, i) in rows.clone().enumerate() {
            for (oj, j) in cols.clone().enumerate() {
                out.set(oi, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows, idx.len());
        for i in 0..self.rows {
            for (oj, &j) in idx.iter().enumerate() {
                out.set(i, oj, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.ring, idx.len(), self.cols);
        for (oi, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out.set(oi, j, self.get(i, j).clone());
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(blocks: &[&Matrix], ring: RingSpec, rows: usize) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut c = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            out.put(0, c, b);
            c += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Matrix], ring: RingSpec, cols: usize) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            out.put(r, 0, b);
            r += b.rows;
        }
        out
    }

    pub fn block_diag(blocks: &[&Matrix], ring: RingSpec) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.put(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// `k` copies of `self` along the diagonal.
    pub fn repeat_diag(&self, k: usize) -> Matrix {
        let blocks: Vec<&Matrix> = std::iter::repeat_n(self, k).collect();
        let mut out = Matrix::block_diag(&blocks, self.ring);
        if k == 0 {
            out = Matrix::zeros(self.ring, 0, 0);
        }
        out
    }

    /// Appends `extra` zero rows at the bottom.
    pub fn pad_rows(&self, extra: usize) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows + extra, self.cols);
        out.put(0, 0, self);
        out
    }

    // Elementary operations used by the normal-form routines.

    pub(crate) fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// `row_i += c * row_j`
    pub(crate) fn add_row_multiple(&mut self, i: usize, j: usize, c: &RingElem) {
        let r = self.ring;
        if r.is_zero(c) {
            return;
        }
        for k in 0..self.cols {
            let b = &self.data[j * self.cols + k];
            if r.is_zero(b) {
                continue;
            }
            let t = r.mul(c, b);
            let idx = i * self.cols + k;
            self.data[idx] = r.add(&self.data[idx], &t);
        }
    }

    /// `col_i += c * col_j`
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, c: &RingElem) {
        let r = self.ring;
        if r.is_zero(c) {
            return;
        }
        for k in 0..self.rows {
            let b = &self.data[k * self.cols + j];
            if r.is_zero(b) {
                continue;
            }
            let t = r.mul(c, b);
            let idx = k * self.cols + i;
            self.data[idx] = r.add(&self.data[idx], &t);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &RingElem) {
        let r = self.ring;
        for k in 0..self.cols {
            let idx = i * self.cols + k;
            self.data[idx] = r.mul(&self.data[idx], c);
        }
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: &RingElem) {
        let r = self.ring;
        for k in 0..self.rows {
            let idx = k * self.cols + j;
            self.data[idx] = r.mul(&self.data[idx], c);
        }
    }

    /// `(row_i, row_j) <- (s row_i + t row_j, u row_i + v row_j)`
    pub(crate) fn combine_rows(
        &mut self,
        i: usize,
        j: usize,
        s: &RingElem,
        t: &RingElem,
        u: &RingElem,
        v: &RingElem,
    ) {
        let r = self.ring;
        for k in 0..self.cols {
            let a = &self.data[i * self.cols + k];
            let b = &self.data[j * self.cols + k];
            if r.is_zero(a) && r.is_zero(b) {
                continue;
            }
            let ni = r.add(&r.mul(s, a), &r.mul(t, b));
            let nj = r.add(&r.mul(u, a), &r.mul(v, b));
            self.data[i * self.cols + k] = ni;
            self.data[j * self.cols + k] = nj;
        }
    }

    /// `(col_i, col_j) <- (s col_i + t col_j, u col_i + v col_j)`
    pub(crate) fn combine_cols(
        &mut self,
        i: usize,
        j: usize,
        s: &RingElem,
        t: &RingElem,
        u: &RingElem,
        v: &RingElem,
    ) {
        let r = self.ring;
        for k in 0..self.rows {
            let a = &self.data[k * self.cols + i];
            let b = &self.data[k * self.cols + j];
            if r.is_zero(a) && r.is_zero(b) {
                continue;
            }
            let ni = r.add(&r.mul(s, a), &r.mul(t, b));
            let nj = r.add(&r.mul(u, a), &r.mul(v, b));
            self.data[k * self.cols + i] = ni;
            self.data[k * self.cols + j] = nj;
        }
    }

    pub(crate) fn row_is_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(|x| self.ring.is_zero(x))
    }

    pub(crate) fn push_zero_row(&mut self) {
        self.data
            .extend(std::iter::repeat_n(self.ring.zero(), self.cols));
        self.rows += 1;
    }

    /// Appends a zero row and zero column with a one on the new diagonal slot.
    pub(crate) fn extend_identity(&mut self) {
        let n = self.rows;
        let mut out = Matrix::identity(self.ring, n + 1);
        out.put(0, 0, self);
        *self = out;
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.data
                .iter()
                .map(|x| self.ring.elem_to_json(x))
                .collect(),
        )
    }

    pub fn from_json(
        ring: RingSpec,
        rows: usize,
        cols: usize,
        v: &serde_json::Value,
    ) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("matrix literal must be an array".into()))?;
        if items.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix literal has {} entries, expected {}x{}",
                items.len(),
                rows,
                cols
            )));
        }
        let data = items
            .iter()
            .map(|x| ring.parse_elem(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|x| self.ring.format_elem(x))
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
