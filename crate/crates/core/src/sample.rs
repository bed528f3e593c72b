use std::cmp::Ordering;

use crate::error::{contract, Result};

/// An n×d matrix of real observations stored row-major, one row per observation.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    data: Vec<f64>,
    nrows: usize,
    ncols: usize,
}

impl Sample {
    /// Wraps row-major `data` as an `nrows × ncols` sample. Requires at least
    /// one row and one column and finite entries.
    pub fn new(data: Vec<f64>, nrows: usize, ncols: usize) -> Result<Self> {
        if nrows == 0 || ncols == 0 {
            return Err(contract(format!(
                "sample must have at least one row and one column, got {nrows}x{ncols}"
            )));
        }
        if data.len() != nrows * ncols {
            return Err(contract(format!(
                "data length {} does not match shape {nrows}x{ncols}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(contract(format!(
                "non-finite entry at row {}, column {}",
                pos / ncols,
                pos % ncols
            )));
        }
        Ok(Self { data, nrows, ncols })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(contract(format!(
                    "row {i} has {} columns, expected {ncols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(data, rows.len(), ncols)
    }

    /// A single-column sample.
    pub fn from_column(values: &[f64]) -> Result<Self> {
        Self::new(values.to_vec(), values.len(), 1)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.ncols)
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.rows().map(|r| r[j]).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Applies `f(column, value)` to every entry.
    pub fn map<F: Fn(usize, f64) -> f64>(&self, f: F) -> Result<Self> {
        let ncols = self.ncols;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(idx, &v)| f(idx % ncols, v))
            .collect();
        Self::new(data, self.nrows, self.ncols)
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Sample) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(contract(format!(
                "dimension mismatch: {} vs {} columns",
                self.ncols, other.ncols
            )));
        }
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Ok(Self {
            data,
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
        })
    }

    /// Appends `column` as a new last column.
    pub fn with_column(&self, column: &[f64]) -> Result<Self> {
        if column.len() != self.nrows {
            return Err(contract(format!(
                "column length {} does not match {} rows",
                column.len(),
                self.nrows
            )));
        }
        let mut data = Vec::with_capacity(self.nrows * (self.ncols + 1));
        for (row, &c) in self.rows().zip(column) {
            data.extend_from_slice(row);
            data.push(c);
        }
        Self::new(data, self.nrows, self.ncols + 1)
    }

    /// Rows at `indices`, in that order.
    pub fn select_rows(&self, indices: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(indices.len() * self.ncols);
        for &i in indices {
            if i >= self.nrows {
                return Err(contract(format!("row index {i} out of range for {} rows", self.nrows)));
            }
            data.extend_from_slice(self.row(i));
        }
        Self::new(data, indices.len(), self.ncols)
    }

    /// Copy with rows sorted lexicographically, a canonical representative of the row multiset.
    pub(crate) fn sorted_rows(&self) -> Self {
        let mut rows: Vec<&[f64]> = self.rows().collect();
        rows.sort_by(|a, b| lex_cmp(a, b));
        let data = rows.concat();
        Self {
            data,
            nrows: self.nrows,
            ncols: self.ncols,
        }
    }
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// Orders two samples canonically: by row count, then lexicographically by data.
pub(crate) fn sample_cmp(a: &Sample, b: &Sample) -> Ordering {
    a.nrows
        .cmp(&b.nrows)
        .then_with(|| lex_cmp(&a.data, &b.data))
}
