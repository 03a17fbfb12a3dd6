//! Dense column-major matrix with per-column nonzero row ranges.

use std::ops::Range;

#[derive(Debug, Clone, PartialEq)]
pub struct ColMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    support: Vec<Range<usize>>,
}

impl ColMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ColMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
            support: vec![0..0; cols],
        }
    }

    /// Builds a matrix from its columns; every column must have `rows` entries.
    pub fn from_columns(rows: usize, columns: &[Vec<f64>]) -> Self {
        let mut m = ColMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            m.data[j * rows..(j + 1) * rows].copy_from_slice(c);
        }
        m.refresh_support();
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[col * self.rows + row]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Smallest row range containing every nonzero entry of column `j`.
    pub fn support(&self, j: usize) -> Range<usize> {
        self.support[j].clone()
    }

    /// Recomputes the nonzero row ranges after direct column edits.
    pub fn refresh_support(&mut self) {
        for j in 0..self.cols {
            let c = &self.data[j * self.rows..(j + 1) * self.rows];
            let first = c.iter().position(|v| *v != 0.0);
            self.support[j] = match first {
                Some(a) => {
                    let b = c.iter().rposition(|v| *v != 0.0).unwrap();
                    a..b + 1
                }
                None => 0..0,
            };
        }
    }

    /// Inner product of column `j` with `v`, restricted to the column support.
    pub fn dot_column(&self, j: usize, v: &[f64]) -> f64 {
        let r = self.support[j].clone();
        dot(&self.column(j)[r.clone()], &v[r])
    }

    pub fn column_norm(&self, j: usize) -> f64 {
        let c = self.column(j);
        dot(c, c).sqrt()
    }

    /// Keeps only the columns for which `keep` returns true.
    pub fn retain_columns(&mut self, mut keep: impl FnMut(usize) -> bool) {
        let rows = self.rows;
        let mut out = 0;
        for j in 0..self.cols {
            if keep(j) {
                if out != j {
                    self.data.copy_within(j * rows..(j + 1) * rows, out * rows);
                    self.support[out] = self.support[j].clone();
                }
                out += 1;
            }
        }
        self.cols = out;
        self.data.truncate(out * rows);
        self.support.truncate(out);
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hstack(&self, other: &ColMatrix) -> ColMatrix {
        assert_eq!(self.rows, other.rows, "row count mismatch");
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        let mut support = self.support.clone();
        support.extend(other.support.iter().cloned());
        ColMatrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
            support,
        }
    }

    /// `sum_n coeffs[n] * column(indices[n])`.
    pub fn combine(&self, indices: &[usize], coeffs: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        for (&j, &c) in indices.iter().zip(coeffs) {
            let r = self.support[j].clone();
            for (o, d) in out[r.clone()].iter_mut().zip(&self.column(j)[r]) {
                *o += c * d;
            }
        }
        out
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
