//! Optimized Orthogonal Matching Pursuit.
//!
//! Each step picks the atom whose component orthogonal to the span of the
//! atoms already chosen is best aligned with the residual,
//! `|<d_n, r>| / ||d_n - P d_n||`, which is the atom giving the smallest
//! residual after re-projecting. The selected atoms are kept as an
//! orthonormal set (Gram-Schmidt with one reorthogonalization pass) together
//! with the triangular factor used to recover the coefficients.

use crate::error::{Error, Result};
use crate::matrix::{dot, norm, ColMatrix};

/// Candidates whose out-of-span component has at most this norm are dropped.
pub const MIN_OUT_OF_SPAN_NORM: f64 = 1e-7;

/// Criteria within this relative distance of the best one count as ties and
/// resolve to the lowest column index.
pub const TIE_REL_TOL: f64 = 1e-12;

/// Residuals at or below this fraction of `||f||` are treated as exact zeros.
pub const ROUNDOFF_REL_RESIDUAL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// `||r|| <= tol`.
    Tolerance,
    /// Residual vanished to rounding level before reaching `tol`.
    Roundoff,
    /// As many atoms as samples were selected.
    FullRank,
    /// Every remaining atom lies in the span of the selected ones.
    NoAdmissibleAtom,
    /// The signal is identically zero; nothing was selected.
    ZeroSignal,
}

impl StopReason {
    /// True when the loop ended without reaching the requested tolerance.
    pub fn exhausted(self) -> bool {
        matches!(self, StopReason::FullRank | StopReason::NoAdmissibleAtom)
    }
}

#[derive(Debug, Clone)]
pub struct OompResult {
    pub approx: Vec<f64>,
    /// Selected column indices, in selection order.
    pub indices: Vec<usize>,
    pub coeffs: Vec<f64>,
    /// `||f - approx||` after each selection.
    pub residual_norms: Vec<f64>,
    pub stop: StopReason,
}

impl OompResult {
    pub fn residual_norm(&self) -> f64 {
        self.residual_norms.last().copied().unwrap_or(f64::NAN)
    }
}

/// Incremental orthonormal factorization `D_S = Q R` of the selected atoms.
struct Factorization {
    q: Vec<Vec<f64>>,
    /// Column `j` of `R`: `r_cols[j][i] = <q_i, d_{S_j}>`, `i <= j`.
    r_cols: Vec<Vec<f64>>,
}

impl Factorization {
    fn new() -> Self {
        Factorization {
            q: Vec::new(),
            r_cols: Vec::new(),
        }
    }

    /// Two-pass Gram-Schmidt of `d` against the current basis.
    fn orthogonalize(&self, d: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let mut v = d.to_vec();
        let mut coef = vec![0.0; self.q.len()];
        for _ in 0..2 {
            for (c, q) in coef.iter_mut().zip(&self.q) {
                let p = dot(q, &v);
                *c += p;
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= p * y);
            }
        }
        (v, coef)
    }

    fn push(&mut self, mut v: Vec<f64>, mut coef: Vec<f64>, vnorm: f64) -> &[f64] {
        v.iter_mut().for_each(|x| *x /= vnorm);
        coef.push(vnorm);
        self.r_cols.push(coef);
        self.q.push(v);
        self.q.last().unwrap()
    }

    /// Solves `R c = z` by back substitution.
    fn coefficients(&self, z: &[f64]) -> Vec<f64> {
        let k = z.len();
        let mut c = vec![0.0; k];
        for i in (0..k).rev() {
            let acc: f64 = z[i] - (i + 1..k).map(|j| self.r_cols[j][i] * c[j]).sum::<f64>();
            c[i] = acc / self.r_cols[i][i];
        }
        c
    }
}

/// Approximates `f` with atoms of `dict`, starting from column `first_atom`
/// (zero-based), until `||f - approx|| <= tol`.
///
/// Columns of `dict` are expected to have unit norm.
pub fn oomp(f: &[f64], dict: &ColMatrix, tol: f64, first_atom: usize) -> Result<OompResult> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::NegativeTolerance(tol));
    }
    if f.len() != dict.rows() {
        return Err(Error::DimensionMismatch {
            expected: dict.rows(),
            got: f.len(),
        });
    }
    if first_atom >= dict.cols() {
        return Err(Error::AtomOutOfRange {
            index: first_atom,
            cols: dict.cols(),
        });
    }

    let n = f.len();
    let fnorm = norm(f);
    if fnorm == 0.0 {
        return Ok(OompResult {
            approx: vec![0.0; n],
            indices: Vec::new(),
            coeffs: Vec::new(),
            residual_norms: Vec::new(),
            stop: StopReason::ZeroSignal,
        });
    }
    let floor = ROUNDOFF_REL_RESIDUAL * fnorm;

    let mut state = Pursuit::new(dict, f);
    let first = dict.column(first_atom);
    if norm(first) <= MIN_OUT_OF_SPAN_NORM {
        return Err(Error::InvalidParameter(format!(
            "initial atom {first_atom} is a zero column"
        )));
    }
    let mut pick = Some(Candidate::new(&state.fac, first_atom, first));
    let stop = loop {
        let Some(candidate) = pick.take() else {
            break StopReason::NoAdmissibleAtom;
        };
        state.accept(candidate);
        let rn = *state.residual_norms.last().unwrap();
        if rn <= tol {
            break StopReason::Tolerance;
        } else if rn <= floor {
            break StopReason::Roundoff;
        } else if state.indices.len() >= n {
            break StopReason::FullRank;
        }
        pick = state.select();
    };

    let coeffs = state.fac.coefficients(&state.z);
    let approx: Vec<f64> = f.iter().zip(&state.residual).map(|(a, b)| a - b).collect();
    Ok(OompResult {
        approx,
        indices: state.indices,
        coeffs,
        residual_norms: state.residual_norms,
        stop,
    })
}

/// A column orthogonalized against the current selection.
struct Candidate {
    index: usize,
    direction: Vec<f64>,
    coef: Vec<f64>,
    norm: f64,
}

impl Candidate {
    fn new(fac: &Factorization, index: usize, column: &[f64]) -> Self {
        let (direction, coef) = fac.orthogonalize(column);
        let norm = norm(&direction);
        Candidate {
            index,
            direction,
            coef,
            norm,
        }
    }
}

struct Pursuit<'a> {
    dict: &'a ColMatrix,
    fac: Factorization,
    residual: Vec<f64>,
    /// `z[i] = <q_i, f>`.
    z: Vec<f64>,
    indices: Vec<usize>,
    residual_norms: Vec<f64>,
    /// Squared norms of the column components orthogonal to the selection.
    out_sq: Vec<f64>,
    admissible: Vec<bool>,
    scores: Vec<f64>,
}

impl<'a> Pursuit<'a> {
    fn new(dict: &'a ColMatrix, f: &[f64]) -> Self {
        let min_w = MIN_OUT_OF_SPAN_NORM * MIN_OUT_OF_SPAN_NORM;
        let out_sq: Vec<f64> = (0..dict.cols()).map(|j| dict.column_norm(j).powi(2)).collect();
        let admissible = out_sq.iter().map(|&w| w > min_w).collect();
        Pursuit {
            dict,
            fac: Factorization::new(),
            residual: f.to_vec(),
            z: Vec::new(),
            indices: Vec::new(),
            residual_norms: Vec::new(),
            out_sq,
            admissible,
            scores: vec![0.0; dict.cols()],
        }
    }

    fn accept(&mut self, c: Candidate) {
        let q = self.fac.push(c.direction, c.coef, c.norm);
        let zj = dot(q, &self.residual);
        self.residual.iter_mut().zip(q).for_each(|(r, qi)| *r -= zj * qi);
        self.z.push(zj);
        self.indices.push(c.index);
        self.residual_norms.push(norm(&self.residual));
        self.admissible[c.index] = false;

        let min_w = MIN_OUT_OF_SPAN_NORM * MIN_OUT_OF_SPAN_NORM;
        for j in 0..self.dict.cols() {
            if self.admissible[j] {
                let p = self.dict.dot_column(j, q);
                self.out_sq[j] -= p * p;
                if self.out_sq[j] <= min_w {
                    self.admissible[j] = false;
                }
            }
        }
    }

    /// Greedy choice among admissible columns. The winner's out-of-span norm
    /// is recomputed directly; a degenerate winner is dropped and the choice
    /// repeated.
    fn select(&mut self) -> Option<Candidate> {
        loop {
            let mut best = 0.0f64;
            for j in 0..self.dict.cols() {
                self.scores[j] = if self.admissible[j] {
                    self.dict.dot_column(j, &self.residual).abs() / self.out_sq[j].sqrt()
                } else {
                    -1.0
                };
                best = best.max(self.scores[j]);
            }
            // The atom completing the span leaves a zero residual whichever
            // admissible column it is, so all of them tie exactly.
            let completes = self.indices.len() + 1 == self.residual.len();
            let threshold = if completes { 0.0 } else { best * (1.0 - TIE_REL_TOL) };
            let j = self.scores.iter().position(|&v| v >= 0.0 && v >= threshold)?;
            let c = Candidate::new(&self.fac, j, self.dict.column(j));
            if c.norm > MIN_OUT_OF_SPAN_NORM {
                return Some(c);
            }
            self.admissible[j] = false;
        }
    }
}
