//! Sampling of scaling functions and wavelets on dyadic grids.
//!
//! The values of `phi` at the integers are the eigenvector of the refinement
//! matrix for eigenvalue 1; the remaining dyadic points follow level by level
//! from the two-scale relation. `psi` is then a filter-weighted superposition
//! of shifted copies of `phi` sampled at half resolution.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::filters::normalize_scaling_filter;

/// Eigenvalues closer than this to 1 count towards the multiplicity check.
const EIGENVALUE_TOL: f64 = 1e-7;

/// `phi` and `psi` sampled at the points `m / 2^u`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGenerators {
    /// `phi[m] = phi(m / 2^u)`, `m = 0..=K 2^u`.
    pub phi: Vec<f64>,
    /// `psi[m] = psi(m / 2^u)`, `m = 0..=(K + M) 2^(u-1)`.
    pub psi: Vec<f64>,
    pub u: u32,
    /// Support length `K` of `phi`.
    pub scaling_support: usize,
    /// `K + M`, twice the support length of `psi`.
    pub wavelet_support_doubled: usize,
}

impl SampledGenerators {
    pub fn grid_step(&self) -> f64 {
        (-(self.u as f64)).exp2()
    }
}

/// Refinement matrix `A[i][j] = h[2i - j]` (zero outside the filter).
pub fn refinement_matrix(h: &[f64]) -> DMatrix<f64> {
    let k = h.len().saturating_sub(1);
    DMatrix::from_fn(k, k, |i, j| {
        let idx = 2 * i as isize - j as isize;
        if idx >= 0 && (idx as usize) < h.len() {
            h[idx as usize]
        } else {
            0.0
        }
    })
}

/// Values of `phi` at `0, 1, ..., K-1`, scaled so they sum to 1.
///
/// `h` must already be normalized to sum 2.
pub fn integer_values(h: &[f64]) -> Result<Vec<f64>> {
    let k = h.len().saturating_sub(1);
    if k == 0 {
        return Err(Error::InvalidParameter(
            "scaling filter needs at least two coefficients".into(),
        ));
    }
    let a = refinement_matrix(h);

    let multiplicity = a
        .complex_eigenvalues()
        .iter()
        .filter(|l| (**l - nalgebra::Complex::new(1.0, 0.0)).norm() < EIGENVALUE_TOL)
        .count();
    if multiplicity != 1 {
        return Err(Error::EigenMultiplicity(multiplicity));
    }

    // Null vector of (A - I): right singular vector of the smallest singular value.
    let shifted = a - DMatrix::<f64>::identity(k, k);
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let (idx, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, &s)| if s < best.1 { (i, s) } else { best });
    let mut values: Vec<f64> = v_t.row(idx).iter().copied().collect();

    let norm = values.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut sum: f64 = values.iter().sum();
    if sum.abs() <= 1e-12 * norm {
        return Err(Error::ZeroSumEigenvector);
    }
    if sum < 0.0 {
        values.iter_mut().for_each(|v| *v = -*v);
        sum = -sum;
    }
    values.iter_mut().for_each(|v| *v /= sum);
    Ok(values)
}

/// Samples `phi` and `psi` on the grid `l / 2^u` for the filter pair `(h, g)`.
///
/// `h` is normalized to sum 2 internally.
pub fn wavelet_gen(h: &[f64], g: &[f64], u: u32) -> Result<SampledGenerators> {
    if u == 0 {
        return Err(Error::ZeroRefinementLevel);
    }
    if g.is_empty() {
        return Err(Error::InvalidParameter("empty wavelet filter".into()));
    }
    let h = normalize_scaling_filter(h)?;
    let k = h.len() - 1;
    let integers = integer_values(&h)?;

    let scale = 1usize << u;
    let mut phi = vec![0.0; k * scale + 1];
    for (l, v) in integers.iter().enumerate() {
        phi[l * scale] = *v;
    }

    // Level i fills the odd multiples of 2^-i from values on the 2^-(i-1) grid.
    let last = (k * scale) as isize;
    for i in 1..=u {
        let stride = 1usize << (u - i);
        for l in 1..=(k << (i - 1)) {
            let m = (2 * l - 1) * stride;
            let mut acc = 0.0;
            for (kk, hk) in h.iter().enumerate() {
                let arg = 2 * m as isize - (kk * scale) as isize;
                if (0..=last).contains(&arg) {
                    acc += hk * phi[arg as usize];
                }
            }
            phi[m] = acc;
        }
    }

    let m_len = g.len() - 1;
    let half = scale / 2;
    let mut psi = vec![0.0; (k + m_len) * half + 1];
    for (kk, gk) in g.iter().enumerate() {
        let start = kk * half;
        for i in 0..=k * half {
            psi[start + i] += gk * phi[2 * i];
        }
    }

    Ok(SampledGenerators {
        phi,
        psi,
        u,
        scaling_support: k,
        wavelet_support_doubled: k + m_len,
    })
}
