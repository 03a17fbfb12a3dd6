//! Construction of redundant wavelet dictionaries and the cosine component.
//!
//! A wavelet dictionary for segments of `N_b` samples holds the functions
//! `phi(2^j x - b k)` at the coarsest level `j(1)` and `psi(2^j x - b k)` at
//! every level in `j`, evaluated at `x = l / 2^r`, `l = 0..N_b-1`, where
//! `r = ceil(log2(N_b - 1))`. Every shift whose support meets the interval
//! `[0, (N_b - 1) / 2^r]` contributes one column, so `b = 1` gives the basis
//! functions restricted to the segment and `b = 2^-r_b` oversamples the
//! translations `2^r_b` times.

use serde::Serialize;

use crate::cascade::wavelet_gen;
use crate::error::{Error, Result};
use crate::filters::{Family, FilterPair};
use crate::matrix::ColMatrix;

/// Columns whose scaled norm does not exceed this are dropped by [`norm_dict`].
pub const NORM_DICT_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKind {
    Scaling,
    Wavelet,
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Locality {
    Inner,
    Boundary,
}

/// Metadata for one dictionary column.
///
/// For scaling and wavelet atoms the column samples `f(2^level x - b shift)`.
/// Cosine atoms carry no level and store the frequency index in `shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AtomDescriptor {
    pub kind: AtomKind,
    pub level: Option<i32>,
    pub shift: i64,
    pub locality: Locality,
}

impl AtomDescriptor {
    fn generator(kind: AtomKind, level: i32, shift: i64, locality: Locality) -> Self {
        AtomDescriptor {
            kind,
            level: Some(level),
            shift,
            locality,
        }
    }

    pub fn cosine(frequency: usize) -> Self {
        AtomDescriptor {
            kind: AtomKind::Cosine,
            level: None,
            shift: frequency as i64,
            locality: Locality::Inner,
        }
    }
}

/// Segment length, levels and translation factor of a wavelet dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryParams {
    pub n_b: usize,
    pub levels: Vec<i32>,
    pub b: f64,
}

impl DictionaryParams {
    pub fn new(n_b: usize, levels: Vec<i32>, b: f64) -> Self {
        DictionaryParams { n_b, levels, b }
    }

    /// Returns `r_b` with `b = 2^-r_b`, rejecting anything else.
    pub fn translation_exponent(&self) -> Result<u32> {
        let b = self.b;
        if b.is_nan() || b <= 0.0 {
            return Err(Error::NonPositiveTranslation(b));
        }
        let r = (1.0 / b).log2();
        if !r.is_finite() || (r - r.round()).abs() > 1e-10 || r.round() < 0.0 {
            return Err(Error::NonDyadicTranslation(b));
        }
        Ok(r.round() as u32)
    }
}

/// Wavelet dictionary `D^W` with its per-level counts and column metadata.
#[derive(Debug, Clone)]
pub struct WaveletDictionary {
    pub matrix: ColMatrix,
    /// `ind[0]` scaling atoms at `levels[0]`, then `ind[1 + l]` wavelets at `levels[l]`.
    pub ind: Vec<usize>,
    pub col: Vec<AtomDescriptor>,
    /// Levels kept after dropping those too coarse to hold an inner wavelet.
    pub levels: Vec<i32>,
    /// `r = ceil(log2(N_b - 1))`.
    pub r: u32,
    /// Columns dropped by normalization as numerically zero.
    pub removed: usize,
}

impl WaveletDictionary {
    pub fn n_b(&self) -> usize {
        self.matrix.rows()
    }

    pub fn len(&self) -> usize {
        self.matrix.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.cols() == 0
    }
}

/// Full dictionary `[D^C D^W]`: cosine atoms first, then wavelet atoms.
#[derive(Debug, Clone)]
pub struct FullDictionary {
    pub matrix: ColMatrix,
    pub descriptors: Vec<AtomDescriptor>,
    pub n_cosine: usize,
    pub ind: Vec<usize>,
    pub levels: Vec<i32>,
    pub removed: usize,
}

/// Smallest `r >= 0` with `2^r >= n`.
fn ceil_log2(n: usize) -> u32 {
    let mut r = 0;
    while (1usize << r) < n {
        r += 1;
    }
    r
}

fn ceil_div_pow2(n: i64, e: u32) -> i64 {
    let d = 1i64 << e;
    (n + d - 1).div_euclid(d)
}

/// Writes `generator` into `column` starting at row `offset` (possibly
/// negative), discarding entries that fall outside the column.
fn place(column: &mut [f64], generator: &[f64], offset: i64) -> Locality {
    let n = column.len() as i64;
    let len = generator.len() as i64;
    let lo = offset.max(0);
    let hi = (offset + len).min(n);
    for row in lo..hi {
        column[row as usize] = generator[(row - offset) as usize];
    }
    if offset >= 0 && offset + len <= n {
        Locality::Inner
    } else {
        Locality::Boundary
    }
}

fn downsample(v: &[f64], stride: usize) -> Vec<f64> {
    v.iter().step_by(stride).copied().collect()
}

/// Builds the un-normalized wavelet dictionary for an arbitrary filter pair.
pub fn wavelet_dict_from_filters(
    filters: &FilterPair,
    params: &DictionaryParams,
) -> Result<WaveletDictionary> {
    let n_b = params.n_b;
    if n_b < 2 {
        return Err(Error::InvalidParameter(format!(
            "segment length N_b must be at least 2 (got {n_b})"
        )));
    }
    let r_b = params.translation_exponent()?;
    let k = filters.scaling_support();
    if k == 0 {
        return Err(Error::InvalidParameter(
            "scaling filter needs at least two coefficients".into(),
        ));
    }
    let s2 = filters.wavelet_support_doubled();
    if !s2.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "wavelet support (K + M) / 2 = {s2}/2 is not an integer"
        )));
    }
    let s = (s2 / 2) as i64;
    let k = k as i64;
    let a = 1i64 << r_b;
    let span = (n_b - 1) as i64;
    let r = ceil_log2(n_b - 1);

    // Coarsest level with an inner wavelet: 2^j (N_b - 1) >= s 2^r.
    let mut levels = params.levels.clone();
    levels.sort_unstable();
    levels.dedup();
    levels.retain(|&j| (0..=62).contains(&j) && (span as i128) << j >= (s as i128) << r);
    if levels.is_empty() {
        return Err(Error::NoInnerFunctions);
    }
    let j_max = *levels.last().unwrap() as i64;
    if (r as i64) < j_max + r_b as i64 {
        return Err(Error::TooFewPoints {
            r,
            needed: j_max + r_b as i64,
        });
    }

    let j1 = levels[0];
    let u1 = r - j1 as u32;
    let gen_u = u1.max(1);
    let gens = wavelet_gen(&filters.h, &filters.g, gen_u)?;

    // Shift step of one translation in rows at level j: b 2^(r - j) = 2^e.
    let exponent = |j: i32| r - j as u32 - r_b;

    let mut ind = Vec::with_capacity(levels.len() + 1);
    ind.push((k * a - 1 + ceil_div_pow2(span, exponent(j1))) as usize);
    for &j in &levels {
        let e = exponent(j);
        let count = s * a - 1 + ceil_div_pow2(span, e);
        // Left boundary, inner and right boundary counts add up to the total.
        let k1 = (span - (s << (r - j as u32))).div_euclid(1i64 << e);
        let k2 = ceil_div_pow2(span, e) - 1;
        let n_f = (s * a - 1) + (k2 - k1) + k1 + 1;
        assert_eq!(n_f, count, "wavelet count mismatch at level {j}");
        ind.push(count as usize);
    }

    let total: usize = ind.iter().sum();
    let mut matrix = ColMatrix::zeros(n_b, total);
    let mut col = Vec::with_capacity(total);

    let phi = downsample(&gens.phi, 1 << (gen_u - u1));
    let e1 = exponent(j1);
    for l in 0..ind[0] {
        let shift = l as i64 + 1 - k * a;
        let locality = place(matrix.column_mut(l), &phi, shift << e1);
        col.push(AtomDescriptor::generator(AtomKind::Scaling, j1, shift, locality));
    }

    let mut n_p = ind[0];
    for (li, &j) in levels.iter().enumerate() {
        let u = r - j as u32;
        let psi = downsample(&gens.psi, 1 << (gen_u - u));
        let e = exponent(j);
        for l in 0..ind[li + 1] {
            let shift = l as i64 + 1 - s * a;
            let locality = place(matrix.column_mut(n_p + l), &psi, shift << e);
            col.push(AtomDescriptor::generator(AtomKind::Wavelet, j, shift, locality));
        }
        n_p += ind[li + 1];
    }
    matrix.refresh_support();

    Ok(WaveletDictionary {
        matrix,
        ind,
        col,
        levels,
        r,
        removed: 0,
    })
}

/// Builds the un-normalized wavelet dictionary for a named family.
pub fn wavelet_dict(family: Family, params: &DictionaryParams) -> Result<WaveletDictionary> {
    wavelet_dict_from_filters(&family.filters(), params)
}

/// Scales every column to Euclidean norm `1/sqrt(delta)`; columns whose
/// scaled norm is at most [`NORM_DICT_TOL`] are removed. Returns the
/// normalized matrix and the original indices of the removed columns.
pub fn norm_dict(mut d: ColMatrix, delta: f64) -> (ColMatrix, Vec<usize>) {
    let scale = delta.sqrt();
    let mut removed = Vec::new();
    for j in 0..d.cols() {
        let nor = scale * d.column_norm(j);
        if nor > NORM_DICT_TOL {
            d.column_mut(j).iter_mut().for_each(|v| *v /= nor);
        } else {
            removed.push(j);
        }
    }
    if !removed.is_empty() {
        let mut drop = removed.iter().peekable();
        d.retain_columns(|j| {
            if drop.peek() == Some(&&j) {
                drop.next();
                false
            } else {
                true
            }
        });
    }
    d.refresh_support();
    (d, removed)
}

/// First `m_c` discrete cosine vectors of length `n_b`, unit-normalized.
pub fn dcos(n_b: usize, m_c: usize) -> Result<ColMatrix> {
    if m_c > n_b {
        return Err(Error::TooManyCosineAtoms { m_c, n_b });
    }
    let columns: Vec<Vec<f64>> = (0..m_c)
        .map(|n| {
            (0..n_b)
                .map(|k| {
                    (std::f64::consts::PI * (2 * k + 1) as f64 * n as f64 / (2 * n_b) as f64).cos()
                })
                .collect()
        })
        .collect();
    let (m, _) = norm_dict(ColMatrix::from_columns(n_b, &columns), 1.0);
    Ok(m)
}

/// Normalizes a freshly built dictionary, dropping descriptors and level
/// counts together with any removed column.
fn normalize(mut dict: WaveletDictionary) -> WaveletDictionary {
    let (matrix, removed) = norm_dict(dict.matrix, 1.0);
    for &j in removed.iter().rev() {
        let group = group_of(&dict.ind, j);
        dict.ind[group] -= 1;
        dict.col.remove(j);
    }
    dict.removed = removed.len();
    dict.matrix = matrix;
    dict
}

fn group_of(ind: &[usize], column: usize) -> usize {
    let mut end = 0;
    for (g, &n) in ind.iter().enumerate() {
        end += n;
        if column < end {
            return g;
        }
    }
    unreachable!("column {column} beyond dictionary")
}

/// Validates the parameters, builds the dictionary for the named family and
/// normalizes its columns.
pub fn gen_dict(name: &str, params: &DictionaryParams) -> Result<WaveletDictionary> {
    params.translation_exponent()?;
    let family: Family = name.parse()?;
    gen_dict_with_filters(&family.filters(), params)
}

/// Same as [`gen_dict`] for a caller-supplied filter pair.
pub fn gen_dict_with_filters(
    filters: &FilterPair,
    params: &DictionaryParams,
) -> Result<WaveletDictionary> {
    Ok(normalize(wavelet_dict_from_filters(filters, params)?))
}

/// Normalized cosine atoms followed by the normalized wavelet dictionary.
pub fn full_dictionary(name: &str, params: &DictionaryParams, m_c: usize) -> Result<FullDictionary> {
    let wavelets = gen_dict(name, params)?;
    let cosine = dcos(params.n_b, m_c)?;
    let mut descriptors: Vec<AtomDescriptor> = (0..cosine.cols()).map(AtomDescriptor::cosine).collect();
    descriptors.extend(wavelets.col.iter().copied());
    Ok(FullDictionary {
        matrix: cosine.hstack(&wavelets.matrix),
        descriptors,
        n_cosine: cosine.cols(),
        ind: wavelets.ind,
        levels: wavelets.levels,
        removed: wavelets.removed,
    })
}
