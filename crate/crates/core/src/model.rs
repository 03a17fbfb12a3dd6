//! Piecewise sparse model of a signal: partition into segments, approximate
//! every segment with OOMP over one shared dictionary, and score the result.

use rayon::prelude::*;

use crate::dictionary::{full_dictionary, DictionaryParams, FullDictionary};
use crate::error::{Error, Result};
use crate::matrix::norm;
use crate::oomp::{oomp, StopReason};

/// Non-overlapping segments of `n_b` samples; trailing samples are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    pub segments: Vec<Vec<f64>>,
    pub n_b: usize,
}

impl Partition {
    pub fn q(&self) -> usize {
        self.segments.len()
    }

    /// The first `Q * N_b` samples of the input.
    pub fn truncated_signal(&self) -> Vec<f64> {
        self.segments.concat()
    }
}

pub fn partition(f: &[f64], n_b: usize) -> Result<Partition> {
    if n_b == 0 || f.len() < n_b {
        return Err(Error::EmptyPartition { len: f.len(), n_b });
    }
    let segments = f.chunks_exact(n_b).map(<[f64]>::to_vec).collect();
    Ok(Partition { segments, n_b })
}

/// Atomic decomposition of one segment.
#[derive(Debug, Clone)]
pub struct SegmentModel {
    pub approx: Vec<f64>,
    /// Zero-based column indices into the full dictionary.
    pub indices: Vec<usize>,
    pub coeffs: Vec<f64>,
    /// Local PRD in percent.
    pub prd: f64,
    /// Local sparsity ratio `N_b / k`; infinite for an all-zero segment.
    pub sr: f64,
    pub stop: StopReason,
}

impl SegmentModel {
    pub fn k(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SignalModelResult {
    /// Concatenated segment approximations.
    pub reconstruction: Vec<f64>,
    pub segments: Vec<SegmentModel>,
    /// Global PRD in percent.
    pub prd: f64,
    /// Global sparsity ratio `N / K`.
    pub sr: f64,
    pub n_b: usize,
}

impl SignalModelResult {
    pub fn total_atoms(&self) -> usize {
        self.segments.iter().map(SegmentModel::k).sum()
    }
}

/// Local and global distortion and sparsity figures.
#[derive(Debug, Clone, PartialEq)]
pub struct Metrics {
    pub prd: Vec<f64>,
    pub sr: Vec<f64>,
    pub global_prd: f64,
    pub global_sr: f64,
}

/// `100 ||f - g|| / ||f||`.
pub fn prd_percent(f: &[f64], g: &[f64]) -> Result<f64> {
    if f.len() != g.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            got: g.len(),
        });
    }
    let fnorm = norm(f);
    if fnorm == 0.0 {
        return Err(Error::UndefinedPrd);
    }
    let diff: f64 = f.iter().zip(g).map(|(a, b)| (a - b) * (a - b)).sum();
    Ok(100.0 * diff.sqrt() / fnorm)
}

/// PRD and SR per segment and for the whole signal. Segments with zero norm
/// get a local PRD of 0.
pub fn metrics(f: &[f64], reconstruction: &[f64], k: &[usize], n_b: usize) -> Result<Metrics> {
    if f.len() != reconstruction.len() {
        return Err(Error::DimensionMismatch {
            expected: f.len(),
            got: reconstruction.len(),
        });
    }
    if n_b == 0 || f.len() != k.len() * n_b {
        return Err(Error::DimensionMismatch {
            expected: k.len() * n_b,
            got: f.len(),
        });
    }
    let global_prd = prd_percent(f, reconstruction)?;
    let prd = f
        .chunks_exact(n_b)
        .zip(reconstruction.chunks_exact(n_b))
        .map(|(a, b)| prd_percent(a, b).unwrap_or(0.0))
        .collect();
    let sr = k.iter().map(|&kq| n_b as f64 / kq as f64).collect();
    let total: usize = k.iter().sum();
    Ok(Metrics {
        prd,
        sr,
        global_prd,
        global_sr: f.len() as f64 / total as f64,
    })
}

/// Approximates one segment to `prd0` percent with the given dictionary,
/// starting from its first column.
pub fn approximate_segment(segment: &[f64], dict: &FullDictionary, prd0: f64) -> Result<SegmentModel> {
    let fnorm = norm(segment);
    let tol = prd0 * fnorm / 100.0;
    let res = oomp(segment, &dict.matrix, tol, 0)?;
    let prd = if fnorm == 0.0 {
        0.0
    } else {
        100.0 * res.residual_norm() / fnorm
    };
    let k = res.indices.len();
    Ok(SegmentModel {
        approx: res.approx,
        indices: res.indices,
        coeffs: res.coeffs,
        prd,
        sr: segment.len() as f64 / k as f64,
        stop: res.stop,
    })
}

/// Settings for [`signal_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    pub family: String,
    pub params: DictionaryParams,
    pub m_c: usize,
    pub prd0: f64,
    /// Worker threads for the segment loop; results do not depend on it.
    pub threads: usize,
}

/// Builds `[D^C D^W]` once and approximates every segment of `f`.
pub fn signal_model(f: &[f64], config: &ModelConfig) -> Result<SignalModelResult> {
    if !(config.prd0.is_finite() && config.prd0 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "prd0 must be nonnegative (got {})",
            config.prd0
        )));
    }
    let n_b = config.params.n_b;
    let parts = partition(f, n_b)?;
    let dict = full_dictionary(&config.family, &config.params, config.m_c)?;
    let segments = model_segments(&parts, &dict, config.prd0, config.threads)?;
    assemble(&parts, segments)
}

/// Approximates every segment of a partition with a prebuilt dictionary.
pub fn model_segments(
    parts: &Partition,
    dict: &FullDictionary,
    prd0: f64,
    threads: usize,
) -> Result<Vec<SegmentModel>> {
    if dict.matrix.rows() != parts.n_b {
        return Err(Error::DimensionMismatch {
            expected: parts.n_b,
            got: dict.matrix.rows(),
        });
    }
    if threads <= 1 {
        return parts
            .segments
            .iter()
            .map(|s| approximate_segment(s, dict, prd0))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker threads: {e}")))?;
    pool.install(|| {
        parts
            .segments
            .par_iter()
            .map(|s| approximate_segment(s, dict, prd0))
            .collect()
    })
}

fn assemble(parts: &Partition, segments: Vec<SegmentModel>) -> Result<SignalModelResult> {
    let f = parts.truncated_signal();
    let reconstruction: Vec<f64> = segments.iter().flat_map(|s| s.approx.iter().copied()).collect();
    let prd = prd_percent(&f, &reconstruction)?;
    let total: usize = segments.iter().map(SegmentModel::k).sum();
    Ok(SignalModelResult {
        reconstruction,
        segments,
        prd,
        sr: f.len() as f64 / total as f64,
        n_b: parts.n_b,
    })
}
