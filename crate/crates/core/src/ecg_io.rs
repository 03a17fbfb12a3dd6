//! Reading ECG records and writing model outputs.
//!
//! Records come either as 11-bit packed binary (a continuous bit stream with
//! no padding between samples) or as plain numeric text.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::SignalModelResult;

const SAMPLE_BITS: usize = 11;

/// Bit consumption order within each byte of a packed stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BitOrder {
    /// Least significant bit first; the first bit read is the sample's LSB.
    #[default]
    LsbFirst,
    /// Most significant bit first; the first bit read is the sample's MSB.
    MsbFirst,
}

/// Samples decoded from an 11-bit packed file.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecord {
    pub samples: Vec<u16>,
    pub source: PathBuf,
}

impl RawRecord {
    pub fn sample_count(&self) -> usize {
        self.samples.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.samples.iter().map(|&s| f64::from(s)).collect()
    }
}

/// Splits a byte buffer into 11-bit samples; trailing bits that do not fill
/// a whole sample are dropped.
pub fn unpack_ubit11(bytes: &[u8], order: BitOrder) -> Vec<u16> {
    let count = bytes.len() * 8 / SAMPLE_BITS;
    let mut out = Vec::with_capacity(count);
    let mut acc: u32 = 0;
    let mut nbits = 0usize;
    for &byte in bytes {
        match order {
            BitOrder::LsbFirst => {
                acc |= u32::from(byte) << nbits;
                nbits += 8;
                if nbits >= SAMPLE_BITS {
                    out.push((acc & 0x7ff) as u16);
                    acc >>= SAMPLE_BITS;
                    nbits -= SAMPLE_BITS;
                }
            }
            BitOrder::MsbFirst => {
                acc = (acc << 8) | u32::from(byte);
                nbits += 8;
                if nbits >= SAMPLE_BITS {
                    nbits -= SAMPLE_BITS;
                    out.push(((acc >> nbits) & 0x7ff) as u16);
                    acc &= (1 << nbits) - 1;
                }
            }
        }
    }
    out
}

/// Inverse of [`unpack_ubit11`]; the final byte is zero-padded.
pub fn pack_ubit11(samples: &[u16], order: BitOrder) -> Vec<u8> {
    let mut out = Vec::with_capacity((samples.len() * SAMPLE_BITS).div_ceil(8));
    let mut acc: u32 = 0;
    let mut nbits = 0usize;
    for &s in samples {
        let s = u32::from(s & 0x7ff);
        match order {
            BitOrder::LsbFirst => {
                acc |= s << nbits;
                nbits += SAMPLE_BITS;
                while nbits >= 8 {
                    out.push((acc & 0xff) as u8);
                    acc >>= 8;
                    nbits -= 8;
                }
            }
            BitOrder::MsbFirst => {
                acc = (acc << SAMPLE_BITS) | s;
                nbits += SAMPLE_BITS;
                while nbits >= 8 {
                    nbits -= 8;
                    out.push(((acc >> nbits) & 0xff) as u8);
                }
                acc &= (1 << nbits) - 1;
            }
        }
    }
    if nbits > 0 {
        match order {
            BitOrder::LsbFirst => out.push((acc & 0xff) as u8),
            BitOrder::MsbFirst => out.push(((acc << (8 - nbits)) & 0xff) as u8),
        }
    }
    out
}

pub fn read_ubit11(path: impl AsRef<Path>, order: BitOrder) -> Result<RawRecord> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(RawRecord {
        samples: unpack_ubit11(&bytes, order),
        source: path.to_path_buf(),
    })
}

/// Parses numbers separated by commas, whitespace or newlines.
pub fn parse_numeric_text(text: &str, path: &Path) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        for token in line.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let v: f64 = token.parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: lineno + 1,
                token: token.to_string(),
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_numeric_text(&text, path)
}

/// Formats a value with 17 significant digits.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Run description written as the first line of the model file.
#[derive(Debug, Clone, Serialize)]
pub struct ModelHeader {
    pub family: String,
    #[serde(rename = "N_b")]
    pub n_b: usize,
    pub j: Vec<i32>,
    pub b: f64,
    #[serde(rename = "M_c")]
    pub m_c: usize,
    pub prd0: f64,
    #[serde(rename = "Q")]
    pub q: usize,
    #[serde(rename = "PRD")]
    pub prd: f64,
    #[serde(rename = "SR")]
    pub sr: f64,
}

#[derive(Serialize)]
struct SegmentRecord<'a> {
    q: usize,
    k: usize,
    indices: &'a [usize],
    coeffs: &'a [f64],
    prd: f64,
    /// `null` for an all-zero segment.
    sr: Option<f64>,
}

/// Number of leading samples in the signal/approximation overlay.
pub const OVERLAY_SAMPLES: usize = 2000;

pub const MODEL_FILE: &str = "model.jsonl";
pub const RECONSTRUCTION_FILE: &str = "reconstruction.csv";
pub const OVERLAY_FILE: &str = "overlay.csv";
pub const SPARSITY_FILE: &str = "sparsity.csv";

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Writes the model (JSON lines), the reconstruction, the overlay of the
/// first samples and the per-segment `1/sr` table into `dir`.
///
/// `original` is the truncated input signal the model was built from.
pub fn write_outputs(
    result: &SignalModelResult,
    header: &ModelHeader,
    original: &[f64],
    dir: impl AsRef<Path>,
) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    if original.len() != result.reconstruction.len() {
        return Err(Error::DimensionMismatch {
            expected: result.reconstruction.len(),
            got: original.len(),
        });
    }

    let model_path = dir.join(MODEL_FILE);
    let mut w = create(&model_path)?;
    let io = |e| Error::io(&model_path, e);
    serde_json::to_writer(&mut w, header).map_err(|e| io(e.into()))?;
    writeln!(w).map_err(io)?;
    for (q, s) in result.segments.iter().enumerate() {
        let rec = SegmentRecord {
            q: q + 1,
            k: s.k(),
            indices: &s.indices,
            coeffs: &s.coeffs,
            prd: s.prd,
            sr: s.sr.is_finite().then_some(s.sr),
        };
        serde_json::to_writer(&mut w, &rec).map_err(|e| io(e.into()))?;
        writeln!(w).map_err(io)?;
    }
    w.flush().map_err(io)?;

    let rec_path = dir.join(RECONSTRUCTION_FILE);
    let mut w = create(&rec_path)?;
    let io = |e| Error::io(&rec_path, e);
    for v in &result.reconstruction {
        writeln!(w, "{}", format_f64(*v)).map_err(io)?;
    }
    w.flush().map_err(io)?;

    let overlay_path = dir.join(OVERLAY_FILE);
    let mut w = create(&overlay_path)?;
    let io = |e| Error::io(&overlay_path, e);
    writeln!(w, "sample,original,approximation,error").map_err(io)?;
    for (i, (f, a)) in original
        .iter()
        .zip(&result.reconstruction)
        .take(OVERLAY_SAMPLES)
        .enumerate()
    {
        writeln!(
            w,
            "{},{},{},{}",
            i + 1,
            format_f64(*f),
            format_f64(*a),
            format_f64(f - a)
        )
        .map_err(io)?;
    }
    w.flush().map_err(io)?;

    let sparsity_path = dir.join(SPARSITY_FILE);
    let mut w = create(&sparsity_path)?;
    let io = |e| Error::io(&sparsity_path, e);
    writeln!(w, "q,inv_sr").map_err(io)?;
    for (q, s) in result.segments.iter().enumerate() {
        writeln!(w, "{},{}", q + 1, format_f64(s.k() as f64 / result.n_b as f64)).map_err(io)?;
    }
    w.flush().map_err(io)?;

    Ok(vec![model_path, rec_path, overlay_path, sparsity_path])
}

/// Writes one value per line in shortest round-trip form.
pub fn write_signal(values: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    for v in values {
        writeln!(w, "{v}").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}
