//! Command-line front end.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cascade::wavelet_gen;
use crate::dictionary::{full_dictionary, AtomDescriptor, DictionaryParams};
use crate::ecg_io::{self, format_f64, BitOrder, ModelHeader};
use crate::filters::Family;
use crate::model::{partition, signal_model, ModelConfig, SignalModelResult};
use crate::synthetic::{synthetic_ecg, SyntheticConfig};

#[derive(Debug, Parser)]
#[command(name = "wavedict", version, about = "Wavelet dictionaries and sparse ECG modelling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the wavelet families, or print the filters of one of them.
    Families {
        #[arg(long)]
        name: Option<String>,
    },
    /// Sample phi and psi on a dyadic grid and write them as CSV.
    Gen(GenArgs),
    /// Build a dictionary and report its size.
    Dict(DictArgs),
    /// Approximate a signal segment by segment.
    Approx(RunConfig),
    /// Write the synthetic ECG-like test signal.
    Synth(SynthArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, default_value = "CDF97")]
    pub family: String,
    /// Grid resolution: samples at multiples of 2^-u.
    #[arg(long, default_value_t = 6)]
    pub u: u32,
    /// Output directory for phi.csv and psi.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Segment length, levels and translation factor.
#[derive(Debug, Clone, Args)]
pub struct DictOptions {
    #[arg(long = "n-b", default_value_t = 500)]
    pub n_b: usize,
    /// Levels as an inclusive range `a:b` or a list `a,b,c`.
    #[arg(long, default_value = "3:7", value_parser = parse_levels)]
    pub levels: Levels,
    /// Translation factor `2^-r`, as a decimal or a fraction.
    #[arg(long, default_value = "1/4", value_parser = parse_translation)]
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Levels(pub Vec<i32>);

#[derive(Debug, Clone, Args)]
pub struct DictArgs {
    #[arg(long, default_value = "CDF97")]
    pub family: String,
    #[command(flatten)]
    pub dict: DictOptions,
    /// Cosine atoms placed before the wavelet atoms.
    #[arg(long = "m-c", default_value_t = 0)]
    pub m_c: usize,
    /// Output directory for descriptors.jsonl and ind.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the dictionary matrix as matrix.csv.
    #[arg(long, requires = "out")]
    pub matrix: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Ubit11,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BitOrderArg {
    Lsb,
    Msb,
}

impl From<BitOrderArg> for BitOrder {
    fn from(b: BitOrderArg) -> Self {
        match b {
            BitOrderArg::Lsb => BitOrder::LsbFirst,
            BitOrderArg::Msb => BitOrder::MsbFirst,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Signal file: 11-bit packed binary or numeric text.
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    #[arg(long = "bit-order", value_enum, default_value = "lsb")]
    pub bit_order: BitOrderArg,
    #[arg(long, default_value = "CDF97")]
    pub family: String,
    #[command(flatten)]
    pub dict: DictOptions,
    #[arg(long = "m-c", default_value_t = 10)]
    pub m_c: usize,
    /// Target PRD per segment, in percent.
    #[arg(long, default_value_t = 0.53)]
    pub prd0: f64,
    /// Use the wavelet basis: b = 1 and one extra level.
    #[arg(long)]
    pub basis: bool,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 117)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

pub fn parse_levels(s: &str) -> Result<Levels, String> {
    let bad = || format!("invalid level list {s:?}: use a:b or a,b,c");
    let levels: Vec<i32> = if let Some((a, b)) = s.split_once(':') {
        let a: i32 = a.trim().parse().map_err(|_| bad())?;
        let b: i32 = b.trim().parse().map_err(|_| bad())?;
        if b < a {
            return Err(format!("empty level range {s:?}"));
        }
        (a..=b).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    Ok(Levels(levels))
}

pub fn parse_translation(s: &str) -> Result<f64, String> {
    let bad = || format!("invalid translation factor {s:?}: use a decimal or p/q");
    match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            Ok(p / q)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

impl RunConfig {
    /// Dictionary parameters after applying `--basis`.
    pub fn params(&self) -> DictionaryParams {
        let mut levels = self.dict.levels.0.clone();
        let mut b = self.dict.b;
        if self.basis {
            if let Some(&top) = levels.iter().max() {
                levels.push(top + 1);
            }
            b = 1.0;
        }
        DictionaryParams::new(self.dict.n_b, levels, b)
    }

    pub fn input_format(&self) -> InputFormat {
        self.format.unwrap_or_else(|| {
            match self.input.extension().and_then(|e| e.to_str()) {
                Some(e) if ["csv", "txt"].contains(&e.to_ascii_lowercase().as_str()) => InputFormat::Csv,
                _ => InputFormat::Ubit11,
            }
        })
    }

    pub fn model_config(&self) -> ModelConfig {
        ModelConfig {
            family: self.family.clone(),
            params: self.params(),
            m_c: self.m_c,
            prd0: self.prd0,
            threads: self.threads,
        }
    }
}

impl DictOptions {
    pub fn params(&self) -> DictionaryParams {
        DictionaryParams::new(self.n_b, self.levels.0.clone(), self.b)
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    match cli.command {
        Command::Families { name } => cmd_families(name.as_deref(), out),
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Dict(a) => cmd_dict(&a, out),
        Command::Approx(c) => cmd_approx(&c, out).map(|_| ()),
        Command::Synth(a) => cmd_synth(&a, out),
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.17}")).collect::<Vec<_>>().join(", ")
}

pub fn cmd_families(name: Option<&str>, out: &mut dyn Write) -> anyhow::Result<()> {
    match name {
        None => {
            writeln!(out, "{:<8} {:>4} {:>4}  description", "name", "h", "g")?;
            for f in Family::ALL {
                let p = f.filters();
                writeln!(
                    out,
                    "{:<8} {:>4} {:>4}  {}",
                    f.name(),
                    p.h.len(),
                    p.g.len(),
                    f.description()
                )?;
            }
        }
        Some(n) => {
            let f: Family = n.parse()?;
            let p = f.filters();
            writeln!(out, "{}: {}", f.name(), f.description())?;
            writeln!(out, "h = [{}]", join(&p.h))?;
            writeln!(out, "g = [{}]", join(&p.g))?;
        }
    }
    Ok(())
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let family: Family = args.family.parse()?;
    let p = family.filters();
    let s = wavelet_gen(&p.h, &p.g, args.u)?;
    writeln!(
        out,
        "{}: phi on [0, {}] ({} samples), psi on [0, {}] ({} samples), step 2^-{}",
        family,
        s.scaling_support,
        s.phi.len(),
        s.wavelet_support_doubled as f64 / 2.0,
        s.psi.len(),
        s.u
    )?;
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        let h = s.grid_step();
        for (file, name, values) in [("phi.csv", "phi", &s.phi), ("psi.csv", "psi", &s.psi)] {
            let path = dir.join(file);
            let mut w = create(&path)?;
            writeln!(w, "t,{name}")?;
            for (m, v) in values.iter().enumerate() {
                writeln!(w, "{},{}", format_f64(m as f64 * h), format_f64(*v))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DescriptorRecord<'a> {
    index: usize,
    #[serde(flatten)]
    atom: &'a AtomDescriptor,
}

fn fmt_ind(ind: &[usize]) -> String {
    let parts: Vec<String> = ind.iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn cmd_dict(args: &DictArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let params = args.dict.params();
    let d = full_dictionary(&args.family, &params, args.m_c)?;
    writeln!(out, "{} x {}", d.matrix.rows(), d.matrix.cols())?;
    writeln!(out, "ind = {}", fmt_ind(&d.ind))?;
    if d.n_cosine > 0 {
        writeln!(out, "cosine atoms = {}", d.n_cosine)?;
    }
    if d.removed > 0 {
        writeln!(out, "removed zero columns = {}", d.removed)?;
    }
    let Some(dir) = &args.out else {
        return Ok(());
    };
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;

    let path = dir.join("descriptors.jsonl");
    let mut w = create(&path)?;
    for (index, atom) in d.descriptors.iter().enumerate() {
        serde_json::to_writer(&mut w, &DescriptorRecord { index, atom })?;
        writeln!(w)?;
    }
    w.flush()?;

    fs::write(dir.join("ind.json"), serde_json::to_string(&d.ind)? + "\n")
        .with_context(|| format!("cannot write {}", dir.join("ind.json").display()))?;

    if args.matrix {
        let mut w = create(&dir.join("matrix.csv"))?;
        for i in 0..d.matrix.rows() {
            let row: Vec<String> = (0..d.matrix.cols()).map(|j| format_f64(d.matrix.get(i, j))).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        w.flush()?;
    }
    Ok(())
}

/// Reads the signal named by the run configuration.
pub fn load_signal(config: &RunConfig) -> anyhow::Result<Vec<f64>> {
    let f = match config.input_format() {
        InputFormat::Csv => ecg_io::read_csv(&config.input)?,
        InputFormat::Ubit11 => ecg_io::read_ubit11(&config.input, config.bit_order.into())?.to_f64(),
    };
    if f.is_empty() {
        bail!("{}: no samples", config.input.display());
    }
    Ok(f)
}

pub fn cmd_approx(config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<SignalModelResult> {
    let f = load_signal(config)?;
    let model = config.model_config();
    let result = signal_model(&f, &model)?;
    let original = partition(&f, model.params.n_b)?.truncated_signal();

    let params = &model.params;
    let header = ModelHeader {
        family: model.family.clone(),
        n_b: params.n_b,
        j: params.levels.clone(),
        b: params.b,
        m_c: model.m_c,
        prd0: model.prd0,
        q: result.segments.len(),
        prd: result.prd,
        sr: result.sr,
    };
    ecg_io::write_outputs(&result, &header, &original, &config.out)?;

    writeln!(out, "Q = {}", result.segments.len())?;
    writeln!(out, "K = {}", result.total_atoms())?;
    writeln!(out, "PRD = {:.4}", result.prd)?;
    writeln!(out, "SR = {:.4}", result.sr)?;
    let exhausted = result.segments.iter().filter(|s| s.stop.exhausted()).count();
    if exhausted > 0 {
        writeln!(out, "segments that missed prd0: {exhausted}")?;
    }
    Ok(result)
}

pub fn cmd_synth(args: &SynthArgs, out: &mut dyn Write) -> anyhow::Result<()> {
    let config = SyntheticConfig {
        samples: args.samples,
        seed: args.seed,
        ..SyntheticConfig::default()
    };
    let f = synthetic_ecg(&config);
    ecg_io::write_signal(&f, &args.out)?;
    writeln!(out, "wrote {} samples to {}", f.len(), args.out.display())?;
    Ok(())
}
