//! Redundant wavelet dictionaries and Optimized Orthogonal Matching Pursuit
//! for piecewise sparse modelling of ECG records.

pub mod cascade;
pub mod cli;
pub mod dictionary;
pub mod ecg_io;
pub mod error;
pub mod filters;
pub mod matrix;
pub mod model;
pub mod oomp;
pub mod synthetic;

pub use cascade::{wavelet_gen, SampledGenerators};
pub use dictionary::{
    dcos, full_dictionary, gen_dict, norm_dict, AtomDescriptor, AtomKind, DictionaryParams, FullDictionary,
    Locality, WaveletDictionary,
};
pub use error::{Error, Result};
pub use filters::{filters, Family, FilterPair};
pub use matrix::ColMatrix;
pub use model::{partition, signal_model, ModelConfig, SignalModelResult};
pub use oomp::{oomp, OompResult, StopReason};
