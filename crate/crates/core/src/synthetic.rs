//! Deterministic ECG-like test signal.
//!
//! Beats are sums of Gaussian bumps (P, Q, R, S, T) with jittered RR
//! intervals and occasional wide ventricular-like complexes, on top of a slow
//! baseline wander and small noise. Values are rounded to 11-bit ADC counts
//! with the usual MIT-BIH scaling (200 counts per mV around 1024).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

pub const SAMPLE_RATE: f64 = 360.0;
pub const ADC_ZERO: f64 = 1024.0;
pub const ADC_GAIN: f64 = 200.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticConfig {
    pub samples: usize,
    pub seed: u64,
    /// Mean RR interval in seconds.
    pub rr: f64,
    /// Standard deviation of the RR interval in seconds.
    pub rr_jitter: f64,
    /// Probability that a beat is a wide complex.
    pub wide_beat_rate: f64,
    /// Noise standard deviation in mV.
    pub noise: f64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            samples: 10_000,
            seed: 117,
            rr: 0.8,
            rr_jitter: 0.04,
            wide_beat_rate: 0.1,
            noise: 0.01,
        }
    }
}

/// One Gaussian component: amplitude (mV), centre offset and width (s).
struct Wave(f64, f64, f64);

const NORMAL_BEAT: [Wave; 5] = [
    Wave(0.15, -0.20, 0.025),
    Wave(-0.12, -0.035, 0.010),
    Wave(1.20, 0.0, 0.012),
    Wave(-0.25, 0.030, 0.012),
    Wave(0.30, 0.26, 0.060),
];

const WIDE_BEAT: [Wave; 3] = [
    Wave(-0.40, -0.04, 0.030),
    Wave(1.00, 0.02, 0.035),
    Wave(-0.35, 0.30, 0.070),
];

/// Generates the signal in ADC counts.
pub fn synthetic_ecg(config: &SyntheticConfig) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.samples;
    let duration = n as f64 / SAMPLE_RATE;

    let mut beats = Vec::new();
    let rr_dist = Normal::new(config.rr, config.rr_jitter.max(0.0)).expect("finite RR");
    let mut t = 0.3;
    while t < duration + 1.0 {
        let wide = rng.gen_bool(config.wide_beat_rate.clamp(0.0, 1.0));
        beats.push((t, wide));
        let rr: f64 = rr_dist.sample(&mut rng);
        t += rr.max(0.3 * config.rr) * if wide { 1.2 } else { 1.0 };
    }

    let wander_phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let noise = Normal::new(0.0, config.noise.max(0.0)).expect("finite noise");

    (0..n)
        .map(|i| {
            let x = i as f64 / SAMPLE_RATE;
            let mut mv = 0.08 * (std::f64::consts::TAU * 0.3 * x + wander_phase).sin();
            for &(c, wide) in &beats {
                if (x - c).abs() > 1.0 {
                    continue;
                }
                let waves: &[Wave] = if wide { &WIDE_BEAT } else { &NORMAL_BEAT };
                for w in waves {
                    let d = (x - c - w.1) / w.2;
                    mv += w.0 * (-0.5 * d * d).exp();
                }
            }
            mv += noise.sample(&mut rng);
            (ADC_ZERO + ADC_GAIN * mv).round().clamp(0.0, 2047.0)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_range() {
        let c = SyntheticConfig {
            samples: 3000,
            ..SyntheticConfig::default()
        };
        let a = synthetic_ecg(&c);
        assert_eq!(a, synthetic_ecg(&c));
        assert_eq!(a.len(), 3000);
        assert!(a.iter().all(|v| (0.0..=2047.0).contains(v) && v.fract() == 0.0));
        let peak = a.iter().cloned().fold(f64::MIN, f64::max);
        assert!(peak > ADC_ZERO + 150.0);
        let other = synthetic_ecg(&SyntheticConfig { seed: 1, ..c });
        assert_ne!(a, other);
    }
}
