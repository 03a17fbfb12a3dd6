//! Shared oracles for the integration and acceptance tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use wavedict::oomp::{oomp, OompResult, MIN_OUT_OF_SPAN_NORM, ROUNDOFF_REL_RESIDUAL};
use proptest::prelude::*;
use wavedict::cascade::wavelet_gen;
use wavedict::filters::{normalize_scaling_filter, Family};
use wavedict::ColMatrix;

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Least-squares fit of `f` by the given columns: (coefficients, residual norm).
pub fn least_squares(f: &[f64], cols: &[&[f64]]) -> (Vec<f64>, f64) {
    let m = f.len();
    if cols.is_empty() {
        return (Vec::new(), norm(f));
    }
    let a = DMatrix::from_fn(m, cols.len(), |i, j| cols[j][i]);
    let b = DVector::from_column_slice(f);
    let c = a.clone().svd(true, true).solve(&b, 0.0).expect("svd solve");
    let r = &b - &a * &c;
    (c.iter().copied().collect(), r.norm())
}

/// Step-wise brute-force choice after `prefix`: the admissible column whose
/// addition gives the smallest least-squares residual, lowest index on ties.
pub fn oracle_step(f: &[f64], dict: &ColMatrix, prefix: &[usize]) -> Option<usize> {
    let base: Vec<&[f64]> = prefix.iter().map(|&j| dict.column(j)).collect();
    let tie = 1e-9 * norm(f);
    let mut best: Option<(usize, f64)> = None;
    for n in 0..dict.cols() {
        if prefix.contains(&n) {
            continue;
        }
        let (_, out) = least_squares(dict.column(n), &base);
        if out <= MIN_OUT_OF_SPAN_NORM {
            continue;
        }
        let mut cols = base.clone();
        cols.push(dict.column(n));
        let (_, res) = least_squares(f, &cols);
        match best {
            Some((_, b)) if res >= b - tie => {}
            _ => best = Some((n, res)),
        }
    }
    best.map(|(n, _)| n)
}

/// Runs OOMP and compares every step with the oracle, the stopping rule and
/// the final coefficients. Returns a description of the first mismatch.
pub fn check_against_oracle(f: &[f64], dict: &ColMatrix, tol: f64) -> Result<OompResult, String> {
    let res = oomp(f, dict, tol, 0).map_err(|e| e.to_string())?;
    let fnorm = norm(f);
    for t in 1..res.indices.len() {
        let want = oracle_step(f, dict, &res.indices[..t]);
        if want != Some(res.indices[t]) {
            return Err(format!("step {t}: oomp chose {}, oracle {want:?}", res.indices[t]));
        }
    }
    // The loop must not have stopped while the oracle could still improve.
    let k = res.indices.len();
    let rn = res.residual_norm();
    let done = rn <= tol || rn <= ROUNDOFF_REL_RESIDUAL * fnorm || k >= f.len();
    if !done && oracle_step(f, dict, &res.indices).is_some() {
        return Err(format!("stopped early at k = {k} with residual {rn}"));
    }
    let cols: Vec<&[f64]> = res.indices.iter().map(|&j| dict.column(j)).collect();
    let (c, ls_res) = least_squares(f, &cols);
    let scale = norm(&c).max(1.0);
    for (a, b) in c.iter().zip(&res.coeffs) {
        if (a - b).abs() > 1e-8 * scale {
            return Err(format!("coefficient mismatch {a} vs {b}"));
        }
    }
    if (ls_res - rn).abs() > 1e-8 * fnorm.max(1.0) {
        return Err(format!("residual mismatch {ls_res} vs {rn}"));
    }
    Ok(res)
}

/// Random unit-norm dictionary; with `duplicates` some columns are copies.
pub fn random_instance(seed: u64) -> (Vec<f64>, ColMatrix, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(3..=10);
    let n = rng.gen_range(m..=16);
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let c: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
            let s = norm(&c);
            c.into_iter().map(|x| x / s).collect()
        })
        .collect();
    if seed.is_multiple_of(4) && n > 2 {
        let src = rng.gen_range(0..n - 1);
        let dst = rng.gen_range(src + 1..n);
        cols[dst] = cols[src].clone();
    }
    let f: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
    let tol = if seed.is_multiple_of(3) { 0.0 } else { rng.gen_range(0.01..0.5) * norm(&f) };
    (f, ColMatrix::from_columns(m, &cols), tol)
}

/// Residual orthogonality, monotone decrease and the termination guarantee.
pub fn check_invariants(f: &[f64], dict: &ColMatrix, tol: f64) -> Result<(), String> {
    let res = oomp(f, dict, tol, 0).map_err(|e| e.to_string())?;
    let fnorm = norm(f);
    let r: Vec<f64> = f.iter().zip(&res.approx).map(|(a, b)| a - b).collect();
    for &j in &res.indices {
        let p: f64 = dict.column(j).iter().zip(&r).map(|(a, b)| a * b).sum();
        if p.abs() > 1e-8 * fnorm {
            return Err(format!("residual not orthogonal to atom {j}: {p}"));
        }
    }
    let mut prev = fnorm;
    for &rn in &res.residual_norms {
        if rn > prev * (1.0 + 1e-12) + 1e-14 {
            return Err(format!("residual increased from {prev} to {rn}"));
        }
        prev = rn;
    }
    let mut distinct = res.indices.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != res.indices.len() {
        return Err("atom selected twice".into());
    }
    let rebuilt = dict.combine(&res.indices, &res.coeffs);
    if rebuilt.iter().zip(&res.approx).any(|(a, b)| (a - b).abs() > 1e-8 * fnorm.max(1.0)) {
        return Err("approximation differs from the atomic decomposition".into());
    }
    if !res.stop.exhausted() && res.residual_norm() > tol.max(ROUNDOFF_REL_RESIDUAL * fnorm) && fnorm > 0.0 {
        return Err(format!("stopped with residual {} above tol {tol}", res.residual_norm()));
    }
    Ok(())
}

/// Trapezoid rule on a uniform grid starting at 0.
pub fn trapezoid(values: &[f64], step: f64, weight: impl Fn(f64) -> f64) -> f64 {
    let n = values.len();
    let mut s = 0.0;
    for (i, v) in values.iter().enumerate() {
        let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        s += w * v * weight(i as f64 * step);
    }
    s * step
}

/// Cardinal B-spline of order `k` (support `[0, k]`) in closed form.
pub fn bspline(k: usize, x: f64) -> f64 {
    let mut binom = 1.0;
    let mut s = 0.0;
    let mut fact = 1.0;
    for i in 1..k {
        fact *= i as f64;
    }
    for i in 0..=k {
        let t = x - i as f64;
        if t > 0.0 {
            s += if i % 2 == 0 { 1.0 } else { -1.0 } * binom * t.powi(k as i32 - 1);
        }
        binom = binom * (k - i) as f64 / (i + 1) as f64;
    }
    s / fact
}

/// Random dictionaries of unit columns with at least as many columns as rows.
pub fn instance() -> impl Strategy<Value = (Vec<f64>, ColMatrix, f64)> {
    (2usize..=10).prop_flat_map(|m| {
        (
            prop::collection::vec(-10.0f64..10.0, m),
            prop::collection::vec(prop::collection::vec(-1.0f64..1.0, m), m..=16),
            0.0f64..0.8,
        )
            .prop_filter_map("degenerate column", move |(f, cols, rel)| {
                let cols: Option<Vec<Vec<f64>>> = cols
                    .into_iter()
                    .map(|c| {
                        let s = norm(&c);
                        (s > 1e-3).then(|| c.into_iter().map(|x| x / s).collect())
                    })
                    .collect();
                let tol = rel * norm(&f);
                Some((f, ColMatrix::from_columns(m, &cols?), tol))
            })
    })
}

/// Largest refinement-equation residuals of phi and psi on the grid of step `2^-u`.
pub fn refinement_residuals(fam: Family, u: u32) -> (f64, f64) {
    let p = fam.filters();
    let h = normalize_scaling_filter(&p.h).unwrap();
    let s = wavelet_gen(&p.h, &p.g, u).unwrap();
    let scale = 1i64 << u;
    let last = (s.phi.len() - 1) as i64;
    let phi_at = |idx: i64| if (0..=last).contains(&idx) { s.phi[idx as usize] } else { 0.0 };

    let mut rphi = 0.0f64;
    for m in 0..=last {
        let rhs: f64 = h.iter().enumerate().map(|(k, hk)| hk * phi_at(2 * m - k as i64 * scale)).sum();
        rphi = rphi.max((s.phi[m as usize] - rhs).abs());
    }
    let mut rpsi = 0.0f64;
    for (pidx, v) in s.psi.iter().enumerate() {
        let rhs: f64 = p.g.iter().enumerate().map(|(k, gk)| gk * phi_at(2 * pidx as i64 - k as i64 * scale)).sum();
        rpsi = rpsi.max((v - rhs).abs());
    }
    (rphi, rpsi)
}

/// Sum-2 normalization, vanishing wavelet filter moments and double-shift
/// orthogonality of the orthonormal families.
pub fn check_filter_properties() -> Result<(), String> {
    for fam in Family::ALL {
        let p = fam.filters();
        let h = normalize_scaling_filter(&p.h).map_err(|e| e.to_string())?;
        let sum: f64 = h.iter().sum();
        if (sum - 2.0).abs() > 1e-12 {
            return Err(format!("{fam}: sum(h) = {sum}"));
        }
        for q in 0..fam.vanishing_moments() {
            let m: f64 = p.g.iter().enumerate().map(|(k, g)| g * (k as f64).powi(q as i32)).sum();
            if m.abs() > 1e-6 {
                return Err(format!("{fam}: moment {q} of g is {m}"));
            }
        }
        if fam.is_orthonormal() {
            for shift in 0..h.len() / 2 + 1 {
                let s: f64 = (0..h.len())
                    .filter(|k| k + 2 * shift < h.len())
                    .map(|k| h[k] * h[k + 2 * shift])
                    .sum();
                let want = if shift == 0 { 2.0 } else { 0.0 };
                if (s - want).abs() > 1e-8 {
                    return Err(format!("{fam}: double shift {shift} gives {s}"));
                }
            }
        }
    }
    Ok(())
}
