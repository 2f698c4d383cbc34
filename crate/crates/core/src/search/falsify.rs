use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::float::{low_inertia_margin, normalize, FloatBasis};
use super::{stream, SearchConfig, SubspaceBasis, Witness};
use crate::error::Result;
use crate::exactnum::rational::{round_to_rational, Rational};
use crate::random::rng_for;

/// Samples per RNG stream. Fixed so results do not depend on the worker
/// count.
const CHUNK: usize = 64;

/// Sample candidates with a positive float margin that get an exact check
/// before falling back to descent.
const MAX_SAMPLE_CANDIDATES: usize = 8;

/// Margin at which descent stops early: comfortably above the perturbation
/// from rounding coefficients.
const DESCENT_TARGET: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FalsifyOutcome {
    pub witness: Option<Witness>,
    /// Float objective evaluations (samples plus descent moves).
    pub samples_used: usize,
    /// Exact verifications attempted.
    pub exact_checks: usize,
    /// Float candidates the exact check rejected.
    pub rejected: usize,
    /// Largest float margin seen; ≥ 0 means some element looked like a
    /// witness in double precision.
    pub best_margin: f64,
}

/// Looks for a nonzero element of `L` with minimal inertia ≤ 1.
///
/// Phase one draws `cfg.samples` isotropic coefficient vectors and checks the
/// most promising float candidates exactly. Phase two runs coordinate ascent
/// on the margin from the best `cfg.descent_starts` samples. Every candidate
/// is rounded to rationals and certified by exact inertia before it is
/// returned; `None` is inconclusive.
pub fn falsify_min_inertia(basis: &SubspaceBasis, cfg: &SearchConfig) -> Result<FalsifyOutcome> {
    cfg.validate()?;
    let mut out = FalsifyOutcome { witness: None, samples_used: 0, exact_checks: 0, rejected: 0, best_margin: f64::NEG_INFINITY };
    if basis.dim() == 0 {
        return Ok(out);
    }
    let fb = FloatBasis::new(basis);
    let d = fb.dim();
    let pool = cfg.pool();

    let n_chunks = cfg.samples.div_ceil(CHUNK);
    let samples: Vec<(f64, Vec<f64>)> = pool.install(|| {
        (0..n_chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = rng_for(cfg.seed, stream::SAMPLE | chunk as u64);
                let len = CHUNK.min(cfg.samples - chunk * CHUNK);
                (0..len)
                    .map(|_| {
                        let mut c: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                        normalize(&mut c);
                        (low_inertia_margin(&fb.eigenvalues(&c)), c)
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });
    out.samples_used += samples.len();

    let tol = cfg.float_tolerance;
    let candidates = samples.iter().filter(|(m, _)| *m >= -tol).take(MAX_SAMPLE_CANDIDATES);
    for (m, c) in candidates {
        out.best_margin = out.best_margin.max(*m);
        if let Some(w) = certify(basis, c, cfg, &mut out) {
            out.witness = Some(w);
            return Ok(out);
        }
    }

    let mut order: Vec<usize> = (0..samples.len()).collect();
    order.sort_by(|&a, &b| samples[b].0.total_cmp(&samples[a].0).then(a.cmp(&b)));
    if let Some(&top) = order.first() {
        out.best_margin = out.best_margin.max(samples[top].0);
    }
    let starts: Vec<usize> = order.into_iter().take(cfg.descent_starts).collect();
    let descended: Vec<(f64, Vec<f64>, usize)> = pool.install(|| {
        starts
            .par_iter()
            .enumerate()
            .map(|(k, &s)| {
                let mut rng = rng_for(cfg.seed, stream::DESCENT | k as u64);
                descend(&fb, samples[s].1.clone(), cfg.descent_steps, &mut rng)
            })
            .collect()
    });
    for (m, _, evals) in &descended {
        out.samples_used += evals;
        out.best_margin = out.best_margin.max(*m);
    }
    for (m, c, _) in &descended {
        if *m < -tol {
            continue;
        }
        if let Some(w) = certify(basis, c, cfg, &mut out) {
            out.witness = Some(w);
            return Ok(out);
        }
    }
    Ok(out)
}

/// Rounds to rationals (largest coefficient scaled to 1) and certifies.
fn certify(basis: &SubspaceBasis, c: &[f64], cfg: &SearchConfig, out: &mut FalsifyOutcome) -> Option<Witness> {
    let scale = c.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    let coeffs: Vec<Rational> = c.iter().map(|x| round_to_rational(x / scale, cfg.denominator_cap)).collect();
    out.exact_checks += 1;
    let w = Witness::certify(basis, coeffs);
    if w.is_none() {
        out.rejected += 1;
    }
    w
}

/// Coordinate ascent on the margin over the unit sphere of coefficients,
/// with a halving step schedule and one random direction per sweep to get
/// off ridges where two eigenvalues cross. Returns the final margin, the
/// point, and the number of evaluations.
fn descend<R: Rng>(fb: &FloatBasis, mut c: Vec<f64>, sweeps: usize, rng: &mut R) -> (f64, Vec<f64>, usize) {
    let d = c.len();
    let mut f = low_inertia_margin(&fb.eigenvalues(&c));
    let mut evals = 1;
    let mut step = 0.5;
    let mut trial = vec![0.0; d];
    for _ in 0..sweeps {
        if f > DESCENT_TARGET || step < 1e-9 {
            break;
        }
        let mut improved = false;
        let mut dirs: Vec<Vec<f64>> = (0..d)
            .map(|i| {
                let mut e = vec![0.0; d];
                e[i] = 1.0;
                e
            })
            .collect();
        let mut r: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        normalize(&mut r);
        dirs.push(r);
        for dir in &dirs {
            for sign in [1.0, -1.0] {
                for ((t, x), e) in trial.iter_mut().zip(&c).zip(dir) {
                    *t = x + sign * step * e;
                }
                normalize(&mut trial);
                let ft = low_inertia_margin(&fb.eigenvalues(&trial));
                evals += 1;
                if ft > f {
                    f = ft;
                    c.copy_from_slice(&trial);
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (f, c, evals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::{HermitianMatrix, Inertia};
    use crate::search::random_subspace;

    fn cfg(seed: u64) -> SearchConfig {
        SearchConfig { samples: 256, ..SearchConfig::with_seed(seed) }
    }

    #[test]
    fn rank_one_span_gives_witness() {
        let e11 = HermitianMatrix::diagonal_i64(&[1, 0, 0, 0, 0]);
        let b = SubspaceBasis::new(vec![e11]).unwrap();
        let w = falsify_min_inertia(&b, &cfg(1)).unwrap().witness.unwrap();
        assert!(w.inertia == Inertia::new(1, 0, 4) || w.inertia == Inertia::new(0, 1, 4));
        assert_eq!(w.inertia.minimal(), 0);
        w.verify(&b).unwrap();
    }

    #[test]
    fn single_split_matrix_has_no_witness() {
        let x = HermitianMatrix::diagonal_i64(&[1, 1, -1, -1, 0]);
        let b = SubspaceBasis::new(vec![x]).unwrap();
        let out = falsify_min_inertia(&b, &cfg(2)).unwrap();
        assert!(out.witness.is_none());
        assert_eq!(out.rejected, 0);
    }

    #[test]
    fn oversized_subspace_is_falsified() {
        let b = random_subspace(5, 9, 42).unwrap();
        let out = falsify_min_inertia(&b, &SearchConfig::with_seed(42)).unwrap();
        let w = out.witness.expect("a 9-dimensional subspace for q = 5 always has a witness");
        w.verify(&b).unwrap();
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let b = random_subspace(5, 9, 7).unwrap();
        let one = falsify_min_inertia(&b, &SearchConfig { workers: 1, ..SearchConfig::with_seed(3) }).unwrap();
        let four = falsify_min_inertia(&b, &SearchConfig { workers: 4, ..SearchConfig::with_seed(3) }).unwrap();
        assert_eq!(one, four);
    }
}
