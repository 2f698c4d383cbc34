use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::float::{float_inertia, FloatBasis};
use super::{stream, SearchConfig, SubspaceBasis};
use crate::error::Result;
use crate::exactnum::rational::{to_f64, Rational};
use crate::hermitian::inertia;
use crate::random::{random_rational, rng_for};

const CHUNK: usize = 64;

/// Histogram of minimal inertia over sampled elements of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    /// minimal inertia → number of samples
    pub counts: BTreeMap<usize, usize>,
    pub samples: usize,
    /// Samples whose float eigenvalues were too close to zero to trust and
    /// were decided exactly.
    pub escalated: usize,
    pub spot_checked: usize,
    /// Spot checks where the float counts disagreed with exact inertia
    /// (the exact value is what gets counted).
    pub spot_mismatches: usize,
}

struct Sample {
    m: usize,
    escalated: bool,
    spot: bool,
    mismatch: bool,
}

/// Minimal-inertia histogram over `cfg.samples` random nonzero elements with
/// small rational coefficients. Float sign counts are used where they are
/// safely away from zero; everything else, and every `spot_check_every`-th
/// sample, is decided by exact inertia. Depends only on `cfg.seed` and
/// `cfg.samples`, not on the worker count.
pub fn empirical_min_inertia_profile(basis: &SubspaceBasis, cfg: &SearchConfig) -> Result<Profile> {
    cfg.validate()?;
    let mut profile = Profile { counts: BTreeMap::new(), samples: 0, escalated: 0, spot_checked: 0, spot_mismatches: 0 };
    if basis.dim() == 0 {
        return Ok(profile);
    }
    let fb = FloatBasis::new(basis);
    let d = basis.dim();
    let n_chunks = cfg.samples.div_ceil(CHUNK);
    let results: Vec<Sample> = cfg.pool().install(|| {
        (0..n_chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = rng_for(cfg.seed, stream::PROFILE | chunk as u64);
                let len = CHUNK.min(cfg.samples - chunk * CHUNK);
                (0..len)
                    .map(|k| {
                        let index = chunk * CHUNK + k;
                        let coeffs: Vec<Rational> = loop {
                            let c: Vec<Rational> = (0..d).map(|_| random_rational(&mut rng, 64, 16)).collect();
                            if c.iter().any(|x| x != &Rational::default()) {
                                break c;
                            }
                        };
                        let cf: Vec<f64> = coeffs.iter().map(to_f64).collect();
                        let fl = float_inertia(&fb.eigenvalues(&cf), cfg.float_tolerance);
                        let spot = cfg.spot_check_every > 0 && index.is_multiple_of(cfg.spot_check_every);
                        match fl {
                            Some((p, n, _)) if !spot => Sample { m: p.min(n), escalated: false, spot, mismatch: false },
                            _ => {
                                let exact = inertia(&basis.element(&coeffs));
                                let mismatch = fl.is_some_and(|(p, n, z)| (p, n, z) != (exact.n_plus, exact.n_minus, exact.n_zero));
                                Sample { m: exact.minimal(), escalated: fl.is_none(), spot, mismatch }
                            }
                        }
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    });
    for s in results {
        *profile.counts.entry(s.m).or_default() += 1;
        profile.samples += 1;
        profile.escalated += usize::from(s.escalated);
        profile.spot_checked += usize::from(s.spot);
        profile.spot_mismatches += usize::from(s.mismatch);
    }
    Ok(profile)
}
