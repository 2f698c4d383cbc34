use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{falsify_min_inertia, stream, SearchConfig, SubspaceBasis};
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;
use crate::hermitian::{minimal_inertia, HermitianMatrix};
use crate::random::{random_gaussian, random_with_signature, rng_for, SearchRng};
use crate::strata::subspace_dimension_limit;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowStep {
    /// Dimension the enlarged span would have.
    pub dim: usize,
    pub proposals: usize,
    pub accepted: bool,
    /// Proposals whose enlarged span the falsifier refuted with an exactly
    /// certified witness.
    pub falsified: usize,
    /// Proposals skipped as dependent on the current basis.
    pub dependent: usize,
    pub samples_used: usize,
    pub exact_checks: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowReport {
    pub q: usize,
    pub target_dim: usize,
    pub seed: u64,
    pub basis: SubspaceBasis,
    pub steps: Vec<GrowStep>,
    /// Always false: surviving the falsifier is not a proof.
    pub certified: bool,
    pub dimension_limit: Option<u64>,
    pub warning: Option<String>,
    pub note: String,
}

/// Greedy growth of a candidate subspace with minimal inertia ≥ 2: each
/// step proposes random elements of split signature and keeps the first one
/// whose enlarged span the falsifier cannot refute within its budget.
pub fn grow_subspace(q: usize, target_dim: usize, cfg: &SearchConfig) -> Result<GrowReport> {
    cfg.validate()?;
    if q == 0 {
        return Err(Error::invalid("q must be positive"));
    }
    if target_dim > q * q {
        return Err(Error::invalid(format!("target dimension {target_dim} exceeds {}", q * q)));
    }
    let limit = subspace_dimension_limit(q as u64).ok();
    let warning = match limit {
        Some(l) if target_dim as u64 > l => Some(format!(
            "target {target_dim} exceeds the dimension limit {l}; growth past it cannot succeed"
        )),
        _ if q < 4 && target_dim > 0 => {
            Some("no nonzero element has minimal inertia >= 2 when q < 4".to_string())
        }
        _ => None,
    };
    let note = match limit {
        Some(l) => format!("candidate only, not certified; dimension limit {l}"),
        None => "candidate only, not certified; no direct dimension bound for this q".to_string(),
    };

    let mut basis = SubspaceBasis::empty(q);
    let mut steps = Vec::new();
    for dim in 1..=target_dim {
        let mut step = GrowStep {
            dim,
            proposals: 0,
            accepted: false,
            falsified: 0,
            dependent: 0,
            samples_used: 0,
            exact_checks: 0,
        };
        for p in 0..cfg.grow_proposals {
            step.proposals += 1;
            let mut rng = rng_for(cfg.seed, stream::GROW | ((dim as u64) << 24) | p as u64);
            let cand = propose(&mut rng, q);
            let Some(trial) = extend(&basis, cand) else {
                step.dependent += 1;
                continue;
            };
            let sub = SearchConfig { seed: rng.gen(), workers: cfg.workers, ..cfg.clone() };
            let out = falsify_min_inertia(&trial, &sub)?;
            step.samples_used += out.samples_used;
            step.exact_checks += out.exact_checks;
            if out.witness.is_some() {
                step.falsified += 1;
            } else {
                basis = trial;
                step.accepted = true;
                break;
            }
        }
        let accepted = step.accepted;
        steps.push(step);
        if !accepted {
            break;
        }
    }
    Ok(GrowReport { q, target_dim, seed: cfg.seed, basis, steps, certified: false, dimension_limit: limit, warning, note })
}

fn extend(basis: &SubspaceBasis, m: HermitianMatrix) -> Option<SubspaceBasis> {
    if basis.dim() == 0 {
        SubspaceBasis::new(vec![m]).ok()
    } else {
        basis.extended(m)
    }
}

/// A random element of split signature: either a generic matrix with
/// `n₊, n₋ ≥ 2`, or an off-diagonal block `[[0, A], [A*, 0]]` whose
/// eigenvalues are `±` the singular values of `A`.
fn propose(rng: &mut SearchRng, q: usize) -> HermitianMatrix {
    if q < 4 {
        return random_with_signature(rng, q, q.div_ceil(2), q / 2);
    }
    loop {
        let cand = if rng.gen_bool(0.5) {
            let plus = rng.gen_range(2..=q - 2);
            random_with_signature(rng, q, plus, q - plus)
        } else {
            let split = rng.gen_range(2..=q - 2);
            HermitianMatrix::from_upper(q, |i, j| {
                if i < split && j >= split {
                    random_gaussian(rng, 6, 2)
                } else {
                    GaussianRational::default()
                }
            })
        };
        if minimal_inertia(&cand) >= 2 {
            return cand;
        }
    }
}
