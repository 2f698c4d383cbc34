//! Randomized falsifier and explorer for real subspaces `L` of q×q Hermitian
//! matrices in which every nonzero element has at least two positive and two
//! negative eigenvalues (minimal inertia ≥ 2).
//!
//! Sampling and descent run in double precision. Every decision that is
//! reported (a witness, a histogram entry near a sign boundary, a spot
//! check) is re-derived exactly over `ℚ(i)`. Nothing here certifies that a
//! subspace *has* the property; absence of a witness is inconclusive.

mod falsify;
mod float;
mod grow;
mod profile;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rational::{self, Rational};
use crate::hermitian::{inertia, EchelonForm, HermitianMatrix, Inertia};
use crate::random::{random_hermitian, rng_for};

pub use falsify::{falsify_min_inertia, FalsifyOutcome};
pub use grow::{grow_subspace, GrowReport, GrowStep};
pub use profile::{empirical_min_inertia_profile, Profile};

/// Stream tags keep the RNG streams of different phases disjoint.
pub(crate) mod stream {
    pub const SUBSPACE: u64 = 1 << 60;
    pub const SAMPLE: u64 = 2 << 60;
    pub const DESCENT: u64 = 3 << 60;
    pub const PROFILE: u64 = 4 << 60;
    pub const GROW: u64 = 5 << 60;
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub seed: u64,
    /// Random elements drawn by the falsifier and by the histogram.
    pub samples: usize,
    /// Coordinate-ascent sweeps per descent start.
    pub descent_steps: usize,
    /// How many of the best samples seed a descent.
    pub descent_starts: usize,
    /// Relative eigenvalue magnitude below which the float sign is not
    /// trusted and exact arithmetic decides.
    pub float_tolerance: f64,
    pub workers: usize,
    /// Denominator cap for rounding float coefficients to rationals.
    pub denominator_cap: u64,
    /// Every n-th histogram sample is re-checked exactly (0 disables).
    pub spot_check_every: usize,
    /// Proposals tried per dimension by [`grow_subspace`].
    pub grow_proposals: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 2048,
            descent_steps: 60,
            descent_starts: 16,
            float_tolerance: 1e-9,
            workers: 1,
            denominator_cap: 1 << 16,
            spot_check_every: 32,
            grow_proposals: 24,
        }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::invalid("samples must be at least 1"));
        }
        if !(self.float_tolerance > 0.0 && self.float_tolerance.is_finite()) {
            return Err(Error::invalid("float tolerance must be positive"));
        }
        if self.denominator_cap == 0 {
            return Err(Error::invalid("denominator cap must be at least 1"));
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .expect("thread pool")
    }
}

/// Real-linearly independent Hermitian matrices spanning `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BasisJson", into = "BasisJson")]
pub struct SubspaceBasis {
    q: usize,
    basis: Vec<HermitianMatrix>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisJson {
    pub q: usize,
    pub basis: Vec<HermitianMatrix>,
}

impl TryFrom<BasisJson> for SubspaceBasis {
    type Error = Error;
    fn try_from(raw: BasisJson) -> Result<Self> {
        if raw.basis.is_empty() {
            return Ok(Self::empty(raw.q));
        }
        Self::new(raw.basis)
    }
}

impl From<SubspaceBasis> for BasisJson {
    fn from(b: SubspaceBasis) -> Self {
        BasisJson { q: b.q, basis: b.basis }
    }
}

impl SubspaceBasis {
    pub fn new(basis: Vec<HermitianMatrix>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(Error::invalid("a subspace basis needs at least one matrix"));
        };
        let q = first.q();
        if basis.iter().any(|m| m.q() != q) {
            return Err(Error::invalid("basis matrices differ in size"));
        }
        if basis.len() > q * q {
            return Err(Error::invalid(format!("{} matrices cannot be independent in dimension {}", basis.len(), q * q)));
        }
        let mut ech = EchelonForm::new();
        if !basis.iter().all(|m| ech.insert(m.real_coordinates())) {
            return Err(Error::invalid("basis matrices are linearly dependent over the reals"));
        }
        Ok(Self { q, basis })
    }

    /// The zero subspace; only produced by growth with target 0.
    pub fn empty(q: usize) -> Self {
        Self { q, basis: Vec::new() }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrices(&self) -> &[HermitianMatrix] {
        &self.basis
    }

    pub fn element(&self, coeffs: &[Rational]) -> HermitianMatrix {
        HermitianMatrix::linear_combination(coeffs, &self.basis)
    }

    /// Appends `m` if it keeps the basis independent.
    pub fn extended(&self, m: HermitianMatrix) -> Option<Self> {
        let mut basis = self.basis.clone();
        basis.push(m);
        Self::new(basis).ok()
    }
}

/// `dim` independent random Hermitian matrices with bounded-denominator
/// rational entries. Dependent draws are rejected and redrawn.
pub fn random_subspace(q: usize, dim: usize, seed: u64) -> Result<SubspaceBasis> {
    if q == 0 || dim == 0 || dim > q * q {
        return Err(Error::invalid(format!("subspace dimension {dim} is outside [1, {}]", q * q)));
    }
    let mut rng = rng_for(seed, stream::SUBSPACE);
    let mut basis: Vec<HermitianMatrix> = Vec::with_capacity(dim);
    let mut ech = EchelonForm::new();
    while basis.len() < dim {
        let m = random_hermitian(&mut rng, q, 9, 4);
        if ech.insert(m.real_coordinates()) {
            basis.push(m);
        }
    }
    Ok(SubspaceBasis { q, basis })
}

/// A nonzero element of `L` with minimal inertia ≤ 1, exactly certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(with = "rational::vec_text")]
    pub coefficients: Vec<Rational>,
    pub element: HermitianMatrix,
    pub inertia: Inertia,
}

impl Witness {
    /// Exact certification of a coefficient vector; `None` unless the
    /// element is nonzero with minimal inertia ≤ 1.
    pub fn certify(basis: &SubspaceBasis, coefficients: Vec<Rational>) -> Option<Self> {
        let element = basis.element(&coefficients);
        if element.is_zero() {
            return None;
        }
        let inertia = inertia(&element);
        (inertia.minimal() <= 1).then_some(Self { coefficients, element, inertia })
    }

    /// Recomputes element and inertia from scratch.
    pub fn verify(&self, basis: &SubspaceBasis) -> Result<()> {
        if self.coefficients.len() != basis.dim() {
            return Err(Error::invalid("witness has the wrong number of coefficients"));
        }
        let element = basis.element(&self.coefficients);
        if element != self.element {
            return Err(Error::inconsistency("witness element is not the stated combination"));
        }
        if element.is_zero() {
            return Err(Error::inconsistency("witness element is zero"));
        }
        let i = inertia(&element);
        if i != self.inertia || i.minimal() > 1 {
            return Err(Error::inconsistency(format!("witness inertia {i:?} does not certify")));
        }
        Ok(())
    }
}

/// CLI report for `search`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub q: usize,
    pub dim: usize,
    pub seed: u64,
    pub witness: Option<Witness>,
    pub samples_used: usize,
    pub histogram: Option<Profile>,
    /// `q² − (4q − 3)` when `q = 2ᵏ + 1`, `k ≥ 2`.
    pub dimension_limit: Option<u64>,
    pub certified_property: bool,
    pub note: String,
}

pub fn search_report(basis: &SubspaceBasis, cfg: &SearchConfig, with_histogram: bool) -> Result<SearchReport> {
    cfg.validate()?;
    let out = falsify_min_inertia(basis, cfg)?;
    let histogram = with_histogram.then(|| empirical_min_inertia_profile(basis, cfg)).transpose()?;
    let limit = crate::strata::subspace_dimension_limit(basis.q() as u64).ok();
    let note = match (&out.witness, limit) {
        (Some(_), _) => "witness found: the subspace does not have minimal inertia >= 2 throughout".into(),
        (None, Some(l)) if basis.dim() as u64 > l => {
            format!("inconclusive, although dimension {} exceeds the limit {l}; the search budget was too small", basis.dim())
        }
        (None, Some(_)) => "inconclusive: no witness found (not a certificate)".into(),
        (None, None) => "inconclusive: no witness found (not a certificate); no direct dimension bound for this q".into(),
    };
    Ok(SearchReport {
        q: basis.q(),
        dim: basis.dim(),
        seed: cfg.seed,
        witness: out.witness,
        samples_used: out.samples_used,
        histogram,
        dimension_limit: limit,
        certified_property: false,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_subspace_shapes() {
        let b = random_subspace(5, 8, 1).unwrap();
        assert_eq!(b.dim(), 8);
        let full = random_subspace(3, 9, 2).unwrap();
        assert_eq!(full.dim(), 9);
        assert!(random_subspace(5, 26, 3).is_err());
        assert!(random_subspace(5, 0, 3).is_err());
        assert_eq!(random_subspace(4, 5, 9).unwrap(), random_subspace(4, 5, 9).unwrap());
    }

    #[test]
    fn basis_rejects_dependence() {
        let a = HermitianMatrix::diagonal_i64(&[1, 0]);
        let b = HermitianMatrix::diagonal_i64(&[2, 0]);
        assert!(SubspaceBasis::new(vec![a.clone(), b]).is_err());
        assert!(SubspaceBasis::new(vec![]).is_err());
        let s = SubspaceBasis::new(vec![a]).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<SubspaceBasis>(&js).unwrap(), s);
    }
}
