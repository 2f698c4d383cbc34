//! Membership in the rank-≤2 determinantal strata of Hermitian matrices and
//! in the cones over them with vertex at the identity.
//!
//! All labels are defined through rank and sign counts, which are invariant
//! under nonzero scaling, so they are labels of projective points `⟨X⟩`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{rational, Rational, RationalPolynomial};
use crate::hermitian::{characteristic_polynomial, inertia, HermitianMatrix, Inertia};

/// Smallest size for which the cone classification is supported. Below it
/// two distinct eigenvalues can both have multiplicity `≥ q − 2`.
pub const MIN_CONE_SIZE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum D2Label {
    /// Semidefinite of rank exactly 2.
    #[serde(rename = "D0_only")]
    D0Only,
    /// Signature `(1,1)`.
    #[serde(rename = "D1_only")]
    D1Only,
    /// Rank 1: the intersection of the two components.
    #[serde(rename = "D0_and_D1")]
    D0AndD1,
    #[serde(rename = "NotInD2")]
    NotInD2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumLabel {
    pub in_d2: bool,
    pub label: D2Label,
}

impl StratumLabel {
    fn from_inertia(i: &Inertia) -> Self {
        let label = match (i.rank(), i.minimal()) {
            (0, _) => unreachable!("zero matrix rejected earlier"),
            (1, _) => D2Label::D0AndD1,
            (2, 1) => D2Label::D1Only,
            (2, _) => D2Label::D0Only,
            _ => D2Label::NotInD2,
        };
        Self { in_d2: label != D2Label::NotInD2, label }
    }

    /// The closure of the signature-(1,1) locus: rank ≤ 2 with `n₊ ≤ 1`,
    /// `n₋ ≤ 1`.
    pub fn in_d1(&self) -> bool {
        matches!(self.label, D2Label::D1Only | D2Label::D0AndD1)
    }

    pub fn in_d0(&self) -> bool {
        matches!(self.label, D2Label::D0Only | D2Label::D0AndD1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConeKind {
    C1,
    C0,
    Vertex,
    BothBoundary,
    NotInC2,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConeLabel {
    pub label: ConeKind,
    /// The eigenvalue `s` of multiplicity `≥ q − 2`, when there is one.
    #[serde(with = "rational::opt_text")]
    pub apex_shift: Option<Rational>,
}

pub fn classify_d2(x: &HermitianMatrix) -> Result<StratumLabel> {
    let i = inertia(x);
    if i.rank() == 0 {
        return Err(Error::NotProjectivePoint);
    }
    Ok(StratumLabel::from_inertia(&i))
}

/// The unique rational eigenvalue of multiplicity `≥ q − 2`, if any.
///
/// Takes `g = gcd(p, p', …, p^(q−3))` of the characteristic polynomial; for
/// `q ≥ 5` at most one eigenvalue can reach that multiplicity, so a
/// nonconstant `g` is `(x − s)^e`. The answer is checked by
/// `rank(X − sI) ≤ 2`.
pub fn eigenvalue_of_high_multiplicity(x: &HermitianMatrix) -> Result<Option<Rational>> {
    let q = x.q();
    if q < MIN_CONE_SIZE {
        return Err(Error::UnsupportedSize {
            q,
            reason: "high-multiplicity eigenvalue is only unique for q >= 5",
        });
    }
    let p = characteristic_polynomial(x)?;
    let g = p.gcd_tower(q - 3)?;
    let e = g.degree().expect("gcd tower of a nonzero polynomial is nonzero");
    if e == 0 {
        return Ok(None);
    }
    // g is monic, so g = (x - s)^e gives coefficient of x^(e-1) equal to -e·s
    let s = -&g.coeffs()[e - 1] / rational::from_i64(e as i64);
    if g != RationalPolynomial::linear(s.clone()).pow(e as u32) {
        return Err(Error::inconsistency(format!(
            "gcd tower {g} is not a power of a linear factor"
        )));
    }
    if inertia(&x.shift(&s)).rank() > 2 {
        return Err(Error::inconsistency(format!(
            "eigenvalue {} has multiplicity < q-2 after all",
            rational::format_rational(&s)
        )));
    }
    Ok(Some(s))
}

/// Locates `⟨X⟩` relative to the real cone `C₀ ∪ C₁` over the strata with
/// vertex `⟨I⟩`.
pub fn classify_cone(x: &HermitianMatrix) -> Result<ConeLabel> {
    if x.q() < MIN_CONE_SIZE {
        return Err(Error::UnsupportedSize { q: x.q(), reason: "cone classification needs q >= 5" });
    }
    if x.is_zero() {
        return Err(Error::NotProjectivePoint);
    }
    if x.is_scalar() {
        return Ok(ConeLabel { label: ConeKind::Vertex, apex_shift: Some(x.get(0, 0).re.clone()) });
    }
    let Some(s) = eigenvalue_of_high_multiplicity(x)? else {
        return Ok(ConeLabel { label: ConeKind::NotInC2, apex_shift: None });
    };
    let y = inertia(&x.shift(&s));
    let label = match (y.rank(), y.minimal()) {
        (1, _) => ConeKind::BothBoundary,
        (2, 1) => ConeKind::C1,
        (2, 0) => ConeKind::C0,
        _ => {
            return Err(Error::inconsistency(format!(
                "shifted matrix of a non-scalar cone point has inertia {y:?}"
            )))
        }
    };
    Ok(ConeLabel { label, apex_shift: Some(s) })
}

/// Largest dimension of a real subspace of q×q Hermitian matrices whose
/// nonzero elements all have at least two positive and two negative
/// eigenvalues: `q² − (4q − 3)`, for `q = 2ᵏ + 1` with `k ≥ 2`.
pub fn subspace_dimension_limit(q: u64) -> Result<u64> {
    match two_power_exponent(q) {
        Some(k) if k >= 2 => Ok(q * q - (4 * q - 3)),
        _ => Err(Error::HypothesisNotMet(format!(
            "q = {q} is not of the form 2^k + 1 with k >= 2"
        ))),
    }
}

/// `k` with `q = 2ᵏ + 1`, if any.
pub fn two_power_exponent(q: u64) -> Option<u32> {
    let m = q.checked_sub(1)?;
    m.is_power_of_two().then(|| m.trailing_zeros())
}

/// Dimension of the rank-≤2 locus (complex dimension, which equals the real
/// dimension of its Hermitian points).
pub const fn d2_dimension(q: u64) -> u64 {
    4 * q - 5
}

/// Dimension of the cone over the rank-≤2 locus with vertex at the identity.
pub const fn c2_dimension(q: u64) -> u64 {
    4 * q - 4
}

/// Combined report as emitted by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub q: usize,
    pub inertia: Inertia,
    pub d2: D2Label,
    pub cone: Option<ConeKind>,
    #[serde(with = "rational::opt_text")]
    pub apex_shift: Option<Rational>,
    pub d2_dimension: u64,
}

pub fn classify(x: &HermitianMatrix, with_cone: bool) -> Result<Classification> {
    let d2 = classify_d2(x)?;
    let (cone, apex_shift) = if with_cone {
        let c = classify_cone(x)?;
        (Some(c.label), c.apex_shift)
    } else {
        (None, None)
    };
    Ok(Classification {
        q: x.q(),
        inertia: inertia(x),
        d2: d2.label,
        cone,
        apex_shift,
        d2_dimension: d2_dimension(x.q() as u64),
    })
}

impl ConeLabel {
    pub fn is_in_c2(&self) -> bool {
        self.label != ConeKind::NotInC2
    }

    pub fn shift_is_zero(&self) -> bool {
        self.apex_shift.as_ref().is_some_and(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{from_i64, ratio};
    use crate::hermitian::minimal_inertia;
    use crate::random::{random_hermitian, random_with_signature, rng_for};

    fn d(v: &[i64]) -> HermitianMatrix {
        HermitianMatrix::diagonal_i64(v)
    }

    #[test]
    fn d2_labels() {
        assert_eq!(classify_d2(&d(&[1, -1, 0, 0, 0])).unwrap().label, D2Label::D1Only);
        assert_eq!(classify_d2(&d(&[1, 1, 0, 0, 0])).unwrap().label, D2Label::D0Only);
        let rank_one = classify_d2(&d(&[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(rank_one.label, D2Label::D0AndD1);
        assert!(rank_one.in_d0() && rank_one.in_d1());
        let outside = classify_d2(&d(&[1, 1, 1, 0, 0])).unwrap();
        assert_eq!(outside.label, D2Label::NotInD2);
        assert!(!outside.in_d2);
        assert_eq!(classify_d2(&HermitianMatrix::zero(5)), Err(Error::NotProjectivePoint));
    }

    #[test]
    fn high_multiplicity_eigenvalue() {
        assert_eq!(eigenvalue_of_high_multiplicity(&d(&[2, 1, 1, 1, 0])).unwrap(), Some(from_i64(1)));
        assert_eq!(eigenvalue_of_high_multiplicity(&d(&[1, 2, 3, 4, 5])).unwrap(), None);
        let seven = HermitianMatrix::scalar(5, from_i64(7));
        assert_eq!(eigenvalue_of_high_multiplicity(&seven).unwrap(), Some(from_i64(7)));
        assert!(matches!(
            eigenvalue_of_high_multiplicity(&d(&[1, 1, 2, 2])),
            Err(Error::UnsupportedSize { q: 4, .. })
        ));
    }

    #[test]
    fn cone_labels() {
        let c = classify_cone(&d(&[2, 1, 1, 1, 0])).unwrap();
        assert_eq!(c, ConeLabel { label: ConeKind::C1, apex_shift: Some(from_i64(1)) });
        assert_eq!(minimal_inertia(&d(&[2, 1, 1, 1, 0])), 0);
        assert_eq!(classify_cone(&d(&[3, 2, 1, 1, 1])).unwrap().label, ConeKind::C0);
        assert_eq!(classify_cone(&d(&[2, 1, 1, 1, 1])).unwrap().label, ConeKind::BothBoundary);
        assert_eq!(classify_cone(&HermitianMatrix::identity(5)).unwrap().label, ConeKind::Vertex);
        assert_eq!(classify_cone(&d(&[1, 2, 3, 4, 5])).unwrap().label, ConeKind::NotInC2);
        assert_eq!(classify_cone(&HermitianMatrix::zero(6)), Err(Error::NotProjectivePoint));
    }

    #[test]
    fn cone_points_with_rational_shift_and_dense_entries() {
        let mut rng = rng_for(77, 0);
        for q in 5..=6 {
            for _ in 0..15 {
                let y = random_with_signature(&mut rng, q, 1, 1);
                if inertia(&y).rank() != 2 {
                    continue;
                }
                let s = ratio(-5, 3);
                let x = y.scale(&ratio(2, 7)).shift(&-&s);
                let c = classify_cone(&x).unwrap();
                assert_eq!(c.label, ConeKind::C1);
                assert_eq!(c.apex_shift, Some(s));
                assert!(minimal_inertia(&x) <= 1);
            }
            for _ in 0..5 {
                let x = random_hermitian(&mut rng, q, 5, 2);
                assert_eq!(classify_cone(&x).unwrap().label, ConeKind::NotInC2);
            }
        }
    }

    #[test]
    fn dimension_limit() {
        assert_eq!(subspace_dimension_limit(5).unwrap(), 8);
        assert_eq!(subspace_dimension_limit(9).unwrap(), 48);
        assert!(matches!(subspace_dimension_limit(6), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(subspace_dimension_limit(3), Err(Error::HypothesisNotMet(_))));
        assert_eq!(two_power_exponent(17), Some(4));
        assert_eq!(two_power_exponent(1), None);
        assert_eq!(d2_dimension(5), 15);
        assert_eq!(c2_dimension(5), 16);
    }

    #[test]
    fn labels_serialize_by_name() {
        let s = serde_json::to_string(&D2Label::D0AndD1).unwrap();
        assert_eq!(s, "\"D0_and_D1\"");
        let c = classify(&d(&[2, 1, 1, 1, 0]), true).unwrap();
        let js = serde_json::to_string(&c).unwrap();
        assert!(js.contains("\"cone\":\"C1\"") && js.contains("\"apex_shift\":\"1\""));
        assert_eq!(serde_json::from_str::<Classification>(&js).unwrap(), c);
    }
}
