//! Degree of the projective locus of q×q matrices of rank ≤ 2, and its
//! parity.
//!
//! The degree is
//!
//! ```text
//!   ∏_{j=0}^{q-3} C(q+j, q-2) / C(q-2+j, q-2)  =  ∏_{j=0}^{q-3} (q+j-1)(q+j) / ((j+1)(j+2))
//! ```
//!
//! and it is odd exactly when `q − 2` and `q − 1` share no binary digit,
//! i.e. when `q = 2ᵏ + 1`.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::strata::two_power_exponent;

/// Largest `q` for which [`parity_record`] materializes the degree.
pub const MATERIALIZE_LIMIT: u64 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub q: u64,
    /// Decimal digits of the degree; `None` above [`MATERIALIZE_LIMIT`] or
    /// when only parity was requested.
    pub degree: Option<String>,
    /// 2-adic valuation of the degree.
    pub v2: u64,
    pub is_odd: bool,
    pub q_is_2k_plus_1: bool,
    pub k: Option<u32>,
}

fn check_q(q: u64) -> Result<()> {
    if q < 3 {
        return Err(Error::invalid(format!("degree needs q >= 3, got {q}")));
    }
    Ok(())
}

/// Product form, accumulated as an exact rational.
pub fn degree_product_form(q: u64) -> Result<BigUint> {
    check_q(q)?;
    let mut acc = Rational::one();
    for j in 0..=q - 3 {
        let num = BigInt::from(q + j - 1) * BigInt::from(q + j);
        let den = BigInt::from(j + 1) * BigInt::from(j + 2);
        acc *= Rational::new(num, den);
    }
    into_natural(acc)
}

/// Binomial-ratio form, each binomial computed exactly.
pub fn degree_binomial_form(q: u64) -> Result<BigUint> {
    check_q(q)?;
    let mut acc = Rational::one();
    for j in 0..=q - 3 {
        let top: BigUint = binomial(BigUint::from(q + j), BigUint::from(q - 2));
        let bottom: BigUint = binomial(BigUint::from(q - 2 + j), BigUint::from(q - 2));
        acc *= Rational::new(top.into(), bottom.into());
    }
    into_natural(acc)
}

fn into_natural(r: Rational) -> Result<BigUint> {
    if !r.is_integer() {
        return Err(Error::inconsistency(format!("degree product is not an integer: {r}")));
    }
    r.to_integer()
        .to_biguint()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| Error::inconsistency("degree product is not positive"))
}

/// True iff `a` and `b` have no binary digit in common.
pub fn binary_disjoint(a: u64, b: u64) -> bool {
    a & b == 0
}

/// `v₂(n!) = n − s₂(n)` (Legendre).
pub fn v2_factorial(n: u64) -> u64 {
    n - u64::from(n.count_ones())
}

/// 2-adic valuation of the degree without materializing it.
///
/// The product telescopes to `(2q−4)!·(2q−3)! / ((q−2)!²·(q−1)!²)`, and
/// Legendre's formula gives the valuation of each factorial.
pub fn degree_v2(q: u64) -> Result<u64> {
    check_q(q)?;
    let up = v2_factorial(2 * q - 4) + v2_factorial(2 * q - 3);
    let down = 2 * v2_factorial(q - 2) + 2 * v2_factorial(q - 1);
    up.checked_sub(down)
        .ok_or_else(|| Error::inconsistency(format!("negative 2-adic valuation at q={q}")))
}

/// Degree, valuation and the three-way parity equivalence for one `q`.
/// The degree itself is materialized when `materialize` is set and
/// `q ≤ MATERIALIZE_LIMIT`.
pub fn parity_record_with(q: u64, materialize: bool) -> Result<DegreeRecord> {
    check_q(q)?;
    let v2 = degree_v2(q)?;
    let is_odd = v2 == 0;
    let k = two_power_exponent(q);
    let q_is_2k_plus_1 = k.is_some();
    let disjoint = binary_disjoint(q - 2, q - 1);
    if is_odd != disjoint || disjoint != q_is_2k_plus_1 {
        return Err(Error::inconsistency(format!(
            "parity law fails at q={q}: odd={is_odd}, disjoint={disjoint}, 2^k+1={q_is_2k_plus_1}"
        )));
    }
    let degree = if materialize && q <= MATERIALIZE_LIMIT {
        let d = degree_product_form(q)?;
        let tz = d.trailing_zeros().unwrap_or(0);
        if tz != v2 {
            return Err(Error::inconsistency(format!(
                "materialized degree has v2={tz}, valuation formula gives {v2} at q={q}"
            )));
        }
        Some(d.to_string())
    } else {
        None
    };
    Ok(DegreeRecord { q, degree, v2, is_odd, q_is_2k_plus_1, k })
}

pub fn parity_record(q: u64) -> Result<DegreeRecord> {
    parity_record_with(q, true)
}

/// Checks the parity law for every `q` in `lo..=hi`, split across rayon's
/// pool. Returns the number of `q` with odd degree.
pub fn parity_sweep(lo: u64, hi: u64) -> Result<u64> {
    let lo = lo.max(3);
    if hi < lo {
        return Ok(0);
    }
    (lo..=hi)
        .into_par_iter()
        .map(|q| parity_record_with(q, false).map(|r| u64::from(r.is_odd)))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Kummer: v₂(C(n, k)) is the number of carries adding k and n − k in
    /// base 2, i.e. s₂(k) + s₂(n−k) − s₂(n). Summed factor by factor.
    fn v2_by_carries(q: u64) -> i64 {
        let s = |n: u64| i64::from(n.count_ones());
        let v2c = |n: u64, k: u64| s(k) + s(n - k) - s(n);
        (0..=q - 3).map(|j| v2c(q + j, q - 2) - v2c(q - 2 + j, q - 2)).sum()
    }

    #[test]
    fn small_values() {
        assert_eq!(degree_product_form(3).unwrap(), BigUint::from(3u32));
        assert_eq!(degree_product_form(4).unwrap(), BigUint::from(20u32));
        assert_eq!(degree_product_form(5).unwrap(), BigUint::from(175u32));
        assert_eq!(degree_binomial_form(3).unwrap(), BigUint::from(3u32));
        assert_eq!(degree_binomial_form(5).unwrap(), BigUint::from(175u32));
        assert!(matches!(degree_product_form(2), Err(Error::InvalidInput(_))));
        assert!(matches!(parity_record(1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn forms_agree_and_grow() {
        let mut prev = BigUint::zero();
        for q in 3..=40 {
            let p = degree_product_form(q).unwrap();
            assert_eq!(p, degree_binomial_form(q).unwrap(), "q={q}");
            assert!(p > prev);
            prev = p;
        }
        let d9 = degree_binomial_form(9).unwrap();
        assert_eq!(d9, degree_product_form(9).unwrap());
        assert!(d9.bit(0));
    }

    #[test]
    fn binary_disjointness() {
        assert!(binary_disjoint(3, 4));
        assert!(!binary_disjoint(4, 5));
        for n in 0..100 {
            assert!(binary_disjoint(0, n));
        }
    }

    #[test]
    fn records() {
        let r = parity_record(5).unwrap();
        assert_eq!(r.degree.as_deref(), Some("175"));
        assert!(r.is_odd && r.q_is_2k_plus_1);
        assert_eq!(r.k, Some(2));
        let r = parity_record(6).unwrap();
        assert!(!r.is_odd && !r.q_is_2k_plus_1 && r.k.is_none());
        let r = parity_record(9).unwrap();
        assert!(r.is_odd);
        assert_eq!(r.k, Some(3));
        assert!(parity_record(MATERIALIZE_LIMIT + 1).unwrap().degree.is_none());
    }

    #[test]
    fn valuation_matches_carry_count_and_materialized_degree() {
        for q in 3..=MATERIALIZE_LIMIT {
            let v = degree_v2(q).unwrap();
            assert_eq!(v as i64, v2_by_carries(q), "q={q}");
            let d = degree_product_form(q).unwrap();
            assert_eq!(d.trailing_zeros().unwrap(), v, "q={q}");
        }
        for q in (1000..200_000).step_by(997) {
            assert_eq!(degree_v2(q).unwrap() as i64, v2_by_carries(q));
        }
    }

    #[test]
    fn sweep_counts_powers_of_two() {
        // q - 1 in {2, 4, 8, ..., 512}
        assert_eq!(parity_sweep(3, 1000).unwrap(), 9);
    }
}
