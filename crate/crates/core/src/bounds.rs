//! Lower bounds for `h^{1,1}` of a smooth projective surface of general type
//! with irregularity `q`, the surface-invariant identities behind them, and a
//! small catalog of known surfaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::strata::two_power_exponent;

/// A fibration of the surface over a curve of genus `b ≥ 1`, with the number
/// of irreducible components of each listed fiber.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PencilData {
    pub b: u64,
    #[serde(default)]
    pub fiber_component_counts: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assumptions {
    pub q: u64,
    #[serde(default)]
    pub p_g: Option<u64>,
    #[serde(default)]
    pub no_irregular_pencils_genus_ge2: bool,
    #[serde(default)]
    pub pencil: Option<PencilData>,
    #[serde(default)]
    pub minimal_surface: bool,
}

impl Assumptions {
    pub fn new(q: u64) -> Self {
        Self { q, p_g: None, no_irregular_pencils_genus_ge2: false, pencil: None, minimal_surface: false }
    }

    pub fn no_pencils(q: u64) -> Self {
        Self { no_irregular_pencils_genus_ge2: true, ..Self::new(q) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 1 {
            return Err(Error::invalid("q must be at least 1"));
        }
        if let Some(p) = &self.pencil {
            check_pencil(self.q, p)?;
            if p.b >= 2 && self.no_irregular_pencils_genus_ge2 {
                return Err(Error::invalid(format!(
                    "a pencil of genus {} contradicts the no-irregular-pencils assumption",
                    p.b
                )));
            }
        }
        Ok(())
    }
}

fn check_pencil(q: u64, p: &PencilData) -> Result<()> {
    if p.b < 1 || p.b > q {
        return Err(Error::invalid(format!("pencil genus b={} must lie in [1, q={q}]", p.b)));
    }
    if p.fiber_component_counts.contains(&0) {
        return Err(Error::invalid("every fiber has at least one component"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub value: Option<i64>,
    pub applicable: bool,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub q: u64,
    pub assumptions: Assumptions,
    pub bounds: Vec<BoundEntry>,
    pub best: i64,
    /// Every applicable bound attaining `best`.
    pub best_names: Vec<String>,
}

pub const BMY: &str = "bmy";
pub const GENERAL_TYPE: &str = "general_type";
pub const ODD_Q: &str = "odd_q";
pub const PENCIL: &str = "pencil";
pub const TWO_POWER: &str = "two_power";
pub const TWO_POWER_OFFSET: &str = "two_power_offset";

/// `p_g + q + 1`, from `c₂ ≥ 3χ` and `c₂ = 2 − 4q + 2p_g + h^{1,1}`.
pub fn bmy_bound(p_g: u64, q: u64) -> i64 {
    (p_g + q + 1) as i64
}

/// `3q − 2`, valid for every surface of general type.
pub fn general_bound(q: u64) -> i64 {
    3 * q as i64 - 2
}

/// `3q − 1` for odd `q` without irregular pencils of genus ≥ 2.
pub fn odd_q_bound(q: u64, no_pencils: bool) -> Option<i64> {
    (no_pencils && q % 2 == 1).then(|| 3 * q as i64 - 1)
}

/// `2b(q − b) + 2 + Σ (l(F) − 1)` for a pencil of genus `b`.
pub fn pencil_bound(q: u64, pencil: &PencilData) -> Result<i64> {
    check_pencil(q, pencil)?;
    let (q, b) = (q as i64, pencil.b as i64);
    let extra: i64 = pencil.fiber_component_counts.iter().map(|&l| l as i64 - 1).sum();
    Ok(2 * b * (q - b) + 2 + extra)
}

/// `4q − 3` when `q = 2ᵏ + 1` and there are no irregular pencils of
/// genus ≥ 2.
pub fn two_power_bound(q: u64, no_pencils: bool) -> Option<i64> {
    (no_pencils && two_power_exponent(q).is_some()).then(|| 4 * q as i64 - 3)
}

/// `(k, ε)` with `q = 2ᵏ + 1 + ε` and `0 < ε < 2ᵏ`.
pub fn two_power_offset(q: u64) -> Option<(u32, u64)> {
    if q < 4 || two_power_exponent(q).is_some() {
        return None;
    }
    let k = 63 - (q - 1).leading_zeros();
    let eps = q - (1u64 << k) - 1;
    (eps > 0 && eps < (1u64 << k)).then_some((k, eps))
}

/// `4q − 3 − 4ε` for `q = 2ᵏ + 1 + ε`, `0 < ε < 2ᵏ`, obtained by restricting
/// to the leading `(q − ε)`-block.
pub fn epsilon_bound(q: u64, no_pencils: bool) -> Option<i64> {
    if !no_pencils {
        return None;
    }
    two_power_offset(q).map(|(_, eps)| 4 * q as i64 - 3 - 4 * eps as i64)
}

fn entry(name: &str, value: Option<i64>, provenance: impl Into<String>) -> BoundEntry {
    BoundEntry { name: name.to_string(), value, applicable: value.is_some(), provenance: provenance.into() }
}

/// Evaluates every bound whose hypotheses hold and reports the maximum.
pub fn best_bound(a: &Assumptions) -> Result<BoundReport> {
    a.validate()?;
    let q = a.q;
    let np = a.no_irregular_pencils_genus_ge2;
    let mut bounds = vec![
        entry(
            BMY,
            a.p_g.map(|pg| bmy_bound(pg, q)),
            "c2 >= 3 chi (Bogomolov-Miyaoka-Yau) with c2 = 2 - 4q + 2p_g + h11; needs p_g",
        ),
        entry(
            GENERAL_TYPE,
            Some(general_bound(q)),
            "every surface of general type: p_g >= 2q - 4 (Beauville) with the BMY bound",
        ),
        entry(
            ODD_Q,
            odd_q_bound(q, np),
            "Lazarsfeld-Popa: q odd, no irregular pencils of genus >= 2",
        ),
        entry(
            PENCIL,
            a.pencil.as_ref().map(|p| pencil_bound(q, p)).transpose()?,
            "irregular pencil of genus b: 2b(q-b) + 2 + sum(l(F) - 1)",
        ),
        entry(
            TWO_POWER,
            two_power_bound(q, np),
            if q == 3 || q == 5 {
                "q = 2^k + 1, no irregular pencils of genus >= 2 (case known previously)"
            } else {
                "q = 2^k + 1, no irregular pencils of genus >= 2"
            },
        ),
        entry(
            TWO_POWER_OFFSET,
            epsilon_bound(q, np),
            match two_power_offset(q) {
                Some((k, eps)) => format!(
                    "q = 2^{k} + 1 + {eps}: leading {}x{} block, no irregular pencils of genus >= 2",
                    q - eps,
                    q - eps
                ),
                None => "q = 2^k + 1 + eps with 0 < eps < 2^k".to_string(),
            },
        ),
    ];
    bounds.sort_by_key(|b| std::cmp::Reverse(b.applicable));
    let best = bounds
        .iter()
        .filter_map(|b| b.value)
        .max()
        .expect("the general-type bound always applies");
    let best_names = bounds
        .iter()
        .filter(|b| b.value == Some(best))
        .map(|b| b.name.clone())
        .collect();
    Ok(BoundReport { q, assumptions: a.clone(), bounds, best, best_names })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub chi: i64,
    pub c2: i64,
    #[serde(rename = "K2")]
    pub k2: i64,
}

/// `χ = 1 − q + p_g`, `c₂ = 2 − 4q + 2p_g + h^{1,1}`, and `K² = 12χ − c₂`
/// (Noether).
pub fn surface_identities(q: u64, p_g: u64, h11: u64) -> SurfaceInvariants {
    let (q, p_g, h11) = (q as i64, p_g as i64, h11 as i64);
    let chi = 1 - q + p_g;
    let c2 = 2 - 4 * q + 2 * p_g + h11;
    SurfaceInvariants { chi, c2, k2: 12 * chi - c2 }
}

/// Numerical chain for a minimal surface with `p_g = 2q − 3` and
/// `q = 2ᵏ + 1`, `k ≥ 3`: the `4q − 3` bound forces `K² ≤ 8q − 17 < 8χ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSquareCheck {
    pub q: u64,
    pub p_g: u64,
    pub chi: i64,
    pub h11_min: i64,
    pub c2_min: i64,
    pub k2_upper: i64,
    pub eight_chi: i64,
    pub strict: bool,
}

pub fn k2_chi_check(q: u64) -> Result<CanonicalSquareCheck> {
    match two_power_exponent(q) {
        Some(k) if k >= 3 => {}
        _ => {
            return Err(Error::HypothesisNotMet(format!(
                "q = {q} is not of the form 2^k + 1 with k >= 3"
            )))
        }
    }
    let p_g = 2 * q - 3;
    let h11_min = two_power_bound(q, true).expect("q = 2^k + 1");
    // c2 = 2 - 4q + 2p_g + h11 = h11 - 4 when p_g = 2q - 3
    let inv = surface_identities(q, p_g, h11_min as u64);
    let eight_chi = 8 * inv.chi;
    Ok(CanonicalSquareCheck {
        q,
        p_g,
        chi: inv.chi,
        h11_min,
        c2_min: inv.c2,
        k2_upper: inv.k2,
        eight_chi,
        strict: inv.k2 < eight_chi,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub name: String,
    pub q: u64,
    pub p_g: Option<u64>,
    pub h11: u64,
    pub no_irregular_pencils_genus_ge2: bool,
    pub pencil: Option<PencilData>,
    pub note: String,
}

impl SurfaceRecord {
    pub fn assumptions(&self) -> Assumptions {
        Assumptions {
            q: self.q,
            p_g: self.p_g,
            no_irregular_pencils_genus_ge2: self.no_irregular_pencils_genus_ge2,
            pencil: self.pencil.clone(),
            minimal_surface: false,
        }
    }
}

/// Product of a genus-2 curve and a genus-`(q−2)` curve, `q ≥ 4`:
/// `p_g = 2(q − 2)`, `h^{1,1} = 4q − 6`, `c₂ = 4χ`.
pub fn product_of_curves(q: u64) -> Result<SurfaceRecord> {
    if q < 4 {
        return Err(Error::invalid("the product family needs q >= 4"));
    }
    Ok(SurfaceRecord {
        name: format!("product of a genus 2 curve and a genus {} curve", q - 2),
        q,
        p_g: Some(2 * (q - 2)),
        h11: 4 * q - 6,
        no_irregular_pencils_genus_ge2: false,
        pencil: Some(PencilData { b: 2, fiber_component_counts: vec![1] }),
        note: "equality case p_g = 2q - 4; c2 = 4 chi; one member for every q >= 4".to_string(),
    })
}

pub fn catalog() -> Vec<SurfaceRecord> {
    let known = |name: &str, q, p_g, h11, note: &str| SurfaceRecord {
        name: name.to_string(),
        q,
        p_g,
        h11,
        no_irregular_pencils_genus_ge2: true,
        pencil: None,
        note: note.to_string(),
    };
    vec![
        known(
            "symmetric square of a genus 3 curve",
            3,
            Some(3),
            10,
            "p_g = 2q - 3; no surface with q = 3 and h11 = 9 is known",
        ),
        known(
            "Schoen surface",
            4,
            Some(5),
            12,
            "p_g = 2q - 3; smallest known h11 for q = 4 (h11 >= 11 is known from prior work)",
        ),
        known("symmetric square of a genus 4 curve", 4, None, 17, "next known h11 for q = 4"),
        known(
            "Fano surface of lines of a smooth cubic threefold",
            5,
            None,
            25,
            "no surface with q = 5 and h11 < 25 is known",
        ),
        known("symmetric square of a genus 5 curve", 5, None, 26, ""),
        product_of_curves(4).expect("q = 4 is in range"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn direct_formulas() {
        assert_eq!(bmy_bound(4, 3), 8);
        assert_eq!(bmy_bound(0, 0), 1);
        assert_eq!(bmy_bound(2 * (6 - 2), 6), 15);
        assert_eq!(general_bound(4), 10);
        assert_eq!(general_bound(1), 1);
        assert_eq!(general_bound(5), 13);
        assert_eq!(odd_q_bound(7, true), Some(20));
        assert_eq!(odd_q_bound(6, true), None);
        assert_eq!(odd_q_bound(7, false), None);
        assert_eq!(two_power_bound(5, true), Some(17));
        assert_eq!(two_power_bound(3, true), Some(9));
        assert_eq!(two_power_bound(6, true), None);
        assert_eq!(epsilon_bound(6, true), Some(17));
        assert_eq!(epsilon_bound(7, true), Some(17));
        assert_eq!(epsilon_bound(5, true), None);
        assert_eq!(epsilon_bound(4, true), Some(9));
        assert_eq!(epsilon_bound(6, false), None);
    }

    #[test]
    fn pencil_formula() {
        let p = |b, l: &[u64]| PencilData { b, fiber_component_counts: l.to_vec() };
        assert_eq!(pencil_bound(4, &p(2, &[1, 1])).unwrap(), 10);
        assert_eq!(pencil_bound(5, &p(2, &[3, 2])).unwrap(), 17);
        assert_eq!(pencil_bound(3, &p(3, &[2, 4])).unwrap(), 2 + 1 + 3);
        assert!(pencil_bound(3, &p(4, &[])).is_err());
        assert!(pencil_bound(3, &p(0, &[])).is_err());
        assert!(pencil_bound(3, &p(1, &[0])).is_err());
    }

    #[test]
    fn best_bound_examples() {
        let r = best_bound(&Assumptions::no_pencils(5)).unwrap();
        assert_eq!((r.best, r.best_names.as_slice()), (17, &[TWO_POWER.to_string()][..]));
        let r = best_bound(&Assumptions::no_pencils(7)).unwrap();
        assert_eq!(r.best, 20);
        assert_eq!(r.best_names, vec![ODD_Q]);
        let eps = r.bounds.iter().find(|b| b.name == TWO_POWER_OFFSET).unwrap();
        assert_eq!(eps.value, Some(17));
        let r = best_bound(&Assumptions::no_pencils(4)).unwrap();
        assert_eq!(r.best, 10);
        assert_eq!(r.best_names, vec![GENERAL_TYPE]);
        let r = best_bound(&Assumptions::no_pencils(3)).unwrap();
        assert_eq!(r.best, 9);
        assert!(r.bounds.iter().any(|b| b.provenance.contains("known previously")));
        // the unconditional entry is always listed
        let r = best_bound(&Assumptions::new(6)).unwrap();
        assert_eq!(r.best, 16);
        assert!(r.bounds.iter().any(|b| b.name == GENERAL_TYPE && b.applicable));
    }

    #[test]
    fn ties_report_every_name() {
        // at q = 6 the general-type bound is 16; p_g = 9 ties it
        let a = Assumptions { p_g: Some(11), ..Assumptions::new(6) };
        let r = best_bound(&a).unwrap();
        assert_eq!(r.best, 18);
        assert_eq!(r.best_names, vec![BMY]);
        let a = Assumptions { p_g: Some(9), ..Assumptions::new(6) };
        let r = best_bound(&a).unwrap();
        assert_eq!(r.best, 16);
        assert_eq!(r.best_names.len(), 2);
    }

    #[test]
    fn inconsistent_assumptions_rejected() {
        let a = Assumptions {
            pencil: Some(PencilData { b: 2, fiber_component_counts: vec![] }),
            ..Assumptions::no_pencils(5)
        };
        assert!(matches!(best_bound(&a), Err(Error::InvalidInput(_))));
        // genus-1 pencils are allowed alongside the assumption
        let a = Assumptions {
            pencil: Some(PencilData { b: 1, fiber_component_counts: vec![2] }),
            ..Assumptions::no_pencils(5)
        };
        assert_eq!(best_bound(&a).unwrap().best, 17);
        assert!(best_bound(&Assumptions::new(0)).is_err());
    }

    #[test]
    fn identities() {
        let s = surface_identities(6, 8, 18);
        assert_eq!(s.c2, 12);
        assert_eq!(s.chi, 3);
        assert_eq!(s.c2, 4 * s.chi);
        // 2 - 0 + 0 + 1 = 3
        assert_eq!(surface_identities(0, 0, 1), SurfaceInvariants { chi: 1, c2: 3, k2: 9 });
        assert_eq!(surface_identities(9, 15, 33), SurfaceInvariants { chi: 7, c2: 29, k2: 55 });
    }

    #[test]
    fn k2_chain() {
        let c = k2_chi_check(9).unwrap();
        assert_eq!((c.chi, c.k2_upper, c.eight_chi, c.strict), (7, 55, 56, true));
        let c = k2_chi_check(17).unwrap();
        assert_eq!((c.k2_upper, c.eight_chi), (119, 120));
        assert!(matches!(k2_chi_check(5), Err(Error::HypothesisNotMet(_))));
        assert!(matches!(k2_chi_check(10), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn catalog_values() {
        let c = catalog();
        let h = |n: &str| c.iter().find(|r| r.name == n).unwrap().h11;
        assert_eq!(h("Schoen surface"), 12);
        assert_eq!(h("Fano surface of lines of a smooth cubic threefold"), 25);
        assert_eq!(h("symmetric square of a genus 3 curve"), 10);
        for r in &c {
            assert!(r.h11 as i64 >= best_bound(&r.assumptions()).unwrap().best, "{}", r.name);
        }
        for q in 4..40 {
            let r = product_of_curves(q).unwrap();
            let inv = surface_identities(q, r.p_g.unwrap(), r.h11);
            assert_eq!(inv.c2, 4 * inv.chi);
            assert!(r.h11 as i64 >= best_bound(&r.assumptions()).unwrap().best);
        }
    }

    #[test]
    fn epsilon_extremes() {
        for k in 1..20u32 {
            // maximal eps = 2^k - 1 at q = 2^(k+1)
            let q = 1u64 << (k + 1);
            assert_eq!(two_power_offset(q), Some((k, (1 << k) - 1)));
            assert_eq!(epsilon_bound(q, true), Some(2 * q as i64 + 1));
            // eps -> 0 recovers the two-power bound
            let q0 = (1u64 << k) + 1;
            assert_eq!(4 * q0 as i64 - 3, two_power_bound(q0, true).unwrap());
            assert!(two_power_bound(q0, true).unwrap() > 3 * q0 as i64 - 1);
        }
    }

    proptest! {
        #[test]
        fn adding_assumptions_never_lowers_best(
            q in 1u64..200,
            pg in 0u64..400,
            b in 1u64..200,
            fibers in prop::collection::vec(1u64..5, 0..4),
            np in any::<bool>(),
        ) {
            let base = Assumptions::new(q);
            let mut more = base.clone();
            more.p_g = Some(pg);
            let lo = best_bound(&base).unwrap().best;
            let mid = best_bound(&more).unwrap().best;
            prop_assert!(mid >= lo);
            more.no_irregular_pencils_genus_ge2 = np;
            let hi = best_bound(&more).unwrap().best;
            prop_assert!(hi >= mid);
            let b = 1 + (b - 1) % q;
            if !(np && b >= 2) {
                more.pencil = Some(PencilData { b, fiber_component_counts: fibers });
                prop_assert!(best_bound(&more).unwrap().best >= hi);
            }
        }
    }
}
