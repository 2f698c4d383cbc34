//! Built-in consistency suite: oracle equivalences and regression constants
//! that a correct build must reproduce. Backs the CLI `check` subcommand.

use num_bigint::BigUint;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::bounds::{best_bound, catalog, k2_chi_check, Assumptions};
use crate::degree::{degree_binomial_form, degree_product_form, parity_sweep};
use crate::error::Result;
use crate::hermitian::{congruence_transform, descartes_inertia, inertia};
use crate::random::{
    random_hermitian_mixed, random_invertible, random_nonzero_rational, random_psd,
    random_with_signature, rng_for,
};
use crate::strata::{classify_cone, ConeKind};
use crate::HermitianMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

type Outcome = Result<std::result::Result<String, String>>;

fn record(name: &str, f: impl FnOnce() -> Outcome) -> CheckResult {
    let (passed, detail) = match f() {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    CheckResult { name: name.to_string(), passed, detail }
}

/// Runs every check with `trials` random cases per randomized check.
pub fn run(seed: u64, trials: usize) -> CheckReport {
    let checks = vec![
        record("degree_values", || {
            let got: Vec<BigUint> = [3, 4, 5].iter().map(|&q| degree_product_form(q)).collect::<Result<_>>()?;
            if got != [3u32, 20, 175].map(BigUint::from) {
                return Ok(Err(format!("product form gave {got:?}")));
            }
            for q in 3..=50 {
                if degree_product_form(q)? != degree_binomial_form(q)? {
                    return Ok(Err(format!("forms differ at q={q}")));
                }
            }
            Ok(Ok("3, 20, 175; forms agree on [3, 50]".into()))
        }),
        record("parity_law", || {
            let odd = parity_sweep(3, 100_000)?;
            // q - 1 = 2^1 .. 2^16
            if odd != 16 {
                return Ok(Err(format!("{odd} odd degrees in [3, 1e5], expected 16")));
            }
            Ok(Ok("odd exactly at q = 2^k + 1 on [3, 1e5]".into()))
        }),
        record("inertia_oracle", || {
            let mut rng = rng_for(seed, 1);
            for q in 2..=6 {
                for _ in 0..trials {
                    let x = random_hermitian_mixed(&mut rng, q);
                    let (a, b) = (inertia(&x), descartes_inertia(&x)?);
                    if a != b {
                        return Ok(Err(format!("q={q}: elimination {a:?} vs Descartes {b:?}")));
                    }
                }
            }
            Ok(Ok(format!("{trials} matrices per q in 2..=6")))
        }),
        record("sylvester_invariance", || {
            let mut rng = rng_for(seed, 2);
            for t in 0..trials {
                let q = 2 + t % 5;
                let x = random_hermitian_mixed(&mut rng, q);
                let p = random_invertible(&mut rng, q, 3);
                let y = congruence_transform(&x, &p)?;
                if inertia(&y) != inertia(&x) {
                    return Ok(Err(format!("inertia changed under congruence at q={q}")));
                }
            }
            Ok(Ok(format!("{trials} pairs")))
        }),
        record("minimal_inertia_remarks", || {
            let mut rng = rng_for(seed, 3);
            for t in 0..trials {
                let q = 2 + t % 5;
                let x = random_hermitian_mixed(&mut rng, q);
                let i = inertia(&x);
                let lambda = random_nonzero_rational(&mut rng, 9, 9);
                let semidef = inertia(&x).is_psd() || inertia(&x.neg()).is_psd();
                if i.size() != q
                    || i.rank() < 2 * i.minimal()
                    || inertia(&x.scale(&lambda)).minimal() != i.minimal()
                    || (i.minimal() == 0) != semidef
                {
                    return Ok(Err(format!("remark violated for inertia {i:?}")));
                }
            }
            Ok(Ok(format!("{trials} matrices")))
        }),
        record("cone_minimal_inertia", || {
            let mut rng = rng_for(seed, 4);
            for t in 0..trials {
                let q = 2 + t % 6;
                let y = random_with_signature(&mut rng, q, 1, 1);
                let tt = random_nonzero_rational(&mut rng, 9, 5);
                let s = crate::random::random_rational(&mut rng, 9, 5);
                let x = y.scale(&tt).shift(&-s);
                if inertia(&x).minimal() > 1 {
                    return Ok(Err(format!("cone point with minimal inertia > 1 at q={q}")));
                }
            }
            Ok(Ok(format!("{trials} triples")))
        }),
        record("trace_positive_on_psd", || {
            let mut rng = rng_for(seed, 5);
            let mut seen = 0;
            for t in 0..trials {
                let q = 2 + t % 6;
                let x = random_psd(&mut rng, q, 1 + t % 2);
                if x.is_zero() {
                    continue;
                }
                seen += 1;
                if !x.trace().is_positive() {
                    return Ok(Err("nonzero PSD matrix with nonpositive trace".into()));
                }
            }
            Ok(Ok(format!("{seen} nonzero PSD matrices of rank <= 2")))
        }),
        record("cone_classification", || {
            let d = |v: &[i64]| HermitianMatrix::diagonal_i64(v);
            let cases = [
                (d(&[2, 1, 1, 1, 0]), ConeKind::C1),
                (d(&[3, 2, 1, 1, 1]), ConeKind::C0),
                (d(&[2, 1, 1, 1, 1]), ConeKind::BothBoundary),
                (HermitianMatrix::identity(5), ConeKind::Vertex),
                (d(&[1, 2, 3, 4, 5]), ConeKind::NotInC2),
            ];
            for (x, want) in cases {
                let got = classify_cone(&x)?.label;
                if got != want {
                    return Ok(Err(format!("expected {want:?}, got {got:?}")));
                }
            }
            Ok(Ok("five reference points".into()))
        }),
        record("bound_regression", || {
            for (q, want) in [(3, 9), (4, 10), (5, 17), (6, 17), (7, 20)] {
                let got = best_bound(&Assumptions::no_pencils(q))?.best;
                if got != want {
                    return Ok(Err(format!("q={q}: best bound {got}, expected {want}")));
                }
            }
            Ok(Ok("q = 3..7".into()))
        }),
        record("k2_chain", || {
            for k in 3..=20 {
                let c = k2_chi_check((1 << k) + 1)?;
                if !c.strict || c.k2_upper != 8 * c.q as i64 - 17 {
                    return Ok(Err(format!("chain fails at k={k}")));
                }
            }
            Ok(Ok("k = 3..20".into()))
        }),
        record("catalog_consistency", || {
            for r in catalog() {
                let best = best_bound(&r.assumptions())?.best;
                if (r.h11 as i64) < best {
                    return Ok(Err(format!("{}: h11 {} below bound {best}", r.name, r.h11)));
                }
            }
            Ok(Ok("every record meets its bound".into()))
        }),
    ];
    let passed = checks.iter().all(|c| c.passed);
    CheckReport { seed, trials, checks, passed }
}
