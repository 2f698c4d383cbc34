use num_traits::{One, Zero};

use super::inertia::Inertia;
use super::matrix::HermitianMatrix;
use crate::error::{Error, Result};
use crate::exactnum::{rational, GaussianRational, RationalPolynomial};

type Grid = Vec<Vec<GaussianRational>>;

/// `det(x·I − X)` with exact rational coefficients (Faddeev–LeVerrier over
/// `ℚ(i)`; the imaginary parts of all coefficients must vanish).
pub fn characteristic_polynomial(x: &HermitianMatrix) -> Result<RationalPolynomial> {
    let q = x.q();
    let a = x.rows();
    let mut coeffs = vec![GaussianRational::zero(); q + 1];
    coeffs[q] = GaussianRational::one();
    // m holds M_k; start with M_1 = I
    let mut m: Grid = identity(q);
    for k in 1..=q {
        let am = matmul(&a, &m);
        let tr: GaussianRational = (0..q).fold(GaussianRational::zero(), |acc, i| &acc + &am[i][i]);
        let c = -tr.scale(&rational::ratio(1, k as i64));
        coeffs[q - k] = c.clone();
        if k < q {
            m = am;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &c;
            }
        }
    }
    if let Some(bad) = coeffs.iter().position(|c| !c.is_real()) {
        return Err(Error::inconsistency(format!(
            "characteristic polynomial coefficient {bad} is not real"
        )));
    }
    Ok(RationalPolynomial::new(coeffs.into_iter().map(|c| c.re).collect()))
}

/// Inertia read off the characteristic polynomial by Descartes' rule of
/// signs. Exact here because a Hermitian matrix has only real eigenvalues.
/// Independent of the congruence elimination in [`super::inertia`].
pub fn descartes_inertia(x: &HermitianMatrix) -> Result<Inertia> {
    let p = characteristic_polynomial(x)?;
    let n_zero = p.zero_root_multiplicity();
    let n_plus = p.sign_variations();
    let n_minus = p.reflect().sign_variations();
    if n_plus + n_minus + n_zero != x.q() {
        return Err(Error::inconsistency("Descartes counts do not sum to the matrix size"));
    }
    Ok(Inertia::new(n_plus, n_minus, n_zero))
}

fn identity(q: usize) -> Grid {
    (0..q)
        .map(|i| {
            (0..q)
                .map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
                .collect()
        })
        .collect()
}

fn matmul(a: &Grid, b: &Grid) -> Grid {
    let q = a.len();
    (0..q)
        .map(|i| {
            (0..q)
                .map(|j| {
                    let mut acc = GaussianRational::zero();
                    for k in 0..q {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            continue;
                        }
                        acc += &(&a[i][k] * &b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}
