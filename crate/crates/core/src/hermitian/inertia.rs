use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{GaussianMatrix, HermitianMatrix};
use crate::error::{Error, Result};
use crate::exactnum::GaussianRational;

/// Eigenvalue sign counts `(n₊, n₋, n₀)` of a Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Self { n_plus, n_minus, n_zero }
    }

    pub fn size(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn rank(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// `min(n₊, n₋)`.
    pub fn minimal(&self) -> usize {
        self.n_plus.min(self.n_minus)
    }

    /// Inertia of `-X`.
    pub fn swapped(&self) -> Self {
        Self { n_plus: self.n_minus, n_minus: self.n_plus, n_zero: self.n_zero }
    }

    pub fn is_psd(&self) -> bool {
        self.n_minus == 0
    }

    pub fn is_semidefinite(&self) -> bool {
        self.n_minus == 0 || self.n_plus == 0
    }
}

/// Exact inertia by symmetric congruence elimination over `ℚ(i)`.
///
/// Each step either pivots on a nonzero diagonal entry (smallest bit size
/// first) and removes its row and column, or, when the active diagonal is
/// all zero, replaces `e_i` by `e_i + c·e_j` to manufacture the diagonal
/// entry `2·Re(c·h_ij)` (`c = 1` if `Re h_ij ≠ 0`, else `c = i`). The sign
/// counts of the pivots give the inertia by Sylvester's law.
pub fn inertia(x: &HermitianMatrix) -> Inertia {
    let q = x.q();
    let mut h: Vec<Vec<GaussianRational>> = x.rows();
    let mut active: Vec<usize> = (0..q).collect();
    let (mut pos, mut neg) = (0, 0);

    while !active.is_empty() {
        let pivot = active
            .iter()
            .copied()
            .filter(|&k| !h[k][k].re.is_zero())
            .min_by_key(|&k| h[k][k].bit_size());

        let k = match pivot {
            Some(k) => k,
            None => {
                let Some((i, j)) = find_offdiagonal(&h, &active) else {
                    break;
                };
                let c = if h[i][j].re.is_zero() {
                    GaussianRational::i()
                } else {
                    GaussianRational::from_ints(1, 0)
                };
                // column i += c·column j, then row i += conj(c)·row j
                for &m in &active {
                    let t = &c * &h[m][j];
                    h[m][i] += &t;
                }
                let cc = c.conj();
                for &m in &active {
                    let t = &cc * &h[j][m];
                    h[i][m] += &t;
                }
                debug_assert!(h[i][i].im.is_zero() && !h[i][i].re.is_zero());
                i
            }
        };

        let d = h[k][k].re.clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&m| m != k);
        let inv = d.recip();
        for &r in &active {
            if h[r][k].is_zero() {
                continue;
            }
            let f = h[r][k].scale(&inv);
            for &c in &active {
                if h[k][c].is_zero() {
                    continue;
                }
                let t = &f * &h[k][c];
                h[r][c] -= &t;
            }
        }
    }
    Inertia::new(pos, neg, q - pos - neg)
}

fn find_offdiagonal(h: &[Vec<GaussianRational>], active: &[usize]) -> Option<(usize, usize)> {
    for (a, &i) in active.iter().enumerate() {
        for &j in &active[a + 1..] {
            if !h[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn minimal_inertia(x: &HermitianMatrix) -> usize {
    inertia(x).minimal()
}

pub fn rank(x: &HermitianMatrix) -> usize {
    inertia(x).rank()
}

/// `P* X P`. Rejects singular `P`.
pub fn congruence_transform(x: &HermitianMatrix, p: &GaussianMatrix) -> Result<HermitianMatrix> {
    if p.size() != x.q() {
        return Err(Error::invalid(format!(
            "transform is {}x{}, matrix is {}x{}",
            p.size(),
            p.size(),
            x.q(),
            x.q()
        )));
    }
    if p.determinant().is_zero() {
        return Err(Error::SingularTransform);
    }
    let prod = p.conj_transpose().mul(&x.as_general()).mul(p);
    HermitianMatrix::try_from_general(prod)
        .map_err(|_| Error::inconsistency("congruence produced a non-Hermitian matrix"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{from_i64, ratio};
    use crate::random::{random_hermitian, random_invertible, rng_for};

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_ints(re, im)
    }

    #[test]
    fn diagonal_cases() {
        assert_eq!(inertia(&HermitianMatrix::identity(3)), Inertia::new(3, 0, 0));
        let x = HermitianMatrix::diagonal_i64(&[1, -1, 0]);
        assert_eq!(inertia(&x), Inertia::new(1, 1, 1));
        assert_eq!(minimal_inertia(&x), 1);
        assert_eq!(minimal_inertia(&HermitianMatrix::diagonal_i64(&[1, 1, -1, -1, 0])), 2);
        assert_eq!(rank(&HermitianMatrix::zero(4)), 0);
        assert_eq!(inertia(&HermitianMatrix::zero(4)), Inertia::new(0, 0, 4));
        assert_eq!(rank(&HermitianMatrix::diagonal_i64(&[1, -1, 0, 0])), 2);
    }

    #[test]
    fn purely_imaginary_offdiagonal() {
        let x = HermitianMatrix::from_rows(vec![vec![g(0, 0), g(0, 1)], vec![g(0, -1), g(0, 0)]]).unwrap();
        assert_eq!(inertia(&x), Inertia::new(1, 1, 0));
    }

    #[test]
    fn zero_diagonal_blocks() {
        // two hyperbolic planes plus a zero row: signature (2,2,1)
        let x = HermitianMatrix::from_upper(5, |i, j| match (i, j) {
            (0, 1) => g(3, 0),
            (2, 3) => g(0, -2),
            _ => g(0, 0),
        });
        assert_eq!(inertia(&x), Inertia::new(2, 2, 1));
    }

    #[test]
    fn congruence_examples() {
        let mut rng = rng_for(11, 0);
        let x = random_hermitian(&mut rng, 4, 5, 3);
        let id = GaussianMatrix::identity(4);
        assert_eq!(congruence_transform(&x, &id).unwrap(), x);
        let two = GaussianMatrix::from_fn(4, |i, j| if i == j { g(2, 0) } else { g(0, 0) });
        let y = congruence_transform(&x, &two).unwrap();
        assert_eq!(y, x.scale(&from_i64(4)));
        assert_eq!(inertia(&y), inertia(&x));
        let singular = GaussianMatrix::from_fn(4, |i, _| if i == 0 { g(1, 0) } else { g(0, 0) });
        assert_eq!(congruence_transform(&x, &singular), Err(Error::SingularTransform));
        for _ in 0..20 {
            let p = random_invertible(&mut rng, 4, 4);
            assert_eq!(inertia(&congruence_transform(&x, &p).unwrap()), inertia(&x));
        }
    }

    #[test]
    fn scale_invariance_of_minimal_inertia() {
        let mut rng = rng_for(5, 1);
        for _ in 0..50 {
            let x = random_hermitian(&mut rng, 4, 7, 2);
            let m = minimal_inertia(&x);
            assert_eq!(minimal_inertia(&x.scale(&ratio(-3, 7))), m);
            assert_eq!(inertia(&x.neg()), inertia(&x).swapped());
        }
    }
}
