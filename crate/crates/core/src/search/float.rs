//! Double-precision image of a subspace and the eigenvalue objective.

use nalgebra::{Complex, DMatrix};

use super::SubspaceBasis;

pub(crate) struct FloatBasis {
    q: usize,
    mats: Vec<Vec<Complex<f64>>>,
}

impl FloatBasis {
    pub fn new(basis: &SubspaceBasis) -> Self {
        let mats = basis
            .matrices()
            .iter()
            .map(|m| m.to_f64_entries().into_iter().map(|(re, im)| Complex::new(re, im)).collect())
            .collect();
        Self { q: basis.q(), mats }
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    /// Ascending eigenvalues of `Σ cᵢ·Bᵢ`.
    pub fn eigenvalues(&self, coeffs: &[f64]) -> Vec<f64> {
        let q = self.q;
        let mut acc = vec![Complex::new(0.0, 0.0); q * q];
        for (c, m) in coeffs.iter().zip(&self.mats) {
            for (a, e) in acc.iter_mut().zip(m) {
                *a += e * *c;
            }
        }
        let mat = DMatrix::from_row_slice(q, q, &acc);
        let mut ev: Vec<f64> = mat.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Scale-free margin by which an element has minimal inertia ≤ 1:
/// `max(λ₂, −λ_{q−1}) / ‖λ‖`, eigenvalues ascending. Nonnegative exactly
/// when `n₋ ≤ 1` or `n₊ ≤ 1`.
pub(crate) fn low_inertia_margin(ev: &[f64]) -> f64 {
    let q = ev.len();
    let norm = ev.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return f64::NEG_INFINITY;
    }
    if q < 2 {
        return 1.0;
    }
    ev[1].max(-ev[q - 2]) / norm
}

/// Sign counts `(n₊, n₋, n₀)`, or `None` when some eigenvalue is within
/// `tol·‖λ‖` of zero.
pub(crate) fn float_inertia(ev: &[f64], tol: f64) -> Option<(usize, usize, usize)> {
    let norm = ev.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 || ev.iter().any(|x| x.abs() <= tol * norm) {
        return None;
    }
    let pos = ev.iter().filter(|&&x| x > 0.0).count();
    Some((pos, ev.len() - pos, 0))
}

pub(crate) fn normalize(c: &mut [f64]) {
    let n = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        c.iter_mut().for_each(|x| *x /= n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::HermitianMatrix;

    #[test]
    fn eigenvalues_of_hermitian_block() {
        let x = HermitianMatrix::from_upper(2, |i, j| match (i, j) {
            (0, 1) => crate::GaussianRational::i(),
            _ => crate::GaussianRational::default(),
        });
        let b = SubspaceBasis::new(vec![x]).unwrap();
        let fb = FloatBasis::new(&b);
        let ev = fb.eigenvalues(&[2.0]);
        assert!((ev[0] + 2.0).abs() < 1e-12 && (ev[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn margin_signs() {
        assert!(low_inertia_margin(&[-1.0, 1.0, 1.0, 1.0, 1.0]) > 0.0);
        assert!(low_inertia_margin(&[-1.0, -1.0, 0.5, 1.0, 1.0]) < 0.0);
        assert_eq!(low_inertia_margin(&[-1.0, 0.0, 0.0, 0.0, 1.0]), 0.0);
        assert!(low_inertia_margin(&[-2.0, -1.0, 0.0, 1.0, 3.0]) < 0.0);
        assert_eq!(float_inertia(&[-1.0, 2.0], 1e-9), Some((1, 1, 0)));
        assert_eq!(float_inertia(&[-1.0, 0.0, 2.0], 1e-9), None);
    }
}
