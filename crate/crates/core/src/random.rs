//! Seeded generators for exact test data.
//!
//! Streams come from ChaCha8 keyed by a 64-bit seed and split by a stream
//! index, so any consumer can derive independent reproducible sequences
//! from `(seed, index)`.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactnum::{GaussianRational, Rational};
use crate::hermitian::{GaussianMatrix, HermitianMatrix};

pub type SearchRng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> SearchRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform numerator in `[-num_bound, num_bound]` over a denominator in
/// `[1, den_bound]`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    let n = rng.gen_range(-num_bound..=num_bound);
    let d = rng.gen_range(1..=den_bound.max(1));
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_nonzero_rational<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    loop {
        let r = random_rational(rng, num_bound.max(1), den_bound);
        if !r.is_zero() {
            return r;
        }
    }
}

pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, num_bound: i64, den_bound: i64) -> GaussianRational {
    GaussianRational::new(
        random_rational(rng, num_bound, den_bound),
        random_rational(rng, num_bound, den_bound),
    )
}

/// Dense Hermitian matrix with independent bounded-denominator entries.
pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, q: usize, num_bound: i64, den_bound: i64) -> HermitianMatrix {
    HermitianMatrix::from_upper(q, |_, _| random_gaussian(rng, num_bound, den_bound))
}

/// Hermitian matrices drawn from a mix of shapes so that degenerate cases
/// (zero diagonals, repeated and zero eigenvalues, sparse patterns) show up
/// often, not just the generic full-rank case.
pub fn random_hermitian_mixed<R: Rng + ?Sized>(rng: &mut R, q: usize) -> HermitianMatrix {
    match rng.gen_range(0..5) {
        0 => random_hermitian(rng, q, 9, 4),
        1 => HermitianMatrix::from_upper(q, |_, _| {
            if rng.gen_bool(0.6) {
                GaussianRational::zero()
            } else {
                random_gaussian(rng, 5, 3)
            }
        }),
        2 => HermitianMatrix::from_upper(q, |i, j| {
            if i == j {
                GaussianRational::zero()
            } else {
                random_gaussian(rng, 4, 2)
            }
        }),
        3 => {
            let plus = rng.gen_range(0..=q);
            let minus = rng.gen_range(0..=q - plus);
            random_with_signature(rng, q, plus, minus)
        }
        _ => {
            let mut x = random_hermitian(rng, q, 3, 1);
            let s = random_rational(rng, 3, 1);
            x = x.scale(&random_nonzero_rational(rng, 5, 5));
            x.shift(&s)
        }
    }
}

pub fn random_invertible<R: Rng + ?Sized>(rng: &mut R, q: usize, num_bound: i64) -> GaussianMatrix {
    loop {
        let p = GaussianMatrix::from_fn(q, |_, _| random_gaussian(rng, num_bound, 2));
        if !p.determinant().is_zero() {
            return p;
        }
    }
}

/// `Σ v v* − Σ w w*` over `plus` vectors `v` and `minus` vectors `w`.
/// Has `n₊ ≤ plus`, `n₋ ≤ minus`, with equality when the vectors are
/// independent (the generic case).
pub fn random_with_signature<R: Rng + ?Sized>(rng: &mut R, q: usize, plus: usize, minus: usize) -> HermitianMatrix {
    let mut acc = HermitianMatrix::zero(q);
    for k in 0..plus + minus {
        let v: Vec<GaussianRational> = (0..q).map(|_| random_gaussian(rng, 4, 2)).collect();
        let outer = HermitianMatrix::from_upper(q, |i, j| &v[i] * &v[j].conj());
        acc = if k < plus { acc.add(&outer) } else { acc.add(&outer.neg()) };
    }
    acc
}

/// `A* A` for a random `r × q` matrix `A`: positive semidefinite of rank
/// at most `r`.
pub fn random_psd<R: Rng + ?Sized>(rng: &mut R, q: usize, r: usize) -> HermitianMatrix {
    random_with_signature(rng, q, r, 0)
}
