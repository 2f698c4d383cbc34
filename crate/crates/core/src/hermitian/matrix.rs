use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{GaussianRational, Rational};

/// A general square matrix over `ℚ(i)`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianMatrix {
    n: usize,
    entries: Vec<GaussianRational>,
}

impl GaussianMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::invalid("matrix must be at least 1x1"));
        }
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { GaussianRational::one() } else { GaussianRational::zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.n + j]
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = GaussianRational::zero();
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc += &(a * rhs.get(k, j));
            }
            acc
        })
    }

    /// Exact determinant by Gaussian elimination over `ℚ(i)`.
    pub fn determinant(&self) -> GaussianRational {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != col {
                for k in 0..n {
                    a.swap(p * n + k, col * n + k);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                let f = &a[r * n + col] * &inv;
                if f.is_zero() {
                    continue;
                }
                for k in col..n {
                    let t = &f * &a[col * n + k];
                    a[r * n + k] -= &t;
                }
            }
        }
        det
    }
}

/// A q×q Hermitian matrix over `ℚ(i)`. Conjugate symmetry is checked once,
/// on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct HermitianMatrix {
    q: usize,
    entries: Vec<GaussianRational>,
}

/// On-disk form: `{"q": n, "entries": [[{"re":..,"im":..}, ..], ..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub q: usize,
    pub entries: Vec<Vec<GaussianRational>>,
}

impl TryFrom<MatrixJson> for HermitianMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        if raw.entries.len() != raw.q {
            return Err(Error::invalid(format!(
                "expected {} rows, found {}",
                raw.q,
                raw.entries.len()
            )));
        }
        HermitianMatrix::from_rows(raw.entries)
    }
}

impl From<HermitianMatrix> for MatrixJson {
    fn from(m: HermitianMatrix) -> Self {
        MatrixJson { q: m.q, entries: m.rows() }
    }
}

impl HermitianMatrix {
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let g = GaussianMatrix::from_rows(rows)?;
        Self::try_from_general(g)
    }

    pub fn try_from_general(g: GaussianMatrix) -> Result<Self> {
        let q = g.n;
        for i in 0..q {
            for j in i..q {
                if g.get(i, j) != &g.get(j, i).conj() {
                    return Err(Error::NotHermitian { i, j });
                }
            }
        }
        Ok(Self { q, entries: g.entries })
    }

    /// Builds from the upper triangle (`j >= i`); the lower triangle is
    /// filled by conjugation and imaginary parts on the diagonal are dropped.
    pub fn from_upper(q: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Self {
        assert!(q > 0, "matrix must be at least 1x1");
        let mut entries = vec![GaussianRational::zero(); q * q];
        for i in 0..q {
            let d = f(i, i);
            entries[i * q + i] = GaussianRational::real(d.re);
            for j in i + 1..q {
                let v = f(i, j);
                entries[j * q + i] = v.conj();
                entries[i * q + j] = v;
            }
        }
        Self { q, entries }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: MatrixJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        Self::from_upper(diag.len(), |i, j| {
            if i == j {
                GaussianRational::real(diag[i].clone())
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn diagonal_i64(diag: &[i64]) -> Self {
        let d: Vec<Rational> = diag.iter().map(|&v| crate::exactnum::rational::from_i64(v)).collect();
        Self::diagonal(&d)
    }

    pub fn scalar(q: usize, s: Rational) -> Self {
        Self::diagonal(&vec![s; q])
    }

    pub fn identity(q: usize) -> Self {
        Self::scalar(q, Rational::one())
    }

    pub fn zero(q: usize) -> Self {
        Self::scalar(q, Rational::zero())
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussianRational {
        &self.entries[i * self.q + j]
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.q).map(<[_]>::to_vec).collect()
    }

    pub fn as_general(&self) -> GaussianMatrix {
        GaussianMatrix { n: self.q, entries: self.entries.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        (0..self.q).all(|i| {
            (0..self.q).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e == d
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn trace(&self) -> Rational {
        (0..self.q).map(|i| self.get(i, i).re.clone()).sum()
    }

    pub fn scale(&self, lambda: &Rational) -> Self {
        Self { q: self.q, entries: self.entries.iter().map(|e| e.scale(lambda)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { q: self.q, entries: self.entries.iter().map(|e| -e).collect() }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.q, rhs.q, "dimension mismatch");
        Self {
            q: self.q,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// `X - s·I`.
    pub fn shift(&self, s: &Rational) -> Self {
        let mut out = self.clone();
        for i in 0..self.q {
            out.entries[i * self.q + i].re -= s;
        }
        out
    }

    /// `Σ cᵢ·Xᵢ`. Panics on an empty or size-mismatched list.
    pub fn linear_combination(coeffs: &[Rational], mats: &[HermitianMatrix]) -> Self {
        assert_eq!(coeffs.len(), mats.len(), "coefficient count mismatch");
        let q = mats[0].q;
        let mut entries = vec![GaussianRational::zero(); q * q];
        for (c, m) in coeffs.iter().zip(mats) {
            assert_eq!(m.q, q, "dimension mismatch");
            if c.is_zero() {
                continue;
            }
            for (acc, e) in entries.iter_mut().zip(&m.entries) {
                if !e.is_zero() {
                    *acc += &e.scale(c);
                }
            }
        }
        Self { q, entries }
    }

    /// Coordinates in the real basis of ℋ: the diagonal, then real and
    /// imaginary parts of the strict upper triangle. Length `q²`.
    pub fn real_coordinates(&self) -> Vec<Rational> {
        let q = self.q;
        let mut out = Vec::with_capacity(q * q);
        for i in 0..q {
            out.push(self.get(i, i).re.clone());
        }
        for i in 0..q {
            for j in i + 1..q {
                out.push(self.get(i, j).re.clone());
                out.push(self.get(i, j).im.clone());
            }
        }
        out
    }

    /// Row-major `(re, im)` pairs in double precision.
    pub fn to_f64_entries(&self) -> Vec<(f64, f64)> {
        self.entries.iter().map(GaussianRational::to_f64_pair).collect()
    }
}

/// Rank over ℚ of a list of rational vectors (Gaussian elimination).
pub fn rational_rank(vectors: &[Vec<Rational>]) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (done, below) = rows.split_at_mut(rank + 1);
        let pivot_row = &done[rank];
        for row in below {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Row-echelon form kept up to date one vector at a time, for incremental
/// independence tests.
#[derive(Clone, Debug, Default)]
pub struct EchelonForm {
    /// (pivot column, row scaled so the pivot is 1)
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far; reports whether it
    /// was.
    pub fn insert(&mut self, mut v: Vec<Rational>) -> bool {
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (a, b) in v.iter_mut().zip(row).skip(*pc) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].recip();
        for x in v.iter_mut().skip(pc) {
            *x *= &inv;
        }
        self.rows.push((pc, v));
        true
    }
}
