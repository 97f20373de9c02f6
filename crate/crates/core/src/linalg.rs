//! Dense Hermitian linear algebra: `LL*` Cholesky factorization and a
//! Hager-style 1-norm condition estimate.
//!
//! The Gram systems assembled here are Hermitian positive definite by
//! construction, so Cholesky is the natural symmetry-exploiting solve; the
//! condition estimate costs a handful of extra triangular solves.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// f64 math comes from the trait in no_std builds; std's inherent
// methods shadow it under cfg(test).
#[allow(unused_imports)]
use num_traits::Float;

/// Dense Hermitian matrix in row-major full storage.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), n * n);
        HermitianMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    /// Set `(i, j)` and mirror the conjugate into `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: Complex64) {
        self.set(i, j, v);
        if i != j {
            self.set(j, i, v.conj());
        }
    }

    /// Largest entrywise deviation from `A = A*`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let mut best: f64 = 0.0;
        for j in 0..self.n {
            let mut s = 0.0;
            for i in 0..self.n {
                s += self.get(i, j).norm();
            }
            best = best.max(s);
        }
        best
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn cholesky(&self) -> Result<Cholesky, LinalgError> {
        if !self.is_finite() {
            return Err(LinalgError::NonFiniteEntry);
        }
        let n = self.n;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            let mut d = self.get(j, j).re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if d.is_nan() || !(d.is_finite() && d > 0.0) {
                return Err(LinalgError::NotPositiveDefinite { pivot: j });
            }
            let dj = d.sqrt();
            l[j * n + j] = Complex64::new(dj, 0.0);
            for i in (j + 1)..n {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / dj;
            }
        }
        Ok(Cholesky { n, l })
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L L*`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<Complex64>,
}

impl Cholesky {
    /// Solve `A x = rhs`.
    #[allow(clippy::needless_range_loop)]
    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        debug_assert_eq!(rhs.len(), n);
        let mut x = rhs.to_vec();
        // forward: L y = rhs
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= self.l[i * n + k] * x[k];
            }
            x[i] = s / self.l[i * n + i];
        }
        // backward: L* x = y
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in (i + 1)..n {
                s -= self.l[k * n + i].conj() * x[k];
            }
            x[i] = s / self.l[i * n + i];
        }
        x
    }

    /// Hager/Higham lower estimate of `‖A⁻¹‖₁`. For Hermitian `A` the
    /// adjoint solve equals the plain solve, so each sweep is two
    /// triangular-solve pairs.
    pub fn inv_one_norm_estimate(&self) -> f64 {
        let n = self.n;
        if n == 0 {
            return 0.0;
        }
        let mut x = vec![Complex64::new(1.0 / n as f64, 0.0); n];
        let mut est = 0.0f64;
        let mut last_j = usize::MAX;
        for _sweep in 0..5 {
            let y = self.solve(&x);
            let y_norm: f64 = y.iter().map(|v| v.norm()).sum();
            let xi: Vec<Complex64> = y
                .iter()
                .map(|v| if v.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { v / v.norm() })
                .collect();
            let z = self.solve(&xi);
            let (mut j_best, mut z_best) = (0usize, 0.0f64);
            for (j, zj) in z.iter().enumerate() {
                if zj.norm() > z_best {
                    z_best = zj.norm();
                    j_best = j;
                }
            }
            if y_norm <= est || j_best == last_j {
                est = est.max(y_norm);
                break;
            }
            est = y_norm;
            last_j = j_best;
            x = vec![Complex64::new(0.0, 0.0); n];
            x[j_best] = Complex64::new(1.0, 0.0);
        }
        // Safeguard vector in the style of the LAPACK estimator: catches
        // matrices on which the iteration stalls early.
        let alt: Vec<Complex64> = (0..n)
            .map(|i| {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                Complex64::new(s * (1.0 + i as f64 / (n.max(2) - 1) as f64), 0.0)
            })
            .collect();
        let y = self.solve(&alt);
        let alt_est = 2.0 * y.iter().map(|v| v.norm()).sum::<f64>() / (3.0 * n as f64);
        est.max(alt_est)
    }
}

/// Failures of the Hermitian solve path.
#[derive(Debug, Clone, PartialEq)]
pub enum LinalgError {
    NonFiniteEntry,
    /// The matrix is numerically singular or indefinite; `pivot` is the
    /// first failing Cholesky pivot.
    NotPositiveDefinite { pivot: usize },
}

impl fmt::Display for LinalgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinalgError::NonFiniteEntry => write!(f, "matrix has non-finite entries"),
            LinalgError::NotPositiveDefinite { pivot } => {
                write!(f, "matrix is not positive definite (pivot {pivot})")
            }
        }
    }
}

impl core::error::Error for LinalgError {}

/// Solve `A x = rhs` for Hermitian positive definite `A`, returning the
/// solution together with a 1-norm condition estimate.
pub fn hermitian_solve(
    a: &HermitianMatrix,
    rhs: &[Complex64],
) -> Result<(Vec<Complex64>, f64), LinalgError> {
    let chol = a.cholesky()?;
    let x = chol.solve(rhs);
    if x.iter().any(|v| !v.is_finite()) {
        return Err(LinalgError::NonFiniteEntry);
    }
    let cond = a.one_norm() * chol.inv_one_norm_estimate();
    Ok((x, cond))
}
