//! Dense complex polynomials and a Durand–Kerner all-roots solver.
//!
//! Coefficients are stored in ascending order (`c[0] + c[1]·z + …`). The
//! degrees showing up here are small (level-set tracing and critical-point
//! extraction of low-degree rational maps), so a simultaneous-iteration
//! solver with a deterministic start is plenty.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// f64 math comes from the trait in no_std builds; std's inherent
// methods shadow it under cfg(test).
#[allow(unused_imports)]
use num_traits::Float;

pub fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

pub fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect()
}

pub fn mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `a − s·b`, padded to the longer length.
pub fn sub_scaled(a: &[Complex64], b: &[Complex64], s: Complex64) -> Vec<Complex64> {
    let n = a.len().max(b.len());
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); n];
    for (i, o) in out.iter_mut().enumerate() {
        let av = a.get(i).copied().unwrap_or(Complex64::new(0.0, 0.0));
        let bv = b.get(i).copied().unwrap_or(Complex64::new(0.0, 0.0));
        *o = av - s * bv;
    }
    out
}

/// Monic polynomial with the given roots.
pub fn from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        out = mul(&out, &[-r, Complex64::new(1.0, 0.0)]);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RootError {
    ZeroPolynomial,
    DidNotConverge,
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::ZeroPolynomial => write!(f, "zero polynomial has no well-defined roots"),
            RootError::DidNotConverge => write!(f, "root iteration did not converge"),
        }
    }
}

impl core::error::Error for RootError {}

fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> Vec<Complex64> {
    // c2 z² + c1 z + c0, stable splitting of the usual formula
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    let s = if (c1.conj() * disc).re >= 0.0 { disc } else { -disc };
    let q = -0.5 * (c1 + s);
    if q.norm() == 0.0 {
        return alloc::vec![Complex64::new(0.0, 0.0), -c1 / c2];
    }
    alloc::vec![q / c2, c0 / q]
}

/// All roots of the polynomial, with multiplicity.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    // trim exactly-zero leading coefficients
    let mut top = coeffs.len();
    while top > 0 && coeffs[top - 1] == Complex64::new(0.0, 0.0) {
        top -= 1;
    }
    if top == 0 {
        return Err(RootError::ZeroPolynomial);
    }
    let coeffs = &coeffs[..top];
    let degree = coeffs.len() - 1;
    match degree {
        0 => Ok(Vec::new()),
        1 => Ok(alloc::vec![-coeffs[0] / coeffs[1]]),
        2 => Ok(quadratic_roots(coeffs[0], coeffs[1], coeffs[2])),
        _ => durand_kerner(coeffs),
    }
}

fn durand_kerner(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();
    let radius = 1.0
        + monic[..degree]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..degree)
        .map(|k| {
            // offset angle breaks symmetric configurations that would
            // otherwise cycle
            let phi = core::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
            radius * Complex64::new(phi.cos(), phi.sin())
        })
        .collect();
    for _iter in 0..600 {
        let mut worst = 0.0f64;
        for k in 0..degree {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..degree {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm() == 0.0 {
                // coincident iterates: nudge apart deterministically
                z[k] += Complex64::new(1e-8 * radius, 1e-8 * radius);
                worst = f64::INFINITY;
                continue;
            }
            let step = eval(&monic, z[k]) / den;
            z[k] -= step;
            worst = worst.max(step.norm() / (1.0 + z[k].norm()));
        }
        if worst < 1e-14 {
            return Ok(z);
        }
    }
    // accept a slightly looser tolerance before giving up (multiple roots
    // converge only linearly)
    let residual_ok = z
        .iter()
        .all(|&r| eval(&monic, r).norm() <= 1e-9 * (1.0 + r.norm().powi(degree as i32)));
    if residual_ok {
        Ok(z)
    } else {
        Err(RootError::DidNotConverge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sort_key(z: &Complex64) -> (i64, i64) {
        ((z.re * 1e9) as i64, (z.im * 1e9) as i64)
    }

    #[test]
    fn linear_and_quadratic() {
        assert_eq!(roots(&[c(-2.0, 0.0), c(1.0, 0.0)]).unwrap(), alloc::vec![c(2.0, 0.0)]);
        let mut r = roots(&[c(2.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]).unwrap();
        r.sort_by_key(sort_key);
        assert!((r[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn recovers_random_roots() {
        let expected = [c(1.5, 0.3), c(-0.2, 1.1), c(0.0, -2.0), c(3.0, 0.0), c(-1.0, -1.0)];
        let p = from_roots(&expected);
        let mut got = roots(&p).unwrap();
        let mut want = expected.to_vec();
        got.sort_by_key(sort_key);
        want.sort_by_key(sort_key);
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-10, "{g} vs {w}");
        }
    }

    #[test]
    fn roots_of_unity_with_symmetric_structure() {
        // z^6 - 1: a fully symmetric configuration
        let mut p = alloc::vec![c(0.0, 0.0); 7];
        p[0] = c(-1.0, 0.0);
        p[6] = c(1.0, 0.0);
        let got = roots(&p).unwrap();
        for r in got {
            assert!((r.norm() - 1.0).abs() < 1e-10);
            assert!(eval(&p, r).norm() < 1e-10);
        }
    }

    #[test]
    fn double_root_converges_by_residual() {
        // (z-1)^2 (z+2)
        let p = from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]);
        let got = roots(&p).unwrap();
        for r in got {
            assert!(eval(&p, r).norm() < 1e-8);
        }
    }

    #[test]
    fn derivative_and_mul() {
        let p = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        assert_eq!(derivative(&p), alloc::vec![c(2.0, 0.0), c(6.0, 0.0)]);
        let q = mul(&[c(1.0, 0.0), c(1.0, 0.0)], &[c(-1.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(q, alloc::vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert_eq!(roots(&[c(0.0, 0.0)]), Err(RootError::ZeroPolynomial));
    }
}
