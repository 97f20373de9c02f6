//! Boundary integration: recursive adaptive Simpson plus the closed-form
//! circle integrals.
//!
//! Adaptive Simpson accepts a panel when the Richardson difference of the
//! coarse and bisected Simpson sums is small, `|S₂ − S₁| ≤ 15·τ`, where the
//! local tolerance `τ` is the per-panel share of the requested absolute
//! tolerance, floored at a few ulps of the local sum so that the test stays
//! meaningful on integrands whose magnitude puts the request below f64
//! resolution. Each accepted panel contributes the extrapolated value
//! `S₂ + (S₂ − S₁)/15`.
//!
//! Integrands with an integrable power singularity at a panel endpoint
//! (corner-adapted trial functions) go through [`integrate_panel`], which
//! regularizes the endpoint with the substitution `t = a + (b−a)u⁶` before
//! recursing; the transformed integrand vanishes at the corner instead of
//! blowing up, and adaptive Simpson converges at full rate.

use core::fmt;

use num_complex::Complex64;
// f64 math comes from the trait in no_std builds; std's inherent
// methods shadow it under cfg(test).
#[allow(unused_imports)]
use num_traits::Float;

/// Tolerances and limits for one boundary integral.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureConfig {
    /// Absolute tolerance per integral.
    pub abs_tol: f64,
    /// Maximum bisection depth below the initial panels.
    pub max_depth: u32,
    /// Initial equal panels the interval is split into before recursion.
    pub min_intervals: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { abs_tol: 1e-9, max_depth: 50, min_intervals: 8 }
    }
}

/// Why an integral could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadratureError {
    /// Recursion hit `max_depth` before the acceptance test passed; carries
    /// the partial estimate accumulated so far.
    MaxDepthExceeded { partial: Complex64 },
    /// The integrand was non-finite away from a removable endpoint.
    NonFiniteIntegrand { t: f64 },
    /// A closed-form circle integral was requested with a pole on the contour.
    PoleOnContour,
}

impl fmt::Display for QuadratureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadratureError::MaxDepthExceeded { .. } => {
                write!(f, "adaptive quadrature did not converge within the depth limit")
            }
            QuadratureError::NonFiniteIntegrand { t } => {
                write!(f, "integrand is non-finite at t = {t}")
            }
            QuadratureError::PoleOnContour => write!(f, "pole lies on the integration contour"),
        }
    }
}

impl core::error::Error for QuadratureError {}

// Acceptance floor in ulps of the local Simpson sum. Below this the
// Richardson difference is dominated by evaluation rounding (boundary
// points and trial-function values are themselves only eps-accurate) and
// cannot shrink further no matter how deep the recursion goes.
const REL_FLOOR: f64 = 16.0 * f64::EPSILON;

fn simpson(fa: Complex64, fm: Complex64, fb: Complex64, h: f64) -> Complex64 {
    (fa + 4.0 * fm + fb) * (h / 6.0)
}

struct Recursion<'a, F> {
    f: &'a mut F,
}

impl<F: FnMut(f64) -> Complex64> Recursion<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn run(
        &mut self,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> Result<(Complex64, f64), QuadratureError> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let s2 = left + right;
        let diff = s2 - whole;
        let accept = diff.norm() <= 15.0 * tol.max(REL_FLOOR * s2.norm());
        if accept {
            return Ok((s2 + diff / 15.0, diff.norm() / 15.0));
        }
        if depth == 0 {
            return Err(QuadratureError::MaxDepthExceeded { partial: s2 + diff / 15.0 });
        }
        let (vl, el) = self.run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let (vr, er) = self.run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok((vl + vr, el + er))
    }
}

/// ∫ₐᵇ f(t) dt by recursive adaptive Simpson with Richardson acceptance.
///
/// Returns the value and an a-posteriori error estimate (the sum of the
/// accepted Richardson differences). Non-finite values at the outer
/// endpoints are retried a tiny step inside the interval, so integrable
/// endpoint singularities do not poison the first Simpson sum.
pub fn adaptive_simpson<F>(
    f: &mut F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64), QuadratureError>
where
    F: FnMut(f64) -> Complex64,
{
    if a == b {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let panels = cfg.min_intervals.max(1);
    let width = (b - a) / panels as f64;
    let tol = cfg.abs_tol / panels as f64;
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    fn guarded<F: FnMut(f64) -> Complex64>(
        f: &mut F,
        t: f64,
        lo: f64,
        hi: f64,
    ) -> Result<Complex64, QuadratureError> {
        let v = f(t);
        if v.is_finite() {
            return Ok(v);
        }
        let nudge = (hi - lo) * 1e-13;
        let t2 = if t <= lo { t + nudge } else if t >= hi { t - nudge } else { t };
        let v2 = f(t2);
        if v2.is_finite() {
            Ok(v2)
        } else {
            Err(QuadratureError::NonFiniteIntegrand { t })
        }
    }
    for i in 0..panels {
        let pa = a + i as f64 * width;
        let pb = if i + 1 == panels { b } else { a + (i + 1) as f64 * width };
        let fa = guarded(f, pa, pa, pb)?;
        let fb = guarded(f, pb, pa, pb)?;
        let fm = guarded(f, 0.5 * (pa + pb), pa, pb)?;
        let whole = simpson(fa, fm, fb, pb - pa);
        let mut rec = Recursion { f };
        let (v, e) = rec.run(pa, pb, fa, fm, fb, whole, tol, cfg.max_depth)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

/// Endpoint regularity of one smooth boundary panel.
#[derive(Debug, Clone, Copy, Default)]
pub struct PanelSingularity {
    /// Integrand has a power singularity at the left endpoint.
    pub at_start: bool,
    /// Integrand has a power singularity at the right endpoint.
    pub at_end: bool,
}

const GRADING_POWER: f64 = 6.0;
// Inside this neighborhood of the singular endpoint the transformed
// integrand is analytically zero to working precision.
const GRADED_CUTOFF: f64 = 1e-4;

fn graded_one_sided<F>(
    f: &mut F,
    a: f64,
    b: f64,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64), QuadratureError>
where
    F: FnMut(f64) -> Complex64,
{
    // t = a + (b−a)·u^6, singularity at t = a mapped to u = 0 where the
    // Jacobian factor u^5 dominates any integrable power of |t − a|.
    let span = b - a;
    let mut g = |u: f64| -> Complex64 {
        if u.abs() < GRADED_CUTOFF {
            return Complex64::new(0.0, 0.0);
        }
        let u5 = u.powi(5);
        let t = a + span * u.powi(6);
        let v = f(t) * (GRADING_POWER * span * u5);
        if v.is_finite() {
            v
        } else {
            Complex64::new(0.0, 0.0)
        }
    };
    adaptive_simpson(&mut g, 0.0, 1.0, cfg)
}

/// Integrate one smooth panel, regularizing singular endpoints.
pub fn integrate_panel<F>(
    f: &mut F,
    a: f64,
    b: f64,
    sing: PanelSingularity,
    cfg: &QuadratureConfig,
) -> Result<(Complex64, f64), QuadratureError>
where
    F: FnMut(f64) -> Complex64,
{
    match (sing.at_start, sing.at_end) {
        (false, false) => adaptive_simpson(f, a, b, cfg),
        (true, false) => graded_one_sided(f, a, b, cfg),
        (false, true) => {
            let mut rev = |t: f64| f(a + b - t);
            graded_one_sided(&mut rev, a, b, cfg)
        }
        (true, true) => {
            let m = 0.5 * (a + b);
            let half = QuadratureConfig { abs_tol: 0.5 * cfg.abs_tol, ..*cfg };
            let (v1, e1) = graded_one_sided(f, a, m, &half)?;
            let mut rev = |t: f64| f(m + b - t);
            let (v2, e2) = graded_one_sided(&mut rev, m, b, &half)?;
            Ok((v1 + v2, e1 + e2))
        }
    }
}

const CONTOUR_EPS: f64 = 1e-12;

fn on_contour(p: Complex64, center: Complex64, radius: f64) -> bool {
    ((p - center).norm() - radius).abs() <= CONTOUR_EPS * radius.max(1.0)
}

/// ∫ over the circle `|z−c| = r` of `(z−a)⁻¹ · conj((z−b)⁻¹) |dz|`, closed form.
///
/// Writing `|dz| = −i r dz/(z−c)` and `conj(z−b) = (c̄−b̄)(z−c)·(z−c)⁻¹·…`
/// on the contour turns the integral into `−i r ∮ dz / [(z−a)·((c̄−b̄)(z−c)+r²)]`,
/// whose poles are `a` and the reflection `w = c + r²/(b̄−c̄)` of `b` across
/// the circle. Residue bookkeeping collapses to three cases:
///
/// * both poles on the same side of the contour as their "partner"
///   (`a`, `b` both inside): only `a` contributes,
/// * `a`, `b` on opposite sides: the residues cancel exactly and the
///   integral is zero,
/// * both outside: only the reflection point `w` contributes.
pub fn circle_pair_integral(
    a: Complex64,
    b: Complex64,
    center: Complex64,
    radius: f64,
) -> Result<Complex64, QuadratureError> {
    if on_contour(a, center, radius) || on_contour(b, center, radius) {
        return Err(QuadratureError::PoleOnContour);
    }
    let a_in = (a - center).norm() < radius;
    let b_in = (b - center).norm() < radius;
    let q = center.conj() - b.conj();
    let tau_r = 2.0 * core::f64::consts::PI * radius;
    if a_in && b_in {
        Ok(tau_r / (q * (a - center) + radius * radius))
    } else if a_in != b_in {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        let w = center + radius * radius / (b - center).conj();
        Ok(tau_r / ((w - a) * q))
    }
}

/// ∫ over the circle `|z−c| = r` of `(z−a)⁻¹ |dz|`, closed form.
///
/// Zero when `a` is inside (the residues at `a` and `c` cancel), and
/// `2πr/(c−a)` when `a` is outside.
pub fn circle_moment(a: Complex64, center: Complex64, radius: f64) -> Result<Complex64, QuadratureError> {
    if on_contour(a, center, radius) {
        return Err(QuadratureError::PoleOnContour);
    }
    if (a - center).norm() < radius {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        Ok(2.0 * core::f64::consts::PI * radius / (center - a))
    }
}
