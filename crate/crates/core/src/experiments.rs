//! Experiment harnesses built on the capacity solver.
//!
//! Two families of experiments live here:
//!
//! * **Union-ratio sweeps.** For two families of disk centers and a shared
//!   radius `r`, the certified bracket of
//!   `R(r) = γ(E_r ∪ F_r) / (γ(E_r) + γ(F_r))` is computed over a radius
//!   grid; helpers fit the small-`r` behavior `R(r) = 1 − C·r² + O(r³)` and
//!   scan for certified monotonicity violations.
//!
//! * **Rational level-set verification.** A rational map
//!   `R(z) = Σ aⱼ/(z−pⱼ)` with all critical values inside the unit disk is
//!   its own extremal function on `{|R| ≥ 1}` exactly when the capacity of
//!   that set equals `Σ aⱼ`; the verifier traces the level curves
//!   `R(z) = e^{it}`, brackets the capacity over them, and issues a
//!   verdict.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::fmt;

use num_complex::Complex64;
// f64 math comes from the trait in no_std builds; std's inherent
// methods shadow it under cfg(test).
#[allow(unused_imports)]
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::basis::{simple_pole_basis, BasisFunction, BasisSet};
use crate::capacity::{
    assemble, assemble_contours, lower_bound, upper_bound, CapacityBounds, CapacityError, Contour,
    DEFAULT_CONDITION_LIMIT,
};
use crate::geometry::{equal_disks, min_pairwise_gap, GeometryError};
use crate::poly;
use crate::quadrature::QuadratureConfig;
use crate::Clock;

/// Errors from the experiment harnesses.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentError {
    BadConfig(&'static str),
    Geometry(GeometryError),
    Capacity(CapacityError),
    RootFinding(poly::RootError),
    /// A critical value of the map lies on or outside the unit circle, so
    /// the sublevel set is not a union of Jordan domains of full degree.
    CriticalValueOutsideDisk { values: Vec<Complex64> },
    /// Two strands could not be disambiguated at the given sample count.
    StrandAmbiguity { samples: usize },
    /// A traced strand failed to close up.
    StrandNotClosed { strand: usize, defect: f64 },
    /// Rejection sampling could not place the requested centers.
    PackingFailed,
    /// Too few usable points for the asymptotic fit.
    TooFewPoints,
}

impl fmt::Display for ExperimentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentError::BadConfig(msg) => write!(f, "bad configuration: {msg}"),
            ExperimentError::Geometry(e) => write!(f, "geometry error: {e}"),
            ExperimentError::Capacity(e) => write!(f, "capacity solve failed: {e}"),
            ExperimentError::RootFinding(e) => write!(f, "root finding failed: {e}"),
            ExperimentError::CriticalValueOutsideDisk { .. } => {
                write!(f, "a critical value lies outside the open unit disk")
            }
            ExperimentError::StrandAmbiguity { samples } => {
                write!(f, "strand assignment ambiguous at {samples} samples; double the sample count")
            }
            ExperimentError::StrandNotClosed { strand, defect } => {
                write!(f, "strand {strand} failed to close (defect {defect:.3e})")
            }
            ExperimentError::PackingFailed => write!(f, "random center packing failed"),
            ExperimentError::TooFewPoints => write!(f, "need at least 3 points below the fit threshold"),
        }
    }
}

impl core::error::Error for ExperimentError {}

impl From<GeometryError> for ExperimentError {
    fn from(e: GeometryError) -> Self {
        ExperimentError::Geometry(e)
    }
}

impl From<CapacityError> for ExperimentError {
    fn from(e: CapacityError) -> Self {
        ExperimentError::Capacity(e)
    }
}

impl From<poly::RootError> for ExperimentError {
    fn from(e: poly::RootError) -> Self {
        ExperimentError::RootFinding(e)
    }
}

// ---------------------------------------------------------------------------
// Union-ratio sweeps
// ---------------------------------------------------------------------------

/// Two families of disk centers plus the radius grid to sweep.
#[derive(Debug, Clone)]
pub struct DiskPairConfig {
    pub centers_e: Vec<Complex64>,
    pub centers_f: Vec<Complex64>,
    /// Radii to evaluate, each in `(0, δ/2)` with `δ` the minimal distance
    /// between any two of the `n+m` centers.
    pub radii: Vec<f64>,
    /// The minimal center distance δ.
    pub min_gap: f64,
}

impl DiskPairConfig {
    pub fn new(
        centers_e: Vec<Complex64>,
        centers_f: Vec<Complex64>,
        radii: Vec<f64>,
    ) -> Result<Self, ExperimentError> {
        if centers_e.is_empty() || centers_f.is_empty() {
            return Err(ExperimentError::BadConfig("both center families must be nonempty"));
        }
        let mut all = centers_e.clone();
        all.extend_from_slice(&centers_f);
        let min_gap = min_pairwise_gap(&all)?;
        if radii.is_empty() {
            return Err(ExperimentError::BadConfig("radius grid is empty"));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r < min_gap / 2.0)) {
            return Err(ExperimentError::BadConfig("every radius must lie in (0, δ/2)"));
        }
        Ok(DiskPairConfig { centers_e, centers_f, radii, min_gap })
    }

    /// Default grid: `steps` radii equally spaced from `δ/1000` to `0.499·δ`.
    pub fn with_default_grid(
        centers_e: Vec<Complex64>,
        centers_f: Vec<Complex64>,
        steps: usize,
    ) -> Result<Self, ExperimentError> {
        if steps == 0 {
            return Err(ExperimentError::BadConfig("need at least one radius step"));
        }
        let mut all = centers_e.clone();
        all.extend_from_slice(&centers_f);
        let delta = min_pairwise_gap(&all)?;
        let lo = delta / 1000.0;
        let hi = 0.499 * delta;
        let radii = (0..steps)
            .map(|i| {
                if steps == 1 {
                    lo
                } else {
                    lo + (hi - lo) * i as f64 / (steps - 1) as f64
                }
            })
            .collect();
        DiskPairConfig::new(centers_e, centers_f, radii)
    }
}

/// Certified bracket of the union ratio at one radius.
#[derive(Debug, Clone, Copy)]
pub struct RatioPoint {
    pub r: f64,
    pub ratio_lower: f64,
    pub ratio_upper: f64,
    /// `(lower, upper)` for `γ(E_r ∪ F_r)`.
    pub union_bounds: (f64, f64),
    pub e_bounds: (f64, f64),
    pub f_bounds: (f64, f64),
}

/// Per-point solver policy for the sweep.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Ring count the per-point solve starts at.
    pub start_rings: u32,
    /// Ring count refinement stops at.
    pub max_rings: u32,
    /// Refine until the ratio bracket is at most this wide.
    pub ratio_gap_target: f64,
    pub quadrature: QuadratureConfig,
    pub condition_limit: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            start_rings: 1,
            max_rings: 3,
            ratio_gap_target: 1e-3,
            quadrature: QuadratureConfig::default(),
            condition_limit: DEFAULT_CONDITION_LIMIT,
        }
    }
}

fn disk_family_bracket(
    centers: &[Complex64],
    r: f64,
    rings: u32,
    cfg: &SweepConfig,
) -> Result<(f64, f64), CapacityError> {
    let set = equal_disks(centers, r);
    let basis = simple_pole_basis(&set, rings);
    let sys = assemble(&set, &basis, &cfg.quadrature)?;
    let u = upper_bound(&sys, cfg.condition_limit)?.value;
    let l = lower_bound(&sys, cfg.condition_limit)?.value;
    Ok((l, u))
}

/// Certified ratio bracket at one radius, refining rings until the bracket
/// is tight enough (or the ring cap is reached).
pub fn ratio_point(cfg: &DiskPairConfig, r: f64, sweep: &SweepConfig) -> Result<RatioPoint, ExperimentError> {
    if !(r > 0.0 && r < cfg.min_gap / 2.0) {
        return Err(ExperimentError::BadConfig("radius outside (0, δ/2)"));
    }
    let mut all = cfg.centers_e.clone();
    all.extend_from_slice(&cfg.centers_f);
    let mut rings = sweep.start_rings;
    loop {
        let union = disk_family_bracket(&all, r, rings, sweep)?;
        let e = disk_family_bracket(&cfg.centers_e, r, rings, sweep)?;
        let f = disk_family_bracket(&cfg.centers_f, r, rings, sweep)?;
        let ratio_lower = union.0 / (e.1 + f.1);
        let ratio_upper = union.1 / (e.0 + f.0);
        let point = RatioPoint {
            r,
            ratio_lower,
            ratio_upper,
            union_bounds: union,
            e_bounds: e,
            f_bounds: f,
        };
        let tight = ratio_upper - ratio_lower <= sweep.ratio_gap_target;
        // When the upper end hovers just above 1 the bracket is refined
        // further: either it drops below 1 or a genuine violation stays
        // certified at the tightest available ring count.
        let needs_violation_resolution = ratio_upper > 1.0 + 1e-8 && ratio_upper - ratio_lower > 1e-9;
        if (tight && !needs_violation_resolution) || rings >= sweep.max_rings {
            return Ok(point);
        }
        rings += 1;
    }
}

/// Sweep the whole radius grid; failed points are reported as `None`
/// rather than aborting the sweep.
pub fn ratio_sweep(cfg: &DiskPairConfig, sweep: &SweepConfig) -> Vec<(f64, Option<RatioPoint>)> {
    cfg.radii
        .iter()
        .map(|&r| (r, ratio_point(cfg, r, sweep).ok()))
        .collect()
}

/// Least-squares fit of `(1 − R)/r²` to a constant over the points with
/// `r ≤ r_threshold`.
#[derive(Debug, Clone, Copy)]
pub struct AsymptoticFit {
    /// Fitted quadratic coefficient `C` of `R(r) ≈ 1 − C·r²`.
    pub c: f64,
    /// Root-mean-square residual of the fit relative to `|C|`.
    pub residual: f64,
    pub points_used: usize,
}

pub fn asymptotic_fit(points: &[RatioPoint], r_threshold: f64) -> Result<AsymptoticFit, ExperimentError> {
    let ys: Vec<f64> = points
        .iter()
        .filter(|p| p.r <= r_threshold)
        .map(|p| {
            let mid = 0.5 * (p.ratio_lower + p.ratio_upper);
            (1.0 - mid) / (p.r * p.r)
        })
        .collect();
    if ys.len() < 3 {
        return Err(ExperimentError::TooFewPoints);
    }
    let n = ys.len() as f64;
    let c = ys.iter().sum::<f64>() / n;
    let mss = ys.iter().map(|y| (y - c) * (y - c)).sum::<f64>() / n;
    Ok(AsymptoticFit { c, residual: mss.sqrt() / c.abs(), points_used: ys.len() })
}

/// A certified increase of the ratio between two adjacent radii.
#[derive(Debug, Clone, Copy)]
pub struct MonotonicityViolation {
    pub r_from: f64,
    pub r_to: f64,
    /// `ratio_lower(r_to) − ratio_upper(r_from) > 0`.
    pub certified_increase: f64,
}

/// Scan consecutive points (sorted by `r`) for certified increases. An
/// empty result is consistent with the ratio being decreasing.
pub fn monotonicity_scan(points: &[RatioPoint]) -> Vec<MonotonicityViolation> {
    let mut out = Vec::new();
    for w in points.windows(2) {
        if w[1].ratio_lower > w[0].ratio_upper {
            out.push(MonotonicityViolation {
                r_from: w[0].r,
                r_to: w[1].r,
                certified_increase: w[1].ratio_lower - w[0].ratio_upper,
            });
        }
    }
    out
}

/// Draw `n_e + n_f` centers uniformly from a square of the given side,
/// rejecting candidates closer than `min_gap` to an accepted center.
/// Deterministic in the seed.
pub fn random_disk_centers(
    n_e: usize,
    n_f: usize,
    min_gap: f64,
    box_side: f64,
    seed: u64,
) -> Result<(Vec<Complex64>, Vec<Complex64>), ExperimentError> {
    let total = n_e + n_f;
    if total == 0 || min_gap <= 0.0 || box_side <= 0.0 {
        return Err(ExperimentError::BadConfig("need positive counts, gap and box side"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = move || {
        // 53 random bits into [0, 1)
        (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut accepted: Vec<Complex64> = Vec::with_capacity(total);
    let mut attempts = 0usize;
    while accepted.len() < total {
        attempts += 1;
        if attempts > 20_000 * total {
            return Err(ExperimentError::PackingFailed);
        }
        let cand = Complex64::new(uniform() * box_side, uniform() * box_side);
        if accepted.iter().all(|&p| (p - cand).norm() >= min_gap) {
            accepted.push(cand);
        }
    }
    let f = accepted.split_off(n_e);
    Ok((accepted, f))
}

// ---------------------------------------------------------------------------
// Rational level-set verification
// ---------------------------------------------------------------------------

/// `R(z) = Σ aⱼ/(z−pⱼ)` with distinct simple poles and nonzero residues.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    residues: Vec<Complex64>,
    poles: Vec<Complex64>,
}

impl RationalMap {
    pub fn new(residues: Vec<Complex64>, poles: Vec<Complex64>) -> Result<Self, ExperimentError> {
        if residues.len() != poles.len() || poles.is_empty() {
            return Err(ExperimentError::BadConfig("residue and pole lists must match and be nonempty"));
        }
        if residues.iter().any(|a| a.norm() == 0.0) {
            return Err(ExperimentError::BadConfig("residues must be nonzero"));
        }
        for i in 0..poles.len() {
            for j in (i + 1)..poles.len() {
                if poles[i] == poles[j] {
                    return Err(ExperimentError::BadConfig("poles must be pairwise distinct"));
                }
            }
        }
        Ok(RationalMap { residues, poles })
    }

    pub fn degree(&self) -> usize {
        self.poles.len()
    }

    pub fn residues(&self) -> &[Complex64] {
        &self.residues
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    /// `R'(∞) = Σ aⱼ`.
    pub fn residue_sum(&self) -> Complex64 {
        self.residues.iter().sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.residues
            .iter()
            .zip(&self.poles)
            .map(|(a, p)| a / (z - p))
            .sum()
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        -self
            .residues
            .iter()
            .zip(&self.poles)
            .map(|(a, p)| {
                let d = z - p;
                a / (d * d)
            })
            .sum::<Complex64>()
    }

    /// Numerator and denominator of `R = P/Q` with `Q = Π (z−pⱼ)` monic,
    /// ascending coefficients.
    pub fn as_fraction(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        let q = poly::from_roots(&self.poles);
        let mut p = vec![Complex64::new(0.0, 0.0); self.poles.len()];
        for (j, &a) in self.residues.iter().enumerate() {
            let others: Vec<Complex64> = self
                .poles
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != j)
                .map(|(_, &pk)| pk)
                .collect();
            let term = poly::from_roots(&others);
            for (i, &t) in term.iter().enumerate() {
                p[i] += a * t;
            }
        }
        (p, q)
    }
}

/// Critical values of the map and whether they all sit strictly inside the
/// unit disk, the condition for the complement of `{|R| ≥ 1}` to be a
/// degree-n union of Jordan domains (one per pole).
#[derive(Debug, Clone)]
pub struct CriticalReport {
    pub all_inside: bool,
    pub critical_values: Vec<Complex64>,
    pub critical_points: Vec<Complex64>,
}

pub fn critical_values_in_disk(map: &RationalMap) -> Result<CriticalReport, ExperimentError> {
    let (p, q) = map.as_fraction();
    let dp = poly::derivative(&p);
    let dq = poly::derivative(&q);
    // numerator of R': P'Q − PQ'
    let numerator = poly::sub_scaled(&poly::mul(&dp, &q), &poly::mul(&p, &dq), Complex64::new(1.0, 0.0));
    let critical_points = poly::roots(&numerator)?;
    let critical_values: Vec<Complex64> = critical_points.iter().map(|&z| map.eval(z)).collect();
    let all_inside = critical_values.iter().all(|v| v.norm() < 1.0);
    Ok(CriticalReport { all_inside, critical_values, critical_points })
}

/// Sampled level curves of `R(z) = e^{it}`, one closed strand per pole.
#[derive(Debug, Clone)]
pub struct TracedBoundary {
    /// Strand `s` sample `m` is the root at `t = 2πm/samples` that
    /// continues strand `s`.
    pub strands: Vec<Vec<Complex64>>,
    pub samples: usize,
}

fn level_roots(p: &[Complex64], q: &[Complex64], w: Complex64) -> Result<Vec<Complex64>, ExperimentError> {
    let shifted = poly::sub_scaled(p, q, w);
    Ok(poly::roots(&shifted)?)
}

/// Trace the `n` level-curve strands with `samples` points each, assigning
/// roots to strands by nearest-neighbor continuation from the previous
/// parameter.
pub fn trace_boundary(map: &RationalMap, samples: usize) -> Result<TracedBoundary, ExperimentError> {
    if samples < 8 {
        return Err(ExperimentError::BadConfig("need at least 8 samples"));
    }
    let n = map.degree();
    let (p, q) = map.as_fraction();
    let centroid = map.poles.iter().sum::<Complex64>() / n as f64;
    let scale = 1.0
        + map
            .poles
            .iter()
            .map(|z| (z - centroid).norm())
            .fold(0.0, f64::max);

    // start at t = 0, ordered by argument about the pole centroid (modulus
    // breaks ties) for a deterministic strand labeling
    let mut start = level_roots(&p, &q, Complex64::new(1.0, 0.0))?;
    start.sort_by(|a, b| {
        let ka = ((a - centroid).arg(), a.norm());
        let kb = ((b - centroid).arg(), b.norm());
        ka.partial_cmp(&kb).unwrap_or(core::cmp::Ordering::Equal)
    });
    let mut strands: Vec<Vec<Complex64>> = start.iter().map(|&z| vec![z]).collect();

    let mut prev = start;
    for m in 1..=samples {
        let t = TAU * m as f64 / samples as f64;
        let w = Complex64::new(t.cos(), t.sin());
        let mut next = Vec::with_capacity(n);
        for &z0 in &prev {
            next.push(newton_level(map, w, z0).ok_or(ExperimentError::StrandAmbiguity { samples })?);
        }
        // collision check: distinct strands must stay distinct
        for i in 0..n {
            for j in (i + 1)..n {
                if (next[i] - next[j]).norm() < 1e-8 * scale {
                    return Err(ExperimentError::StrandAmbiguity { samples });
                }
            }
        }
        if m < samples {
            for (s, &z) in next.iter().enumerate() {
                strands[s].push(z);
            }
        } else {
            // closure check back at t = 2π
            for (s, &z) in next.iter().enumerate() {
                let defect = (z - strands[s][0]).norm();
                if defect > 1e-8 * scale {
                    return Err(ExperimentError::StrandNotClosed { strand: s, defect });
                }
            }
        }
        prev = next;
    }
    Ok(TracedBoundary { strands, samples })
}

fn newton_level(map: &RationalMap, w: Complex64, start: Complex64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..60 {
        let f = map.eval(z) - w;
        if f.norm() < 1e-13 {
            // polish to the f64 fixed point; high-order trial functions
            // amplify any residual root jitter into integrand noise
            for _ in 0..2 {
                let d = map.derivative(z);
                if d.norm() == 0.0 {
                    break;
                }
                z -= (map.eval(z) - w) / d;
            }
            return Some(z);
        }
        let d = map.derivative(z);
        if d.norm() == 0.0 {
            return None;
        }
        z -= f / d;
    }
    let f = map.eval(z) - w;
    (f.norm() < 1e-11).then_some(z)
}

/// One traced strand as an integration contour. Points are refined on the
/// fly by Newton continuation from the stored samples, and the speed comes
/// from differentiating `R(z(t)) = e^{2πit}`:
/// `|dz/dt| = 2π/|R'(z)|`.
pub struct StrandContour<'a> {
    map: &'a RationalMap,
    samples: &'a [Complex64],
}

impl<'a> StrandContour<'a> {
    pub fn new(map: &'a RationalMap, samples: &'a [Complex64]) -> Self {
        StrandContour { map, samples }
    }
}

impl Contour for StrandContour<'_> {
    fn at(&self, t: f64) -> (Complex64, f64) {
        let t = t - t.floor();
        let n = self.samples.len();
        let idx = ((t * n as f64).round() as usize) % n;
        let theta = TAU * t;
        let w = Complex64::new(theta.cos(), theta.sin());
        match newton_level(self.map, w, self.samples[idx]) {
            Some(z) => (z, TAU / self.map.derivative(z).norm()),
            None => (Complex64::new(f64::NAN, f64::NAN), f64::NAN),
        }
    }

    fn breaks(&self) -> Vec<f64> {
        vec![0.0, 1.0]
    }
}

/// Verdict of the level-set capacity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AhlforsVerdict {
    /// The residue sum lies inside the (tight) certified bracket,
    /// consistent with the map being its own extremal function.
    Ahlfors,
    /// The bracket certifiably excludes the residue sum.
    NotAhlfors,
    /// The bracket is too loose to decide.
    Inconclusive,
}

/// Full report of [`verify_ahlfors`].
#[derive(Debug, Clone)]
pub struct AhlforsReport {
    pub verdict: AhlforsVerdict,
    pub residue_sum: Complex64,
    /// Best certified bracket for the capacity of `{|R| ≥ 1}`.
    pub lower: f64,
    pub upper: f64,
    pub stages: Vec<CapacityBounds>,
    pub critical_values: Vec<Complex64>,
    /// Verdict tolerance τ actually used.
    pub tolerance: f64,
    pub samples: usize,
}

/// Configuration of the verifier.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Maximal pole order of the trial family.
    pub degree: u32,
    /// Initial boundary sample count (doubled on strand ambiguity).
    pub samples: usize,
    pub quadrature: QuadratureConfig,
    pub condition_limit: f64,
    /// Verdict tolerance τ; defaults to the achieved bracket gap.
    pub tolerance: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            degree: 6,
            samples: 1024,
            quadrature: QuadratureConfig::default(),
            condition_limit: DEFAULT_CONDITION_LIMIT,
            tolerance: None,
        }
    }
}

// A verdict of `Ahlfors` additionally requires the bracket width to be
// below this relative share of the residue sum; a loose bracket that merely
// contains the target is reported as inconclusive.
const CONFIRM_WIDTH_FACTOR: f64 = 10.0 * 1e-6;

/// Bracket the capacity of `{|R| ≥ 1}` over the traced level curves with
/// pole orders `1..=degree` and compare against `|Σ aⱼ|`.
pub fn verify_ahlfors(
    map: &RationalMap,
    cfg: &VerifyConfig,
    clock: &dyn Clock,
) -> Result<AhlforsReport, ExperimentError> {
    let critical = critical_values_in_disk(map)?;
    if !critical.all_inside {
        return Err(ExperimentError::CriticalValueOutsideDisk { values: critical.critical_values });
    }

    // trace, doubling the sample count on ambiguity
    let mut samples = cfg.samples.max(8);
    let traced = loop {
        match trace_boundary(map, samples) {
            Ok(t) => break t,
            Err(ExperimentError::StrandAmbiguity { .. }) | Err(ExperimentError::StrandNotClosed { .. })
                if samples < cfg.samples.max(8) * 64 =>
            {
                samples *= 2;
            }
            Err(e) => return Err(e),
        }
    };

    // each pole must sit inside exactly one strand
    for &pole in &map.poles {
        let enclosing = traced
            .strands
            .iter()
            .filter(|s| winding_of_samples(s, pole) != 0)
            .count();
        if enclosing != 1 {
            return Err(ExperimentError::BadConfig("pole not enclosed by exactly one strand"));
        }
    }

    let contours: Vec<StrandContour<'_>> = traced
        .strands
        .iter()
        .map(|s| StrandContour { map, samples: s })
        .collect();
    let contour_refs: Vec<&dyn Contour> = contours.iter().map(|c| c as &dyn Contour).collect();

    let mut stages = Vec::new();
    for degree in 1..=cfg.degree {
        let t0 = clock.now();
        let mut functions = Vec::new();
        for k in 1..=degree {
            for &p in &map.poles {
                functions.push(BasisFunction::MultiPole { p, order: k });
            }
        }
        let basis = BasisSet { functions, stage: degree };
        let sys = assemble_contours(&contour_refs, &basis, &cfg.quadrature)?;
        let u = upper_bound(&sys, cfg.condition_limit)?;
        let l = lower_bound(&sys, cfg.condition_limit)?;
        stages.push(CapacityBounds {
            lower: l.value,
            upper: u.value,
            stage: degree,
            basis_size: basis.len(),
            condition_estimate: l.condition.max(u.condition),
            quad_tol: cfg.quadrature.abs_tol,
            elapsed: clock.now() - t0,
        });
    }

    let lower = stages.iter().map(|s| s.lower).fold(0.0, f64::max);
    let upper = stages.iter().map(|s| s.upper).fold(f64::INFINITY, f64::min);
    let target = map.residue_sum().norm();
    // default τ: the achieved gap, floored at roundoff scale so an
    // essentially exact bracket is not read as excluding its own endpoint
    let tol = cfg
        .tolerance
        .unwrap_or((upper - lower).max(1e-12 * (1.0 + target)));
    let verdict = if lower > target + tol || upper < target - tol {
        AhlforsVerdict::NotAhlfors
    } else if (lower - tol..=upper + tol).contains(&target) && upper - lower < CONFIRM_WIDTH_FACTOR * target {
        AhlforsVerdict::Ahlfors
    } else {
        AhlforsVerdict::Inconclusive
    };
    Ok(AhlforsReport {
        verdict,
        residue_sum: map.residue_sum(),
        lower,
        upper,
        stages,
        critical_values: critical.critical_values,
        tolerance: tol,
        samples,
    })
}

fn winding_of_samples(samples: &[Complex64], z: Complex64) -> i64 {
    let mut total = 0.0;
    let mut prev = samples[samples.len() - 1] - z;
    for &s in samples {
        let cur = s - z;
        total += (cur / prev).arg();
        prev = cur;
    }
    (total / TAU).round() as i64
}

// ---------------------------------------------------------------------------
// Symmetric families
// ---------------------------------------------------------------------------

/// Map with distinct real poles and positive residues; such maps are their
/// own extremal functions whenever the sublevel region has full degree.
pub fn reflection_symmetric_map(residues: &[f64], poles: &[f64]) -> Result<RationalMap, ExperimentError> {
    if residues.iter().any(|&a| a <= 0.0) {
        return Err(ExperimentError::BadConfig("residues must be positive"));
    }
    if !poles.iter().all(|p| p.is_finite()) {
        return Err(ExperimentError::BadConfig("poles must be finite reals"));
    }
    RationalMap::new(
        residues.iter().map(|&a| Complex64::new(a, 0.0)).collect(),
        poles.iter().map(|&p| Complex64::new(p, 0.0)).collect(),
    )
}

/// The rotation-symmetric family `a·z^{n−1}/(zⁿ−1)`: residues `a/n` at the
/// n-th roots of unity. Requires `n ≥ 2` and `0 < a < n·(n−1)^{(1−n)/n}`,
/// which keeps all critical values inside the unit disk.
pub fn rotation_symmetric_map(n: u32, a: f64) -> Result<RationalMap, ExperimentError> {
    if n < 2 {
        return Err(ExperimentError::BadConfig("need n >= 2"));
    }
    let nf = n as f64;
    let limit = nf * (nf - 1.0).powf((1.0 - nf) / nf);
    if !(a > 0.0 && a < limit) {
        return Err(ExperimentError::BadConfig("scale must satisfy 0 < a < n(n-1)^((1-n)/n)"));
    }
    let poles: Vec<Complex64> = (0..n)
        .map(|k| {
            let phi = TAU * k as f64 / nf;
            Complex64::new(phi.cos(), phi.sin())
        })
        .collect();
    let residues = vec![Complex64::new(a / nf, 0.0); n as usize];
    RationalMap::new(residues, poles)
}
