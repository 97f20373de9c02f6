//! Compact sets bounded by finitely many disjoint Jordan curves.
//!
//! A [`CompactSet`] is a list of positively-oriented [`BoundaryComponent`]s
//! together with one interior anchor point per component. Anchors seed the
//! pole layouts of the trial-function families and default to the component
//! center (or vertex centroid for piecewise curves).
//!
//! Every curve is parametrized over `t ∈ [0,1)` and traversed
//! counterclockwise with respect to the enclosed region. All values are
//! immutable after construction and all operations are pure.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::fmt;

use num_complex::Complex64;
// f64 math comes from the trait in no_std builds; std's inherent
// methods shadow it under cfg(test).
#[allow(unused_imports)]
use num_traits::Float;

/// One smooth piece of a piecewise-analytic Jordan curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArcSegment {
    /// Straight segment from `from` to `to`.
    Line { from: Complex64, to: Complex64 },
    /// Circular arc `center + radius·e^{iφ}`, `φ` running from `start` to
    /// `end` (counterclockwise when `end > start`).
    Arc {
        center: Complex64,
        radius: f64,
        start: f64,
        end: f64,
    },
}

impl ArcSegment {
    fn start_point(&self) -> Complex64 {
        match *self {
            ArcSegment::Line { from, .. } => from,
            ArcSegment::Arc { center, radius, start, .. } => {
                center + radius * Complex64::new(start.cos(), start.sin())
            }
        }
    }

    fn end_point(&self) -> Complex64 {
        match *self {
            ArcSegment::Line { to, .. } => to,
            ArcSegment::Arc { center, radius, end, .. } => {
                center + radius * Complex64::new(end.cos(), end.sin())
            }
        }
    }

    fn length(&self) -> f64 {
        match *self {
            ArcSegment::Line { from, to } => (to - from).norm(),
            ArcSegment::Arc { radius, start, end, .. } => radius * (end - start).abs(),
        }
    }

    /// Point, parametric speed and unit tangent at local parameter `s ∈ [0,1]`.
    fn at(&self, s: f64) -> (Complex64, f64, Complex64) {
        match *self {
            ArcSegment::Line { from, to } => {
                let d = to - from;
                let len = d.norm();
                (from + s * d, len, d / len)
            }
            ArcSegment::Arc { center, radius, start, end } => {
                let phi = start + s * (end - start);
                let e = Complex64::new(phi.cos(), phi.sin());
                let speed = radius * (end - start).abs();
                let tangent = Complex64::new(0.0, (end - start).signum()) * e;
                (center + radius * e, speed, tangent)
            }
        }
    }
}

/// A corner of a piecewise-analytic component: the vertex together with the
/// interior angle of the enclosed region at that vertex, in `(0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corner {
    pub vertex: Complex64,
    pub interior_angle: f64,
}

/// Geometric kind of one boundary curve.
#[derive(Debug, Clone, PartialEq)]
pub enum ComponentKind {
    Circle {
        center: Complex64,
        radius: f64,
    },
    /// Axis semi-lengths `semi_major ≥ semi_minor`, rotated by `rotation`
    /// radians about the center. Parametrization is the standard
    /// trigonometric one, not arclength-uniform.
    Ellipse {
        center: Complex64,
        semi_major: f64,
        semi_minor: f64,
        rotation: f64,
    },
    /// Closed chain of line segments and circular arcs, listed in
    /// counterclockwise order.
    PiecewiseArcs { segments: Vec<ArcSegment> },
}

/// One positively-oriented Jordan curve bounding a component of the set.
///
/// Corners are stored explicitly rather than detected: detecting them from
/// a parametrization is fragile, and the interior angle is needed to pick
/// the fractional-power exponent of the corner-adapted trial functions.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryComponent {
    pub kind: ComponentKind,
    pub corners: Vec<Corner>,
}

/// Point on a curve with the local parametric data used by quadrature.
#[derive(Debug, Clone, Copy)]
pub struct PointOnCurve {
    pub z: Complex64,
    /// `|dz/dt| > 0` except possibly at corner parameters.
    pub speed: f64,
    /// Unit tangent; at a corner parameter this is the one-sided tangent of
    /// the segment that starts there (right tangent).
    pub tangent: Complex64,
}

impl BoundaryComponent {
    pub fn circle(center: Complex64, radius: f64) -> Self {
        BoundaryComponent {
            kind: ComponentKind::Circle { center, radius },
            corners: Vec::new(),
        }
    }

    pub fn ellipse(center: Complex64, semi_major: f64, semi_minor: f64, rotation: f64) -> Self {
        BoundaryComponent {
            kind: ComponentKind::Ellipse { center, semi_major, semi_minor, rotation },
            corners: Vec::new(),
        }
    }

    /// Closed polygon through `vertices` in counterclockwise order. Interior
    /// angles are computed from adjacent edges, so every vertex is a corner.
    pub fn polygon(vertices: &[Complex64]) -> Self {
        let n = vertices.len();
        let mut segments = Vec::with_capacity(n);
        let mut corners = Vec::with_capacity(n);
        for i in 0..n {
            segments.push(ArcSegment::Line { from: vertices[i], to: vertices[(i + 1) % n] });
        }
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let here = vertices[i];
            let next = vertices[(i + 1) % n];
            // Interior angle between the incoming edge reversed and the
            // outgoing edge, measured inside a counterclockwise polygon.
            let incoming = (prev - here).arg();
            let outgoing = (next - here).arg();
            let mut angle = incoming - outgoing;
            while angle <= 0.0 {
                angle += TAU;
            }
            while angle > TAU {
                angle -= TAU;
            }
            corners.push(Corner { vertex: here, interior_angle: angle });
        }
        BoundaryComponent { kind: ComponentKind::PiecewiseArcs { segments }, corners }
    }

    pub fn piecewise(segments: Vec<ArcSegment>, corners: Vec<Corner>) -> Self {
        BoundaryComponent { kind: ComponentKind::PiecewiseArcs { segments }, corners }
    }

    /// Evaluate the parametrization at `t` (taken modulo 1, so values at `t`
    /// and `t + 1` agree exactly).
    pub fn parametrize(&self, t: f64) -> PointOnCurve {
        let t = t - t.floor();
        match &self.kind {
            ComponentKind::Circle { center, radius } => {
                let phi = TAU * t;
                let e = Complex64::new(phi.cos(), phi.sin());
                PointOnCurve {
                    z: center + radius * e,
                    speed: TAU * radius,
                    tangent: Complex64::new(0.0, 1.0) * e,
                }
            }
            ComponentKind::Ellipse { center, semi_major, semi_minor, rotation } => {
                let phi = TAU * t;
                let rot = Complex64::new(rotation.cos(), rotation.sin());
                let pos = Complex64::new(semi_major * phi.cos(), semi_minor * phi.sin());
                let vel = Complex64::new(-semi_major * phi.sin(), semi_minor * phi.cos());
                let speed = TAU * vel.norm();
                PointOnCurve {
                    z: center + rot * pos,
                    speed,
                    tangent: rot * vel / vel.norm(),
                }
            }
            ComponentKind::PiecewiseArcs { segments } => {
                let n = segments.len();
                let scaled = t * n as f64;
                let mut idx = scaled.floor() as usize;
                if idx >= n {
                    idx = n - 1;
                }
                let local = scaled - idx as f64;
                let (z, seg_speed, tangent) = segments[idx].at(local);
                PointOnCurve { z, speed: seg_speed * n as f64, tangent }
            }
        }
    }

    /// Total arclength. Closed form for circles and piecewise chains; for
    /// ellipses the elliptic integral is evaluated by the caller-supplied
    /// quadrature (see `capacity::assemble`), so this returns `None` there.
    pub fn arclength_closed_form(&self) -> Option<f64> {
        match &self.kind {
            ComponentKind::Circle { radius, .. } => Some(TAU * radius),
            ComponentKind::Ellipse { .. } => None,
            ComponentKind::PiecewiseArcs { segments } => {
                Some(segments.iter().map(ArcSegment::length).sum())
            }
        }
    }

    /// Parameters `t` at which the curve is allowed to be non-smooth: the
    /// segment joints of a piecewise chain, plus the endpoints `0` and `1`.
    /// These become quadrature panel boundaries.
    pub fn panel_breaks(&self) -> Vec<f64> {
        match &self.kind {
            ComponentKind::PiecewiseArcs { segments } => {
                let n = segments.len();
                (0..=n).map(|i| i as f64 / n as f64).collect()
            }
            _ => alloc::vec![0.0, 1.0],
        }
    }

    /// Vertex at parameter `t`, if `t` is a stored corner of the component.
    pub fn corner_at_param(&self, t: f64) -> Option<Complex64> {
        let p = self.parametrize(t).z;
        self.corners
            .iter()
            .find(|c| (c.vertex - p).norm() <= 1e-12 * (1.0 + p.norm()))
            .map(|c| c.vertex)
    }

    /// Strict interior test. Circles and ellipses are exact; piecewise
    /// chains use the winding number of a sampled polygon.
    pub fn contains(&self, z: Complex64) -> bool {
        match &self.kind {
            ComponentKind::Circle { center, radius } => (z - center).norm() < *radius,
            ComponentKind::Ellipse { center, semi_major, semi_minor, rotation } => {
                let rot = Complex64::new(rotation.cos(), rotation.sin());
                let w = (z - center) * rot.conj();
                let x = w.re / semi_major;
                let y = w.im / semi_minor;
                x * x + y * y < 1.0
            }
            ComponentKind::PiecewiseArcs { .. } => {
                let samples = 1024;
                let mut winding = 0.0;
                let mut prev = self.parametrize(0.0).z - z;
                for i in 1..=samples {
                    let cur = self.parametrize(i as f64 / samples as f64).z - z;
                    winding += (cur / prev).arg();
                    prev = cur;
                }
                (winding / TAU).round() as i64 != 0
            }
        }
    }

    /// Default anchor: center for circles and ellipses, vertex/endpoint
    /// centroid for piecewise chains.
    pub fn default_anchor(&self) -> Complex64 {
        match &self.kind {
            ComponentKind::Circle { center, .. } => *center,
            ComponentKind::Ellipse { center, .. } => *center,
            ComponentKind::PiecewiseArcs { segments } => {
                let mut sum = Complex64::new(0.0, 0.0);
                for s in segments {
                    sum += s.start_point();
                }
                sum / segments.len() as f64
            }
        }
    }

    fn finite(&self) -> bool {
        let ok = |z: Complex64| z.re.is_finite() && z.im.is_finite();
        match &self.kind {
            ComponentKind::Circle { center, radius } => ok(*center) && radius.is_finite(),
            ComponentKind::Ellipse { center, semi_major, semi_minor, rotation } => {
                ok(*center) && semi_major.is_finite() && semi_minor.is_finite() && rotation.is_finite()
            }
            ComponentKind::PiecewiseArcs { segments } => segments.iter().all(|s| match *s {
                ArcSegment::Line { from, to } => ok(from) && ok(to),
                ArcSegment::Arc { center, radius, start, end } => {
                    ok(center) && radius.is_finite() && start.is_finite() && end.is_finite()
                }
            }),
        }
    }

    fn degenerate_reason(&self) -> Option<&'static str> {
        match &self.kind {
            ComponentKind::Circle { radius, .. } => (*radius <= 0.0).then_some("radius must be positive"),
            ComponentKind::Ellipse { semi_major, semi_minor, .. } => {
                (*semi_major <= 0.0 || *semi_minor <= 0.0).then_some("semi-axes must be positive")
            }
            ComponentKind::PiecewiseArcs { segments } => {
                if segments.len() < 2 {
                    return Some("piecewise curve needs at least two segments");
                }
                if segments.iter().any(|s| s.length() <= 0.0) {
                    return Some("zero-length segment");
                }
                let scale: f64 = segments.iter().map(ArcSegment::length).sum();
                for i in 0..segments.len() {
                    let a = segments[i].end_point();
                    let b = segments[(i + 1) % segments.len()].start_point();
                    if (a - b).norm() > 1e-9 * scale {
                        return Some("segment chain is not closed");
                    }
                }
                None
            }
        }
    }

    /// Conservative enclosing circle, used as a cheap disjointness pre-test.
    fn bounding_circle(&self) -> (Complex64, f64) {
        match &self.kind {
            ComponentKind::Circle { center, radius } => (*center, *radius),
            ComponentKind::Ellipse { center, semi_major, semi_minor, .. } => {
                (*center, semi_major.max(*semi_minor))
            }
            ComponentKind::PiecewiseArcs { segments } => {
                let c = self.default_anchor();
                let mut r: f64 = 0.0;
                for s in segments {
                    let extra = match s {
                        ArcSegment::Line { .. } => 0.0,
                        ArcSegment::Arc { center, radius, .. } => (center - c).norm() + radius,
                    };
                    r = r.max((s.start_point() - c).norm()).max(extra);
                }
                (c, r)
            }
        }
    }
}

/// Compact set bounded by pairwise disjoint Jordan curves, plus one anchor
/// point strictly inside each component.
#[derive(Debug, Clone, PartialEq)]
pub struct CompactSet {
    pub components: Vec<BoundaryComponent>,
    pub anchors: Vec<Complex64>,
}

impl CompactSet {
    /// Build with default anchors (component centers / centroids).
    pub fn new(components: Vec<BoundaryComponent>) -> Self {
        let anchors = components.iter().map(BoundaryComponent::default_anchor).collect();
        CompactSet { components, anchors }
    }

    pub fn with_anchors(components: Vec<BoundaryComponent>, anchors: Vec<Complex64>) -> Self {
        CompactSet { components, anchors }
    }

    /// Strict interior test against the union of all components.
    pub fn contains(&self, z: Complex64) -> bool {
        self.components.iter().any(|c| c.contains(z))
    }

    /// Check the structural invariants and report every violation found.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(&ValidationConfig::default())
    }

    pub fn validate_with(&self, cfg: &ValidationConfig) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, comp) in self.components.iter().enumerate() {
            if !comp.finite() {
                violations.push(Violation::NonFinite { component: i });
                continue;
            }
            if let Some(detail) = comp.degenerate_reason() {
                violations.push(Violation::Degenerate { component: i, detail: String::from(detail) });
                continue;
            }
            for corner in &comp.corners {
                if !(corner.interior_angle > 0.0 && corner.interior_angle < TAU) {
                    violations.push(Violation::BadCornerAngle { component: i, angle: corner.interior_angle });
                }
                if !on_curve(comp, corner.vertex, cfg.samples_per_component) {
                    violations.push(Violation::CornerOffCurve { component: i });
                }
            }
            if i < self.anchors.len() && !comp.contains(self.anchors[i]) {
                violations.push(Violation::AnchorOutside { component: i });
            }
        }
        if self.anchors.len() != self.components.len() {
            violations.push(Violation::AnchorCountMismatch);
        }
        for i in 0..self.components.len() {
            for j in (i + 1)..self.components.len() {
                if !disjoint(&self.components[i], &self.components[j], cfg) {
                    violations.push(Violation::Overlap { first: i, second: j });
                }
            }
        }
        ValidationReport { violations }
    }
}

/// Sampling resolution and separation margin used by [`CompactSet::validate`].
#[derive(Debug, Clone, Copy)]
pub struct ValidationConfig {
    /// Boundary samples per component for the non-circle disjointness test.
    pub samples_per_component: usize,
    /// Required minimum sampled distance between distinct components.
    pub eps_sep: f64,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig { samples_per_component: 256, eps_sep: 1e-9 }
    }
}

fn on_curve(comp: &BoundaryComponent, z: Complex64, samples: usize) -> bool {
    match &comp.kind {
        ComponentKind::Circle { center, radius } => {
            ((z - center).norm() - radius).abs() <= 1e-9 * radius.max(1.0)
        }
        _ => {
            let mut best = f64::INFINITY;
            for i in 0..samples {
                let p = comp.parametrize(i as f64 / samples as f64).z;
                best = best.min((p - z).norm());
            }
            // Sampled distance only; adequate for vertices that are also
            // segment joints (exactly on the curve).
            best <= 1e-6
        }
    }
}

fn disjoint(a: &BoundaryComponent, b: &BoundaryComponent, cfg: &ValidationConfig) -> bool {
    if let (ComponentKind::Circle { center: c1, radius: r1 }, ComponentKind::Circle { center: c2, radius: r2 }) =
        (&a.kind, &b.kind)
    {
        return (c1 - c2).norm() > r1 + r2 + cfg.eps_sep;
    }
    let (ca, ra) = a.bounding_circle();
    let (cb, rb) = b.bounding_circle();
    if (ca - cb).norm() > ra + rb + cfg.eps_sep {
        return true;
    }
    // Sampled separation plus mutual-exclusion test.
    let n = cfg.samples_per_component;
    let mut min_dist = f64::INFINITY;
    let pts_a: Vec<Complex64> = (0..n).map(|i| a.parametrize(i as f64 / n as f64).z).collect();
    let pts_b: Vec<Complex64> = (0..n).map(|i| b.parametrize(i as f64 / n as f64).z).collect();
    for pa in &pts_a {
        for pb in &pts_b {
            min_dist = min_dist.min((pa - pb).norm());
        }
    }
    if min_dist < cfg.eps_sep {
        return false;
    }
    !(a.contains(pts_b[0]) || b.contains(pts_a[0]))
}

/// Structural problems found by [`CompactSet::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Degenerate { component: usize, detail: String },
    NonFinite { component: usize },
    Overlap { first: usize, second: usize },
    AnchorOutside { component: usize },
    AnchorCountMismatch,
    BadCornerAngle { component: usize, angle: f64 },
    CornerOffCurve { component: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degenerate { component, detail } => {
                write!(f, "component {component} is degenerate: {detail}")
            }
            Violation::NonFinite { component } => {
                write!(f, "component {component} has non-finite coordinates")
            }
            Violation::Overlap { first, second } => {
                write!(f, "components {first} and {second} are not mutually exterior")
            }
            Violation::AnchorOutside { component } => {
                write!(f, "anchor of component {component} is not strictly interior")
            }
            Violation::AnchorCountMismatch => write!(f, "anchor list length differs from component count"),
            Violation::BadCornerAngle { component, angle } => {
                write!(f, "component {component} corner angle {angle} outside (0, 2\u{3c0})")
            }
            Violation::CornerOffCurve { component } => {
                write!(f, "component {component} has a corner that does not lie on the curve")
            }
        }
    }
}

/// Report produced by [`CompactSet::validate`]; empty means valid.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Errors from the plain geometric helpers.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometryError {
    /// Fewer than two points were supplied.
    TooFewPoints,
    /// Two of the supplied points coincide.
    DuplicatePoint { first: usize, second: usize },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::TooFewPoints => write!(f, "need at least two points"),
            GeometryError::DuplicatePoint { first, second } => {
                write!(f, "points {first} and {second} coincide")
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// Minimum pairwise distance `δ` of a family of distinct points.
pub fn min_pairwise_gap(points: &[Complex64]) -> Result<f64, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::TooFewPoints);
    }
    let mut gap = f64::INFINITY;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            let d = (points[i] - points[j]).norm();
            if d == 0.0 {
                return Err(GeometryError::DuplicatePoint { first: i, second: j });
            }
            gap = gap.min(d);
        }
    }
    Ok(gap)
}

/// The square with corners `±1, ±i` (interior angles `π/2`), anchored at 0.
pub fn unit_cross_square() -> BoundaryComponent {
    let c = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];
    let mut comp = BoundaryComponent::polygon(&c);
    // The generic constructor computes the right angles; pin them exactly.
    for corner in &mut comp.corners {
        corner.interior_angle = PI / 2.0;
    }
    comp
}

/// Union of equal closed disks of radius `r` at the given centers.
pub fn equal_disks(centers: &[Complex64], radius: f64) -> CompactSet {
    CompactSet::new(centers.iter().map(|&c| BoundaryComponent::circle(c, radius)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn circle_parametrization_start_point() {
        let comp = BoundaryComponent::circle(c(0.0, 0.0), 1.0);
        let p = comp.parametrize(0.0);
        assert_eq!(p.z, c(1.0, 0.0));
        assert_abs_diff_eq!(p.speed, TAU, epsilon = 1e-15);
        assert!((p.tangent - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn circle_antipodal_point() {
        let comp = BoundaryComponent::circle(c(2.0, 0.0), 1.0);
        let p = comp.parametrize(0.5);
        assert!((p.z - c(1.0, 0.0)).norm() < 1e-15);
        assert_abs_diff_eq!(p.speed, TAU, epsilon = 1e-15);
    }

    #[test]
    fn ellipse_quarter_turn() {
        let comp = BoundaryComponent::ellipse(c(0.0, 0.0), 2.0, 1.0, 0.0);
        let p = comp.parametrize(0.25);
        assert!((p.z - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn square_corners_have_right_angles() {
        let sq = unit_cross_square();
        assert_eq!(sq.corners.len(), 4);
        for corner in &sq.corners {
            assert_abs_diff_eq!(corner.interior_angle, PI / 2.0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(sq.arclength_closed_form().unwrap(), 4.0 * (2.0f64).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn square_contains_and_excludes() {
        let sq = unit_cross_square();
        assert!(sq.contains(c(0.0, 0.0)));
        assert!(sq.contains(c(0.3, 0.3)));
        assert!(!sq.contains(c(0.8, 0.8)));
        assert!(!sq.contains(c(2.0, 0.0)));
    }

    #[test]
    fn corner_param_lookup() {
        let sq = unit_cross_square();
        assert!(sq.corner_at_param(0.0).is_some());
        assert!(sq.corner_at_param(0.25).is_some());
        assert!(sq.corner_at_param(0.1).is_none());
    }

    #[test]
    fn two_separated_disks_validate() {
        let set = equal_disks(&[c(-2.0, 0.0), c(2.0, 0.0)], 1.0);
        assert!(set.validate().is_valid());
    }

    #[test]
    fn overlapping_disks_flagged() {
        let set = equal_disks(&[c(0.0, 0.0), c(1.0, 0.0)], 1.0);
        let report = set.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Overlap { first: 0, second: 1 })));
    }

    #[test]
    fn anchor_on_boundary_flagged() {
        let comp = BoundaryComponent::circle(c(0.0, 0.0), 1.0);
        let set = CompactSet::with_anchors(alloc::vec![comp], alloc::vec![c(1.0, 0.0)]);
        let report = set.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::AnchorOutside { component: 0 })));
    }

    #[test]
    fn degenerate_radius_flagged() {
        let set = equal_disks(&[c(0.0, 0.0)], 0.0);
        assert!(!set.validate().is_valid());
    }

    #[test]
    fn min_gap_examples() {
        assert_eq!(min_pairwise_gap(&[c(-2.0, 0.0), c(2.0, 0.0)]).unwrap(), 4.0);
        assert_eq!(min_pairwise_gap(&[c(0.0, 0.0), c(3.0, 0.0), c(0.0, 3.0)]).unwrap(), 3.0);
        let v = min_pairwise_gap(&[c(0.0, 0.0), c(1.0, 4.0), c(1.0, -4.0)]).unwrap();
        assert_abs_diff_eq!(v, (17.0f64).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn min_gap_rejects_duplicates_and_singletons() {
        assert_eq!(min_pairwise_gap(&[c(1.0, 0.0)]), Err(GeometryError::TooFewPoints));
        assert_eq!(
            min_pairwise_gap(&[c(1.0, 0.0), c(1.0, 0.0)]),
            Err(GeometryError::DuplicatePoint { first: 0, second: 1 })
        );
    }

    #[test]
    fn ellipse_circle_mixed_disjointness() {
        let a = BoundaryComponent::ellipse(c(0.0, 0.0), 2.0, 1.0, 0.0);
        let b = BoundaryComponent::circle(c(5.0, 0.0), 1.0);
        let set = CompactSet::new(alloc::vec![a, b]);
        assert!(set.validate().is_valid());
        let overlapping = CompactSet::new(alloc::vec![
            BoundaryComponent::ellipse(c(0.0, 0.0), 2.0, 1.0, 0.0),
            BoundaryComponent::circle(c(2.0, 0.0), 1.0),
        ]);
        assert!(!overlapping.validate().is_valid());
    }

    #[test]
    fn nested_components_flagged() {
        let set = CompactSet::new(alloc::vec![
            BoundaryComponent::circle(c(0.0, 0.0), 3.0),
            BoundaryComponent::circle(c(0.0, 0.0), 1.0),
        ]);
        assert!(!set.validate().is_valid());
    }
}
