//! Trial-function families spanning the two quadratic programs.
//!
//! All functions are analytic on the complement of the set, vanish at ∞,
//! and have their poles (and branch segments) strictly inside the set:
//!
//! * [`BasisFunction::SimplePole`]: `1/(z−a)`; cheap closed-form Gram
//!   entries on circles.
//! * [`BasisFunction::MultiPole`]: `(z−p)^{−k}`; the "monomial" family
//!   about an anchor.
//! * [`BasisFunction::CornerPower`]: `((z−a)/(z−b))^{−μ} (z−b)^{−k}`;
//!   models the `(z−a)^{−μ}` blow-up of the extremal functions at a corner
//!   `a`, with the branch cut on the segment `[b, a]` inside the set and
//!   the principal branch pinned by `((z−a)/(z−b))^{−μ} → 1` at ∞.
//!
//! Refinement families are built per stage; the monomial and corner
//! families are prefix-nested across stages, the ring layouts are
//! regenerated (their radii depend on the ring count).

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;
// f64 math comes from the trait in no_std builds; std's inherent
// methods shadow it under cfg(test).
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{CompactSet, ComponentKind};

/// One trial function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BasisFunction {
    /// `z ↦ 1/(z−a)`.
    SimplePole { a: Complex64 },
    /// `z ↦ (z−p)^{−order}`, `order ≥ 1`.
    MultiPole { p: Complex64, order: u32 },
    /// `z ↦ ((z−corner)/(z−base))^{−exponent} · (z−base)^{−power}`.
    CornerPower {
        corner: Complex64,
        base: Complex64,
        exponent: f64,
        power: u32,
    },
}

/// Evaluation failures for [`BasisFunction::eval`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalError {
    AtPole,
    OnBranchCut,
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::AtPole => write!(f, "evaluation at a pole"),
            EvalError::OnBranchCut => write!(f, "evaluation on the branch segment"),
        }
    }
}

impl core::error::Error for EvalError {}

impl BasisFunction {
    /// Value at `z`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, EvalError> {
        match *self {
            BasisFunction::SimplePole { a } => {
                let d = z - a;
                if d == Complex64::new(0.0, 0.0) {
                    return Err(EvalError::AtPole);
                }
                Ok(d.inv())
            }
            BasisFunction::MultiPole { p, order } => {
                let d = z - p;
                if d == Complex64::new(0.0, 0.0) {
                    return Err(EvalError::AtPole);
                }
                Ok(d.inv().powu(order))
            }
            BasisFunction::CornerPower { corner, base, exponent, power } => {
                let db = z - base;
                if db == Complex64::new(0.0, 0.0) {
                    return Err(EvalError::AtPole);
                }
                let w = (z - corner) / db;
                // Principal power is analytic off w ∈ (−∞, 0], the image of
                // the segment [base, corner].
                if w.im == 0.0 && w.re <= 0.0 {
                    return Err(EvalError::OnBranchCut);
                }
                let frac = (-exponent * w.ln()).exp();
                Ok(frac * db.inv().powu(power))
            }
        }
    }

    /// `lim_{z→∞} z·f(z)`: the coefficient of `1/z` at infinity.
    pub fn residue_at_infinity(&self) -> Complex64 {
        let one = match *self {
            BasisFunction::SimplePole { .. } => true,
            BasisFunction::MultiPole { order, .. } => order == 1,
            BasisFunction::CornerPower { power, .. } => power == 1,
        };
        Complex64::new(if one { 1.0 } else { 0.0 }, 0.0)
    }

    /// The point where the function's pole sits (branch-cut base for
    /// corner powers); must lie strictly inside the set.
    pub fn pole_location(&self) -> Complex64 {
        match *self {
            BasisFunction::SimplePole { a } => a,
            BasisFunction::MultiPole { p, .. } => p,
            BasisFunction::CornerPower { base, .. } => base,
        }
    }

    /// Boundary point at which the function blows up, if any.
    pub fn singular_corner(&self) -> Option<Complex64> {
        match *self {
            BasisFunction::CornerPower { corner, exponent, .. } if exponent > 0.0 => Some(corner),
            _ => None,
        }
    }
}

/// Ordered family of trial functions at one refinement stage.
///
/// For prefix-nested schemes, stage `k+1`'s list extends stage `k`'s list,
/// which is what makes the staged upper bounds non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    pub functions: Vec<BasisFunction>,
    pub stage: u32,
}

impl BasisSet {
    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// True if `earlier`'s function list is a prefix of this one.
    pub fn extends(&self, earlier: &BasisSet) -> bool {
        earlier.functions.len() <= self.functions.len()
            && earlier.functions == self.functions[..earlier.functions.len()]
    }
}

/// Errors from basis construction.
#[derive(Debug, Clone, PartialEq)]
pub enum BasisError {
    /// Corner-adapted family requested on a set without corners.
    NoCorners,
    /// The branch segment from an anchor to its corner leaves the set.
    BranchSegmentExits { component: usize },
    /// Layout parameter out of range (zero radius, zero degree, ...).
    BadParameter(&'static str),
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::NoCorners => write!(f, "corner basis requires at least one corner"),
            BasisError::BranchSegmentExits { component } => {
                write!(f, "branch segment of component {component} exits the set")
            }
            BasisError::BadParameter(msg) => write!(f, "bad parameter: {msg}"),
        }
    }
}

impl core::error::Error for BasisError {}

/// Pole layout for one disk: the center plus 4 poles per ring at radii
/// `rᵢ = i·radius/(rings+1)`, strictly interior so no pole touches the
/// boundary.
pub fn disk_pole_layout(center: Complex64, radius: f64, rings: u32) -> Vec<Complex64> {
    let mut poles = Vec::with_capacity(1 + 4 * rings as usize);
    poles.push(center);
    for i in 1..=rings {
        let r = i as f64 * radius / (rings + 1) as f64;
        poles.push(center + Complex64::new(r, 0.0));
        poles.push(center - Complex64::new(r, 0.0));
        poles.push(center + Complex64::new(0.0, r));
        poles.push(center - Complex64::new(0.0, r));
    }
    poles
}

/// Disk-layout analogue for an ellipse: the center plus, per ring, the four
/// axis points of the ellipse scaled by `i/(rings+1)`.
pub fn ellipse_pole_layout(
    center: Complex64,
    semi_major: f64,
    semi_minor: f64,
    rotation: f64,
    rings: u32,
) -> Vec<Complex64> {
    let rot = Complex64::new(rotation.cos(), rotation.sin());
    let mut poles = Vec::with_capacity(1 + 4 * rings as usize);
    poles.push(center);
    for i in 1..=rings {
        let s = i as f64 / (rings + 1) as f64;
        poles.push(center + rot * Complex64::new(s * semi_major, 0.0));
        poles.push(center - rot * Complex64::new(s * semi_major, 0.0));
        poles.push(center + rot * Complex64::new(0.0, s * semi_minor));
        poles.push(center - rot * Complex64::new(0.0, s * semi_minor));
    }
    poles
}

/// Simple-pole family over a set of circles/ellipses: per component, the
/// ring layout with the given ring count. Components without a natural
/// layout (piecewise chains) contribute a single pole at their anchor.
pub fn simple_pole_basis(set: &CompactSet, rings: u32) -> BasisSet {
    let mut functions = Vec::new();
    for (i, comp) in set.components.iter().enumerate() {
        let poles = match &comp.kind {
            ComponentKind::Circle { center, radius } => disk_pole_layout(*center, *radius, rings),
            ComponentKind::Ellipse { center, semi_major, semi_minor, rotation } => {
                ellipse_pole_layout(*center, *semi_major, *semi_minor, *rotation, rings)
            }
            ComponentKind::PiecewiseArcs { .. } => alloc::vec![set.anchors[i]],
        };
        functions.extend(poles.into_iter().map(|a| BasisFunction::SimplePole { a }));
    }
    BasisSet { functions, stage: rings }
}

/// Monomial family `(z−anchor)^{−k}`, `k = 1..=degree`, per component,
/// ordered by `k` so that successive degrees are prefix-nested.
pub fn monomial_basis(set: &CompactSet, degree: u32) -> Result<BasisSet, BasisError> {
    if degree == 0 {
        return Err(BasisError::BadParameter("degree must be at least 1"));
    }
    let mut functions = Vec::new();
    for k in 1..=degree {
        for &anchor in &set.anchors {
            functions.push(BasisFunction::MultiPole { p: anchor, order: k });
        }
    }
    Ok(BasisSet { functions, stage: degree })
}

/// Exponent of the corner singularity for an interior angle `α`: the
/// exterior conformal map behaves like `(z−a)^{π/(2π−α)}` at the corner, so
/// the square root of its derivative (the behavior the trial family has to
/// capture) blows up like `(z−a)^{−μ}` with `μ = (1 − π/(2π−α))/2`.
/// A right angle gives `μ = 1/6`.
pub fn corner_exponent(interior_angle: f64) -> f64 {
    0.5 * (1.0 - PI / (2.0 * PI - interior_angle))
}

/// Corner-adapted family of degree `n`: for `k = 1..=n`, the monomials
/// `(z−b)^{−k}` for every anchor `b` plus `((z−a)/(z−b))^{−μ}(z−b)^{−k}`
/// for every corner `a` (with `b` the anchor of the corner's component).
/// Successive degrees are prefix-nested.
pub fn corner_basis(set: &CompactSet, degree: u32) -> Result<BasisSet, BasisError> {
    if degree == 0 {
        return Err(BasisError::BadParameter("degree must be at least 1"));
    }
    let mut corners = Vec::new();
    for (ci, comp) in set.components.iter().enumerate() {
        for corner in &comp.corners {
            corners.push((ci, corner.vertex, corner_exponent(corner.interior_angle)));
        }
    }
    if corners.is_empty() {
        return Err(BasisError::NoCorners);
    }
    // The branch segment [anchor, corner] must stay inside its component.
    for &(ci, vertex, _) in &corners {
        let anchor = set.anchors[ci];
        let comp = &set.components[ci];
        let steps = 64;
        for s in 0..steps {
            let t = s as f64 / steps as f64;
            let p = anchor + t * (vertex - anchor);
            if !comp.contains(p) {
                return Err(BasisError::BranchSegmentExits { component: ci });
            }
        }
    }
    let mut functions = Vec::new();
    for k in 1..=degree {
        for &anchor in &set.anchors {
            functions.push(BasisFunction::MultiPole { p: anchor, order: k });
        }
        for &(ci, vertex, mu) in &corners {
            functions.push(BasisFunction::CornerPower {
                corner: vertex,
                base: set.anchors[ci],
                exponent: mu,
                power: k,
            });
        }
    }
    Ok(BasisSet { functions, stage: degree })
}
