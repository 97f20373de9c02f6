//! Exact and high-precision reference capacities used to validate solver
//! output.
//!
//! Closed-form cases follow from classical identities: for a connected set
//! the analytic capacity equals the logarithmic capacity, which is the
//! radius for a disk, a quarter of the length for a segment, and the
//! half-sum of the semi-axes for an ellipse. The two-disk constant is the
//! elliptic-integral value for unit disks centered at ±2.

use core::fmt;

/// Γ(1/4) to 30 significant digits:
/// 3.62560990822190831193068515586 7672…, embedded as a literal so that no
/// gamma-function implementation is needed for one constant.
#[allow(clippy::excessive_precision)]
pub const GAMMA_QUARTER: f64 = 3.625609908221908311930685155867672;

/// √2·Γ(1/4)²/(4π^{3/2}): capacity of the square with corners ±1, ±i.
#[allow(clippy::excessive_precision)]
pub const SQUARE_PM1_PMI: f64 = 0.83462684167407318630;

/// Capacity of the union of two unit disks centered at −2 and 2.
#[allow(clippy::excessive_precision)]
pub const TWO_UNIT_DISKS_AT_PM2: f64 = 1.8755950190971197289;

/// A registered reference case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReferenceCase {
    /// Closed disk of the given radius: capacity = radius.
    Disk { radius: f64 },
    /// Real segment of the given length: capacity = length/4. (Degenerate
    /// for the solver, whose boundaries must be Jordan curves, but a valid
    /// reference value.)
    Segment { length: f64 },
    /// Ellipse with the given semi-axes: capacity = (a+b)/2.
    Ellipse { semi_major: f64, semi_minor: f64 },
    /// Unit disks centered at −2 and 2.
    TwoUnitDisksAtPm2,
    /// Square with corners ±1, ±i.
    UnitCrossSquare,
}

/// Where a reference value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    HighPrecisionConstant,
}

/// A named reference capacity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceValue {
    pub name: &'static str,
    pub value: f64,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnknownCase;

impl fmt::Display for UnknownCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "reference case has nonpositive size parameters")
    }
}

impl core::error::Error for UnknownCase {}

/// Look up the reference capacity for a registered case.
pub fn known_capacity(case: ReferenceCase) -> Result<ReferenceValue, UnknownCase> {
    let ok = |name, value, provenance| Ok(ReferenceValue { name, value, provenance });
    match case {
        ReferenceCase::Disk { radius } if radius > 0.0 => ok("disk", radius, Provenance::ClosedForm),
        ReferenceCase::Segment { length } if length > 0.0 => {
            ok("segment", length / 4.0, Provenance::ClosedForm)
        }
        ReferenceCase::Ellipse { semi_major, semi_minor } if semi_major > 0.0 && semi_minor > 0.0 => ok(
            "ellipse",
            0.5 * (semi_major + semi_minor),
            Provenance::ClosedForm,
        ),
        ReferenceCase::TwoUnitDisksAtPm2 => ok(
            "two unit disks at \u{b1}2",
            TWO_UNIT_DISKS_AT_PM2,
            Provenance::HighPrecisionConstant,
        ),
        ReferenceCase::UnitCrossSquare => {
            ok("square with corners \u{b1}1, \u{b1}i", SQUARE_PM1_PMI, Provenance::HighPrecisionConstant)
        }
        _ => Err(UnknownCase),
    }
}
