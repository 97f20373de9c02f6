//! JSON file formats understood by the CLI, and their conversion into the
//! solver's domain types.
//!
//! Geometry files:
//!
//! ```json
//! {
//!   "components": [
//!     {"type": "circle",  "center": [-2.0, 0.0], "radius": 1.0},
//!     {"type": "ellipse", "center": [3.0, 0.0], "a": 2.0, "b": 1.0, "rot": 0.0},
//!     {"type": "polyarcs",
//!      "segments": [{"kind": "line", "from": [1.0, 0.0], "to": [0.0, 1.0]}, ...],
//!      "corners":  [{"vertex": [1.0, 0.0], "interior_angle": 1.5707963267948966}, ...],
//!      "anchor": [0.0, 0.0]}
//!   ]
//! }
//! ```
//!
//! Sweep configurations carry either explicit center lists or a seeded
//! random layout; rational maps are residue/pole lists.

use anyhow::{bail, Context, Result};
use gammacap_core::experiments::{random_disk_centers, RationalMap};
use gammacap_core::geometry::{ArcSegment, BoundaryComponent, CompactSet, Corner};
use gammacap_core::Complex64;
use serde::{Deserialize, Serialize};

fn c(xy: [f64; 2]) -> Complex64 {
    Complex64::new(xy[0], xy[1])
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GeometryFile {
    pub components: Vec<ComponentSchema>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ComponentSchema {
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        anchor: Option<[f64; 2]>,
    },
    Ellipse {
        center: [f64; 2],
        a: f64,
        b: f64,
        #[serde(default)]
        rot: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        anchor: Option<[f64; 2]>,
    },
    Polyarcs {
        segments: Vec<SegmentSchema>,
        #[serde(default)]
        corners: Vec<CornerSchema>,
        #[serde(skip_serializing_if = "Option::is_none")]
        anchor: Option<[f64; 2]>,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SegmentSchema {
    Line { from: [f64; 2], to: [f64; 2] },
    Arc { center: [f64; 2], radius: f64, start: f64, end: f64 },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CornerSchema {
    pub vertex: [f64; 2],
    pub interior_angle: f64,
}

impl GeometryFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("geometry file does not match the schema")
    }

    pub fn into_set(self) -> Result<CompactSet> {
        if self.components.is_empty() {
            bail!("geometry has no components");
        }
        let mut components = Vec::new();
        let mut anchors = Vec::new();
        for (i, comp) in self.components.into_iter().enumerate() {
            let (component, anchor) = match comp {
                ComponentSchema::Circle { center, radius, anchor } => {
                    if radius <= 0.0 || radius.is_nan() {
                        bail!("component {i}: field 'radius' must be positive");
                    }
                    (BoundaryComponent::circle(c(center), radius), anchor)
                }
                ComponentSchema::Ellipse { center, a, b, rot, anchor } => {
                    if !(a > 0.0 && b > 0.0) {
                        bail!("component {i}: fields 'a' and 'b' must be positive");
                    }
                    (BoundaryComponent::ellipse(c(center), a, b, rot), anchor)
                }
                ComponentSchema::Polyarcs { segments, corners, anchor } => {
                    if segments.len() < 2 {
                        bail!("component {i}: field 'segments' needs at least two entries");
                    }
                    let segs = segments
                        .into_iter()
                        .map(|s| match s {
                            SegmentSchema::Line { from, to } => ArcSegment::Line { from: c(from), to: c(to) },
                            SegmentSchema::Arc { center, radius, start, end } => {
                                ArcSegment::Arc { center: c(center), radius, start, end }
                            }
                        })
                        .collect();
                    let corns = corners
                        .into_iter()
                        .map(|k| Corner { vertex: c(k.vertex), interior_angle: k.interior_angle })
                        .collect();
                    (BoundaryComponent::piecewise(segs, corns), anchor)
                }
            };
            let anchor = anchor.map(c).unwrap_or_else(|| component.default_anchor());
            components.push(component);
            anchors.push(anchor);
        }
        Ok(CompactSet::with_anchors(components, anchors))
    }
}

/// Sweep configuration: explicit centers or a seeded random layout.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubaddFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centers_e: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centers_f: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomLayout>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomLayout {
    pub n_e: usize,
    pub n_f: usize,
    pub seed: u64,
    #[serde(default = "default_min_gap")]
    pub min_gap: f64,
    /// Side of the square the centers are drawn from; defaults to
    /// `1.6·min_gap·√(n_e+n_f)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub box_side: Option<f64>,
}

fn default_min_gap() -> f64 {
    1.0
}

impl SubaddFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("sweep configuration does not match the schema")
    }

    /// Resolve to the two center families. `seed_override` substitutes the
    /// seed of a random layout.
    pub fn into_centers(self, seed_override: Option<u64>) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        match (self.centers_e, self.centers_f, self.random) {
            (Some(e), Some(f), None) => {
                if e.is_empty() || f.is_empty() {
                    bail!("fields 'centers_e' and 'centers_f' must both be nonempty");
                }
                Ok((e.into_iter().map(c).collect(), f.into_iter().map(c).collect()))
            }
            (None, None, Some(r)) => {
                let seed = seed_override.unwrap_or(r.seed);
                let side = r
                    .box_side
                    .unwrap_or_else(|| 1.6 * r.min_gap * ((r.n_e + r.n_f) as f64).sqrt());
                random_disk_centers(r.n_e, r.n_f, r.min_gap, side, seed)
                    .map_err(|e| anyhow::anyhow!("random layout failed: {e}"))
            }
            _ => bail!("provide either 'centers_e'+'centers_f' or 'random', not both"),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalFile {
    pub residues: Vec<[f64; 2]>,
    pub poles: Vec<[f64; 2]>,
}

impl RationalFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).context("rational map file does not match the schema")
    }

    pub fn into_map(self) -> Result<RationalMap> {
        RationalMap::new(
            self.residues.into_iter().map(c).collect(),
            self.poles.into_iter().map(c).collect(),
        )
        .map_err(|e| anyhow::anyhow!("invalid rational map: {e}"))
    }
}
