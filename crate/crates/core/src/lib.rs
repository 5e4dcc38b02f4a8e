//! Exact invariants of abelian Galois covers of the projective plane
//! branched over line arrangements: K², e, χ, p_g, irregularity, torsion
//! bounds, branch-curve geometry and even-pullback divisor enumeration.

pub mod config;
pub mod cover;
pub mod error;
pub mod genus;
pub mod geometry;
pub mod invariants;
pub mod linalg;
pub mod presets;
pub mod report;
pub mod torsion;

pub use config::{emit_config, parse_config, CoverConfig};
pub use cover::{
    classify_points, epsilon, pair_independent, ClassifiedPoint, CoverSpec, GroupElement,
    PointClassification, PointStatus,
};
pub use error::{Error, Result};
pub use geometry::{compute_incidence, intersect, Arrangement, IncidenceData, ProjLine, ProjPoint};
pub use presets::{preset, PRESET_NAMES};
pub use report::{analyze, emit_report, Format, Report};
