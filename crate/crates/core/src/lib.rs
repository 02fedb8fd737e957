//! Finite-depth Mahavier products of slope relations on `[0, 1]`.
//!
//! The crate builds exact approximations of the products of
//! `F = {r, 1, rho}`, `G = {r, 1}` and `L = {r, rho}` as unions of legs,
//! decides whether `r` and `rho` never connect, certifies end-points,
//! constructs ε-density witnesses and renders the resulting fans as SVG.
//!
//! ```
//! use fan_core::{check_nc, enumerate_legs, RelationKind, RelationSpec, Scalar};
//!
//! let (r, rho): (Scalar, Scalar) = ("1/2".parse().unwrap(), "3".parse().unwrap());
//! assert!(check_nc(&r, &rho).unwrap().is_nc);
//! let f = RelationSpec::from_kind(RelationKind::F, &r, &rho).unwrap();
//! let fan = enumerate_legs(&f, 2, 100).unwrap();
//! assert_eq!(fan.legs().len(), 9);
//! ```

pub mod analysis;
pub mod error;
pub mod legfile;
pub mod mahavier;
pub mod nc;
pub mod render;
pub mod scalars;

pub use error::{Error, Result};
pub use mahavier::{
    build_leg, enumerate_legs, leg_point, membership, sample_legs, sample_points,
    truncated_metric, FanApprox, Leg, MetricBound, PointPrefix, RelationKind, RelationSpec, Word,
    DEFAULT_ENUMERATION_BUDGET,
};
pub use nc::{check_nc, NcPair, NcVerdict};
pub use scalars::{factor, ExponentVector, Scalar};
