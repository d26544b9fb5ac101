//! Osculating-type (OT) ruled surfaces in Euclidean 3-space.
//!
//! An OT-ruled surface over a unit-speed space curve `α` with angle function
//! `θ(s)` is `φ(s, u) = α(s) + u·q_o(s)` where the ruling
//! `q_o = cos θ·T + sin θ·N` always lies in the osculating plane of `α`.
//!
//! The crate is organised bottom-up:
//!
//! * [`curves`]: parametric space curves, Frenet apparatus, helix tests.
//! * [`otframe`]: the moving frame `{q_o, B, r}` and its curvatures `η, μ, ξ`.
//! * [`surface`]: jets, Gauss map, fundamental forms, `K`/`H`, the Weingarten
//!   map, singular set, striction line and classification reports.
//! * [`oncurve`]: normal curvature, geodesic curvature and geodesic torsion of
//!   curves lying on the surface.
//! * [`verify`]: a generic ruled-surface oracle built only from finite
//!   differences, used to cross-check every closed form.
//! * [`mesh`]: grid sampling and polygon-mesh export.

pub mod curves;
pub mod error;
pub mod expr;
pub mod mesh;
pub mod numeric;
pub mod oncurve;
pub mod otframe;
pub mod surface;
pub mod tolerance;
pub mod verify;

pub use curves::{
    catalog, classify_helix, frenet, ArcLengthCurve, Curve, CurveJet, ExprCurve, FnCurve,
    FrenetData, HelixReport, Interval, Parametrization, TrigCurve,
};
pub use error::{GeomError, Result};
pub use otframe::{frame_derivative_matrix, frenet_from_ot, ot_frame, AngleFunction, OTFrameData};
pub use surface::{
    BaseCurveStatus, ClassificationReport, CurvatureData, FundamentalForms, OTSurface, SingularPoint, SingularReport,
    SurfaceJet,
};
pub use tolerance::Tolerances;

/// Column vector in R³.
pub type Vec3 = nalgebra::Vector3<f64>;
/// 3×3 real matrix.
pub type Mat3 = nalgebra::Matrix3<f64>;
