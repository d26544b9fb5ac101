use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("parameter s = {s} outside curve domain [{min}, {max}]")]
    OutOfDomain { s: f64, min: f64, max: f64 },

    #[error("curve is not regular at s = {s} (speed {speed:e})")]
    Irregular { s: f64, speed: f64 },

    #[error("curve is not arc-length parametrized at s = {s} (speed {speed})")]
    NotArcLength { s: f64, speed: f64 },

    #[error("curvature vanishes at s = {s} (kappa = {kappa:e}); normal and binormal undefined")]
    CurvatureVanishes { s: f64, kappa: f64 },

    #[error("singular surface point at (s, u) = ({s}, {u}); f^2 + g^2 = {metric:e}")]
    SingularPoint { s: f64, u: f64, metric: f64 },

    #[error("ruling direction is stationary at s = {s} (|q'| = {norm:e})")]
    CylindricalDirection { s: f64, norm: f64 },

    #[error("need at least {need} valid samples, got {got}")]
    InsufficientSamples { got: usize, need: usize },

    #[error("surface curve is not unit speed at t = {t} (speed {speed})")]
    NotUnitSpeed { t: f64, speed: f64 },

    #[error("degenerate first fundamental form (EG - F^2 = {det:e})")]
    DegenerateMetric { det: f64 },

    #[error("angle function derivative check failed at s = {s}: theta' = {analytic}, finite difference = {numeric}")]
    AngleDerivativeMismatch { s: f64, analytic: f64, numeric: f64 },

    #[error("expression error: {0}")]
    Expression(String),
}
