//! Parametric space curves and their Frenet apparatus.

use crate::error::{GeomError, Result};
use crate::numeric::richardson;
use crate::Vec3;

pub mod catalog;
mod generic;
mod reparam;
mod trig;

pub use generic::{ExprCurve, FnCurve};
pub use reparam::ArcLengthCurve;
pub use trig::{TrigCurve, TrigTerm};

/// Closed parameter interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Self {
        assert!(min < max, "empty interval [{min}, {max}]");
        Self { min, max }
    }

    pub fn contains(&self, x: f64) -> bool {
        let slack = 1e-12 * (1.0 + self.min.abs().max(self.max.abs()));
        x >= self.min - slack && x <= self.max + slack
    }

    pub fn len(&self) -> f64 {
        self.max - self.min
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.min, self.max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parametrization {
    ArcLength,
    General,
}

/// Position and parameter derivatives of orders 1 to 3, optionally 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveJet {
    pub position: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
    pub d4: Option<Vec3>,
}

/// Frenet apparatus at one parameter value.
///
/// `kappa_p` and `tau_p` are derivatives with respect to arc length. For
/// curves that report a continuous normal orientation (see
/// [`Curve::normal_sign`]) `kappa` carries a sign and `N`, `B` follow it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetData {
    pub s: f64,
    pub position: Vec3,
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub kappa_p: f64,
    pub tau_p: f64,
}

/// A regular parametric curve in R³.
pub trait Curve: Send + Sync {
    fn domain(&self) -> Interval;

    fn parametrization(&self) -> Parametrization {
        Parametrization::ArcLength
    }

    fn position(&self, s: f64) -> Vec3;

    /// Derivatives up to order 3 (4 when known). The default uses
    /// Richardson-extrapolated central differences of [`Curve::position`].
    fn jet(&self, s: f64) -> CurveJet {
        numeric_jet(&|x| self.position(x), s, 1e-4)
    }

    /// `+1` or `-1`; flips `N`, `B` and the sign of `κ` so that the normal
    /// field stays continuous through inflection points.
    fn normal_sign(&self, _s: f64) -> f64 {
        1.0
    }

    /// Signed curvature, defined even where it vanishes.
    fn curvature(&self, s: f64) -> f64 {
        let j = self.jet(s);
        let v = j.d1.norm();
        self.normal_sign(s) * j.d1.cross(&j.d2).norm() / (v * v * v)
    }

    /// Frenet apparatus from the jet via the general (non-unit-speed)
    /// formulas.
    fn frenet_at(&self, s: f64, eps_reg: f64) -> Result<FrenetData> {
        let jet = self.jet(s);
        let sign = self.normal_sign(s);
        let mut data = frenet_from_jet(s, &jet, sign, eps_reg)?;
        if jet.d4.is_none() {
            let h = 1e-3;
            let kt = |x: f64| {
                let j = self.jet(x);
                let (k, t) = kappa_tau(&j);
                nalgebra::Vector2::new(k, t)
            };
            let d = richardson(&kt, s, h, 1);
            let speed = jet.d1.norm();
            data.kappa_p = sign * d.x / speed;
            data.tau_p = d.y / speed;
        }
        Ok(data)
    }
}

/// Unsigned curvature and torsion from a jet.
pub(crate) fn kappa_tau(j: &CurveJet) -> (f64, f64) {
    let c = j.d1.cross(&j.d2);
    let c2 = c.norm_squared();
    let v = j.d1.norm();
    (c2.sqrt() / (v * v * v), c.dot(&j.d3) / c2)
}

pub(crate) fn numeric_jet<F: Fn(f64) -> Vec3>(f: &F, s: f64, h: f64) -> CurveJet {
    CurveJet {
        position: f(s),
        d1: richardson(f, s, h, 1),
        d2: richardson(f, s, 3e-3, 2),
        d3: richardson(f, s, 7e-3, 3),
        d4: None,
    }
}

/// General-parametrization Frenet formulas. `κ'`, `τ'` are filled in only
/// when the jet carries a fourth derivative.
pub(crate) fn frenet_from_jet(s: f64, j: &CurveJet, sign: f64, eps_reg: f64) -> Result<FrenetData> {
    let v = j.d1.norm();
    if v <= eps_reg {
        return Err(GeomError::Irregular { s, speed: v });
    }
    let c = j.d1.cross(&j.d2);
    let cn = c.norm();
    let kappa = cn / (v * v * v);
    if kappa <= eps_reg {
        return Err(GeomError::CurvatureVanishes { s, kappa: sign * kappa });
    }
    let t = j.d1 / v;
    let b = c / cn;
    let n = b.cross(&t);
    let c2 = cn * cn;
    let tau = c.dot(&j.d3) / c2;

    let (kappa_p, tau_p) = match j.d4 {
        Some(d4) => {
            let cp = j.d1.cross(&j.d3);
            let cn_p = c.dot(&cp) / cn;
            let v_p = j.d1.dot(&j.d2) / v;
            let kappa_t = cn_p / (v * v * v) - 3.0 * cn * v_p / (v * v * v * v);
            let tau_t = c.dot(&d4) / c2 - 2.0 * c.dot(&j.d3) * c.dot(&cp) / (c2 * c2);
            (kappa_t / v, tau_t / v)
        }
        None => (f64::NAN, f64::NAN),
    };

    Ok(FrenetData {
        s,
        position: j.position,
        t,
        n: sign * n,
        b: sign * b,
        kappa: sign * kappa,
        tau,
        kappa_p: sign * kappa_p,
        tau_p,
    })
}

/// Frenet apparatus of `curve` at `s`.
pub fn frenet(curve: &dyn Curve, s: f64, eps_reg: f64) -> Result<FrenetData> {
    let dom = curve.domain();
    if !dom.contains(s) {
        return Err(GeomError::OutOfDomain { s, min: dom.min, max: dom.max });
    }
    curve.frenet_at(s, eps_reg)
}

/// Checks regularity (and unit speed for arc-length curves) on `samples`
/// evenly spaced parameters.
pub fn validate(curve: &dyn Curve, samples: usize, eps_reg: f64) -> Result<()> {
    let dom = curve.domain();
    for s in crate::numeric::linspace(dom.min, dom.max, samples.max(2)) {
        let speed = curve.jet(s).d1.norm();
        if speed <= eps_reg {
            return Err(GeomError::Irregular { s, speed });
        }
        if curve.parametrization() == Parametrization::ArcLength && (speed - 1.0).abs() > 1e-8 {
            return Err(GeomError::NotArcLength { s, speed });
        }
    }
    Ok(())
}

/// Mean, standard deviation and maximal deviation of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spread {
    pub mean: f64,
    pub std_dev: f64,
    pub max_deviation: f64,
}

impl Spread {
    pub fn of(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let max_deviation = values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
        Self { mean, std_dev: var.sqrt(), max_deviation }
    }

    /// Relative standard deviation, measured against `max(|mean|, 1)`.
    pub fn relative_std(&self) -> f64 {
        self.std_dev / self.mean.abs().max(1.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HelixReport {
    pub is_plane_curve: bool,
    pub is_general_helix: bool,
    pub is_slant_helix: bool,
    /// `(s, τ/κ)` samples.
    pub rho_values: Vec<(f64, f64)>,
    /// `(s, σ)` samples with `σ = κ²/(κ²+τ²)^{3/2} · (τ/κ)'`.
    pub sigma_values: Vec<(f64, f64)>,
    pub rho_spread: Spread,
    pub sigma_spread: Spread,
    /// Largest deviation from the mean among the sampled `ρ` and `σ`.
    pub max_deviation: f64,
    /// Parameters skipped because the curvature vanished there.
    pub skipped: Vec<f64>,
}

/// Slant-helix indicator `σ = (κ τ' − τ κ') / (κ² + τ²)^{3/2}`, i.e.
/// `κ²/(κ²+τ²)^{3/2} · (τ/κ)'` without dividing by `κ²`.
pub fn slant_sigma(f: &FrenetData) -> f64 {
    (f.kappa * f.tau_p - f.tau * f.kappa_p) / (f.kappa * f.kappa + f.tau * f.tau).powf(1.5)
}

/// Samples `τ/κ` and `σ` on `samples` and tests them for constancy.
pub fn classify_helix(curve: &dyn Curve, samples: &[f64], eps_reg: f64, tol_helix: f64) -> Result<HelixReport> {
    let mut rho_values = Vec::new();
    let mut sigma_values = Vec::new();
    let mut skipped = Vec::new();
    let mut max_tau = 0.0f64;
    for &s in samples {
        match frenet(curve, s, eps_reg) {
            Ok(f) => {
                rho_values.push((s, f.tau / f.kappa));
                sigma_values.push((s, slant_sigma(&f)));
                max_tau = max_tau.max(f.tau.abs());
            }
            Err(GeomError::CurvatureVanishes { .. }) => skipped.push(s),
            Err(e) => return Err(e),
        }
    }
    const MIN_SAMPLES: usize = 8;
    if rho_values.len() < MIN_SAMPLES {
        return Err(GeomError::InsufficientSamples { got: rho_values.len(), need: MIN_SAMPLES });
    }
    let rho: Vec<f64> = rho_values.iter().map(|p| p.1).collect();
    let sigma: Vec<f64> = sigma_values.iter().map(|p| p.1).collect();
    let rho_spread = Spread::of(&rho);
    let sigma_spread = Spread::of(&sigma);
    Ok(HelixReport {
        is_plane_curve: max_tau <= tol_helix,
        is_general_helix: rho_spread.relative_std() <= tol_helix,
        is_slant_helix: sigma_spread.relative_std() <= tol_helix,
        max_deviation: rho_spread.max_deviation.max(sigma_spread.max_deviation),
        rho_values,
        sigma_values,
        rho_spread,
        sigma_spread,
        skipped,
    })
}
