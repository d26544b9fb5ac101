use std::sync::Arc;

use super::{numeric_jet, Curve, CurveJet, FrenetData, Interval, Parametrization};
use crate::error::{GeomError, Result};
use crate::numeric::{adaptive_simpson, linspace, MonotoneCubic};
use crate::Vec3;

enum Inverse {
    /// Cumulative arc length tabulated on `ts`, inverted by a monotone cubic
    /// and polished by Newton steps on the exact quadrature.
    Numeric { ts: Vec<f64>, sigmas: Vec<f64>, guess: MonotoneCubic },
    Exact(fn(f64) -> f64),
}

/// Arc-length reparametrization `σ ↦ α(t(σ))` of a regular curve, with
/// `σ = 0` at the chosen origin.
#[derive(Clone)]
pub struct ArcLengthCurve {
    inner: Arc<dyn Curve>,
    inverse: Arc<Inverse>,
    domain: Interval,
}

impl std::fmt::Debug for ArcLengthCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ArcLengthCurve").field("domain", &self.domain).finish_non_exhaustive()
    }
}

const QUAD_TOL: f64 = 1e-10;

impl ArcLengthCurve {
    /// Tabulates arc length on `nodes` grid nodes over the inner domain.
    pub fn new(inner: Arc<dyn Curve>, origin: f64, nodes: usize, eps_reg: f64) -> Result<Self> {
        let dom = inner.domain();
        if !dom.contains(origin) {
            return Err(GeomError::OutOfDomain { s: origin, min: dom.min, max: dom.max });
        }
        let ts = linspace(dom.min, dom.max, nodes.max(2));
        for &t in &ts {
            let speed = inner.jet(t).d1.norm();
            if speed <= eps_reg {
                return Err(GeomError::Irregular { s: t, speed });
            }
        }
        let speed = |t: f64| inner.jet(t).d1.norm();
        let cell_tol = QUAD_TOL / ts.len() as f64;
        let mut sigmas = vec![0.0; ts.len()];
        for i in 1..ts.len() {
            sigmas[i] = sigmas[i - 1] + adaptive_simpson(&speed, ts[i - 1], ts[i], cell_tol);
        }
        let at_origin = Self::cumulative(&*inner, &ts, &sigmas, origin);
        for v in &mut sigmas {
            *v -= at_origin;
        }
        let guess = MonotoneCubic::new(sigmas.clone(), ts.clone());
        let domain = Interval::new(sigmas[0], sigmas[sigmas.len() - 1]);
        Ok(Self { inner, inverse: Arc::new(Inverse::Numeric { ts, sigmas, guess }), domain })
    }

    /// Uses a known closed-form inverse `t(σ)` on the arc-length interval `domain`.
    pub fn with_inverse(inner: Arc<dyn Curve>, domain: Interval, t_of_s: fn(f64) -> f64) -> Self {
        Self { inner, inverse: Arc::new(Inverse::Exact(t_of_s)), domain }
    }

    pub fn inner(&self) -> &dyn Curve {
        &*self.inner
    }

    fn cumulative(inner: &dyn Curve, ts: &[f64], sigmas: &[f64], t: f64) -> f64 {
        let i = ts.partition_point(|&x| x <= t).clamp(1, ts.len()) - 1;
        let speed = |x: f64| inner.jet(x).d1.norm();
        sigmas[i] + adaptive_simpson(&speed, ts[i], t, QUAD_TOL / ts.len() as f64)
    }

    /// Original parameter for arc length `sigma`.
    pub fn t_of(&self, sigma: f64) -> f64 {
        match &*self.inverse {
            Inverse::Exact(f) => f(sigma),
            Inverse::Numeric { ts, sigmas, guess } => {
                let dom = self.inner.domain();
                let mut t = guess.eval(sigma).clamp(dom.min, dom.max);
                for _ in 0..4 {
                    let residual = Self::cumulative(&*self.inner, ts, sigmas, t) - sigma;
                    let step = residual / self.inner.jet(t).d1.norm();
                    t = (t - step).clamp(dom.min, dom.max);
                    if step.abs() <= 1e-15 * (1.0 + t.abs()) {
                        break;
                    }
                }
                t
            }
        }
    }
}

impl Curve for ArcLengthCurve {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn parametrization(&self) -> Parametrization {
        Parametrization::ArcLength
    }

    fn position(&self, s: f64) -> Vec3 {
        self.inner.position(self.t_of(s))
    }

    /// Derivatives rebuilt from the Frenet equations of the inner curve,
    /// falling back to finite differences where the curvature vanishes.
    fn jet(&self, s: f64) -> CurveJet {
        match self.inner.frenet_at(self.t_of(s), 0.0) {
            Ok(f) => CurveJet {
                position: f.position,
                d1: f.t,
                d2: f.kappa * f.n,
                d3: f.kappa_p * f.n + f.kappa * (f.tau * f.b - f.kappa * f.t),
                d4: None,
            },
            Err(_) => numeric_jet(&|x| self.position(x), s, 1e-4),
        }
    }

    fn normal_sign(&self, s: f64) -> f64 {
        self.inner.normal_sign(self.t_of(s))
    }

    fn curvature(&self, s: f64) -> f64 {
        self.inner.curvature(self.t_of(s))
    }

    fn frenet_at(&self, s: f64, eps_reg: f64) -> Result<FrenetData> {
        let t = self.t_of(s);
        self.inner.frenet_at(t, eps_reg).map(|f| FrenetData { s, ..f }).map_err(|e| match e {
            GeomError::CurvatureVanishes { kappa, .. } => GeomError::CurvatureVanishes { s, kappa },
            GeomError::Irregular { speed, .. } => GeomError::Irregular { s, speed },
            other => other,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{catalog, frenet, TrigCurve, TrigTerm};

    fn ellipse() -> TrigCurve {
        TrigCurve::new(
            "ellipse-helix",
            [vec![TrigTerm::cos(2.0, 1.0)], vec![TrigTerm::sin(1.0, 1.0)], vec![]],
            Interval::new(-3.0, 3.0),
        )
        .with_affine(Vec3::zeros(), Vec3::new(0.0, 0.0, 0.3))
        .with_parametrization(Parametrization::General)
    }

    #[test]
    fn numeric_reparametrization_is_unit_speed() {
        let c = ArcLengthCurve::new(Arc::new(ellipse()), 0.0, 512, 1e-9).unwrap();
        let d = c.domain();
        for s in linspace(d.min + 0.01, d.max - 0.01, 37) {
            let h = 1e-5;
            let speed = ((c.position(s + h) - c.position(s - h)) / (2.0 * h)).norm();
            assert!((speed - 1.0).abs() < 1e-8, "speed {speed} at {s}");
        }
        assert!(c.t_of(0.0).abs() < 1e-12);
    }

    #[test]
    fn frenet_invariants_survive_reparametrization() {
        let raw = ellipse();
        let c = ArcLengthCurve::new(Arc::new(raw.clone()), 0.0, 512, 1e-9).unwrap();
        for s in [-4.0, -1.0, 0.5, 3.0] {
            let a = frenet(&c, s, 1e-9).unwrap();
            let b = frenet(&raw, c.t_of(s), 1e-9).unwrap();
            assert_eq!(a.kappa, b.kappa);
            // κ' with respect to σ equals the finite difference of κ(σ)
            let kp = (c.curvature(s + 1e-4) - c.curvature(s - 1e-4)) / 2e-4;
            assert!((a.kappa_p - kp).abs() < 1e-6);
        }
    }

    #[test]
    fn salkowski_arc_length_inverse_agrees_with_quadrature() {
        let exact = catalog::salkowski_ex3();
        let numeric = ArcLengthCurve::new(Arc::new(catalog::salkowski_ex3_raw()), 0.0, 2048, 1e-9).unwrap();
        for s in [-4.5, -2.0, 0.0, 1.0, 4.9] {
            assert!((exact.t_of(s) - numeric.t_of(s)).abs() < 1e-9, "t({s})");
        }
    }
}
