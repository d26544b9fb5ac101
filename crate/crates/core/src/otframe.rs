//! The OT moving frame `{q_o, B, r}` along a base curve and its curvatures
//! `η = θ' + κ`, `μ = τ sin θ`, `ξ = τ cos θ`.

use std::sync::Arc;

use crate::curves::{frenet, Curve, FrenetData, Interval};
use crate::error::{GeomError, Result};
use crate::expr::{parse_constant, Expr};
use crate::numeric::{adaptive_simpson, linspace, richardson};
use crate::{Mat3, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleKind {
    Constant,
    Linear,
    NegIntegralKappa,
    Custom,
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Constant(f64),
    Linear(f64),
    NegIntegral(Arc<KappaIntegral>),
    Custom([ScalarFn; 3]),
}

/// `∫ κ` tabulated from an origin on a fixed grid; evaluation adds one
/// short quadrature from the nearest node.
struct KappaIntegral {
    curve: Arc<dyn Curve>,
    nodes: Vec<f64>,
    cumulative: Vec<f64>,
}

const KAPPA_QUAD_TOL: f64 = 1e-10;

impl KappaIntegral {
    fn new(curve: Arc<dyn Curve>, nodes: usize) -> Self {
        let dom = curve.domain();
        let origin = dom.clamp(0.0);
        let grid = linspace(dom.min, dom.max, nodes.max(2));
        let kappa = |x: f64| curve.curvature(x);
        let cell_tol = KAPPA_QUAD_TOL / grid.len() as f64;
        let mut cumulative = vec![0.0; grid.len()];
        for i in 1..grid.len() {
            cumulative[i] = cumulative[i - 1] + adaptive_simpson(&kappa, grid[i - 1], grid[i], cell_tol);
        }
        let mut table = Self { curve, nodes: grid, cumulative };
        let shift = table.integral(origin);
        for v in &mut table.cumulative {
            *v -= shift;
        }
        table
    }

    fn integral(&self, s: f64) -> f64 {
        let i = self.nodes.partition_point(|&x| x <= s).clamp(1, self.nodes.len()) - 1;
        let kappa = |x: f64| self.curve.curvature(x);
        self.cumulative[i]
            + adaptive_simpson(&kappa, self.nodes[i], s, KAPPA_QUAD_TOL / self.nodes.len() as f64)
    }

    fn kappa_prime(&self, s: f64) -> f64 {
        match self.curve.frenet_at(s, 0.0) {
            Ok(f) if f.kappa_p.is_finite() => f.kappa_p,
            _ => richardson(&|x| self.curve.curvature(x), s, 1e-3, 1),
        }
    }
}

/// The angle `θ(s)` between the ruling and the tangent, with `θ'` and `θ''`.
#[derive(Clone)]
pub struct AngleFunction {
    kind: AngleKind,
    label: String,
    repr: Repr,
}

impl std::fmt::Debug for AngleFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AngleFunction").field("kind", &self.kind).field("label", &self.label).finish()
    }
}

impl AngleFunction {
    pub fn constant(c: f64) -> Self {
        Self { kind: AngleKind::Constant, label: format!("constant({c})"), repr: Repr::Constant(c) }
    }

    /// `θ = a·s`.
    pub fn linear(a: f64) -> Self {
        Self { kind: AngleKind::Linear, label: format!("linear({a})"), repr: Repr::Linear(a) }
    }

    /// `θ(s) = −∫ κ` from `s = 0` (clamped into the curve's domain), so
    /// that `η ≡ 0`. The integral is tabulated on `nodes` grid points.
    pub fn neg_integral_kappa(curve: Arc<dyn Curve>, nodes: usize) -> Self {
        Self {
            kind: AngleKind::NegIntegralKappa,
            label: "neg-integral-kappa".into(),
            repr: Repr::NegIntegral(Arc::new(KappaIntegral::new(curve, nodes))),
        }
    }

    /// Custom `θ(s)` from an expression; `θ'` and `θ''` are taken symbolically.
    pub fn expression(src: &str) -> Result<Self> {
        let ds = Expr::parse(src, "s")?.derivatives(2);
        let fns: Vec<ScalarFn> = ds
            .into_iter()
            .map(|e| Arc::new(move |s: f64| e.eval(s)) as ScalarFn)
            .collect();
        Ok(Self {
            kind: AngleKind::Custom,
            label: src.trim().to_string(),
            repr: Repr::Custom([fns[0].clone(), fns[1].clone(), fns[2].clone()]),
        })
    }

    /// Custom angle from closures for `θ`, `θ'`, `θ''`.
    pub fn custom<A, B, C>(label: &str, theta: A, theta_p: B, theta_pp: C) -> Self
    where
        A: Fn(f64) -> f64 + Send + Sync + 'static,
        B: Fn(f64) -> f64 + Send + Sync + 'static,
        C: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            kind: AngleKind::Custom,
            label: label.to_string(),
            repr: Repr::Custom([Arc::new(theta), Arc::new(theta_p), Arc::new(theta_pp)]),
        }
    }

    /// Parses `constant(c)`, `linear(a)`, `neg-integral-kappa` or an
    /// expression in `s`. `curve` is needed only for the integral kind.
    pub fn parse(spec: &str, curve: &Arc<dyn Curve>, nodes: usize) -> Result<Self> {
        let spec = spec.trim();
        let arg = |prefix: &str| {
            spec.strip_prefix(prefix)
                .and_then(|r| r.trim_start().strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        if let Some(a) = arg("constant") {
            return Ok(Self::constant(parse_constant(a)?));
        }
        if let Some(a) = arg("linear") {
            return Ok(Self::linear(parse_constant(a)?));
        }
        if spec == "neg-integral-kappa" {
            return Ok(Self::neg_integral_kappa(curve.clone(), nodes));
        }
        Self::expression(spec)
    }

    pub fn kind(&self) -> AngleKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// `(θ, θ', θ'')` at `s`.
    pub fn values(&self, s: f64) -> (f64, f64, f64) {
        match &self.repr {
            Repr::Constant(c) => (*c, 0.0, 0.0),
            Repr::Linear(a) => (a * s, *a, 0.0),
            Repr::NegIntegral(t) => (-t.integral(s), -t.curve.curvature(s), -t.kappa_prime(s)),
            Repr::Custom([a, b, c]) => (a(s), b(s), c(s)),
        }
    }

    pub fn theta(&self, s: f64) -> f64 {
        self.values(s).0
    }

    /// Checks `θ'` against a central difference of `θ` at `samples` points.
    pub fn validate(&self, domain: Interval, samples: usize) -> Result<()> {
        let h = 1e-4;
        let inner = Interval::new(domain.min + 2.0 * h, domain.max - 2.0 * h);
        for s in linspace(inner.min, inner.max, samples.max(2)) {
            let (theta, analytic, _) = self.values(s);
            let numeric = richardson(&|x| self.theta(x), s, h, 1);
            if !theta.is_finite() || !((analytic - numeric).abs() <= 1e-6) {
                return Err(GeomError::AngleDerivativeMismatch { s, analytic, numeric });
            }
        }
        Ok(())
    }
}

/// Frame `{q_o, B, r}` with curvatures and their arc-length derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OTFrameData {
    pub s: f64,
    pub q_o: Vec3,
    pub b: Vec3,
    pub r: Vec3,
    pub eta: f64,
    pub mu: f64,
    pub xi: f64,
    pub eta_p: f64,
    pub mu_p: f64,
    pub xi_p: f64,
    pub theta: f64,
    pub theta_p: f64,
    pub theta_pp: f64,
    pub frenet: FrenetData,
}

impl OTFrameData {
    pub fn from_frenet(f: FrenetData, theta: f64, theta_p: f64, theta_pp: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        Self {
            s: f.s,
            q_o: ct * f.t + st * f.n,
            b: f.b,
            r: st * f.t - ct * f.n,
            eta: theta_p + f.kappa,
            mu: f.tau * st,
            xi: f.tau * ct,
            eta_p: theta_pp + f.kappa_p,
            mu_p: f.tau_p * st + f.tau * theta_p * ct,
            xi_p: f.tau_p * ct - f.tau * theta_p * st,
            theta,
            theta_p,
            theta_pp,
            frenet: f,
        }
    }

    /// `q_o' = μB − ηr`.
    pub fn q_o_prime(&self) -> Vec3 {
        self.mu * self.b - self.eta * self.r
    }

    /// `q_o'' = −(μ²+η²) q_o + (μ' + ηξ) B + (μξ − η') r`.
    pub fn q_o_second(&self) -> Vec3 {
        -(self.mu * self.mu + self.eta * self.eta) * self.q_o
            + (self.mu_p + self.eta * self.xi) * self.b
            + (self.mu * self.xi - self.eta_p) * self.r
    }
}

/// OT frame of `curve` with angle `angle` at `s`.
pub fn ot_frame(curve: &dyn Curve, angle: &AngleFunction, s: f64, eps_reg: f64) -> Result<OTFrameData> {
    let f = frenet(curve, s, eps_reg)?;
    let (theta, theta_p, theta_pp) = angle.values(s);
    Ok(OTFrameData::from_frenet(f, theta, theta_p, theta_pp))
}

/// Rows give `(q_o', B', r')` in the basis `(q_o, B, r)`.
pub fn frame_derivative_matrix(frame: &OTFrameData) -> Mat3 {
    let (e, m, x) = (frame.eta, frame.mu, frame.xi);
    Mat3::new(0.0, m, -e, -m, 0.0, x, e, -x, 0.0)
}

/// `κ = η − θ'` and `|τ| = √(μ² + ξ²)`; the sign of `τ` is not recoverable.
pub fn frenet_from_ot(eta: f64, mu: f64, xi: f64, theta_p: f64) -> (f64, f64) {
    (eta - theta_p, mu.hypot(xi))
}

/// Helix ratio `ρ = √(μ²+ξ²)/(η − θ')`, i.e. `|τ|/κ` (positive branch).
pub fn rho_ot(frame: &OTFrameData) -> f64 {
    frame.mu.hypot(frame.xi) / (frame.eta - frame.theta_p)
}

/// Slant-helix function written in the OT curvatures (positive branch):
///
/// `[(μμ' + ξξ')(η − θ') − (μ² + ξ²)(η' − θ'')] / ([(η − θ')² + μ² + ξ²] √(μ² + ξ²))`.
///
/// Substituting the Frenet relations reduces this to
/// `sign(τ)(κτ' − τκ')/(κ² + τ²)`: it differs from the Frenet-based
/// [`crate::curves::slant_sigma`] by the factor `sign(τ)·√(κ² + τ²)`.
pub fn sigma_ot(frame: &OTFrameData) -> f64 {
    let k = frame.eta - frame.theta_p;
    let kp = frame.eta_p - frame.theta_pp;
    let t2 = frame.mu * frame.mu + frame.xi * frame.xi;
    ((frame.mu * frame.mu_p + frame.xi * frame.xi_p) * k - t2 * kp) / ((k * k + t2) * t2.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{catalog, slant_sigma};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn catalog_with_curvature() -> Vec<Arc<dyn Curve>> {
        catalog::all().into_iter().filter(|c| c.curvature(c.domain().min + 0.3).abs() > 1e-6).collect()
    }

    #[test]
    fn example_helix_with_linear_angle() {
        let c = catalog::helix_ex1();
        let a = AngleFunction::linear(1.0);
        for s in linspace(0.0, 3.0 * PI, 25) {
            let f = ot_frame(&c, &a, s, 1e-9).unwrap();
            assert_abs_diff_eq!(f.eta, 1.5, epsilon = 1e-14);
            assert_abs_diff_eq!(f.mu, 0.5 * s.sin(), epsilon = 1e-14);
            assert_abs_diff_eq!(f.xi, 0.5 * s.cos(), epsilon = 1e-14);
        }
        let f = ot_frame(&c, &a, 0.0, 1e-9).unwrap();
        let m = frame_derivative_matrix(&f);
        let expect = Mat3::new(0.0, 0.0, -1.5, 0.0, 0.0, 0.5, 1.5, -0.5, 0.0);
        assert!((m - expect).norm() < 1e-15);
    }

    #[test]
    fn printed_ruling_of_first_example() {
        let c = catalog::helix_ex1();
        let a = AngleFunction::linear(1.0);
        let r2 = 2f64.sqrt();
        for s in [0.0, 0.7, 2.9, 8.1] {
            let f = ot_frame(&c, &a, s, 1e-9).unwrap();
            let (w, v) = ((s / r2).sin(), (s / r2).cos());
            let q = Vec3::new(-s.cos() * w / r2 - s.sin() * v, s.cos() * v / r2 - s.sin() * w, s.cos() / r2);
            assert!((f.q_o - q).norm() < 1e-14);
        }
    }

    #[test]
    fn slant_example_printed_curvatures() {
        let c = catalog::slant_ex2();
        let a = AngleFunction::linear(0.5);
        let r3 = 3f64.sqrt();
        for s in linspace(-2.0 * PI, 2.0 * PI, 33) {
            let Ok(f) = ot_frame(&c, &a, s, 1e-9) else { continue };
            assert_abs_diff_eq!(f.eta, 0.5 + 0.5 * r3 * (0.5 * s).cos(), epsilon = 1e-13);
            assert_abs_diff_eq!(f.xi, -0.25 * r3 * s.sin(), epsilon = 1e-13);
            assert_abs_diff_eq!(f.mu, -0.5 * r3 * (0.5 * s).sin().powi(2), epsilon = 1e-13);
        }
        let (k, t) = frenet_from_ot(0.5 + 0.5 * r3, 0.0, 0.0, 0.5);
        assert_abs_diff_eq!(k, 0.5 * r3, epsilon = 1e-15);
        assert_eq!(t, 0.0);
    }

    #[test]
    fn salkowski_constant_eta() {
        let c = catalog::salkowski_ex3();
        let a = AngleFunction::linear(1.0 / 26f64.sqrt());
        let d = c.domain();
        for s in linspace(d.min, d.max, 50) {
            let f = ot_frame(&c, &a, s, 1e-9).unwrap();
            // the raw parametrization slows down towards the ends, costing a few digits
            assert_abs_diff_eq!(f.eta, 1.0 + 26f64.sqrt() / 26.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn frame_is_orthonormal_and_ruling_is_osculating() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in catalog_with_curvature() {
            let a = AngleFunction::expression("0.3 + 0.7*sin(s)").unwrap();
            let d = c.domain();
            for _ in 0..50 {
                let s = rng.random_range(d.min..d.max);
                let Ok(f) = ot_frame(c.as_ref(), &a, s, 1e-9) else { continue };
                assert!((f.r - f.q_o.cross(&f.b)).norm() <= 1e-12);
                assert!(f.q_o.dot(&f.frenet.b).abs() <= 1e-12);
                assert_abs_diff_eq!(f.q_o.norm(), 1.0, epsilon = 1e-12);
                assert!(f.q_o.dot(&f.r).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_through_ot_curvatures() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for c in catalog_with_curvature() {
            let a = AngleFunction::linear(0.8);
            let d = c.domain();
            for _ in 0..200 {
                let s = rng.random_range(d.min..d.max);
                let Ok(f) = ot_frame(c.as_ref(), &a, s, 1e-9) else { continue };
                let (k, t) = frenet_from_ot(f.eta, f.mu, f.xi, f.theta_p);
                assert!((k - f.frenet.kappa).abs() <= 1e-9);
                assert!((t - f.frenet.tau.abs()).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn frame_derivatives_match_finite_differences() {
        let h = 1e-5;
        for c in catalog_with_curvature() {
            let a = AngleFunction::expression("s/2 + 0.1*cos(3*s)").unwrap();
            let d = c.domain();
            for s in linspace(d.min + 0.1, d.max - 0.1, 17) {
                let fr = |x: f64| ot_frame(c.as_ref(), &a, x, 1e-9);
                let (Ok(f), Ok(fp), Ok(fm)) = (fr(s), fr(s + h), fr(s - h)) else { continue };
                if f.frenet.kappa.abs() < 1e-2 {
                    continue;
                }
                let m = frame_derivative_matrix(&f);
                let basis = [f.q_o, f.b, f.r];
                let numeric = [(fp.q_o - fm.q_o) / (2.0 * h), (fp.b - fm.b) / (2.0 * h), (fp.r - fm.r) / (2.0 * h)];
                for i in 0..3 {
                    let predicted = m[(i, 0)] * basis[0] + m[(i, 1)] * basis[1] + m[(i, 2)] * basis[2];
                    assert!((predicted - numeric[i]).norm() <= 1e-5, "row {i} at s = {s}");
                }
                assert!((f.q_o_prime() - numeric[0]).norm() <= 1e-5);
                let qpp = (fp.q_o_prime() - fm.q_o_prime()) / (2.0 * h);
                assert!((f.q_o_second() - qpp).norm() <= 1e-5);
            }
        }
    }

    #[test]
    fn special_rulings() {
        let c = catalog::helix_ex1();
        for k in -2..=2 {
            let t = ot_frame(&c, &AngleFunction::constant(k as f64 * PI), 1.0, 1e-9).unwrap();
            assert!((t.q_o.cross(&t.frenet.t)).norm() < 1e-12);
            let n = ot_frame(&c, &AngleFunction::constant(0.5 * PI + k as f64 * PI), 1.0, 1e-9).unwrap();
            assert!((n.q_o.cross(&n.frenet.n)).norm() < 1e-12);
        }
    }

    #[test]
    fn neg_integral_kappa_kills_eta() {
        for c in catalog_with_curvature() {
            let a = AngleFunction::neg_integral_kappa(c.clone(), 256);
            a.validate(c.domain(), 40).unwrap();
            let d = c.domain();
            for s in linspace(d.min, d.max, 31) {
                let Ok(f) = ot_frame(c.as_ref(), &a, s, 1e-9) else { continue };
                assert_eq!(f.eta, 0.0);
            }
        }
        // helix: θ = −s/2 exactly
        let c: Arc<dyn Curve> = Arc::new(catalog::helix_ex1());
        let a = AngleFunction::neg_integral_kappa(c, 128);
        for s in [0.0, 1.0, 5.5, 3.0 * PI] {
            assert_abs_diff_eq!(a.theta(s), -0.5 * s, epsilon = 1e-10);
        }
    }

    #[test]
    fn angle_validation_catches_inconsistent_derivative() {
        let bad = AngleFunction::custom("bad", |s| s * s, |s| s, |_| 1.0);
        let err = bad.validate(Interval::new(0.0, 2.0), 10).unwrap_err();
        assert!(matches!(err, GeomError::AngleDerivativeMismatch { .. }));
        AngleFunction::expression("tan(s/3)").unwrap().validate(Interval::new(0.0, 2.0), 50).unwrap();
    }

    #[test]
    fn parse_angle_specs() {
        let c: Arc<dyn Curve> = Arc::new(catalog::helix_ex1());
        assert_eq!(AngleFunction::parse("constant(pi/2)", &c, 64).unwrap().kind(), AngleKind::Constant);
        let l = AngleFunction::parse("linear(0.5)", &c, 64).unwrap();
        assert_eq!(l.values(2.0), (1.0, 0.5, 0.0));
        assert_eq!(AngleFunction::parse("neg-integral-kappa", &c, 64).unwrap().kind(), AngleKind::NegIntegralKappa);
        let e = AngleFunction::parse("s^2", &c, 64).unwrap();
        assert_eq!(e.values(3.0), (9.0, 6.0, 2.0));
        assert!(AngleFunction::parse("linear(", &c, 64).is_err());
    }

    #[test]
    fn ot_slant_function_differs_by_speed_factor() {
        let c = catalog::slant_ex2();
        let a = AngleFunction::linear(0.5);
        for s in [-5.0, -2.5, 1.0, 2.0, 5.5] {
            let f = ot_frame(&c, &a, s, 1e-9).unwrap();
            let fr = f.frenet;
            let sigma = slant_sigma(&fr);
            let scale = fr.tau.signum() * fr.kappa.hypot(fr.tau);
            assert_abs_diff_eq!(sigma_ot(&f), sigma * scale, epsilon = 1e-12);
            assert_abs_diff_eq!(rho_ot(&f), fr.tau.abs() / fr.kappa, epsilon = 1e-12);
        }
    }
}
