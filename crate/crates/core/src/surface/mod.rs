//! The OT-ruled surface `φ(s, u) = α(s) + u·q_o(s)`: jets, Gauss map,
//! fundamental forms, curvatures and the Weingarten map in closed form.

use std::sync::Arc;

use nalgebra::Vector2;

use crate::curves::{validate, ArcLengthCurve, Curve, Interval, Parametrization};
use crate::error::{GeomError, Result};
use crate::otframe::{ot_frame, AngleFunction, OTFrameData};
use crate::tolerance::Tolerances;
use crate::Vec3;

mod classify;
mod singular;

pub use classify::{BaseCurveStatus, ClassificationReport};
pub use singular::{find_roots, SingularPoint, SingularReport};

/// An OT-ruled surface over a unit-speed base curve.
#[derive(Clone)]
pub struct OTSurface {
    curve: Arc<dyn Curve>,
    angle: AngleFunction,
    u_domain: Interval,
    tol: Tolerances,
}

impl std::fmt::Debug for OTSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OTSurface")
            .field("s_domain", &self.curve.domain())
            .field("u_domain", &self.u_domain)
            .field("angle", &self.angle)
            .finish_non_exhaustive()
    }
}

/// Position, partial derivatives and the `f`, `g` shorthands at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub s: f64,
    pub u: f64,
    pub point: Vec3,
    pub phi_s: Vec3,
    pub phi_u: Vec3,
    pub phi_ss: Vec3,
    pub phi_su: Vec3,
    pub phi_uu: Vec3,
    /// `sin θ − u η`.
    pub f: f64,
    /// `u μ`.
    pub g: f64,
    /// `∂f/∂s = θ' cos θ − u η'`.
    pub f_s: f64,
    /// `∂g/∂s = u μ'`.
    pub g_s: f64,
    /// Unit normal `(f B − g r)/√(f²+g²)`, absent at singular points.
    pub normal: Option<Vec3>,
    pub frame: OTFrameData,
}

impl SurfaceJet {
    /// `f² + g²`, which equals `EG − F²`.
    pub fn metric(&self) -> f64 {
        self.f * self.f + self.g * self.g
    }

    /// `f_s g − f g_s`, the regularised form of `g²(f/g)_s`.
    pub fn cross_term(&self) -> f64 {
        self.f_s * self.g - self.f * self.g_s
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub E: f64,
    pub F: f64,
    pub G: f64,
    pub L: f64,
    pub M: f64,
    pub N: f64,
}

impl FundamentalForms {
    /// `K = (LN − M²)/(EG − F²)`.
    pub fn gaussian(&self) -> Result<f64> {
        let det = self.metric_det()?;
        Ok((self.L * self.N - self.M * self.M) / det)
    }

    /// `H = (EN − 2FM + GL)/(2(EG − F²))`.
    pub fn mean(&self) -> Result<f64> {
        let det = self.metric_det()?;
        Ok((self.E * self.N - 2.0 * self.F * self.M + self.G * self.L) / (2.0 * det))
    }

    fn metric_det(&self) -> Result<f64> {
        let det = self.E * self.G - self.F * self.F;
        if !(det > 0.0) {
            return Err(GeomError::DegenerateMetric { det });
        }
        Ok(det)
    }

    /// Shape operator `I⁻¹ II` acting on coefficient vectors in the
    /// `(φ_s, φ_u)` basis.
    pub fn shape_operator(&self) -> Result<nalgebra::Matrix2<f64>> {
        let det = self.metric_det()?;
        let inv = nalgebra::Matrix2::new(self.G, -self.F, -self.F, self.E) / det;
        Ok(inv * nalgebra::Matrix2::new(self.L, self.M, self.M, self.N))
    }
}

/// Everything curvature-related at one regular point.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureData {
    pub s: f64,
    pub u: f64,
    pub forms: FundamentalForms,
    pub K: f64,
    pub H: f64,
    pub A1: f64,
    pub A2: f64,
    pub B1: f64,
    pub B2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Principal directions as unit coefficient vectors `(a, b)` of
    /// `a φ_s + b φ_u`.
    pub dir1: Vector2<f64>,
    pub dir2: Vector2<f64>,
    /// `k = (λ₁ − A₁)/A₂ = B₁/(λ₁ − B₂)`, when finite.
    pub k_dir_ratio: Option<f64>,
    /// `m = (λ₂ − A₁)/A₂ = B₁/(λ₂ − B₂)`, when finite.
    pub m_dir_ratio: Option<f64>,
}

impl CurvatureData {
    /// Weingarten matrix `[[A1, B1], [A2, B2]]`: the columns are the images of
    /// `φ_s` and `φ_u`.
    pub fn weingarten_matrix(&self) -> nalgebra::Matrix2<f64> {
        nalgebra::Matrix2::new(self.A1, self.B1, self.A2, self.B2)
    }
}

/// Eigenvalues (descending) and unit eigenvectors of `[[a1, b1], [a2, b2]]`.
/// The discriminant is clamped at zero.
pub fn eigen_2x2(a1: f64, b1: f64, a2: f64, b2: f64) -> ([f64; 2], [Vector2<f64>; 2]) {
    let disc = ((a1 - b2).powi(2) + 4.0 * a2 * b1).max(0.0).sqrt();
    let l1 = 0.5 * (a1 + b2 + disc);
    let l2 = 0.5 * (a1 + b2 - disc);
    let vec_for = |l: f64, fallback: Vector2<f64>| {
        let u = Vector2::new(b1, l - a1);
        let v = Vector2::new(l - b2, a2);
        let w = if u.norm() >= v.norm() { u } else { v };
        let scale = 1.0 + a1.abs() + b1.abs() + a2.abs() + b2.abs();
        if w.norm() <= 1e-14 * scale {
            fallback
        } else {
            w.normalize()
        }
    };
    let e1 = vec_for(l1, Vector2::new(1.0, 0.0));
    let mut e2 = vec_for(l2, Vector2::new(0.0, 1.0));
    if disc == 0.0 && (e1 - e2).norm() < 1e-12 {
        e2 = Vector2::new(-e1.y, e1.x);
    }
    ([l1, l2], [e1, e2])
}

fn dir_ratio(lambda: f64, a1: f64, a2: f64, b1: f64, b2: f64) -> Option<f64> {
    let r = if a2.abs() >= (lambda - b2).abs() {
        (lambda - a1) / a2
    } else {
        b1 / (lambda - b2)
    };
    r.is_finite().then_some(r)
}

impl OTSurface {
    /// Builds the surface; general-parameter curves are reparametrized by arc
    /// length first.
    pub fn new(curve: Arc<dyn Curve>, angle: AngleFunction, u_domain: Interval, tol: Tolerances) -> Result<Self> {
        let curve: Arc<dyn Curve> = match curve.parametrization() {
            Parametrization::ArcLength => curve,
            Parametrization::General => {
                let origin = curve.domain().clamp(0.0);
                Arc::new(ArcLengthCurve::new(curve, origin, tol.grid_nodes, tol.eps_reg)?)
            }
        };
        validate(curve.as_ref(), 201, tol.eps_reg)?;
        angle.validate(curve.domain(), 50)?;
        Ok(Self { curve, angle, u_domain, tol })
    }

    pub fn curve(&self) -> &Arc<dyn Curve> {
        &self.curve
    }

    pub fn angle(&self) -> &AngleFunction {
        &self.angle
    }

    pub fn s_domain(&self) -> Interval {
        self.curve.domain()
    }

    pub fn u_domain(&self) -> Interval {
        self.u_domain
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    pub fn frame(&self, s: f64) -> Result<OTFrameData> {
        ot_frame(self.curve.as_ref(), &self.angle, s, self.tol.eps_reg)
    }

    /// `φ(s, u)`.
    pub fn point(&self, s: f64, u: f64) -> Result<Vec3> {
        let f = self.frame(s)?;
        Ok(f.frenet.position + u * f.q_o)
    }

    /// Jet without the regularity requirement; `normal` is `None` at
    /// singular points.
    pub fn raw_jet(&self, s: f64, u: f64) -> Result<SurfaceJet> {
        let fr = self.frame(s)?;
        let (st, ct) = fr.theta.sin_cos();
        let f = st - u * fr.eta;
        let g = u * fr.mu;
        let w2 = f * f + g * g;
        let eps = self.tol.eps_sing;
        let normal = (w2 > eps * eps).then(|| (f * fr.b - g * fr.r) / w2.sqrt());
        let alpha_pp = fr.frenet.kappa * fr.frenet.n;
        Ok(SurfaceJet {
            s,
            u,
            point: fr.frenet.position + u * fr.q_o,
            phi_s: ct * fr.q_o + g * fr.b + f * fr.r,
            phi_u: fr.q_o,
            phi_ss: alpha_pp + u * fr.q_o_second(),
            phi_su: fr.q_o_prime(),
            phi_uu: Vec3::zeros(),
            f,
            g,
            f_s: fr.theta_p * ct - u * fr.eta_p,
            g_s: u * fr.mu_p,
            normal,
            frame: fr,
        })
    }

    /// Jet at a regular point; `SingularPoint` when `f² + g² ≤ ε_sing²`.
    pub fn jet(&self, s: f64, u: f64) -> Result<SurfaceJet> {
        let j = self.raw_jet(s, u)?;
        if j.normal.is_none() {
            return Err(GeomError::SingularPoint { s, u, metric: j.metric() });
        }
        Ok(j)
    }

    /// Unit normal `U = (f B − g r)/√(f² + g²)`.
    pub fn gauss_map(&self, s: f64, u: f64) -> Result<Vec3> {
        Ok(self.jet(s, u)?.normal.expect("regular jet carries a normal"))
    }

    /// Closed-form `E, F, G, L, M, N`.
    pub fn fundamental_forms(&self, s: f64, u: f64) -> Result<FundamentalForms> {
        Ok(forms_from_jet(&self.jet(s, u)?))
    }

    /// Closed-form `K`, `H`, Weingarten entries, principal curvatures and
    /// directions.
    pub fn curvatures(&self, s: f64, u: f64) -> Result<CurvatureData> {
        Ok(curvatures_from_jet(&self.jet(s, u)?))
    }

    /// Striction point `α + (η sin θ/(η² + μ²)) q_o`, using
    /// `⟨α', q_o'⟩ = −η sin θ` and `‖q_o'‖² = η² + μ²`.
    pub fn striction_point(&self, s: f64) -> Result<Vec3> {
        let fr = self.frame(s)?;
        let q2 = fr.eta * fr.eta + fr.mu * fr.mu;
        if q2.sqrt() <= self.tol.eps_reg {
            return Err(GeomError::CylindricalDirection { s, norm: q2.sqrt() });
        }
        Ok(fr.frenet.position + (fr.eta * fr.theta.sin() / q2) * fr.q_o)
    }

    /// `det(α', q_o, q_o') = μ sin θ`.
    pub fn developability(&self, s: f64) -> Result<f64> {
        let fr = self.frame(s)?;
        Ok(fr.mu * fr.theta.sin())
    }
}

pub fn forms_from_jet(j: &SurfaceJet) -> FundamentalForms {
    let fr = &j.frame;
    let (st, ct) = fr.theta.sin_cos();
    let w2 = j.metric();
    let w = w2.sqrt();
    FundamentalForms {
        E: w2 + ct * ct,
        F: ct,
        G: 1.0,
        L: (-w2 * fr.xi + fr.mu * st * ct - j.cross_term()) / w,
        M: fr.mu * st / w,
        N: 0.0,
    }
}

#[allow(non_snake_case)]
pub fn curvatures_from_jet(j: &SurfaceJet) -> CurvatureData {
    let fr = &j.frame;
    let (st, ct) = fr.theta.sin_cos();
    let w2 = j.metric();
    let w = w2.sqrt();
    let w3 = w2 * w;
    let x = j.cross_term();
    let K = -(fr.mu * st).powi(2) / (w2 * w2);
    let H = -(w2 * fr.xi + fr.mu * st * ct + x) / (2.0 * w3);
    let A1 = -(x + w2 * fr.xi) / w3;
    let A2 = (w2 * (j.f * fr.mu + j.g * fr.eta + fr.xi * ct) + x * ct) / w3;
    let B1 = fr.mu * st / w3;
    let B2 = -fr.mu * ct * st / w3;
    let ([lambda1, lambda2], [dir1, dir2]) = eigen_2x2(A1, B1, A2, B2);
    CurvatureData {
        s: j.s,
        u: j.u,
        forms: forms_from_jet(j),
        K,
        H,
        A1,
        A2,
        B1,
        B2,
        lambda1,
        lambda2,
        dir1,
        dir2,
        k_dir_ratio: dir_ratio(lambda1, A1, A2, B1, B2),
        m_dir_ratio: dir_ratio(lambda2, A1, A2, B1, B2),
    }
}
