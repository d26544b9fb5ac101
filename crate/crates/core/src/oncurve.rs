//! Curves `β(t) = φ(s(t), u(t))` on an OT-ruled surface: normal curvature,
//! geodesic curvature and geodesic torsion.
//!
//! The tangent is written `v = C φ_s + D φ_u` with `C = ṡ`, `D = u̇` for a
//! unit-speed `β`. Three evaluation paths exist:
//!
//! * [`invariants_printed`] — the general closed forms as printed, including the
//!   printed geodesic curvature;
//! * [`invariants_closed`] — the same closed forms with the geodesic curvature
//!   rederived from `⟨β̈, U × β̇⟩`;
//! * [`invariants_oracle`] — finite differences of `β` and of the unit normal.
//!
//! The printed geodesic curvature drops a factor of `C` in three places, so it
//! agrees with the other two paths only where `C ∈ {0, 1}`;
//! [`kappa_g_terms`] isolates the offending terms.

use crate::curves::Interval;
use crate::error::{GeomError, Result};
use crate::expr::Expr;
use crate::numeric::richardson;
use crate::surface::{curvatures_from_jet, CurvatureData, OTSurface, SurfaceJet};
use crate::Vec3;

/// How `(s(t), u(t))` is given.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    /// `s = s₀`, `u = t`.
    Ruling { s0: f64 },
    /// `s = t`, `u = u₀`.
    ParamS { u0: f64 },
    /// `s = c₁t + c₂`, `u = d₁t + d₂`.
    Linear { c1: f64, c2: f64, d1: f64, d2: f64 },
    /// Expressions in `t`, each stored with its first two derivatives.
    General { s: [Expr; 3], u: [Expr; 3] },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceCurve {
    pub kind: CurveKind,
    pub domain: Interval,
    /// When set, `t` is claimed to be arc length on `β` and the claim is
    /// checked instead of renormalising.
    pub unit_speed: bool,
}

/// `(value, first, second)` derivatives of `s` and `u` at one `t`.
type Coord = [f64; 3];

impl SurfaceCurve {
    pub fn ruling(s0: f64, u_range: Interval) -> Self {
        Self { kind: CurveKind::Ruling { s0 }, domain: u_range, unit_speed: true }
    }

    pub fn param_s(u0: f64, s_range: Interval) -> Self {
        Self { kind: CurveKind::ParamS { u0 }, domain: s_range, unit_speed: false }
    }

    pub fn linear(c1: f64, c2: f64, d1: f64, d2: f64, t_range: Interval) -> Self {
        Self { kind: CurveKind::Linear { c1, c2, d1, d2 }, domain: t_range, unit_speed: false }
    }

    pub fn general(s_src: &str, u_src: &str, t_range: Interval) -> Result<Self> {
        let three = |src: &str| -> Result<[Expr; 3]> {
            let d = Expr::parse(src, "t")?.derivatives(2);
            Ok([d[0].clone(), d[1].clone(), d[2].clone()])
        };
        Ok(Self { kind: CurveKind::General { s: three(s_src)?, u: three(u_src)? }, domain: t_range, unit_speed: false })
    }

    /// Parses `ruling(s0)`, `param-s(u0)`, `linear(c1,c2,d1,d2)` or
    /// `s=<expr>;u=<expr>` (expressions in `t`).
    pub fn parse(spec: &str, t_range: Interval) -> Result<Self> {
        let spec = spec.trim();
        let args = |name: &str| -> Option<Result<Vec<f64>>> {
            let inner = spec.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')')?;
            Some(inner.split(',').map(crate::expr::parse_constant).collect())
        };
        let bad = |n: usize| GeomError::Expression(format!("'{spec}' expects {n} argument(s)"));
        if let Some(a) = args("ruling") {
            let a = a?;
            return if a.len() == 1 { Ok(Self::ruling(a[0], t_range)) } else { Err(bad(1)) };
        }
        if let Some(a) = args("param-s") {
            let a = a?;
            return if a.len() == 1 { Ok(Self::param_s(a[0], t_range)) } else { Err(bad(1)) };
        }
        if let Some(a) = args("linear") {
            let a = a?;
            return if a.len() == 4 { Ok(Self::linear(a[0], a[1], a[2], a[3], t_range)) } else { Err(bad(4)) };
        }
        let mut s_src = None;
        let mut u_src = None;
        for part in spec.split(';') {
            match part.split_once('=') {
                Some((k, v)) if k.trim() == "s" => s_src = Some(v),
                Some((k, v)) if k.trim() == "u" => u_src = Some(v),
                _ => {}
            }
        }
        match (s_src, u_src) {
            (Some(s), Some(u)) => Self::general(s, u, t_range),
            _ => Err(GeomError::Expression(format!(
                "unknown surface curve '{spec}'; expected ruling(s0), param-s(u0), linear(c1,c2,d1,d2) or s=...;u=..."
            ))),
        }
    }

    pub fn with_unit_speed_claim(mut self, claim: bool) -> Self {
        self.unit_speed = claim;
        self
    }

    /// `s`, `u` and their first two `t`-derivatives.
    pub fn coords(&self, t: f64) -> (Coord, Coord) {
        match &self.kind {
            CurveKind::Ruling { s0 } => ([*s0, 0.0, 0.0], [t, 1.0, 0.0]),
            CurveKind::ParamS { u0 } => ([t, 1.0, 0.0], [*u0, 0.0, 0.0]),
            CurveKind::Linear { c1, c2, d1, d2 } => ([c1 * t + c2, *c1, 0.0], [d1 * t + d2, *d1, 0.0]),
            CurveKind::General { s, u } => (
                [s[0].eval(t), s[1].eval(t), s[2].eval(t)],
                [u[0].eval(t), u[1].eval(t), u[2].eval(t)],
            ),
        }
    }
}

/// Unit-speed tangent coefficients at one point of the curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentData {
    pub c: f64,
    pub d: f64,
    pub c_dot: f64,
    pub d_dot: f64,
}

impl TangentData {
    /// `(C cos θ + D)² + C²(f² + g²)`, which is 1 for a unit-speed curve.
    pub fn speed_squared(&self, jet: &SurfaceJet) -> f64 {
        let a = self.c * jet.frame.theta.cos() + self.d;
        a * a + self.c * self.c * jet.metric()
    }
}

/// Surface jet and unit-speed tangent data at `β(t)`.
///
/// Curves that do not claim unit speed are renormalised pointwise by the
/// chain rule: with `v = ‖β'‖`, `C = s'/v` and `Ċ = (s''v − s'v')/v³`.
pub fn curve_point(surface: &OTSurface, curve: &SurfaceCurve, t: f64) -> Result<(SurfaceJet, TangentData)> {
    let ([s, sp, spp], [u, up, upp]) = curve.coords(t);
    let jet = surface.jet(s, u)?;
    let vel = sp * jet.phi_s + up * jet.phi_u;
    let speed = vel.norm();
    if curve.unit_speed {
        if (speed - 1.0).abs() > 1e-6 {
            return Err(GeomError::NotUnitSpeed { t, speed });
        }
        return Ok((jet, TangentData { c: sp, d: up, c_dot: spp, d_dot: upp }));
    }
    if !(speed > surface.tolerances().eps_reg) {
        return Err(GeomError::NotUnitSpeed { t, speed });
    }
    let acc = sp * sp * jet.phi_ss + 2.0 * sp * up * jet.phi_su + spp * jet.phi_s + upp * jet.phi_u;
    let speed_p = vel.dot(&acc) / speed;
    let v3 = speed.powi(3);
    Ok((
        jet,
        TangentData {
            c: sp / speed,
            d: up / speed,
            c_dot: (spp * speed - sp * speed_p) / v3,
            d_dot: (upp * speed - up * speed_p) / v3,
        },
    ))
}

/// Normal curvature, geodesic curvature and geodesic torsion at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveInvariants {
    pub t: f64,
    pub s: f64,
    pub u: f64,
    pub k_n: f64,
    pub kappa_g: f64,
    pub tau_g: f64,
}

/// `k_n = C[(C cos θ + D)(A₁ cos θ + A₂) + (C A₁ + D B₁)(f² + g²)]`.
pub fn normal_curvature(jet: &SurfaceJet, cd: &CurvatureData, t: &TangentData) -> f64 {
    let ct = jet.frame.theta.cos();
    let (c, d) = (t.c, t.d);
    c * ((c * ct + d) * (cd.A1 * ct + cd.A2) + (c * cd.A1 + d * cd.B1) * jet.metric())
}

/// `τ_g = √(f² + g²)[C(C A₂ + D B₂) − D(C A₁ + D B₁)]`.
pub fn geodesic_torsion(jet: &SurfaceJet, cd: &CurvatureData, t: &TangentData) -> f64 {
    let (c, d) = (t.c, t.d);
    jet.metric().sqrt() * (c * (c * cd.A2 + d * cd.B2) - d * (c * cd.A1 + d * cd.B1))
}

/// The general geodesic curvature exactly as printed.
pub fn kappa_g_printed(jet: &SurfaceJet, t: &TangentData) -> f64 {
    let fr = &jet.frame;
    let (st, ct) = fr.theta.sin_cos();
    let (f, g, w2) = (jet.f, jet.g, jet.metric());
    let (c, d, cdot, ddot) = (t.c, t.d, t.c_dot, t.d_dot);
    let w2_s = 2.0 * (f * jet.f_s + g * jet.g_s);
    let ef = fr.eta * f - fr.mu * g;
    let a = c * ct + d;
    let first = a * (-w2 * cdot + c * ef * (2.0 * d + ct) - 0.5 * c * w2_s);
    let second = c * g * (cdot * g * ct - c * g * fr.theta_p * st - fr.mu * c * g * g + f * c * fr.eta * g + ddot * g);
    let third = c * f * (cdot * f * ct - c * f * fr.theta_p * st - fr.mu * f * g * c + c * f * f * fr.eta + ddot * f);
    (first + second + third) / w2.sqrt()
}

/// Geodesic curvature `⟨β̈, U × β̇⟩` in closed form:
/// `(1/W)[C W² ȧ + C³ W² (ηf − μg) + a(−Ċ W² + C(ηf − μg)(C cos θ + 2D) − ½C²(W²)_s)]`
/// with `a = C cos θ + D`, `W² = f² + g²`.
pub fn kappa_g_closed(jet: &SurfaceJet, t: &TangentData) -> f64 {
    let fr = &jet.frame;
    let (st, ct) = fr.theta.sin_cos();
    let (f, g, w2) = (jet.f, jet.g, jet.metric());
    let (c, d, cdot, ddot) = (t.c, t.d, t.c_dot, t.d_dot);
    let w2_s = 2.0 * (f * jet.f_s + g * jet.g_s);
    let ef = fr.eta * f - fr.mu * g;
    let a = c * ct + d;
    let a_dot = cdot * ct - c * c * fr.theta_p * st + ddot;
    let bracket =
        c * w2 * a_dot + c.powi(3) * w2 * ef + a * (-cdot * w2 + c * ef * (c * ct + 2.0 * d) - 0.5 * c * c * w2_s);
    bracket / w2.sqrt()
}

/// One term where the printed geodesic curvature differs from the closed
/// form; `printed − closed` summed over all terms is the total discrepancy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermDiscrepancy {
    pub term: &'static str,
    pub printed: f64,
    pub closed: f64,
}

/// Splits `κ_g(printed) − κ_g(closed)` into the terms that differ.
pub fn kappa_g_terms(jet: &SurfaceJet, t: &TangentData) -> [TermDiscrepancy; 4] {
    let fr = &jet.frame;
    let (st, ct) = fr.theta.sin_cos();
    let (f, g, w2) = (jet.f, jet.g, jet.metric());
    let w = w2.sqrt();
    let c = t.c;
    let a = c * ct + t.d;
    let ef = fr.eta * f - fr.mu * g;
    let w2_s = 2.0 * (f * jet.f_s + g * jet.g_s);
    [
        TermDiscrepancy {
            term: "-C W^2 theta' sin(theta) (derivative of C cos(theta))",
            printed: -c * c * w2 * fr.theta_p * st / w,
            closed: -c.powi(3) * w2 * fr.theta_p * st / w,
        },
        TermDiscrepancy {
            term: "C W^2 (eta f - mu g) (frame rotation, q-component)",
            printed: c * c * w2 * ef / w,
            closed: c.powi(3) * w2 * ef / w,
        },
        TermDiscrepancy {
            term: "a C (eta f - mu g) cos(theta) (frame rotation, B/r-components)",
            printed: a * c * ef * ct / w,
            closed: a * c * c * ef * ct / w,
        },
        TermDiscrepancy {
            term: "-a C (f^2+g^2)_s / 2 (derivative of f, g along s)",
            printed: -0.5 * a * c * w2_s / w,
            closed: -0.5 * a * c * c * w2_s / w,
        },
    ]
}

fn invariants_with(
    surface: &OTSurface,
    curve: &SurfaceCurve,
    t: f64,
    kappa_g: fn(&SurfaceJet, &TangentData) -> f64,
) -> Result<CurveInvariants> {
    let (jet, td) = curve_point(surface, curve, t)?;
    let cd = curvatures_from_jet(&jet);
    Ok(CurveInvariants {
        t,
        s: jet.s,
        u: jet.u,
        k_n: normal_curvature(&jet, &cd, &td),
        kappa_g: kappa_g(&jet, &td),
        tau_g: geodesic_torsion(&jet, &cd, &td),
    })
}

/// Closed forms as printed.
pub fn invariants_printed(surface: &OTSurface, curve: &SurfaceCurve, t: f64) -> Result<CurveInvariants> {
    invariants_with(surface, curve, t, kappa_g_printed)
}

/// Closed forms with the rederived geodesic curvature.
pub fn invariants_closed(surface: &OTSurface, curve: &SurfaceCurve, t: f64) -> Result<CurveInvariants> {
    invariants_with(surface, curve, t, kappa_g_closed)
}

/// Definitional values from finite differences:
/// `k_n = ⟨β̈, U⟩/‖β̇‖²`, `κ_g = ⟨β̈, U × β̇⟩/‖β̇‖³`, `τ_g = −⟨U̇, U × β̇⟩/‖β̇‖²`,
/// with `U` the normalised `φ_s × φ_u`. All three are independent of the
/// parametrization of `β`.
pub fn invariants_oracle(surface: &OTSurface, curve: &SurfaceCurve, t: f64) -> Result<CurveInvariants> {
    let ([s, ..], [u, ..]) = curve.coords(t);
    surface.jet(s, u)?;
    let nan = Vec3::repeat(f64::NAN);
    let beta = |x: f64| {
        let ([s, ..], [u, ..]) = curve.coords(x);
        surface.point(s, u).unwrap_or(nan)
    };
    let normal = |x: f64| {
        let ([s, ..], [u, ..]) = curve.coords(x);
        surface
            .raw_jet(s, u)
            .map(|j| j.phi_s.cross(&j.phi_u).normalize())
            .unwrap_or(nan)
    };
    let vel = richardson(&beta, t, 1e-4, 1);
    let acc = richardson(&beta, t, 1e-3, 2);
    let n = normal(t);
    let n_dot = richardson(&normal, t, 1e-4, 1);
    if !(vel.iter().chain(acc.iter()).chain(n_dot.iter()).all(|c| c.is_finite())) {
        let d = surface.s_domain();
        return Err(GeomError::OutOfDomain { s, min: d.min, max: d.max });
    }
    let v = vel.norm();
    let side = n.cross(&vel);
    Ok(CurveInvariants {
        t,
        s,
        u,
        k_n: acc.dot(&n) / (v * v),
        kappa_g: acc.dot(&side) / v.powi(3),
        tau_g: -n_dot.dot(&side) / (v * v),
    })
}

/// The specialised surfaces and curves with printed reduced formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Tangent surface, `θ ≡ 0`.
    Tangent,
    /// Principal-normal surface, `θ ≡ π/2`.
    PrincipalNormal,
    /// A ruling, `C = 0`.
    Ruling,
    /// A `u`-parameter curve, `D = 0`.
    ParamCurve,
    /// Constant, non-zero `C` and `D`.
    Linear,
}

impl Case {
    pub const ALL: [Case; 5] = [Case::Tangent, Case::PrincipalNormal, Case::Ruling, Case::ParamCurve, Case::Linear];
}

/// Reduced `(k_n, κ_g, τ_g)` as printed for `case`, evaluated from the
/// surface jet and tangent data.
pub fn case_formulas(case: Case, jet: &SurfaceJet, t: &TangentData) -> CurveInvariants {
    let fr = &jet.frame;
    let fre = &fr.frenet;
    let (kappa, tau, kp, tp) = (fre.kappa, fre.tau, fre.kappa_p, fre.tau_p);
    let (st, ct) = fr.theta.sin_cos();
    let u = jet.u;
    let (c, d, cdot, ddot) = (t.c, t.d, t.c_dot, t.d_dot);
    let (f, g, w2) = (jet.f, jet.g, jet.metric());
    let w = w2.sqrt();
    let x = jet.cross_term();
    let (k_n, kappa_g, tau_g) = match case {
        Case::Tangent => (
            c * c * u * kappa * tau,
            c * (c + d) * (u * kp + kappa * (2.0 * d + 1.0)) + u * kappa * (cdot * d - c * ddot) + c * c * u * u * kappa.powi(3),
            c * tau * (c + d),
        ),
        Case::PrincipalNormal => {
            let one = 1.0 - u * kappa;
            let root = (one * one + u * u * tau * tau).sqrt();
            let inner = u * u * kp * tau + one * u * tp;
            let k_n = c * (c * inner + 2.0 * d * tau) / root;
            let kappa_g = (cdot * d * (-(one * one + u * u * tau * tau)
                + 2.0 * c * d * (kappa - u * (kappa * kappa + tau * tau))
                - c * (one * kp + u * u * tau * tp))
                + c * u * tau * (-tau * c * u * u * tau * tau + c * one * u * kappa * tau + ddot * u * tau)
                + c * one * (-c * one * u * tau * tau + c * kappa * one * one + ddot * one))
                / root;
            let tau_g = c * c * tau - d * (c * u * (u * kp * tau + one * tp) - d * tau) / root;
            (k_n, kappa_g, tau_g)
        }
        Case::Ruling => (0.0, 0.0, -d * d * fr.mu * st / w2),
        Case::ParamCurve => {
            let k_n = c * c / w * ((f * fr.mu + g * fr.eta) * ct - x - w2 * fr.xi);
            let w2_s = 2.0 * (f * jet.f_s + g * jet.g_s);
            let kappa_g = (c * ct * (-w2 * cdot + c * ct * (fr.eta * f - fr.mu * g) - 0.5 * c * w2_s)
                + c * g * (cdot * g * ct - c * g * fr.theta_p * st - fr.mu * c * g * g + f * c * fr.eta * g)
                + c * f * (cdot * f * ct - c * f * fr.theta_p * st - fr.mu * f * g * c + c * f * f * fr.eta))
                / w;
            let tau_g = c * c / w2 * (w2 * (f * fr.mu + g * fr.eta + fr.xi * ct) + x * ct);
            (k_n, kappa_g, tau_g)
        }
        Case::Linear => {
            let cd = curvatures_from_jet(jet);
            let w2_s = 2.0 * (f * jet.f_s + g * jet.g_s);
            let a = c * ct + d;
            let kappa_g = (a * (c * (fr.eta * f - fr.mu * g) * (2.0 * d + ct) - 0.5 * c * w2_s)
                + c * g * (-c * g * fr.theta_p * st - fr.mu * c * g * g + f * c * fr.eta * g)
                + c * f * (-c * f * fr.theta_p * st - fr.mu * f * g * c + c * f * f * fr.eta))
                / w;
            (normal_curvature(jet, &cd, t), kappa_g, geodesic_torsion(jet, &cd, t))
        }
    };
    CurveInvariants { t: f64::NAN, s: jet.s, u, k_n, kappa_g, tau_g }
}

/// The cases whose hypotheses hold for `curve` on `surface`, judged on the
/// curve kind and on the angle sampled over the surface's `s`-domain.
pub fn applicable_cases(surface: &OTSurface, curve: &SurfaceCurve) -> Vec<Case> {
    let tol = surface.tolerances().tol_class;
    let d = surface.s_domain();
    let samples = crate::numeric::linspace(d.min, d.max, 64);
    let all = |f: &dyn Fn(f64) -> f64| samples.iter().all(|&s| f(s).abs() <= tol);
    let angle = surface.angle();
    let mut out = Vec::new();
    if all(&|s| angle.theta(s).sin()) && all(&|s| angle.values(s).1) {
        out.push(Case::Tangent);
    }
    if all(&|s| angle.theta(s).cos()) && all(&|s| angle.values(s).1) {
        out.push(Case::PrincipalNormal);
    }
    match curve.kind {
        CurveKind::Ruling { .. } => out.push(Case::Ruling),
        CurveKind::ParamS { .. } => out.push(Case::ParamCurve),
        CurveKind::Linear { c1, d1, .. } if c1 != 0.0 && d1 != 0.0 => out.push(Case::Linear),
        _ => {}
    }
    out
}

/// Largest difference between a case's reduced formulas and the general
/// closed forms over the sampled points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseCheck {
    pub case: Case,
    pub max_diff_k_n: f64,
    pub max_diff_kappa_g: f64,
    pub max_diff_tau_g: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveClassification {
    pub is_asymptotic: bool,
    pub is_geodesic: bool,
    pub is_line_of_curvature: bool,
    pub max_abs_k_n: f64,
    pub max_abs_kappa_g: f64,
    pub max_abs_tau_g: f64,
    /// For linear curves: spread of `(C A₁ + D B₁)/(C A₂ + D B₂)` over the
    /// samples where it is finite.
    pub ratio_spread: Option<f64>,
    pub case_checks: Vec<CaseCheck>,
    pub samples_used: usize,
    /// Parameters skipped because the point is singular or the frame is
    /// undefined.
    pub skipped_t: Vec<f64>,
}

/// Samples the closed-form invariants over `t_grid`. "≡ 0" means at most
/// `tol_class` at every usable sample; line of curvature is `τ_g ≡ 0`.
pub fn classify_curve(surface: &OTSurface, curve: &SurfaceCurve, t_grid: &[f64]) -> CurveClassification {
    let tol = surface.tolerances().tol_class;
    let cases = applicable_cases(surface, curve);
    let mut checks: Vec<CaseCheck> = cases
        .iter()
        .map(|&case| CaseCheck { case, max_diff_k_n: 0.0, max_diff_kappa_g: 0.0, max_diff_tau_g: 0.0 })
        .collect();
    let (mut kn, mut kg, mut tg) = (0f64, 0f64, 0f64);
    let mut ratios = Vec::new();
    let mut skipped_t = Vec::new();
    let mut used = 0;
    for &t in t_grid {
        let Ok((jet, td)) = curve_point(surface, curve, t) else {
            skipped_t.push(t);
            continue;
        };
        used += 1;
        let cd = curvatures_from_jet(&jet);
        let general = CurveInvariants {
            t,
            s: jet.s,
            u: jet.u,
            k_n: normal_curvature(&jet, &cd, &td),
            kappa_g: kappa_g_printed(&jet, &td),
            tau_g: geodesic_torsion(&jet, &cd, &td),
        };
        kn = kn.max(general.k_n.abs());
        kg = kg.max(kappa_g_closed(&jet, &td).abs());
        tg = tg.max(general.tau_g.abs());
        for chk in &mut checks {
            let sp = case_formulas(chk.case, &jet, &td);
            chk.max_diff_k_n = chk.max_diff_k_n.max((sp.k_n - general.k_n).abs());
            chk.max_diff_kappa_g = chk.max_diff_kappa_g.max((sp.kappa_g - general.kappa_g).abs());
            chk.max_diff_tau_g = chk.max_diff_tau_g.max((sp.tau_g - general.tau_g).abs());
        }
        if matches!(curve.kind, CurveKind::Linear { .. }) {
            let r = (td.c * cd.A1 + td.d * cd.B1) / (td.c * cd.A2 + td.d * cd.B2);
            if r.is_finite() {
                ratios.push(r);
            }
        }
    }
    let ratio_spread = (!ratios.is_empty()).then(|| {
        let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        hi - lo
    });
    CurveClassification {
        is_asymptotic: used > 0 && kn <= tol,
        is_geodesic: used > 0 && kg <= tol,
        is_line_of_curvature: used > 0 && tg <= tol,
        max_abs_k_n: kn,
        max_abs_kappa_g: kg,
        max_abs_tau_g: tg,
        ratio_spread,
        case_checks: checks,
        samples_used: used,
        skipped_t,
    }
}
