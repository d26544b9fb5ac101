use super::OTSurface;
use crate::error::GeomError;

/// Sampled surface-level classification. Every "≡ 0" test compares the
/// maximum over the samples with `tol_class` (`tol_min` for `H`).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub is_plane: bool,
    pub is_tangent_mode: bool,
    pub is_normal_mode: bool,
    pub is_developable: bool,
    pub is_cylindrical: bool,
    pub is_minimal: bool,
    /// Minimal but not planar; by Catalan's theorem a helicoid piece.
    pub helicoid_label: bool,
    /// In normal mode: whether `f u μ' − g f_s` vanishes on the grid.
    pub normal_mode_minimal: Option<bool>,
    pub max_abs_tau: f64,
    pub max_abs_mu_sin: f64,
    pub max_q_prime: f64,
    pub max_abs_h: f64,
    /// Grid parameters where the frame is undefined.
    pub skipped_s: Vec<f64>,
    /// Number of singular `(s, u)` samples left out of the `H` test.
    pub singular_samples: usize,
}

/// Sampled status of the base curve `u = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BaseCurveStatus {
    /// `κ ≡ 0`.
    pub geodesic: bool,
    /// `κ τ cos θ sin θ ≡ 0`, the factor of `⟨U, α''⟩` once `u` is divided
    /// out.
    pub asymptotic: bool,
    /// `τ ≡ 0`.
    pub line_of_curvature: bool,
    pub max_abs_kappa: f64,
    pub max_asymptotic_factor: f64,
    pub max_abs_tau: f64,
    /// `max |⟨U(s, 0), α''(s)⟩|` over regular base points, computed directly.
    pub max_base_normal_curvature: f64,
    pub skipped_s: Vec<f64>,
}

impl OTSurface {
    pub fn classify(&self, s_grid: &[f64], u_grid: &[f64]) -> ClassificationReport {
        let tol = self.tol;
        let mut skipped_s = Vec::new();
        let (mut max_tau, mut max_sin, mut max_cos, mut max_dev, mut max_qp) = (0f64, 0f64, 0f64, 0f64, 0f64);
        let mut max_h = 0f64;
        let mut max_normal_minimal = 0f64;
        let mut singular_samples = 0;
        for &s in s_grid {
            let fr = match self.frame(s) {
                Ok(f) => f,
                Err(_) => {
                    skipped_s.push(s);
                    continue;
                }
            };
            let (st, ct) = fr.theta.sin_cos();
            max_tau = max_tau.max(fr.frenet.tau.abs());
            max_sin = max_sin.max(st.abs());
            max_cos = max_cos.max(ct.abs());
            max_dev = max_dev.max((fr.mu * st).abs());
            max_qp = max_qp.max(fr.q_o_prime().norm());
            for &u in u_grid {
                match self.jet(s, u) {
                    Ok(j) => {
                        let c = super::curvatures_from_jet(&j);
                        max_h = max_h.max(c.H.abs());
                        max_normal_minimal = max_normal_minimal.max((j.f * u * fr.mu_p - j.g * j.f_s).abs());
                    }
                    Err(GeomError::SingularPoint { .. }) => singular_samples += 1,
                    Err(_) => {}
                }
            }
        }
        let is_plane = max_tau <= tol.tol_class;
        let is_normal_mode = max_cos <= tol.tol_class;
        let is_minimal = max_h <= tol.tol_min;
        ClassificationReport {
            is_plane,
            is_tangent_mode: max_sin <= tol.tol_class,
            is_normal_mode,
            is_developable: max_dev <= tol.tol_class,
            is_cylindrical: max_qp <= tol.tol_class,
            is_minimal,
            helicoid_label: is_minimal && !is_plane,
            normal_mode_minimal: is_normal_mode.then_some(max_normal_minimal <= tol.tol_class),
            max_abs_tau: max_tau,
            max_abs_mu_sin: max_dev,
            max_q_prime: max_qp,
            max_abs_h: max_h,
            skipped_s,
            singular_samples,
        }
    }

    pub fn base_curve_status(&self, s_grid: &[f64]) -> BaseCurveStatus {
        let tol = self.tol;
        let mut skipped_s = Vec::new();
        let (mut max_k, mut max_factor, mut max_tau, mut max_kn) = (0f64, 0f64, 0f64, 0f64);
        for &s in s_grid {
            let kappa = self.curve.curvature(s);
            max_k = max_k.max(kappa.abs());
            let fr = match self.frame(s) {
                Ok(f) => f,
                Err(_) => {
                    skipped_s.push(s);
                    continue;
                }
            };
            let (st, ct) = fr.theta.sin_cos();
            let tau = fr.frenet.tau;
            max_tau = max_tau.max(tau.abs());
            max_factor = max_factor.max((kappa * tau * ct * st).abs());
            if let Ok(j) = self.jet(s, 0.0) {
                let alpha_pp = fr.frenet.kappa * fr.frenet.n;
                max_kn = max_kn.max(j.normal.unwrap().dot(&alpha_pp).abs());
            }
        }
        BaseCurveStatus {
            geodesic: max_k <= tol.tol_class,
            asymptotic: max_factor <= tol.tol_class,
            line_of_curvature: max_tau <= tol.tol_class,
            max_abs_kappa: max_k,
            max_asymptotic_factor: max_factor,
            max_abs_tau: max_tau,
            max_base_normal_curvature: max_kn,
            skipped_s,
        }
    }
}
