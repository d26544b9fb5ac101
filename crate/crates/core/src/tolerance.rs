//! Numerical thresholds shared by every module.
//!
//! The defaults are tuned for curves whose curvature and torsion are of
//! order one, which holds for the whole built-in catalog.

/// Tunable thresholds. All values are absolute unless stated otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Speed and curvature below which a curve point counts as degenerate.
    pub eps_reg: f64,
    /// `f² + g²` at or below which a surface point counts as singular.
    pub eps_sing: f64,
    /// Relative spread allowed for "constant" helix and slant functions.
    pub tol_helix: f64,
    /// Bisection width for roots of `sin θ` and `θ' + κ`.
    pub tol_root: f64,
    /// `|H|` below which a surface sample counts as minimal.
    pub tol_min: f64,
    /// Threshold for sampled "vanishes identically" classifications.
    pub tol_class: f64,
    /// Base step of finite-difference oracles.
    pub fd_step: f64,
    /// Number of grid nodes used for root bracketing.
    pub grid_nodes: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eps_reg: 1e-9,
            eps_sing: 1e-8,
            tol_helix: 1e-6,
            tol_root: 1e-10,
            tol_min: 1e-7,
            tol_class: 1e-7,
            fd_step: 1e-5,
            grid_nodes: 2048,
        }
    }
}

impl Tolerances {
    /// Names accepted by [`Tolerances::set`].
    pub const NAMES: [&'static str; 8] = [
        "eps_reg",
        "eps_sing",
        "tol_helix",
        "tol_root",
        "tol_min",
        "tol_class",
        "fd_step",
        "grid_nodes",
    ];

    /// Overrides one threshold by name. Values must be positive.
    pub fn set(&mut self, name: &str, value: f64) -> Result<(), String> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(format!("tolerance {name} must be positive, got {value}"));
        }
        match name {
            "eps_reg" => self.eps_reg = value,
            "eps_sing" => self.eps_sing = value,
            "tol_helix" => self.tol_helix = value,
            "tol_root" => self.tol_root = value,
            "tol_min" => self.tol_min = value,
            "tol_class" => self.tol_class = value,
            "fd_step" => self.fd_step = value,
            "grid_nodes" => {
                if value < 2.0 || value.fract() != 0.0 {
                    return Err(format!("grid_nodes must be an integer >= 2, got {value}"));
                }
                self.grid_nodes = value as usize;
            }
            _ => {
                return Err(format!(
                    "unknown tolerance '{name}' (expected one of {})",
                    Self::NAMES.join(", ")
                ))
            }
        }
        Ok(())
    }
}
