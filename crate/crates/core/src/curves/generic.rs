use std::sync::Arc;

use super::{numeric_jet, Curve, CurveJet, Interval, Parametrization};
use crate::error::Result;
use crate::expr::Expr;
use crate::Vec3;

/// Curve given by a position closure; derivatives by Richardson-extrapolated
/// central differences with first-order step `h` (default `1e-4`).
#[derive(Clone)]
pub struct FnCurve {
    f: Arc<dyn Fn(f64) -> Vec3 + Send + Sync>,
    domain: Interval,
    parametrization: Parametrization,
    h: f64,
}

impl FnCurve {
    pub fn new<F>(f: F, domain: Interval, parametrization: Parametrization) -> Self
    where
        F: Fn(f64) -> Vec3 + Send + Sync + 'static,
    {
        Self { f: Arc::new(f), domain, parametrization, h: 1e-4 }
    }

    pub fn with_step(mut self, h: f64) -> Self {
        self.h = h;
        self
    }
}

impl std::fmt::Debug for FnCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FnCurve")
            .field("domain", &self.domain)
            .field("parametrization", &self.parametrization)
            .field("h", &self.h)
            .finish()
    }
}

impl Curve for FnCurve {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn parametrization(&self) -> Parametrization {
        self.parametrization
    }

    fn position(&self, s: f64) -> Vec3 {
        (self.f)(s)
    }

    fn jet(&self, s: f64) -> CurveJet {
        numeric_jet(&|x| (self.f)(x), s, self.h)
    }
}

/// Curve given by three coordinate expressions in one variable. Derivatives
/// up to order 4 are taken symbolically at construction.
#[derive(Debug, Clone)]
pub struct ExprCurve {
    /// `derivs[k][i]` is the `k`-th derivative of coordinate `i`.
    derivs: Vec<[Expr; 3]>,
    domain: Interval,
    parametrization: Parametrization,
}

impl ExprCurve {
    pub fn parse(x: &str, y: &str, z: &str, var: &str, domain: Interval, parametrization: Parametrization) -> Result<Self> {
        let coords = [Expr::parse(x, var)?, Expr::parse(y, var)?, Expr::parse(z, var)?];
        Ok(Self::new(coords, domain, parametrization))
    }

    pub fn new(coords: [Expr; 3], domain: Interval, parametrization: Parametrization) -> Self {
        let per_coord: Vec<Vec<Expr>> = coords.iter().map(|c| c.derivatives(4)).collect();
        let derivs = (0..=4)
            .map(|k| [per_coord[0][k].clone(), per_coord[1][k].clone(), per_coord[2][k].clone()])
            .collect();
        Self { derivs, domain, parametrization }
    }

    fn eval(&self, k: usize, s: f64) -> Vec3 {
        let d = &self.derivs[k];
        Vec3::new(d[0].eval(s), d[1].eval(s), d[2].eval(s))
    }
}

impl Curve for ExprCurve {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn parametrization(&self) -> Parametrization {
        self.parametrization
    }

    fn position(&self, s: f64) -> Vec3 {
        self.eval(0, s)
    }

    fn jet(&self, s: f64) -> CurveJet {
        CurveJet {
            position: self.eval(0, s),
            d1: self.eval(1, s),
            d2: self.eval(2, s),
            d3: self.eval(3, s),
            d4: Some(self.eval(4, s)),
        }
    }
}
