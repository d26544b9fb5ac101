use super::{Curve, CurveJet, Interval, Parametrization};
use crate::Vec3;

/// `amp · cos(freq · s + phase)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub amp: f64,
    pub freq: f64,
    pub phase: f64,
}

impl TrigTerm {
    pub fn cos(amp: f64, freq: f64) -> Self {
        Self { amp, freq, phase: 0.0 }
    }

    pub fn sin(amp: f64, freq: f64) -> Self {
        Self { amp, freq, phase: -std::f64::consts::FRAC_PI_2 }
    }

    /// `k`-th derivative at `s`.
    fn derivative(&self, s: f64, k: u32) -> f64 {
        let arg = self.freq * s + self.phase;
        let scale = self.amp * self.freq.powi(k as i32);
        // exact quarter-turn shifts instead of adding k·π/2 to the phase
        let (sin, cos) = arg.sin_cos();
        scale
            * match k % 4 {
                0 => cos,
                1 => -sin,
                2 => -cos,
                _ => sin,
            }
    }
}

/// Curve whose coordinates are finite trigonometric sums plus an affine
/// part. Every derivative is available in closed form.
#[derive(Debug, Clone)]
pub struct TrigCurve {
    pub name: String,
    terms: [Vec<TrigTerm>; 3],
    offset: Vec3,
    linear: Vec3,
    domain: Interval,
    parametrization: Parametrization,
    normal_sign: Option<fn(f64) -> f64>,
}

impl TrigCurve {
    pub fn new(name: &str, terms: [Vec<TrigTerm>; 3], domain: Interval) -> Self {
        Self {
            name: name.to_string(),
            terms,
            offset: Vec3::zeros(),
            linear: Vec3::zeros(),
            domain,
            parametrization: Parametrization::ArcLength,
            normal_sign: None,
        }
    }

    pub fn with_affine(mut self, offset: Vec3, linear: Vec3) -> Self {
        self.offset = offset;
        self.linear = linear;
        self
    }

    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }

    pub fn with_parametrization(mut self, p: Parametrization) -> Self {
        self.parametrization = p;
        self
    }

    /// Orientation of the principal normal; see [`Curve::normal_sign`].
    pub fn with_normal_sign(mut self, sign: fn(f64) -> f64) -> Self {
        self.normal_sign = Some(sign);
        self
    }

    /// `k`-th derivative of the position.
    pub fn derivative(&self, s: f64, k: u32) -> Vec3 {
        let mut v = Vec3::zeros();
        for (i, terms) in self.terms.iter().enumerate() {
            v[i] = terms.iter().map(|t| t.derivative(s, k)).sum();
        }
        match k {
            0 => v + self.offset + self.linear * s,
            1 => v + self.linear,
            _ => v,
        }
    }
}

impl Curve for TrigCurve {
    fn domain(&self) -> Interval {
        self.domain
    }

    fn parametrization(&self) -> Parametrization {
        self.parametrization
    }

    fn position(&self, s: f64) -> Vec3 {
        self.derivative(s, 0)
    }

    fn jet(&self, s: f64) -> CurveJet {
        CurveJet {
            position: self.derivative(s, 0),
            d1: self.derivative(s, 1),
            d2: self.derivative(s, 2),
            d3: self.derivative(s, 3),
            d4: Some(self.derivative(s, 4)),
        }
    }

    fn normal_sign(&self, s: f64) -> f64 {
        self.normal_sign.map_or(1.0, |f| f(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::richardson;

    #[test]
    fn derivatives_match_finite_differences() {
        let c = TrigCurve::new(
            "mix",
            [
                vec![TrigTerm::cos(1.5, 0.5), TrigTerm::sin(-0.3, 2.0)],
                vec![TrigTerm { amp: 0.7, freq: 1.3, phase: 0.4 }],
                vec![],
            ],
            Interval::new(-3.0, 3.0),
        )
        .with_affine(Vec3::new(1.0, 2.0, 3.0), Vec3::new(0.0, 0.0, 0.5));
        for s in [-2.0, 0.0, 0.9] {
            let f = |x: f64| c.position(x);
            assert!((c.derivative(s, 1) - richardson(&f, s, 1e-3, 1)).norm() < 1e-11);
            assert!((c.derivative(s, 2) - richardson(&f, s, 3e-3, 2)).norm() < 1e-8);
            assert!((c.derivative(s, 3) - richardson(&f, s, 7e-3, 3)).norm() < 1e-6);
            assert!((c.derivative(s, 4) - richardson(&f, s, 1.5e-2, 4)).norm() < 1e-5);
        }
    }
}
