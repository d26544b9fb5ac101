//! Built-in curves with closed-form derivatives.

use std::f64::consts::PI;
use std::sync::Arc;

use super::{ArcLengthCurve, Curve, Interval, Parametrization, TrigCurve, TrigTerm};
use crate::Vec3;

/// Names accepted by [`by_name`]; `helix(a,b)` takes two positive numbers.
pub const NAMES: [&str; 6] = ["helix-ex1", "slant-ex2", "salkowski-ex3", "circle", "line", "helix(a,b)"];

/// Circular helix `(a cos(s/c), a sin(s/c), b s/c)`, `c = √(a²+b²)`, on
/// `[0, 2πc]`; unit speed with `κ = a/c²` and `τ = b/c²`.
pub fn helix(a: f64, b: f64) -> TrigCurve {
    let c = (a * a + b * b).sqrt();
    TrigCurve::new(
        &format!("helix({a},{b})"),
        [vec![TrigTerm::cos(a, 1.0 / c)], vec![TrigTerm::sin(a, 1.0 / c)], vec![]],
        Interval::new(0.0, 2.0 * PI * c),
    )
    .with_affine(Vec3::zeros(), Vec3::new(0.0, 0.0, b / c))
}

/// `(cos(s/√2), sin(s/√2), s/√2)` on `[0, 3π]`: `κ = τ = 1/2`.
pub fn helix_ex1() -> TrigCurve {
    let mut c = helix(1.0, 1.0).with_domain(Interval::new(0.0, 3.0 * PI));
    c.name = "helix-ex1".into();
    c
}

fn cos_half_sign(s: f64) -> f64 {
    if (0.5 * s).cos() < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Slant helix
/// `(3/2 cos(s/2) + 1/6 cos(3s/2), 3/2 sin(s/2) + 1/6 sin(3s/2), √3 cos(s/2))`
/// on `[−2π, 2π]`.
///
/// The curvature `√3/2·|cos(s/2)|` vanishes at `s = ±π`. The normal is
/// oriented so that the signed curvature `√3/2·cos(s/2)` is smooth there.
pub fn slant_ex2() -> TrigCurve {
    let r3 = 3f64.sqrt();
    TrigCurve::new(
        "slant-ex2",
        [
            vec![TrigTerm::cos(1.5, 0.5), TrigTerm::cos(1.0 / 6.0, 1.5)],
            vec![TrigTerm::sin(1.5, 0.5), TrigTerm::sin(1.0 / 6.0, 1.5)],
            vec![TrigTerm::cos(r3, 0.5)],
        ],
        Interval::new(-2.0 * PI, 2.0 * PI),
    )
    .with_normal_sign(cos_half_sign)
}

/// Half-width of the parameter interval used for the Salkowski example; the
/// printed parametrization stops being regular at `±√26·π/2`.
pub fn salkowski_half_width() -> f64 {
    26f64.sqrt() * PI / 2.0 - 0.1
}

/// The Salkowski-type curve exactly as printed, in its original
/// (non-arc-length) parameter `t`. Its speed is `5/√26·cos(t/√26)`.
pub fn salkowski_ex3_raw() -> TrigCurve {
    let r = 26f64.sqrt();
    let k = 5.0 / r;
    let w = r / 13.0;
    let p = 104.0 + 8.0 * r;
    let m = -104.0 + 8.0 * r;
    let hw = salkowski_half_width();
    TrigCurve::new(
        "salkowski-ex3-raw",
        [
            vec![
                TrigTerm::sin(k * (r - 26.0) / p, 1.0 + w),
                TrigTerm::sin(k * (r + 26.0) / m, 1.0 - w),
                TrigTerm::sin(-0.5 * k, 1.0),
            ],
            vec![
                TrigTerm::cos(k * (26.0 - r) / p, 1.0 + w),
                TrigTerm::cos(-k * (r + 26.0) / m, 1.0 - w),
                TrigTerm::cos(0.5 * k, 1.0),
            ],
            vec![TrigTerm::cos(1.25 * k, w)],
        ],
        Interval::new(-hw, hw),
    )
    .with_parametrization(Parametrization::General)
}

/// Arc length of the raw Salkowski curve measured from `t = 0`.
pub fn salkowski_sigma_of_t(t: f64) -> f64 {
    5.0 * (t / 26f64.sqrt()).sin()
}

fn salkowski_t_of_sigma(sigma: f64) -> f64 {
    26f64.sqrt() * (sigma / 5.0).clamp(-1.0, 1.0).asin()
}

/// Unit-speed reparametrization of [`salkowski_ex3_raw`] (`κ ≡ 1`), using
/// the closed-form arc length `σ = 5 sin(t/√26)`.
pub fn salkowski_ex3() -> ArcLengthCurve {
    let hw = salkowski_sigma_of_t(salkowski_half_width());
    ArcLengthCurve::with_inverse(Arc::new(salkowski_ex3_raw()), Interval::new(-hw, hw), salkowski_t_of_sigma)
}

/// Unit circle in the xy-plane on `[0, 2π]`.
pub fn circle() -> TrigCurve {
    TrigCurve::new(
        "circle",
        [vec![TrigTerm::cos(1.0, 1.0)], vec![TrigTerm::sin(1.0, 1.0)], vec![]],
        Interval::new(0.0, 2.0 * PI),
    )
}

/// `(s, 0, 0)` on `[−5, 5]`.
pub fn line() -> TrigCurve {
    TrigCurve::new("line", [vec![], vec![], vec![]], Interval::new(-5.0, 5.0))
        .with_affine(Vec3::zeros(), Vec3::new(1.0, 0.0, 0.0))
}

/// Every catalog curve with its default parameters (the generic helix as
/// `helix(2,1)`).
pub fn all() -> Vec<Arc<dyn Curve>> {
    vec![
        Arc::new(helix_ex1()),
        Arc::new(slant_ex2()),
        Arc::new(salkowski_ex3()),
        Arc::new(circle()),
        Arc::new(line()),
        Arc::new(helix(2.0, 1.0)),
    ]
}

/// Looks a curve up by name. `domain` overrides the default parameter
/// interval; for `salkowski-ex3` it must stay inside the regular range.
pub fn by_name(name: &str, domain: Option<Interval>) -> Result<Arc<dyn Curve>, String> {
    let name = name.trim();
    let with = |c: TrigCurve| -> Arc<dyn Curve> {
        match domain {
            Some(d) => Arc::new(c.with_domain(d)),
            None => Arc::new(c),
        }
    };
    match name {
        "helix-ex1" => Ok(with(helix_ex1())),
        "slant-ex2" => Ok(with(slant_ex2())),
        "circle" => Ok(with(circle())),
        "line" => Ok(with(line())),
        "salkowski-ex3" => {
            let c = salkowski_ex3();
            match domain {
                None => Ok(Arc::new(c)),
                Some(d) => {
                    let full = c.domain();
                    if d.min < full.min - 1e-12 || d.max > full.max + 1e-12 {
                        Err(format!(
                            "salkowski-ex3 is regular only on [{}, {}] (arc length)",
                            full.min, full.max
                        ))
                    } else {
                        Ok(Arc::new(ArcLengthCurve::with_inverse(
                            Arc::new(salkowski_ex3_raw()),
                            d,
                            salkowski_t_of_sigma,
                        )))
                    }
                }
            }
        }
        _ => {
            let args = name
                .strip_prefix("helix(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| format!("unknown curve '{name}' (expected one of {})", NAMES.join(", ")))?;
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 2 {
                return Err(format!("helix(a,b) needs two arguments, got '{args}'"));
            }
            let parse = |p: &str| {
                crate::expr::parse_constant(p).map_err(|e| format!("bad helix argument '{p}': {e}"))
            };
            let (a, b) = (parse(parts[0])?, parse(parts[1])?);
            if !(a > 0.0) || !b.is_finite() {
                return Err(format!("helix(a,b) needs a > 0 and finite b, got ({a}, {b})"));
            }
            Ok(with(helix(a, b)))
        }
    }
}
