//! Fixtures shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use ot_ruled::{catalog, AngleFunction, Curve, Interval, OTSurface, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn surface(curve: impl Curve + 'static, angle: AngleFunction) -> OTSurface {
    OTSurface::new(Arc::new(curve), angle, Interval::new(-1.0, 1.0), Tolerances::default()).unwrap()
}

/// Helix `κ = τ = 1/2` with `θ = s`.
pub fn example1() -> OTSurface {
    surface(catalog::helix_ex1(), AngleFunction::linear(1.0))
}

/// Slant helix with `θ = s/2`.
pub fn example2() -> OTSurface {
    surface(catalog::slant_ex2(), AngleFunction::linear(0.5))
}

/// Salkowski-type curve (`κ ≡ 1`) with `θ = s/√26`.
pub fn example3() -> OTSurface {
    surface(catalog::salkowski_ex3(), AngleFunction::linear(1.0 / 26f64.sqrt()))
}

pub fn examples() -> [(&'static str, OTSurface); 3] {
    [("example-1", example1()), ("example-2", example2()), ("example-3", example3())]
}

/// Seeded random points away from the domain ends with a well-defined frame
/// and `f² + g² ≥ 1e−2`.
pub fn regular_points(surf: &OTSurface, n: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = surf.s_domain();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = rng.random_range(d.min + 0.05..d.max - 0.05);
        let u = rng.random_range(-1.0..1.0);
        let Ok(j) = surf.raw_jet(s, u) else { continue };
        if j.frame.frenet.kappa.abs() < 1e-2 || j.metric() < 1e-2 {
            continue;
        }
        out.push((s, u));
    }
    out
}
