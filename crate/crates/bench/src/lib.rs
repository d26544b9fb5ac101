//! Benchmark fixtures: the three example surfaces and fixed point sets.

use std::sync::Arc;

use ot_ruled::numeric::linspace;
use ot_ruled::{catalog, AngleFunction, Interval, OTSurface, Tolerances};

pub fn example_surfaces() -> Vec<(&'static str, OTSurface)> {
    let build = |curve: Arc<dyn ot_ruled::Curve>, angle| {
        OTSurface::new(curve, angle, Interval::new(-1.0, 1.0), Tolerances::default()).expect("catalog surface")
    };
    vec![
        ("helix-ex1", build(Arc::new(catalog::helix_ex1()), AngleFunction::linear(1.0))),
        ("slant-ex2", build(Arc::new(catalog::slant_ex2()), AngleFunction::linear(0.5))),
        ("salkowski-ex3", build(Arc::new(catalog::salkowski_ex3()), AngleFunction::linear(1.0 / 26f64.sqrt()))),
    ]
}

/// `n × n` interior grid points; deterministic, no RNG.
pub fn interior_points(surf: &OTSurface, n: usize) -> Vec<(f64, f64)> {
    let d = surf.s_domain();
    let ss = linspace(d.min + 0.1, d.max - 0.1, n);
    let us = linspace(-0.9, 0.9, n);
    ss.iter().flat_map(|&s| us.iter().map(move |&u| (s, u))).collect()
}
