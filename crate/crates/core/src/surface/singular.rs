use crate::numeric::{bisect, golden_min, linspace};

use super::OTSurface;

/// Parameter pair `(s₀, u₀)` of a distinguished surface point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularPoint {
    pub s: f64,
    pub u: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SingularReport {
    /// Singular points on the base curve: `sin θ(s₀) = 0`, `u₀ = 0`.
    pub s_set: Vec<SingularPoint>,
    /// Regular points where base curve and striction line meet:
    /// `θ'(s₀) + κ(s₀) = 0`, `u₀ = 0`.
    pub y_set: Vec<SingularPoint>,
    /// `S ∪ Y`, sorted by `s`.
    pub v_set: Vec<SingularPoint>,
    /// Parameters lying in both `S` and `Y`.
    pub both: Vec<f64>,
    /// `sin θ ≡ 0` (tangent surface): the whole base curve is singular and
    /// `s_set` is left empty.
    pub base_locus: bool,
    /// `θ' + κ ≡ 0`: the base curve is the striction line and `y_set` is
    /// left empty.
    pub striction_locus: bool,
    /// The base curve is planar (`μ ≡ 0`), so every point of the fold
    /// `u = sin θ/η` is singular as well.
    pub fold_locus: bool,
    /// Isolated singular points off the base curve, at zeros of `τ` where
    /// `sin θ ≠ 0`: `(s₀, sin θ/η)`.
    pub extra: Vec<SingularPoint>,
}

/// Threshold on `|value|` for accepting a tangential (double) root.
const DOUBLE_ROOT_TOL: f64 = 1e-9;

/// Roots of `f` on `[a, b]`: sign changes on an `n`-node grid refined by
/// bisection to `tol`, plus tangential zeros found as local minima of `|f|`
/// below `1e-9` (this also catches roots sitting on the end points).
pub fn find_roots<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize, tol: f64) -> Vec<f64> {
    let xs = linspace(a, b, n.max(3));
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for i in 0..xs.len() - 1 {
        let (va, vb) = (vs[i], vs[i + 1]);
        if va != 0.0 && vb != 0.0 && (va < 0.0) != (vb < 0.0) {
            let r = bisect(f, xs[i], xs[i + 1], tol);
            roots.push((r, f(r).abs()));
        }
    }
    let abs = |x: f64| f(x).abs();
    for i in 0..xs.len() {
        let left = if i == 0 { f64::INFINITY } else { vs[i - 1].abs() };
        let right = if i + 1 == xs.len() { f64::INFINITY } else { vs[i + 1].abs() };
        let here = vs[i].abs();
        if here > left || here > right {
            continue;
        }
        let lo = xs[i.saturating_sub(1)];
        let hi = xs[(i + 1).min(xs.len() - 1)];
        let (x, v) = golden_min(&abs, lo, hi, tol);
        // golden search never probes the bracket ends themselves
        let (x, v) = [(x, v), (xs[i], here)]
            .into_iter()
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        if v <= DOUBLE_ROOT_TOL {
            roots.push((x, v));
        }
    }
    roots.sort_by(|p, q| p.0.total_cmp(&q.0));
    let merge = 1e3 * tol.max(1e-12) + 1e-9 * (b - a).abs();
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (x, v) in roots {
        match out.last_mut() {
            Some(last) if (x - last.0).abs() <= merge => {
                if v < last.1 {
                    *last = (x, v);
                }
            }
            _ => out.push((x, v)),
        }
    }
    out.into_iter().map(|p| p.0).collect()
}

impl OTSurface {
    /// Singular set and striction intersections over the whole `s`-domain.
    pub fn singular_set(&self) -> SingularReport {
        let dom = self.s_domain();
        self.singular_set_on(dom.min, dom.max, self.tol.grid_nodes)
    }

    pub fn singular_set_on(&self, a: f64, b: f64, nodes: usize) -> SingularReport {
        let tol = self.tol;
        let sin_theta = |s: f64| self.angle.theta(s).sin();
        let eta = |s: f64| self.angle.values(s).1 + self.curve.curvature(s);

        let samples = linspace(a, b, nodes.max(3));
        let vanishes = |f: &dyn Fn(f64) -> f64| samples.iter().all(|&s| f(s).abs() <= tol.eps_sing);
        let base_locus = vanishes(&sin_theta);
        let striction_locus = vanishes(&eta);

        let on_base = |s: f64| SingularPoint { s, u: 0.0 };
        let s_set: Vec<SingularPoint> = if base_locus {
            Vec::new()
        } else {
            find_roots(&sin_theta, a, b, nodes, tol.tol_root)
                .into_iter()
                .filter(|&s| sin_theta(s).abs() <= tol.eps_sing)
                .map(on_base)
                .collect()
        };
        let y_set: Vec<SingularPoint> = if striction_locus {
            Vec::new()
        } else {
            find_roots(&eta, a, b, nodes, tol.tol_root).into_iter().map(on_base).collect()
        };

        let close = |x: f64, y: f64| (x - y).abs() <= 1e-8 * (1.0 + x.abs());
        let both: Vec<f64> = s_set
            .iter()
            .filter(|p| y_set.iter().any(|q| close(p.s, q.s)))
            .map(|p| p.s)
            .collect();
        let mut v_set = s_set.clone();
        for q in &y_set {
            if !v_set.iter().any(|p| close(p.s, q.s)) {
                v_set.push(*q);
            }
        }
        v_set.sort_by(|p, q| p.s.total_cmp(&q.s));

        // torsion through the Frenet data; skip points where it is undefined
        let tau = |s: f64| self.curve.frenet_at(s, tol.eps_reg).map(|f| f.tau).unwrap_or(f64::NAN);
        let fold_locus = samples.iter().all(|&s| {
            let t = tau(s);
            t.is_nan() || t.abs() <= tol.tol_class
        });
        let mut extra = Vec::new();
        if !fold_locus {
            // NaN samples never bracket a sign change, so they drop out
            for s in find_roots(&tau, a, b, nodes, tol.tol_root) {
                let st = sin_theta(s);
                let e = eta(s);
                if st.abs() > tol.eps_sing && e != 0.0 {
                    extra.push(SingularPoint { s, u: st / e });
                }
            }
        }
        SingularReport { s_set, y_set, v_set, both, base_locus, striction_locus, fold_locus, extra }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn roots_of_sine_including_end_points() {
        let r = find_roots(&|x: f64| x.sin(), 0.0, 3.0 * PI, 2048, 1e-10);
        assert_eq!(r.len(), 4);
        for (k, x) in r.iter().enumerate() {
            assert!((x - k as f64 * PI).abs() <= 1e-9, "{x}");
        }
    }

    #[test]
    fn tangential_root_is_found() {
        let r = find_roots(&|x: f64| (x - 0.3).powi(2), -1.0, 1.0, 100, 1e-12);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.3).abs() < 1e-4);
        assert!(find_roots(&|x: f64| 1.0 + x * x, -1.0, 1.0, 100, 1e-12).is_empty());
    }
}
