//! Small numerical kernels: central differences with Richardson
//! extrapolation, adaptive Simpson quadrature, bracketing root finders and
//! monotone cubic interpolation.

use std::ops::{Add, Mul, Sub};

/// Values that finite-difference stencils can combine.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl<T> Linear for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

/// Second-order central stencil for derivative `order` (1..=4) with step `h`.
pub fn central<T: Linear, F: Fn(f64) -> T>(f: &F, x: f64, h: f64, order: usize) -> T {
    match order {
        1 => (f(x + h) - f(x - h)) * (0.5 / h),
        2 => (f(x + h) - f(x) * 2.0 + f(x - h)) * (1.0 / (h * h)),
        3 => (f(x + 2.0 * h) - f(x + h) * 2.0 + f(x - h) * 2.0 - f(x - 2.0 * h)) * (0.5 / (h * h * h)),
        4 => {
            (f(x + 2.0 * h) - f(x + h) * 4.0 + f(x) * 6.0 - f(x - h) * 4.0 + f(x - 2.0 * h))
                * (1.0 / (h * h * h * h))
        }
        _ => panic!("central difference order {order} not supported"),
    }
}

/// One Richardson level over steps `h` and `h/2`; the error drops from
/// O(h²) to O(h⁴).
pub fn richardson<T: Linear, F: Fn(f64) -> T>(f: &F, x: f64, h: f64, order: usize) -> T {
    let coarse = central(f, x, h, order);
    let fine = central(f, x, 0.5 * h, order);
    (fine * 4.0 - coarse) * (1.0 / 3.0)
}

/// Second-order one-sided first derivative stepping in the direction of
/// `h` (negative `h` looks backwards), with one Richardson level.
pub fn one_sided<T: Linear, F: Fn(f64) -> T>(f: &F, x: f64, h: f64) -> T {
    let d = |h: f64| (f(x) * -3.0 + f(x + h) * 4.0 - f(x + 2.0 * h)) * (0.5 / h);
    (d(0.5 * h) * 4.0 - d(h)) * (1.0 / 3.0)
}

/// Step that balances truncation against round-off for a Richardson
/// stencil of the given order, scaled from the first-order base step.
pub fn step_for_order(base: f64, order: usize) -> f64 {
    match order {
        0 | 1 => base,
        2 => base * 1e2,
        3 => base * 3e2,
        _ => base * 1e3,
    }
}

fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// Bisection on a bracket with `f(a)` and `f(b)` of opposite sign.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Golden-section search for a minimum of `f` on `[a, b]`; returns `(x, f(x))`.
pub fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..300 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Evenly spaced nodes including both endpoints. `n` must be at least 2.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "linspace needs at least two nodes");
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
        .collect()
}

/// Monotone piecewise-cubic Hermite interpolant (Fritsch–Carlson slopes).
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    /// `xs` must be strictly increasing and `ys` monotone.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        assert_eq!(xs.len(), ys.len());
        assert!(xs.len() >= 2);
        let n = xs.len();
        let secants: Vec<f64> = (0..n - 1)
            .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
            .collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = secants[0];
        slopes[n - 1] = secants[n - 2];
        if n > 2 {
            // one-sided three-point end slopes, kept monotone
            let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
                let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
                if m * d0 <= 0.0 {
                    0.0
                } else {
                    m
                }
            };
            slopes[0] = end(xs[1] - xs[0], xs[2] - xs[1], secants[0], secants[1]);
            slopes[n - 1] = end(
                xs[n - 1] - xs[n - 2],
                xs[n - 2] - xs[n - 3],
                secants[n - 2],
                secants[n - 3],
            );
        }
        for i in 1..n - 1 {
            slopes[i] = if secants[i - 1] * secants[i] <= 0.0 {
                0.0
            } else {
                // three-point estimate, exact for quadratics
                let (h0, h1) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
                (h1 * secants[i - 1] + h0 * secants[i]) / (h0 + h1)
            };
        }
        for i in 0..n - 1 {
            if secants[i] == 0.0 {
                slopes[i] = 0.0;
                slopes[i + 1] = 0.0;
                continue;
            }
            let a = slopes[i] / secants[i];
            let b = slopes[i + 1] / secants[i];
            let r = a * a + b * b;
            if r > 9.0 {
                let t = 3.0 / r.sqrt();
                slopes[i] = t * a * secants[i];
                slopes[i + 1] = t * b * secants[i];
            }
        }
        Self { xs, ys, slopes }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.partition_point(|&v| v <= x) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.slopes[i] + h01 * self.ys[i + 1] + h11 * h * self.slopes[i + 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn richardson_orders_on_sine() {
        let f = |x: f64| x.sin();
        let x = 0.7;
        assert_abs_diff_eq!(richardson(&f, x, 1e-3, 1), x.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(richardson(&f, x, 1e-3, 2), -x.sin(), epsilon = 1e-9);
        assert_abs_diff_eq!(richardson(&f, x, 3e-3, 3), -x.cos(), epsilon = 1e-7);
        assert_abs_diff_eq!(richardson(&f, x, 1e-2, 4), x.sin(), epsilon = 1e-6);
    }

    #[test]
    fn one_sided_derivative() {
        let f = |x: f64| x.exp();
        assert_abs_diff_eq!(one_sided(&f, 0.3, 1e-4), 0.3f64.exp(), epsilon = 1e-9);
        assert_abs_diff_eq!(one_sided(&f, 0.3, -1e-4), 0.3f64.exp(), epsilon = 1e-9);
    }

    #[test]
    fn richardson_beats_plain_stencil() {
        let f = |x: f64| x.exp();
        let plain = (central(&f, 0.3, 1e-2, 2) - 0.3f64.exp()).abs();
        let rich = (richardson(&f, 0.3, 1e-2, 2) - 0.3f64.exp()).abs();
        assert!(rich < plain / 100.0, "plain {plain:e} rich {rich:e}");
    }

    #[test]
    fn simpson_integrates_smooth_functions() {
        let v = adaptive_simpson(&|x: f64| x.cos(), 0.0, 2.0, 1e-12);
        assert_abs_diff_eq!(v, 2f64.sin(), epsilon = 1e-11);
        let v = adaptive_simpson(&|x: f64| (1.0 + x * x).sqrt(), -1.0, 3.0, 1e-12);
        let antideriv = |x: f64| 0.5 * (x * (1.0 + x * x).sqrt() + x.asinh());
        assert_abs_diff_eq!(v, antideriv(3.0) - antideriv(-1.0), epsilon = 1e-10);
        assert_eq!(adaptive_simpson(&|x: f64| x, 1.0, 1.0, 1e-12), 0.0);
    }

    #[test]
    fn bisect_and_golden() {
        let r = bisect(&|x: f64| x * x - 2.0, 0.0, 2.0, 1e-13);
        assert_abs_diff_eq!(r, 2f64.sqrt(), epsilon = 1e-12);
        let (x, fx) = golden_min(&|x: f64| (x - 0.3).powi(2) + 1.0, -1.0, 1.0, 1e-10);
        // location is only resolvable to about √ε
        assert_abs_diff_eq!(x, 0.3, epsilon = 1e-7);
        assert_abs_diff_eq!(fx, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn monotone_cubic_interpolates_and_stays_monotone() {
        let xs = linspace(0.0, 3.0, 31);
        let ys: Vec<f64> = xs.iter().map(|x| x.powi(3) / 3.0 + x).collect();
        let m = MonotoneCubic::new(xs.clone(), ys.clone());
        for (x, y) in xs.iter().zip(&ys) {
            assert_abs_diff_eq!(m.eval(*x), *y, epsilon = 1e-12);
        }
        let mut prev = f64::NEG_INFINITY;
        for x in linspace(0.0, 3.0, 1001) {
            let v = m.eval(x);
            assert!(v >= prev);
            prev = v;
            assert_abs_diff_eq!(v, x.powi(3) / 3.0 + x, epsilon = 2e-4);
        }
    }

    #[test]
    fn linspace_hits_endpoints() {
        let v = linspace(-1.0, 2.0, 4);
        assert_eq!(v, vec![-1.0, 0.0, 1.0, 2.0]);
    }
}
