//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every criterion is always evaluated and reported. The process exits with
//! status 0 so that the rest of the workspace tests still run; set
//! `OT_ACCEPTANCE_STRICT=1` to turn any FAIL into a non-zero exit status.

mod common;

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

use ot_ruled::numeric::{linspace, richardson};
use ot_ruled::oncurve::{invariants_printed, SurfaceCurve};
use ot_ruled::verify::{compare_point, slant_ruled_detect, FrameVector, OracleOptions};
use ot_ruled::{catalog, curves::slant_sigma, frame_derivative_matrix, frenet, AngleFunction, Interval, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{example1, example2, example3, examples, regular_points, surface};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

/// 1. η, μ, ξ of the helix example against `3/2`, `sin s/2`, `cos s/2`.
fn c01_example_one_curvatures() -> Outcome {
    let start = Instant::now();
    let surf = example1();
    let mut err = 0.0f64;
    for s in linspace(0.0, 3.0 * PI, 100) {
        let fr = surf.frame(s).unwrap();
        err = err.max((fr.eta - 1.5).abs()).max((fr.mu - 0.5 * s.sin()).abs()).max((fr.xi - 0.5 * s.cos()).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(err <= 1e-9 && secs < 1.0, format!("max |err| = {err:.3e} (tol 1e-9), {secs:.3} s (limit 1 s)"))
}

/// 2. Singular set of the helix example on `[0, 3π]`.
fn c02_example_one_singular_set() -> Outcome {
    let rep = example1().singular_set();
    let s: Vec<f64> = rep.v_set.iter().map(|p| p.s).collect();
    let expected = [0.0, PI, 2.0 * PI, 3.0 * PI];
    let on_base = rep.v_set.iter().all(|p| p.u == 0.0);
    let err =
        if s.len() == 4 { s.iter().zip(expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) } else { f64::INFINITY };
    let clean = rep.extra.is_empty() && !rep.base_locus && !rep.fold_locus && rep.y_set.is_empty();
    outcome(
        err <= 1e-8 && on_base && clean,
        format!("{} points, max |Δs| = {err:.3e} (tol 1e-8), no extra points: {clean}", s.len()),
    )
}

/// 3. Slant-helix σ and the striction/base intersection parameter.
fn c03_slant_helix() -> Outcome {
    let curve = catalog::slant_ex2();
    let target = -(3f64.sqrt()) / 3.0;
    let mut err = 0.0f64;
    let mut used = 0;
    for s in linspace(-2.0 * PI, 2.0 * PI, 2001) {
        let Ok(f) = frenet(&curve, s, 1e-12) else { continue };
        if f.kappa.abs() < 1e-3 {
            continue;
        }
        used += 1;
        err = err.max((slant_sigma(&f) - target).abs());
    }
    let s0 = 2.0 * (PI - (3f64.sqrt() / 3.0).acos());
    let rep = example2().singular_set();
    let dy = rep.y_set.iter().map(|p| (p.s - s0).abs()).fold(f64::INFINITY, f64::min);
    outcome(
        err <= 1e-6 && dy <= 1e-8,
        format!("max |σ + √3/3| = {err:.3e} over {used} samples (tol 1e-6); Y-set distance to s₀ = {dy:.3e} (tol 1e-8)"),
    )
}

/// 4. Salkowski-type example: `κ ≡ 1`, `η ≡ 1 + √26/26`.
fn c04_example_three_constants() -> Outcome {
    let surf = example3();
    let hw = 26f64.sqrt() * PI / 2.0 - 0.1;
    let eta = 1.0 + 26f64.sqrt() / 26.0;
    let mut err = 0.0f64;
    // the printed parameter range refers to the original parameter; map it to arc length
    for t in linspace(-hw, hw, 401) {
        let s = surf.s_domain().clamp(catalog::salkowski_sigma_of_t(t));
        let fr = surf.frame(s).unwrap();
        err = err.max((fr.frenet.kappa - 1.0).abs()).max((fr.eta - eta).abs());
    }
    outcome(err <= 1e-9, format!("max |err| = {err:.3e} (tol 1e-9)"))
}

/// 5. Closed-form forms, `K`, `H` against the finite-difference oracle.
fn c05_closed_form_vs_oracle() -> Outcome {
    let start = Instant::now();
    let mut worst = (0.0f64, String::new());
    let mut rows = 0;
    let mut failed = 0;
    for (name, surf) in examples() {
        for (s, u) in regular_points(&surf, 200, 5) {
            let d = match compare_point(&surf, s, u, OracleOptions::default(), 1e-6) {
                Ok(d) => d,
                Err(e) => return outcome(false, format!("{name} at ({s}, {u}): {e}")),
            };
            for r in d {
                rows += 1;
                failed += usize::from(!r.passed);
                if r.rel_err > worst.0 {
                    worst = (r.rel_err, format!("{} on {name} at ({:.4}, {:.4})", r.quantity, r.s, r.u));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failed == 0 && secs < 10.0,
        format!("{failed}/{rows} comparisons over tol 1e-6; worst rel err {:.3e} ({}); {secs:.2} s (limit 10 s)", worst.0, worst.1),
    )
}

/// 6. `det S = K` and `tr S / 2 = H` for the Weingarten matrix.
fn c06_weingarten() -> Outcome {
    let mut err = 0.0f64;
    for (_, surf) in examples() {
        for (s, u) in regular_points(&surf, 200, 5) {
            let c = surf.curvatures(s, u).unwrap();
            let w = c.weingarten_matrix();
            err = err.max((w.determinant() - c.K).abs() / c.K.abs().max(1.0));
            err = err.max((0.5 * w.trace() - c.H).abs() / c.H.abs().max(1.0));
        }
    }
    outcome(err <= 1e-9, format!("max err = {err:.3e} relative to max(1, |value|) (tol 1e-9)"))
}

/// 7. Orthonormality, skew-symmetry and finite-difference frame derivatives.
fn c07_frame_properties() -> Outcome {
    let mut ortho = 0.0f64;
    let mut skew = 0.0f64;
    let mut fd = 0.0f64;
    for (_, surf) in examples() {
        let d = surf.s_domain();
        for s in linspace(d.min + 0.05, d.max - 0.05, 200) {
            let Ok(fr) = surf.frame(s) else { continue };
            let m = nalgebra::Matrix3::from_columns(&[fr.q_o, fr.b, fr.r]);
            ortho = ortho.max((m.transpose() * m - nalgebra::Matrix3::identity()).abs().max());
            ortho = ortho.max((fr.q_o.cross(&fr.b) - fr.r).norm());
            let a = frame_derivative_matrix(&fr);
            skew = skew.max((a + a.transpose()).abs().max());
            let diff = |pick: fn(&ot_ruled::OTFrameData) -> Vec3| {
                richardson(&|x: f64| surf.frame(x).map(|f| pick(&f)).unwrap_or(Vec3::repeat(f64::NAN)), s, 1e-4, 1)
            };
            let qp = diff(|f| f.q_o);
            let bp = diff(|f| f.b);
            let rp = diff(|f| f.r);
            if !(qp.iter().chain(bp.iter()).chain(rp.iter()).all(|c| c.is_finite())) {
                continue;
            }
            fd = fd.max((qp - (fr.mu * fr.b - fr.eta * fr.r)).norm());
            fd = fd.max((bp - (-fr.mu * fr.q_o + fr.xi * fr.r)).norm());
            fd = fd.max((rp - (fr.eta * fr.q_o - fr.xi * fr.b)).norm());
        }
    }
    outcome(
        ortho <= 1e-8 && skew == 0.0 && fd <= 1e-5,
        format!("orthonormality {ortho:.3e} (tol 1e-8), skew residual {skew:e} (exact), derivative residual {fd:.3e} (tol 1e-5)"),
    )
}

/// 8. Rulings are asymptotic and geodesic.
fn c08_rulings() -> Outcome {
    let mut err = 0.0f64;
    let mut evaluated = 0;
    for (seed, (_, surf)) in examples().into_iter().enumerate() {
        let d = surf.s_domain();
        let mut rng = ChaCha8Rng::seed_from_u64(80 + seed as u64);
        let mut done = 0;
        while done < 50 {
            let s0 = rng.random_range(d.min..d.max);
            let t = rng.random_range(-1.0..1.0);
            let Ok(p) = invariants_printed(&surf, &SurfaceCurve::ruling(s0, Interval::new(-1.0, 1.0)), t) else { continue };
            err = err.max(p.k_n.abs()).max(p.kappa_g.abs());
            done += 1;
        }
        evaluated += done;
    }
    outcome(err <= 1e-12, format!("max |k_n|, |κ_g| = {err:.3e} over {evaluated} rulings (tol 1e-12)"))
}

/// 9. Planar base circle with `θ = s`.
fn c09_plane_equivalence() -> Outcome {
    let surf = surface(catalog::circle(), AngleFunction::linear(1.0));
    let reference = surf.gauss_map(1.0, 0.0).unwrap();
    let mut kh = 0.0f64;
    let mut gauss = 0.0f64;
    let mut flipped = 0;
    let mut regular = 0;
    for s in linspace(0.0, 2.0 * PI, 60) {
        for u in linspace(-1.0, 1.0, 41) {
            let Ok(c) = surf.curvatures(s, u) else { continue };
            regular += 1;
            kh = kh.max(c.K.abs()).max(c.H.abs());
            let n = surf.gauss_map(s, u).unwrap();
            // the unit normal is only defined up to sign on each side of the fold
            let (same, opposite) = ((n - reference).norm(), (n + reference).norm());
            flipped += usize::from(opposite < same);
            gauss = gauss.max(same.min(opposite));
        }
    }
    outcome(
        kh <= 1e-8 && gauss <= 1e-8,
        format!(
            "max |K|, |H| = {kh:.3e}; normal-line deviation {gauss:.3e} (tol 1e-8) over {regular} regular points, \
             {flipped} with opposite orientation across the fold"
        ),
    )
}

/// 10. Tangent surface of the helix: `H = τ/(2uη)`.
fn c10_tangent_surface_h() -> Outcome {
    let surf = surface(catalog::helix_ex1(), AngleFunction::constant(0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut err = 0.0f64;
    let mut bad_positive = 0;
    let mut bad_negative = 0;
    for _ in 0..50 {
        let s = rng.random_range(0.0..3.0 * PI);
        let u = loop {
            let u: f64 = rng.random_range(-1.0..1.0);
            if u.abs() > 1e-3 {
                break u;
            }
        };
        let c = surf.curvatures(s, u).unwrap();
        let fr = surf.frame(s).unwrap();
        let e = (c.H - fr.frenet.tau / (2.0 * u * fr.eta)).abs();
        if e > 1e-9 {
            if u > 0.0 {
                bad_positive += 1;
            } else {
                bad_negative += 1;
            }
        }
        err = err.max(e);
    }
    outcome(
        err <= 1e-9,
        format!(
            "max |H − τ/(2uη)| = {err:.3e} (tol 1e-9); mismatches at u > 0: {bad_positive}, at u < 0: {bad_negative} \
             (computed H = −τ/(2|uη|))"
        ),
    )
}

/// 11. Striction line of the helix example.
fn c11_striction() -> Outcome {
    let surf = example1();
    let c0 = surf.striction_point(0.0).unwrap();
    let origin = (c0 - Vec3::new(1.0, 0.0, 0.0)).norm();
    let mut err = 0.0f64;
    for s in linspace(0.01, 3.0 * PI - 0.01, 200) {
        let cp = richardson(&|x: f64| surf.striction_point(x).unwrap(), s, 1e-4, 1);
        err = err.max(cp.dot(&surf.frame(s).unwrap().q_o_prime()).abs());
    }
    outcome(
        err <= 1e-6 && origin <= 1e-8,
        format!("max |⟨c′, q_o′⟩| = {err:.3e} (tol 1e-6); |c(0) − (1,0,0)| = {origin:.3e} (tol 1e-8)"),
    )
}

/// 12. `θ = −∫κ` on the helix gives an h-slant ruled surface.
fn c12_h_slant() -> Outcome {
    let surf = surface(catalog::helix_ex1(), AngleFunction::neg_integral_kappa(Arc::new(catalog::helix_ex1()), 512));
    let grid = linspace(0.0, 3.0 * PI, 301);
    match slant_ruled_detect(&surf, FrameVector::H, &grid, 1e-9, 1e-6) {
        Ok(r) => outcome(
            r.is_slant && !r.degenerate && r.residual_std <= 1e-6,
            format!(
                "axis ({:.6}, {:.6}, {:.6}), cos angle {:.6}, residual {:.3e} (tol 1e-6), {} samples",
                r.axis.x, r.axis.y, r.axis.z, r.mean_cos, r.residual_std, r.samples_used
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("helix example OT curvatures", c01_example_one_curvatures),
        ("helix example singular set", c02_example_one_singular_set),
        ("slant-helix σ and intersection point", c03_slant_helix),
        ("Salkowski example constants", c04_example_three_constants),
        ("closed forms vs finite-difference oracle", c05_closed_form_vs_oracle),
        ("Weingarten determinant and trace", c06_weingarten),
        ("OT frame properties", c07_frame_properties),
        ("rulings asymptotic and geodesic", c08_rulings),
        ("planar base curve equivalence", c09_plane_equivalence),
        ("tangent surface mean curvature", c10_tangent_surface_h),
        ("striction line", c11_striction),
        ("h-slant detection for θ = −∫κ", c12_h_slant),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {:>2} — {name}: {}", i + 1, o.detail);
        if !o.passed {
            failed.push(i + 1);
        }
    }
    println!("{} of {} criteria passed; failed: {failed:?}", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() && std::env::var("OT_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
