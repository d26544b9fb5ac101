use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use ot_ruled::mesh::MeshOutput;
use ot_ruled::oncurve::{classify_curve, invariants_closed, kappa_g_printed, curve_point, SurfaceCurve};
use ot_ruled::surface::{curvatures_from_jet, forms_from_jet};
use ot_ruled::verify::{compare_point, Discrepancy, OracleOptions};
use ot_ruled::{catalog, classify_helix, AngleFunction, Interval, OTSurface, SingularPoint, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{JobConfig, Range};
use crate::error::{CliError, Result};

/// Writes `contents` to `out/name`, or to stdout without an output directory.
fn emit(out: Option<&Path>, name: &str, contents: &str) -> Result<()> {
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            let path = dir.join(name);
            fs::write(&path, contents).map_err(|e| io_err(&path, e))
        }
        None => std::io::stdout().write_all(contents.as_bytes()).map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io { path: path.display().to_string(), source }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn sample(cfg: &JobConfig) -> Result<()> {
    let out = cfg.out.as_deref().ok_or_else(|| CliError::config("sample needs an output directory (--out)"))?;
    let surf = cfg.build_surface()?;
    let mesh = MeshOutput::sample(&surf, &cfg.s_values(&surf)?, &cfg.u_range.values())?;
    let mut obj = Vec::new();
    let mut csv = Vec::new();
    mesh.write_obj(&mut obj).and_then(|_| mesh.write_channels(&mut csv)).map_err(|e| io_err(out, e))?;
    emit(Some(out), "surface.obj", &String::from_utf8_lossy(&obj))?;
    emit(Some(out), "surface_channels.csv", &String::from_utf8_lossy(&csv))?;
    let singular = mesh.singular.iter().filter(|&&b| b).count();
    println!(
        "wrote {} vertices, {} quads ({} singular vertices) to {}",
        mesh.vertices.len(),
        mesh.quads.len(),
        singular,
        out.display()
    );
    Ok(())
}

/// One row of the curvature field; `NaN` where a quantity is undefined.
pub fn field_row(surf: &OTSurface, s: f64, u: f64) -> [f64; 12] {
    let nan = f64::NAN;
    let Ok(j) = surf.raw_jet(s, u) else { return [s, u, nan, nan, nan, nan, nan, nan, nan, nan, nan, nan] };
    let f = forms_from_jet(&j);
    let (k, h, l1, l2) = match j.normal {
        Some(_) => {
            let c = curvatures_from_jet(&j);
            (c.K, c.H, c.lambda1, c.lambda2)
        }
        None => (nan, nan, nan, nan),
    };
    [s, u, f.E, f.F, f.G, f.L, f.M, f.N, k, h, l1, l2]
}

pub fn curvature_field(cfg: &JobConfig) -> Result<()> {
    let surf = cfg.build_surface()?;
    let us = cfg.u_range.values();
    let rows: Vec<Vec<[f64; 12]>> = cfg
        .s_values(&surf)?
        .par_iter()
        .map(|&s| us.iter().map(|&u| field_row(&surf, s, u)).collect())
        .collect();
    let mut text = String::from("s,u,E,F,G,L,M,N,K,H,lambda1,lambda2\n");
    for row in rows.iter().flatten() {
        let cells: Vec<String> = row.iter().map(|&x| num(x)).collect();
        writeln!(text, "{}", cells.join(",")).unwrap();
    }
    emit(cfg.out.as_deref(), "curvature_field.csv", &text)
}

fn points(label: &str, pts: &[SingularPoint]) -> String {
    let mut s = format!("{label} ({}):\n", pts.len());
    for p in pts {
        writeln!(s, "  s = {}  u = {}", num(p.s), num(p.u)).unwrap();
    }
    s
}

pub fn singular(cfg: &JobConfig) -> Result<()> {
    let surf = cfg.build_surface()?;
    let rep = match cfg.s_range {
        Some(r) => {
            let s = cfg.s_values(&surf)?;
            surf.singular_set_on(s[0], s[s.len() - 1], cfg.tol.grid_nodes.max(r.n))
        }
        None => surf.singular_set(),
    };
    let mut text = String::new();
    text += &points("S: singular points on the base curve (sin θ = 0)", &rep.s_set);
    text += &points("Y: base curve meets the striction line (θ' + κ = 0)", &rep.y_set);
    text += &points("V = S ∪ Y", &rep.v_set);
    text += &points("singular points off the base curve", &rep.extra);
    writeln!(text, "parameters in both S and Y: {:?}", rep.both).unwrap();
    writeln!(text, "whole base curve singular (tangent surface): {}", rep.base_locus).unwrap();
    writeln!(text, "base curve is the striction line: {}", rep.striction_locus).unwrap();
    writeln!(text, "planar base curve, fold u = sin θ/η singular: {}", rep.fold_locus).unwrap();
    emit(cfg.out.as_deref(), "singular.txt", &text)
}

pub fn striction(cfg: &JobConfig) -> Result<()> {
    let surf = cfg.build_surface()?;
    let mut text = String::from("s,x,y,z\n");
    for s in cfg.s_values(&surf)? {
        let p = surf.striction_point(s).unwrap_or(ot_ruled::Vec3::repeat(f64::NAN));
        writeln!(text, "{},{},{},{}", num(s), num(p.x), num(p.y), num(p.z)).unwrap();
    }
    emit(cfg.out.as_deref(), "striction.csv", &text)
}

pub fn classify(cfg: &JobConfig) -> Result<()> {
    let surf = cfg.build_surface()?;
    let s_grid = cfg.s_values(&surf)?;
    let rep = surf.classify(&s_grid, &cfg.u_range.values());
    let base = surf.base_curve_status(&s_grid);
    let helix = classify_helix(surf.curve().as_ref(), &s_grid, cfg.tol.eps_reg, cfg.tol.tol_helix);

    let mut labels = Vec::new();
    for (flag, name) in [
        (rep.is_plane, "plane"),
        (rep.is_tangent_mode, "tangent surface"),
        (rep.is_normal_mode, "principal-normal surface"),
        (rep.is_developable, "developable"),
        (rep.is_cylindrical, "cylindrical"),
        (rep.is_minimal, "minimal"),
        (rep.helicoid_label, "helicoid"),
    ] {
        if flag {
            labels.push(name);
        }
    }
    if labels.is_empty() {
        labels.push("non-developable");
    }
    let mut text = format!("surface: {}\n", labels.join("; "));
    writeln!(text, "  max |τ| = {:e}", rep.max_abs_tau).unwrap();
    writeln!(text, "  max |μ sin θ| = {:e}", rep.max_abs_mu_sin).unwrap();
    writeln!(text, "  max |q_o'| = {:e}", rep.max_q_prime).unwrap();
    writeln!(text, "  max |H| = {:e} ({} singular samples skipped)", rep.max_abs_h, rep.singular_samples).unwrap();
    if let Some(m) = rep.normal_mode_minimal {
        writeln!(text, "  principal-normal minimality condition holds: {m}").unwrap();
    }
    writeln!(text, "base curve: geodesic = {}, asymptotic = {}, line of curvature = {}", base.geodesic, base.asymptotic, base.line_of_curvature)
        .unwrap();
    match helix {
        Ok(h) => writeln!(
            text,
            "curve: plane = {}, general helix = {}, slant helix = {} ({} points skipped)",
            h.is_plane_curve,
            h.is_general_helix,
            h.is_slant_helix,
            h.skipped.len()
        )
        .unwrap(),
        Err(e) => writeln!(text, "curve: helix tests unavailable ({e})").unwrap(),
    }
    if !rep.skipped_s.is_empty() {
        writeln!(text, "frame undefined at {} grid parameters", rep.skipped_s.len()).unwrap();
    }
    emit(cfg.out.as_deref(), "classify.txt", &text)
}

pub fn oncurve(cfg: &JobConfig) -> Result<()> {
    let surf = cfg.build_surface()?;
    let spec = cfg.oncurve.as_deref().ok_or_else(|| CliError::config("oncurve needs a surface curve (--on)"))?;
    let t_range = cfg.t_range.unwrap_or(Range { a: -1.0, b: 1.0, n: 51 });
    let curve = SurfaceCurve::parse(spec, t_range.interval())
        .map_err(|e| CliError::config(e.to_string()))?
        .with_unit_speed_claim(cfg.unit_speed);
    let ts = t_range.values();
    let mut text = String::from("t,s,u,k_n,kappa_g,tau_g,kappa_g_printed\n");
    for &t in &ts {
        let (inv, printed) = match invariants_closed(&surf, &curve, t) {
            Ok(inv) => {
                let (jet, td) = curve_point(&surf, &curve, t)?;
                (inv, kappa_g_printed(&jet, &td))
            }
            Err(e @ ot_ruled::GeomError::NotUnitSpeed { .. }) => return Err(e.into()),
            Err(_) => {
                let (s, u) = curve.coords(t);
                let nan = f64::NAN;
                writeln!(text, "{},{},{},{nan},{nan},{nan},{nan}", num(t), num(s[0]), num(u[0])).unwrap();
                continue;
            }
        };
        writeln!(
            text,
            "{},{},{},{},{},{},{}",
            num(t),
            num(inv.s),
            num(inv.u),
            num(inv.k_n),
            num(inv.kappa_g),
            num(inv.tau_g),
            num(printed)
        )
        .unwrap();
    }
    let class = classify_curve(&surf, &curve, &ts);
    eprintln!(
        "asymptotic = {}, geodesic = {}, line of curvature = {} ({} of {} samples used)",
        class.is_asymptotic,
        class.is_geodesic,
        class.is_line_of_curvature,
        class.samples_used,
        ts.len()
    );
    emit(cfg.out.as_deref(), "oncurve.csv", &text)
}

/// Seeded points with a defined frame, `κ ≥ 1e−2` and `f² + g² ≥ 1e−2`,
/// where finite differences are well conditioned.
pub fn regular_points(surf: &OTSurface, n: usize, rng: &mut ChaCha8Rng) -> Vec<(f64, f64)> {
    let d = surf.s_domain();
    let du = surf.u_domain();
    let margin = 0.05f64.min(0.1 * d.len());
    let mut out = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while out.len() < n && attempts < 1000 * n.max(1) {
        attempts += 1;
        let s = rng.random_range(d.min + margin..d.max - margin);
        let u = rng.random_range(du.min..du.max);
        let Ok(j) = surf.raw_jet(s, u) else { continue };
        if j.frame.frenet.kappa.abs() >= 1e-2 && j.metric() >= 1e-2 {
            out.push((s, u));
        }
    }
    out
}

fn example_surfaces(tol: Tolerances) -> Result<Vec<(String, OTSurface)>> {
    let u = Interval::new(-1.0, 1.0);
    let build = |name: &str, curve: std::sync::Arc<dyn ot_ruled::Curve>, angle| -> Result<(String, OTSurface)> {
        Ok((name.to_string(), OTSurface::new(curve, angle, u, tol)?))
    };
    Ok(vec![
        build("helix-ex1, θ = s", std::sync::Arc::new(catalog::helix_ex1()), AngleFunction::linear(1.0))?,
        build("slant-ex2, θ = s/2", std::sync::Arc::new(catalog::slant_ex2()), AngleFunction::linear(0.5))?,
        build(
            "salkowski-ex3, θ = s/√26",
            std::sync::Arc::new(catalog::salkowski_ex3()),
            AngleFunction::linear(1.0 / 26f64.sqrt()),
        )?,
    ])
}

pub fn verify(cfg: &JobConfig, examples: bool) -> Result<()> {
    let surfaces = if examples { example_surfaces(cfg.tol)? } else { vec![("configured surface".into(), cfg.build_surface()?)] };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let opts = OracleOptions { h_step: cfg.tol.fd_step, ..OracleOptions::default() };
    let mut text = String::new();
    let mut failures = 0usize;
    let mut worst_overall = 0.0f64;
    for (name, surf) in &surfaces {
        let pts = regular_points(surf, cfg.verify_points, &mut rng);
        let rows: Vec<Discrepancy> = pts
            .par_iter()
            .map(|&(s, u)| compare_point(surf, s, u, opts, cfg.verify_rel_tol))
            .collect::<std::result::Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect();
        writeln!(text, "{name}: {} points", pts.len()).unwrap();
        for q in ["E", "F", "G", "L", "M", "N", "K", "H"] {
            let sel: Vec<&Discrepancy> = rows.iter().filter(|r| r.quantity == q).collect();
            let worst = sel.iter().copied().max_by(|a, b| a.rel_err.total_cmp(&b.rel_err));
            let failed = sel.iter().filter(|r| !r.passed).count();
            failures += failed;
            if let Some(w) = worst {
                worst_overall = worst_overall.max(w.rel_err);
                writeln!(
                    text,
                    "  {q}: max rel err {:.3e} at (s, u) = ({}, {}); {failed} over tolerance",
                    w.rel_err,
                    num(w.s),
                    num(w.u)
                )
                .unwrap();
            }
        }
        if pts.len() < cfg.verify_points {
            writeln!(text, "  only {} of {} regular points found", pts.len(), cfg.verify_points).unwrap();
            failures += 1;
        }
    }
    writeln!(text, "max relative error {:.3e} (tolerance {:e}); {failures} failures", worst_overall, cfg.verify_rel_tol).unwrap();
    emit(cfg.out.as_deref(), "verify.txt", &text)?;
    if failures > 0 {
        return Err(CliError::Verify(format!("{failures} comparisons exceeded relative tolerance {:e}", cfg.verify_rel_tol)));
    }
    Ok(())
}
