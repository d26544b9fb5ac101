//! Job configuration: a flat `key = value` file with `[section]` headers,
//! overridden by command-line flags.
//!
//! ```text
//! [curve]
//! name = helix-ex1          # or x/y/z expressions in `var`
//! [angle]
//! theta = linear(1)
//! [grid]
//! s = 0:3*pi:300
//! u = -1:1:50
//! seed = 7
//! [output]
//! dir = out
//! [tolerances]
//! eps_sing = 1e-8
//! [oncurve]
//! curve = linear(1, 0, 0.5, 0)
//! t = 0:1:50
//! unit_speed = false
//! [verify]
//! points = 200
//! rel_tol = 1e-6
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use ot_ruled::expr::parse_constant;
use ot_ruled::numeric::linspace;
use ot_ruled::{catalog, AngleFunction, Curve, ExprCurve, Interval, OTSurface, Parametrization, Tolerances};

use crate::error::{CliError, Result};

/// `a:b:n` grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub a: f64,
    pub b: f64,
    pub n: usize,
}

impl Range {
    pub fn parse(src: &str) -> Result<Self> {
        let parts: Vec<&str> = src.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::config(format!("range '{src}' must look like a:b:n")));
        }
        let num = |p: &str| parse_constant(p).map_err(|e| CliError::config(format!("range '{src}': {e}")));
        let (a, b) = (num(parts[0])?, num(parts[1])?);
        let n: usize = parts[2].trim().parse().map_err(|_| CliError::config(format!("range '{src}': bad count")))?;
        if n < 2 {
            return Err(CliError::config(format!("range '{src}': count must be at least 2")));
        }
        if !(a < b) {
            return Err(CliError::config(format!("range '{src}' is empty")));
        }
        Ok(Self { a, b, n })
    }

    pub fn values(&self) -> Vec<f64> {
        linspace(self.a, self.b, self.n)
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CurveSource {
    Catalog(String),
    Expr { x: String, y: String, z: String, var: String, arc_length: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub curve: CurveSource,
    /// Overrides the curve's default parameter interval.
    pub domain: Option<Interval>,
    pub theta: String,
    pub s_range: Option<Range>,
    pub u_range: Range,
    pub out: Option<PathBuf>,
    pub tol: Tolerances,
    pub seed: u64,
    pub oncurve: Option<String>,
    pub t_range: Option<Range>,
    pub unit_speed: bool,
    pub verify_points: usize,
    pub verify_rel_tol: f64,
}

impl Default for JobConfig {
    fn default() -> Self {
        Self {
            curve: CurveSource::Catalog("helix-ex1".into()),
            domain: None,
            theta: "linear(1)".into(),
            s_range: None,
            u_range: Range { a: -1.0, b: 1.0, n: 21 },
            out: None,
            tol: Tolerances::default(),
            seed: 0,
            oncurve: None,
            t_range: None,
            unit_speed: false,
            verify_points: 200,
            verify_rel_tol: 1e-6,
        }
    }
}

/// Sectioned `key = value` text. Later keys overwrite earlier ones.
pub type Sections = BTreeMap<String, BTreeMap<String, String>>;

pub fn parse_sections(text: &str) -> Result<Sections> {
    let mut out = Sections::new();
    let mut section = String::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| CliError::config(format!("line {}: unterminated section header", no + 1)))?;
            section = name.trim().to_string();
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("line {}: expected key = value", no + 1)))?;
        if section.is_empty() {
            return Err(CliError::config(format!("line {}: key outside of a section", no + 1)));
        }
        out.entry(section.clone()).or_default().insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::config(format!("{key}: expected true/false, got '{v}'"))),
    }
}

fn parse_positive(key: &str, v: &str) -> Result<f64> {
    let x = parse_constant(v).map_err(|e| CliError::config(format!("{key}: {e}")))?;
    if !(x > 0.0) {
        return Err(CliError::config(format!("{key} must be positive")));
    }
    Ok(x)
}

fn parse_domain(v: &str) -> Result<Interval> {
    let (a, b) = v.split_once(':').ok_or_else(|| CliError::config(format!("domain '{v}' must look like a:b")))?;
    let num = |p: &str| parse_constant(p).map_err(|e| CliError::config(format!("domain '{v}': {e}")));
    let (a, b) = (num(a)?, num(b)?);
    if !(a < b) {
        return Err(CliError::config(format!("domain '{v}' is empty")));
    }
    Ok(Interval::new(a, b))
}

pub fn set_tolerance(tol: &mut Tolerances, assignment: &str) -> Result<()> {
    let (k, v) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::config(format!("tolerance '{assignment}' must look like NAME=VALUE")))?;
    set_tolerance_kv(tol, k.trim(), v.trim())
}

fn set_tolerance_kv(tol: &mut Tolerances, k: &str, v: &str) -> Result<()> {
    let x = parse_constant(v).map_err(|e| CliError::config(format!("tolerance {k}: {e}")))?;
    tol.set(k, x).map_err(CliError::Config)
}

impl JobConfig {
    pub fn from_text(text: &str) -> Result<Self> {
        let sections = parse_sections(text)?;
        let mut cfg = Self::default();
        for (name, kv) in &sections {
            match name.as_str() {
                "curve" => cfg.apply_curve(kv)?,
                "angle" => {
                    for (k, v) in kv {
                        match k.as_str() {
                            "theta" => cfg.theta = v.clone(),
                            _ => return Err(unknown(name, k)),
                        }
                    }
                }
                "grid" => {
                    for (k, v) in kv {
                        match k.as_str() {
                            "s" => cfg.s_range = Some(Range::parse(v)?),
                            "u" => cfg.u_range = Range::parse(v)?,
                            "seed" => {
                                cfg.seed = v.parse().map_err(|_| CliError::config(format!("seed: bad integer '{v}'")))?
                            }
                            _ => return Err(unknown(name, k)),
                        }
                    }
                }
                "output" => {
                    for (k, v) in kv {
                        match k.as_str() {
                            "dir" => cfg.out = Some(PathBuf::from(v)),
                            _ => return Err(unknown(name, k)),
                        }
                    }
                }
                "tolerances" => {
                    for (k, v) in kv {
                        set_tolerance_kv(&mut cfg.tol, k, v)?;
                    }
                }
                "oncurve" => {
                    for (k, v) in kv {
                        match k.as_str() {
                            "curve" => cfg.oncurve = Some(v.clone()),
                            "t" => cfg.t_range = Some(Range::parse(v)?),
                            "unit_speed" => cfg.unit_speed = parse_bool(k, v)?,
                            _ => return Err(unknown(name, k)),
                        }
                    }
                }
                "verify" => {
                    for (k, v) in kv {
                        match k.as_str() {
                            "points" => {
                                cfg.verify_points =
                                    v.parse().map_err(|_| CliError::config(format!("points: bad integer '{v}'")))?
                            }
                            "rel_tol" => cfg.verify_rel_tol = parse_positive(k, v)?,
                            _ => return Err(unknown(name, k)),
                        }
                    }
                }
                _ => return Err(CliError::config(format!("unknown section [{name}]"))),
            }
        }
        Ok(cfg)
    }

    fn apply_curve(&mut self, kv: &BTreeMap<String, String>) -> Result<()> {
        let get = |k: &str| kv.get(k).cloned();
        for k in kv.keys() {
            if !["name", "x", "y", "z", "var", "arc_length", "domain"].contains(&k.as_str()) {
                return Err(unknown("curve", k));
            }
        }
        if let Some(d) = get("domain") {
            self.domain = Some(parse_domain(&d)?);
        }
        match (get("name"), get("x"), get("y"), get("z")) {
            (Some(n), None, None, None) => self.curve = CurveSource::Catalog(n),
            (None, Some(x), Some(y), Some(z)) => {
                let arc_length = match get("arc_length") {
                    Some(v) => parse_bool("arc_length", &v)?,
                    None => false,
                };
                if self.domain.is_none() {
                    return Err(CliError::config("expression curves need a domain = a:b"));
                }
                self.curve = CurveSource::Expr { x, y, z, var: get("var").unwrap_or_else(|| "t".into()), arc_length };
            }
            (None, None, None, None) => {}
            _ => return Err(CliError::config("[curve] needs either name or all of x, y, z")),
        }
        Ok(())
    }

    pub fn build_curve(&self) -> Result<Arc<dyn Curve>> {
        match &self.curve {
            CurveSource::Catalog(name) => catalog::by_name(name, self.domain).map_err(CliError::Config),
            CurveSource::Expr { x, y, z, var, arc_length } => {
                let p = if *arc_length { Parametrization::ArcLength } else { Parametrization::General };
                let domain = self.domain.ok_or_else(|| CliError::config("expression curves need a domain"))?;
                let c = ExprCurve::parse(x, y, z, var, domain, p).map_err(|e| CliError::config(e.to_string()))?;
                Ok(Arc::new(c))
            }
        }
    }

    /// Curve, angle and surface; any failure here is a configuration problem.
    pub fn build_surface(&self) -> Result<OTSurface> {
        let curve = self.build_curve()?;
        let angle = AngleFunction::parse(&self.theta, &curve, self.tol.grid_nodes)
            .map_err(|e| CliError::config(format!("angle '{}': {e}", self.theta)))?;
        OTSurface::new(curve, angle, self.u_range.interval(), self.tol).map_err(|e| CliError::config(e.to_string()))
    }

    /// The configured s-grid, defaulting to 200 nodes over the curve domain.
    pub fn s_values(&self, surface: &OTSurface) -> Result<Vec<f64>> {
        let d = surface.s_domain();
        match self.s_range {
            Some(r) => {
                let tol = 1e-12 * (1.0 + d.min.abs().max(d.max.abs()));
                if r.a < d.min - tol || r.b > d.max + tol {
                    return Err(CliError::config(format!(
                        "s-range [{}, {}] leaves the curve domain [{}, {}]",
                        r.a, r.b, d.min, d.max
                    )));
                }
                Ok(r.values().into_iter().map(|s| d.clamp(s)).collect())
            }
            None => Ok(linspace(d.min, d.max, 200)),
        }
    }
}

fn unknown(section: &str, key: &str) -> CliError {
    CliError::config(format!("unknown key '{key}' in [{section}]"))
}
