//! Grid sampling of a surface into a quad mesh with per-vertex scalars.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::Result;
use crate::surface::{curvatures_from_jet, OTSurface};
use crate::Vec3;

/// Vertices in row-major `(s_index, u_index)` order.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshOutput {
    pub s_values: Vec<f64>,
    pub u_values: Vec<f64>,
    pub vertices: Vec<Vec3>,
    /// Zero-based vertex indices, counter-clockwise in the `(s, u)` plane.
    pub quads: Vec<[usize; 4]>,
    pub k: Vec<f64>,
    pub h: Vec<f64>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
    /// Singular vertex (`f² + g² ≤ ε_sing²`) or undefined frame.
    pub singular: Vec<bool>,
}

/// Offset used to evaluate the ruling next to an isolated point where the
/// Frenet frame is undefined.
const FRAME_NUDGE: f64 = 1e-7;

struct Sample {
    point: Vec3,
    k: f64,
    h: f64,
    f: f64,
    g: f64,
    singular: bool,
}

fn sample(surface: &OTSurface, s: f64, u: f64) -> Result<Sample> {
    match surface.raw_jet(s, u) {
        Ok(j) => {
            let (k, h) = match j.normal {
                Some(_) => {
                    let c = curvatures_from_jet(&j);
                    (c.K, c.H)
                }
                None => (f64::NAN, f64::NAN),
            };
            Ok(Sample { point: j.point, k, h, f: j.f, g: j.g, singular: j.normal.is_none() })
        }
        Err(e) => {
            // φ is continuous across isolated zeros of κ; take the ruling
            // from the inner side of the domain
            let d = surface.s_domain();
            let s2 = if s + FRAME_NUDGE <= d.max { s + FRAME_NUDGE } else { s - FRAME_NUDGE };
            let fr = surface.frame(s2).map_err(|_| e)?;
            let point = surface.curve().position(s) + u * fr.q_o;
            Ok(Sample { point, k: f64::NAN, h: f64::NAN, f: f64::NAN, g: f64::NAN, singular: true })
        }
    }
}

impl MeshOutput {
    /// Samples `surface` over the tensor grid `s_values × u_values`.
    pub fn sample(surface: &OTSurface, s_values: &[f64], u_values: &[f64]) -> Result<Self> {
        let rows: Vec<Vec<Sample>> = s_values
            .par_iter()
            .map(|&s| u_values.iter().map(|&u| sample(surface, s, u)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let n = s_values.len() * u_values.len();
        let mut mesh = MeshOutput {
            s_values: s_values.to_vec(),
            u_values: u_values.to_vec(),
            vertices: Vec::with_capacity(n),
            quads: Vec::new(),
            k: Vec::with_capacity(n),
            h: Vec::with_capacity(n),
            f: Vec::with_capacity(n),
            g: Vec::with_capacity(n),
            singular: Vec::with_capacity(n),
        };
        for smp in rows.into_iter().flatten() {
            mesh.vertices.push(smp.point);
            mesh.k.push(smp.k);
            mesh.h.push(smp.h);
            mesh.f.push(smp.f);
            mesh.g.push(smp.g);
            mesh.singular.push(smp.singular);
        }
        let nu = u_values.len();
        for i in 0..s_values.len().saturating_sub(1) {
            for j in 0..nu.saturating_sub(1) {
                let a = i * nu + j;
                mesh.quads.push([a, a + nu, a + nu + 1, a + 1]);
            }
        }
        Ok(mesh)
    }

    /// Wavefront OBJ: `v x y z` lines then 1-indexed `f i j k l` lines.
    pub fn write_obj<W: Write>(&self, mut w: W) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z)?;
        }
        for q in &self.quads {
            writeln!(w, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1)?;
        }
        Ok(())
    }

    /// Per-vertex channels: `s_index,u_index,s,u,K,H,f,g,singular`.
    pub fn write_channels<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "s_index,u_index,s,u,K,H,f,g,singular")?;
        let nu = self.u_values.len();
        for idx in 0..self.vertices.len() {
            let (i, j) = (idx / nu, idx % nu);
            writeln!(
                w,
                "{i},{j},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                self.s_values[i],
                self.u_values[j],
                self.k[idx],
                self.h[idx],
                self.f[idx],
                self.g[idx],
                u8::from(self.singular[idx])
            )?;
        }
        Ok(())
    }
}
