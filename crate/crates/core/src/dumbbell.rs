//! The thin-neck dumbbell surface: a unit sphere with its south cap removed,
//! a glued cylinder of length `L` and circumference `C`, and a flat disk
//! closing the bottom. With `C = 1/L^3` the ratio `f(p)/(d·V)` at the north
//! pole tends to 0 while `f(q)/(d·V)` at the disk bottom tends to 1, so no
//! dimension-only constant can bound `f/(d·V)` from below without curvature
//! hypotheses.

use crate::discrete::mesh::{from_mesh, Mesh};
use crate::discrete::{DiameterMode, DiscreteManifold};
use crate::error::{Error, Result};
use crate::model::{
    dumbbell_asymptotics, dumbbell_cut_polar_angle, dumbbell_eps_from_circumference,
    dumbbell_neck_radius, DumbbellPoint, PointRef,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Refuse to build sweep meshes above this vertex count.
pub const MESH_BUDGET_VERTICES: usize = 300_000;

/// Geometry plus mesh resolution for one dumbbell instance.
///
/// `eps` is recovered from the neck circumference by the smaller root of
/// `C = 2π sqrt(2ε - ε²)` (the thin neck near the south pole).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct DumbbellParams {
    pub neck_length: f64,
    pub neck_circumference: f64,
    pub eps: f64,
    /// Latitude bands on the truncated sphere (also the azimuthal segment
    /// count shared by all parts, so the boundary rings weld exactly).
    pub rings_sphere: usize,
    /// Axial bands along the cylinder.
    pub rings_cyl: usize,
    /// Radial bands across the bottom disk.
    pub fan_disk: usize,
}

impl DumbbellParams {
    pub fn new(
        neck_length: f64,
        neck_circumference: f64,
        rings_sphere: usize,
        rings_cyl: usize,
        fan_disk: usize,
    ) -> Result<Self> {
        if !(neck_length > 0.0 && neck_length.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "neck length must be positive, got {neck_length}"
            )));
        }
        let eps = dumbbell_eps_from_circumference(neck_circumference)?;
        if rings_sphere < 3 || rings_cyl < 3 || fan_disk < 3 {
            return Err(Error::InvalidParameter(
                "mesh resolutions must all be at least 3".into(),
            ));
        }
        Ok(DumbbellParams {
            neck_length,
            neck_circumference,
            eps,
            rings_sphere,
            rings_cyl,
            fan_disk,
        })
    }

    /// Resolution heuristic for sweep meshes: fixed angular resolution, axial
    /// bands proportional to the neck length.
    pub fn with_default_resolution(neck_length: f64, neck_circumference: f64) -> Result<Self> {
        let rings_cyl = ((4.0 * neck_length).ceil() as usize).max(3);
        DumbbellParams::new(neck_length, neck_circumference, 48, rings_cyl, 8)
    }

    /// Vertex count of the mesh this parameter set produces.
    pub fn vertex_count(&self) -> usize {
        2 + self.rings_sphere * (self.rings_sphere + self.rings_cyl + self.fan_disk - 1)
    }
}

/// A built dumbbell mesh with its two distinguished vertices.
#[derive(Debug, Clone)]
pub struct DumbbellMesh {
    pub manifold: DiscreteManifold,
    /// North-pole vertex id.
    pub p: usize,
    /// Disk-center vertex id.
    pub q: usize,
}

/// Triangulate the dumbbell: latitude/longitude bands on the truncated
/// sphere, axial bands on the cylinder, a radial fan on the disk, with the
/// shared boundary rings welded into a single connected surface. Vertices
/// are annotated with region-tagged coordinates.
pub fn build_mesh(params: &DumbbellParams) -> Result<DumbbellMesh> {
    let rho = dumbbell_neck_radius(params.eps);
    let cut = dumbbell_cut_polar_angle(params.eps);
    let z_cut = -1.0 + params.eps;
    let z_bottom = z_cut - params.neck_length;
    let segments = params.rings_sphere;
    let (nr_sphere, nr_cyl, nr_disk) = (params.rings_sphere, params.rings_cyl, params.fan_disk);

    let mut vertices: Vec<[f64; 3]> = Vec::with_capacity(params.vertex_count());
    let mut points: Vec<PointRef> = Vec::with_capacity(params.vertex_count());

    // north pole
    vertices.push([0.0, 0.0, 1.0]);
    points.push(PointRef::Dumbbell(DumbbellPoint::SpherePart { polar: 0.0, azimuth: 0.0 }));

    let azimuth = |i: usize| 2.0 * PI * i as f64 / segments as f64;

    // sphere bands, ring j at polar angle cut * j / nr_sphere; ring nr_sphere
    // is the cut ring shared with the cylinder
    for j in 1..=nr_sphere {
        let polar = cut * j as f64 / nr_sphere as f64;
        for i in 0..segments {
            let phi = azimuth(i);
            vertices.push([polar.sin() * phi.cos(), polar.sin() * phi.sin(), polar.cos()]);
            points.push(PointRef::Dumbbell(DumbbellPoint::SpherePart { polar, azimuth: phi }));
        }
    }
    // cylinder bands, ring k at depth L * k / nr_cyl below the cut; ring
    // nr_cyl is the bottom ring shared with the disk
    for k in 1..=nr_cyl {
        let depth = params.neck_length * k as f64 / nr_cyl as f64;
        let z = z_cut - depth;
        for i in 0..segments {
            let phi = azimuth(i);
            vertices.push([rho * phi.cos(), rho * phi.sin(), z]);
            points.push(PointRef::Dumbbell(DumbbellPoint::CylinderPart { depth, azimuth: phi }));
        }
    }
    // disk bands at radius rho * (1 - m / nr_disk), then the center
    for m in 1..nr_disk {
        let r = rho * (1.0 - m as f64 / nr_disk as f64);
        for i in 0..segments {
            let phi = azimuth(i);
            vertices.push([r * phi.cos(), r * phi.sin(), z_bottom]);
            points.push(PointRef::Dumbbell(DumbbellPoint::DiskPart { radial: r, azimuth: phi }));
        }
    }
    vertices.push([0.0, 0.0, z_bottom]);
    points.push(PointRef::Dumbbell(DumbbellPoint::DiskPart { radial: 0.0, azimuth: 0.0 }));
    let q = vertices.len() - 1;

    // ring r (0-based among the stacked rings) starts at 1 + r * segments
    let ring_start = |r: usize| 1 + r * segments;
    let total_rings = nr_sphere + nr_cyl + (nr_disk - 1);

    let mut faces: Vec<[usize; 3]> = Vec::new();
    // pole fan
    for i in 0..segments {
        let a = ring_start(0) + i;
        let b = ring_start(0) + (i + 1) % segments;
        faces.push([0, a, b]);
    }
    // bands between consecutive rings
    for r in 0..total_rings - 1 {
        let (top, bot) = (ring_start(r), ring_start(r + 1));
        for i in 0..segments {
            let i1 = (i + 1) % segments;
            faces.push([top + i, bot + i, bot + i1]);
            faces.push([top + i, bot + i1, top + i1]);
        }
    }
    // center fan
    let last = ring_start(total_rings - 1);
    for i in 0..segments {
        let a = last + i;
        let b = last + (i + 1) % segments;
        faces.push([a, q, b]);
    }

    let mesh = Mesh { vertices, faces };
    let label = format!(
        "dumbbell(L={}, C={})",
        params.neck_length, params.neck_circumference
    );
    let manifold = from_mesh(&mesh, label)?.with_points(points)?;
    Ok(DumbbellMesh { manifold, p: 0, q })
}

/// How the neck circumference is coupled to `L` along a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CRule {
    /// The coupling that drives the ratio to 0: `C = 1/L^3`.
    InverseCube,
    /// Fixed circumference, for exploring the thin-neck mechanism alone.
    Fixed(f64),
}

impl CRule {
    pub fn circumference(&self, l: f64) -> f64 {
        match *self {
            CRule::InverseCube => 1.0 / (l * l * l),
            CRule::Fixed(c) => c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Asymptotic,
    Mesh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepSource {
    Asymptotic,
    Mesh,
}

/// One row of the sweep: `L`, `C`, and the two normalized functionals.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepRecord {
    pub neck_length: f64,
    pub neck_circumference: f64,
    /// `f(p) / (d V)` at the north pole.
    pub ratio_p: f64,
    /// `f(q) / (d V)` at the disk bottom.
    pub ratio_q: f64,
    pub source: SweepSource,
    /// Set when a mesh row fell back to the asymptotic model because the
    /// mesh would exceed the vertex budget.
    pub budget_fallback: bool,
}

/// Run the sweep over increasing `L` values. Rows are independent and are
/// computed in parallel, collected in order.
///
/// Asymptotic mode applies the thin-neck formulas (requiring `C < 0.1`);
/// mesh mode builds a mesh per row and uses the discrete engine, falling
/// back to the asymptotic model (with a flag) above the vertex budget.
pub fn sweep(l_values: &[f64], rule: CRule, mode: SweepMode) -> Result<Vec<SweepRecord>> {
    if l_values.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one L value".into()));
    }
    if l_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter("L values must be strictly increasing".into()));
    }
    l_values
        .par_iter()
        .map(|&l| sweep_row(l, rule, mode))
        .collect()
}

fn sweep_row(l: f64, rule: CRule, mode: SweepMode) -> Result<SweepRecord> {
    let c = rule.circumference(l);
    match mode {
        SweepMode::Asymptotic => asymptotic_row(l, c, false),
        SweepMode::Mesh => {
            let params = DumbbellParams::with_default_resolution(l, c)?;
            if params.vertex_count() > MESH_BUDGET_VERTICES {
                return asymptotic_row(l, c, true);
            }
            let built = build_mesh(&params)?;
            let m = &built.manifold;
            let f_p = m.f_of(built.p)?;
            let f_q = m.f_of(built.q)?;
            let d = if m.vertex_count() <= crate::discrete::EXACT_DIAMETER_BUDGET {
                m.diameter(DiameterMode::Exact)?.value
            } else {
                m.diameter(DiameterMode::Sampled { seeds: 32, seed: 0 })?.value
            };
            let v = m.total_weight();
            Ok(SweepRecord {
                neck_length: l,
                neck_circumference: c,
                ratio_p: f_p / (d * v),
                ratio_q: f_q / (d * v),
                source: SweepSource::Mesh,
                budget_fallback: false,
            })
        }
    }
}

fn asymptotic_row(l: f64, c: f64, budget_fallback: bool) -> Result<SweepRecord> {
    let eps = dumbbell_eps_from_circumference(c)?;
    let a = dumbbell_asymptotics(eps, l)?;
    Ok(SweepRecord {
        neck_length: l,
        neck_circumference: c,
        ratio_p: a.f_p.value / a.diameter_volume.value,
        ratio_q: a.f_q.value / a.diameter_volume.value,
        source: SweepSource::Asymptotic,
        budget_fallback,
    })
}
