//! Synthetic manifold generators: cycle graphs, wraparound grids, icospheres.

use super::mesh::{self, Mesh};
use super::{DiscreteManifold, Edge};
use crate::error::{Error, Result};
use crate::model::PointRef;

/// Cycle graph with `n` vertices and uniform edge lengths summing to
/// `total_length`. Vertex measure is uniform; vertices carry circle
/// coordinates for oracle distance fields.
pub fn cycle(n: usize, total_length: f64) -> Result<DiscreteManifold> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    if total_length <= 0.0 || !total_length.is_finite() {
        return Err(Error::InvalidParameter("cycle length must be positive".into()));
    }
    let step = total_length / n as f64;
    let edges = (0..n)
        .map(|i| Edge { u: i, v: (i + 1) % n, length: step })
        .collect();
    let weights = vec![step; n];
    let points = (0..n)
        .map(|i| PointRef::Circle { arc: i as f64 * step })
        .collect();
    DiscreteManifold::new(format!("cycle(n={n}, l={total_length})"), 1, n, edges, weights)?
        .with_points(points)
}

/// `n x n` wraparound grid on the flat torus with sides `side_a x side_b`.
/// Axis-aligned edges only; graph distances are taxicab-like, so pair this
/// generator with oracle distance fields for metric work. Vertex measure is
/// uniform (`side_a * side_b / n^2`).
pub fn torus_grid(n: usize, side_a: f64, side_b: f64) -> Result<DiscreteManifold> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("torus grid needs n >= 2, got {n}")));
    }
    if side_a <= 0.0 || side_b <= 0.0 {
        return Err(Error::InvalidParameter("torus sides must be positive".into()));
    }
    let count = n * n;
    let dx = side_a / n as f64;
    let dy = side_b / n as f64;
    let index = |i: usize, j: usize| i * n + j;
    let mut edges = Vec::with_capacity(2 * count);
    for i in 0..n {
        for j in 0..n {
            edges.push(Edge { u: index(i, j), v: index((i + 1) % n, j), length: dx });
            edges.push(Edge { u: index(i, j), v: index(i, (j + 1) % n), length: dy });
        }
    }
    let weights = vec![side_a * side_b / count as f64; count];
    let mut points = Vec::with_capacity(count);
    for i in 0..n {
        for j in 0..n {
            points.push(PointRef::Torus { x: i as f64 * dx, y: j as f64 * dy });
        }
    }
    DiscreteManifold::new(
        format!("torus_grid(n={n}, {side_a}x{side_b})"),
        2,
        count,
        edges,
        weights,
    )?
    .with_points(points)
}

/// The regular icosahedron on the unit sphere.
pub fn icosahedron() -> Mesh {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut vertices: Vec<[f64; 3]> = vec![
        [-1.0, phi, 0.0],
        [1.0, phi, 0.0],
        [-1.0, -phi, 0.0],
        [1.0, -phi, 0.0],
        [0.0, -1.0, phi],
        [0.0, 1.0, phi],
        [0.0, -1.0, -phi],
        [0.0, 1.0, -phi],
        [phi, 0.0, -1.0],
        [phi, 0.0, 1.0],
        [-phi, 0.0, -1.0],
        [-phi, 0.0, 1.0],
    ];
    let norm = (1.0 + phi * phi).sqrt();
    for v in vertices.iter_mut() {
        for c in v.iter_mut() {
            *c /= norm;
        }
    }
    let faces = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];
    Mesh { vertices, faces }
}

/// Icosahedron subdivided `levels` times with projection to the unit sphere.
/// Vertices carry unit-sphere coordinates for oracle distance fields.
pub fn icosphere(levels: usize) -> Result<DiscreteManifold> {
    let base = mesh::from_mesh(&icosahedron(), format!("icosphere(level={levels})"))?;
    let m = if levels == 0 {
        base
    } else {
        let sub = mesh::subdivide(&base, levels, true)?;
        // keep a tidy label instead of the chained suffix
        let mesh = mesh::mesh_of(&sub)?;
        mesh::from_mesh(&mesh, format!("icosphere(level={levels})"))?
    };
    let points = m
        .embedding()
        .expect("mesh-backed manifold has embedding")
        .iter()
        .map(|v| {
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            PointRef::Sphere { coords: vec![v[0] / norm, v[1] / norm, v[2] / norm] }
        })
        .collect();
    m.with_points(points)
}
