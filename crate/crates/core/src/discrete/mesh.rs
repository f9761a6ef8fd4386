//! Triangle meshes: parsing, validation, conversion to metric graphs,
//! midpoint subdivision.

use super::{DiscreteManifold, Edge};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::io::Write;
use std::path::Path;

/// An embedded triangle mesh (vertices plus triangular faces).
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn triangle_area(&self, f: usize) -> f64 {
        let [a, b, c] = self.faces[f];
        let (p, q, r) = (self.vertices[a], self.vertices[b], self.vertices[c]);
        let u = [q[0] - p[0], q[1] - p[1], q[2] - p[2]];
        let v = [r[0] - p[0], r[1] - p[1], r[2] - p[2]];
        let cross = [
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        0.5 * (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt()
    }

    pub fn total_area(&self) -> f64 {
        (0..self.faces.len()).map(|f| self.triangle_area(f)).sum()
    }

    /// Structural validation: indices in range and distinct per face, every
    /// vertex referenced, no degenerate (zero-area) triangle, every edge in
    /// at most two faces.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 || self.faces.is_empty() {
            return Err(Error::Mesh("mesh has no vertices or no faces".into()));
        }
        let mut referenced = vec![false; n];
        let mut edge_count: HashMap<(usize, usize), u32> = HashMap::new();
        for (fi, face) in self.faces.iter().enumerate() {
            let [a, b, c] = *face;
            if a >= n || b >= n || c >= n {
                return Err(Error::Mesh(format!("face {fi} references a missing vertex")));
            }
            if a == b || b == c || a == c {
                return Err(Error::Mesh(format!("face {fi} repeats a vertex")));
            }
            if self.triangle_area(fi) <= 0.0 {
                return Err(Error::Mesh(format!("face {fi} is degenerate (zero area)")));
            }
            for (u, v) in [(a, b), (b, c), (a, c)] {
                referenced[u] = true;
                referenced[v] = true;
                let key = (u.min(v), u.max(v));
                let count = edge_count.entry(key).or_insert(0);
                *count += 1;
                if *count > 2 {
                    return Err(Error::Mesh(format!(
                        "non-manifold edge ({}, {}) shared by more than two faces",
                        key.0, key.1
                    )));
                }
            }
        }
        if let Some(i) = referenced.iter().position(|r| !r) {
            return Err(Error::Mesh(format!("vertex {i} is not referenced by any face")));
        }
        Ok(())
    }

    /// One level of 4-to-1 midpoint subdivision. With `project_to_sphere`,
    /// new and old vertices are renormalized to the unit sphere.
    pub fn subdivide_once(&self, project_to_sphere: bool) -> Mesh {
        let mut vertices = self.vertices.clone();
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut faces = Vec::with_capacity(self.faces.len() * 4);
        let mut mid = |i: usize, j: usize, vs: &mut Vec<[f64; 3]>| -> usize {
            let key = (i.min(j), i.max(j));
            if let Some(&k) = midpoint.get(&key) {
                return k;
            }
            let (p, q) = (vs[i], vs[j]);
            let m = [(p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0, (p[2] + q[2]) / 2.0];
            let k = vs.len();
            vs.push(m);
            midpoint.insert(key, k);
            k
        };
        for &[a, b, c] in &self.faces {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            faces.push([a, ab, ca]);
            faces.push([b, bc, ab]);
            faces.push([c, ca, bc]);
            faces.push([ab, bc, ca]);
        }
        if project_to_sphere {
            for v in vertices.iter_mut() {
                let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
                v[0] /= norm;
                v[1] /= norm;
                v[2] /= norm;
            }
        }
        Mesh { vertices, faces }
    }

    /// Write in OFF format.
    pub fn write_off(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "OFF")?;
        writeln!(w, "{} {} 0", self.vertices.len(), self.faces.len())?;
        for v in &self.vertices {
            writeln!(w, "{} {} {}", v[0], v[1], v[2])?;
        }
        for f in &self.faces {
            writeln!(w, "3 {} {} {}", f[0], f[1], f[2])?;
        }
        Ok(())
    }
}

/// Parse OFF text (vertices and triangular faces).
pub fn parse_off(text: &str) -> Result<Mesh> {
    let mut tokens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split_whitespace())
        .peekable();
    match tokens.next() {
        Some("OFF") => {}
        other => {
            return Err(Error::Parse(format!("expected OFF header, found {other:?}")));
        }
    }
    let next_usize = |what: &str, tokens: &mut dyn Iterator<Item = &str>| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what}")))?
            .parse()
            .map_err(|e| Error::Parse(format!("bad {what}: {e}")))
    };
    let nv = next_usize("vertex count", &mut tokens)?;
    let nf = next_usize("face count", &mut tokens)?;
    let _ne = next_usize("edge count", &mut tokens)?;
    let mut vertices = Vec::with_capacity(nv);
    for i in 0..nv {
        let mut v = [0.0; 3];
        for c in v.iter_mut() {
            *c = tokens
                .next()
                .ok_or_else(|| Error::Parse(format!("vertex {i} truncated")))?
                .parse()
                .map_err(|e| Error::Parse(format!("vertex {i}: {e}")))?;
        }
        vertices.push(v);
    }
    let mut faces = Vec::with_capacity(nf);
    for i in 0..nf {
        let arity = next_usize(&format!("face {i} arity"), &mut tokens)?;
        if arity != 3 {
            return Err(Error::Mesh(format!("face {i} has {arity} vertices; only triangles are supported")));
        }
        let mut f = [0usize; 3];
        for c in f.iter_mut() {
            *c = next_usize(&format!("face {i} index"), &mut tokens)?;
        }
        faces.push(f);
    }
    Ok(Mesh { vertices, faces })
}

/// Parse Wavefront OBJ text. Only `v` and triangular `f` records contribute;
/// anything else is ignored and reported in the warnings list.
pub fn parse_obj(text: &str) -> Result<(Mesh, Vec<String>)> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let mut warnings = Vec::new();
    let mut ignored: Vec<String> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap();
        match tag {
            "v" => {
                let mut v = [0.0; 3];
                for c in v.iter_mut() {
                    *c = parts
                        .next()
                        .ok_or_else(|| Error::Parse(format!("line {}: truncated vertex", lineno + 1)))?
                        .parse()
                        .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                }
                vertices.push(v);
            }
            "f" => {
                let idx: Vec<usize> = parts
                    .map(|p| {
                        let first = p.split('/').next().unwrap_or(p);
                        first
                            .parse::<isize>()
                            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
                            .and_then(|i| {
                                if i > 0 {
                                    Ok(i as usize - 1)
                                } else {
                                    Err(Error::Parse(format!(
                                        "line {}: negative face indices are not supported",
                                        lineno + 1
                                    )))
                                }
                            })
                    })
                    .collect::<Result<_>>()?;
                if idx.len() != 3 {
                    return Err(Error::Mesh(format!(
                        "line {}: face with {} vertices; only triangles are supported",
                        lineno + 1,
                        idx.len()
                    )));
                }
                faces.push([idx[0], idx[1], idx[2]]);
            }
            other => {
                if !ignored.iter().any(|t| t == other) {
                    ignored.push(other.to_string());
                    warnings.push(format!("ignoring OBJ record type '{other}'"));
                }
            }
        }
    }
    Ok((Mesh { vertices, faces }, warnings))
}

/// Load a mesh from a `.off` or `.obj` path.
pub fn load_mesh(path: &Path) -> Result<(Mesh, Vec<String>)> {
    let text = std::fs::read_to_string(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("off") | Some("OFF") => Ok((parse_off(&text)?, Vec::new())),
        Some("obj") | Some("OBJ") => parse_obj(&text),
        _ => Err(Error::Parse(format!(
            "cannot infer mesh format from path {path:?}; expected .off or .obj"
        ))),
    }
}

/// Convert a validated mesh to a metric graph: edges with Euclidean lengths,
/// lumped barycentric vertex weights (one third of incident triangle areas),
/// dimension hint 2.
pub fn from_mesh(mesh: &Mesh, label: impl Into<String>) -> Result<DiscreteManifold> {
    mesh.validate()?;
    let n = mesh.vertices.len();
    let mut weights = vec![0.0f64; n];
    let mut edge_set: HashMap<(usize, usize), f64> = HashMap::new();
    for (fi, &[a, b, c]) in mesh.faces.iter().enumerate() {
        let area = mesh.triangle_area(fi);
        let third = area / 3.0;
        weights[a] += third;
        weights[b] += third;
        weights[c] += third;
        for (u, v) in [(a, b), (b, c), (a, c)] {
            let key = (u.min(v), u.max(v));
            edge_set.entry(key).or_insert_with(|| {
                let (p, q) = (mesh.vertices[key.0], mesh.vertices[key.1]);
                ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2) + (p[2] - q[2]).powi(2)).sqrt()
            });
        }
    }
    let mut edges: Vec<Edge> = edge_set
        .into_iter()
        .map(|((u, v), length)| Edge { u, v, length })
        .collect();
    edges.sort_by_key(|e| (e.u, e.v));
    DiscreteManifold::new(label, 2, n, edges, weights)?
        .with_embedding(mesh.vertices.clone())
        .map(|m| m.with_faces(mesh.faces.clone()))
}

/// Rebuild the mesh view of a manifold that kept its provenance.
pub fn mesh_of(m: &DiscreteManifold) -> Result<Mesh> {
    let vertices = m
        .embedding()
        .ok_or_else(|| Error::MissingEmbedding(m.label().to_string()))?
        .to_vec();
    let faces = m
        .faces()
        .ok_or_else(|| Error::MissingEmbedding(m.label().to_string()))?
        .to_vec();
    Ok(Mesh { vertices, faces })
}

/// 4-to-1 midpoint subdivision of a mesh-backed manifold, `levels` times.
/// Requires embedding and face provenance. Weights are recomputed.
pub fn subdivide(
    m: &DiscreteManifold,
    levels: usize,
    project_to_sphere: bool,
) -> Result<DiscreteManifold> {
    if levels == 0 {
        return Ok(m.clone());
    }
    let mut mesh = mesh_of(m)?;
    for _ in 0..levels {
        mesh = mesh.subdivide_once(project_to_sphere);
    }
    from_mesh(&mesh, format!("{}+sub{}", m.label(), levels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::generators;

    fn square_sheet() -> Mesh {
        // unit square split into two triangles
        Mesh {
            vertices: vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [1.0, 1.0, 0.0],
                [0.0, 1.0, 0.0],
            ],
            faces: vec![[0, 1, 2], [0, 2, 3]],
        }
    }

    #[test]
    fn square_sheet_weights_sum_to_area() {
        let m = from_mesh(&square_sheet(), "sheet").unwrap();
        assert!((m.total_weight() - 1.0).abs() < 1e-15);
        assert_eq!(m.vertex_count(), 4);
        assert_eq!(m.edges().len(), 5);
    }

    #[test]
    fn icosahedron_counts() {
        let m = from_mesh(&generators::icosahedron(), "ico").unwrap();
        assert_eq!(m.vertex_count(), 12);
        assert_eq!(m.edges().len(), 30);
        let mesh = mesh_of(&m).unwrap();
        assert!((m.total_weight() - mesh.total_area()).abs() < 1e-12);
    }

    #[test]
    fn subdivision_counts_and_identity() {
        let ico = from_mesh(&generators::icosahedron(), "ico").unwrap();
        let one = subdivide(&ico, 1, true).unwrap();
        assert_eq!(one.vertex_count(), 42); // 12 + 30 midpoints
        let zero = subdivide(&ico, 0, true).unwrap();
        assert_eq!(zero.vertex_count(), ico.vertex_count());
        assert_eq!(zero.edges(), ico.edges());
    }

    #[test]
    fn projected_subdivision_area_converges_to_sphere() {
        let ico = from_mesh(&generators::icosahedron(), "ico").unwrap();
        let m = subdivide(&ico, 3, true).unwrap();
        let area = m.total_weight();
        let sphere = 4.0 * std::f64::consts::PI;
        assert!(
            ((area - sphere) / sphere).abs() < 0.005,
            "level-3 area {area} vs {sphere}"
        );
    }

    #[test]
    fn subdivide_requires_embedding() {
        let m = generators::cycle(10, 1.0).unwrap();
        assert!(matches!(subdivide(&m, 1, false), Err(Error::MissingEmbedding(_))));
    }

    #[test]
    fn disconnected_mesh_rejected() {
        let mut mesh = square_sheet();
        let base = mesh.vertices.len();
        mesh.vertices.extend([[5.0, 0.0, 0.0], [6.0, 0.0, 0.0], [5.0, 1.0, 0.0]]);
        mesh.faces.push([base, base + 1, base + 2]);
        assert!(matches!(from_mesh(&mesh, "two parts"), Err(Error::Disconnected(_))));
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let mesh = Mesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [2.0, 0.0, 0.0]],
            faces: vec![[0, 1, 2]],
        };
        assert!(matches!(from_mesh(&mesh, "flat"), Err(Error::Mesh(_))));
    }

    #[test]
    fn non_manifold_edge_rejected() {
        let mesh = Mesh {
            vertices: vec![
                [0.0, 0.0, 0.0],
                [1.0, 0.0, 0.0],
                [0.5, 1.0, 0.0],
                [0.5, -1.0, 0.0],
                [0.5, 0.0, 1.0],
            ],
            faces: vec![[0, 1, 2], [0, 1, 3], [0, 1, 4]],
        };
        assert!(matches!(mesh.validate(), Err(Error::Mesh(_))));
    }

    #[test]
    fn off_round_trip() {
        let mesh = square_sheet();
        let mut buf = Vec::new();
        mesh.write_off(&mut buf).unwrap();
        let parsed = parse_off(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(parsed, mesh);
    }

    #[test]
    fn obj_parses_triangles_and_warns_on_extras() {
        let text = "\
# comment
v 0 0 0
v 1 0 0
v 1 1 0
vn 0 0 1
vt 0 0
f 1/1/1 2/2/1 3/3/1
usemtl stone
";
        let (mesh, warnings) = parse_obj(text).unwrap();
        assert_eq!(mesh.vertices.len(), 3);
        assert_eq!(mesh.faces, vec![[0, 1, 2]]);
        assert_eq!(warnings.len(), 3); // vn, vt, usemtl
    }

    #[test]
    fn off_rejects_quads() {
        let text = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        assert!(parse_off(text).is_err());
    }
}
