//! Discrete manifolds: weighted metric graphs with geodesic distance fields.
//!
//! A [`DiscreteManifold`] is a connected graph whose edges carry positive
//! lengths and whose vertices carry nonnegative measure weights summing to
//! the total volume. Distances are exact shortest paths in the edge graph;
//! the functional `f(p)` is the weight-weighted sum of distances from `p`.

pub mod generators;
pub mod mesh;

use crate::error::{Error, Result};
use crate::model::{ModelSpace, PointRef};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Exact diameter computation is refused above this vertex count; use
/// sampled mode instead.
pub const EXACT_DIAMETER_BUDGET: usize = 20_000;

/// One undirected edge, stored once with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
}

/// A connected weighted metric graph with per-vertex measure weights.
#[derive(Debug, Clone)]
pub struct DiscreteManifold {
    label: String,
    dim_hint: u32,
    edges: Vec<Edge>,
    vertex_weight: Vec<f64>,
    total_weight: f64,
    embedding: Option<Vec<[f64; 3]>>,
    faces: Option<Vec<[usize; 3]>>,
    points: Option<Vec<PointRef>>,
    adj_offsets: Vec<usize>,
    adj: Vec<(usize, f64)>,
}

impl DiscreteManifold {
    /// Build and validate a manifold from raw edges and weights.
    ///
    /// Rejects nonpositive edge lengths, negative weights, zero total weight,
    /// self-loops, duplicate edges, and disconnected graphs.
    pub fn new(
        label: impl Into<String>,
        dim_hint: u32,
        vertex_count: usize,
        mut edges: Vec<Edge>,
        vertex_weight: Vec<f64>,
    ) -> Result<Self> {
        let label = label.into();
        if vertex_count == 0 {
            return Err(Error::InvalidParameter("manifold needs at least one vertex".into()));
        }
        if vertex_weight.len() != vertex_count {
            return Err(Error::InvalidParameter(format!(
                "{} weights for {} vertices",
                vertex_weight.len(),
                vertex_count
            )));
        }
        for (i, w) in vertex_weight.iter().enumerate() {
            if !(w.is_finite() && *w >= 0.0) {
                return Err(Error::InvalidParameter(format!("weight of vertex {i} is {w}")));
            }
        }
        let total_weight: f64 = vertex_weight.iter().sum();
        if total_weight <= 0.0 {
            return Err(Error::InvalidParameter("total weight must be positive".into()));
        }
        for e in edges.iter_mut() {
            if e.u >= vertex_count || e.v >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({}, {}) out of range",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {}", e.u)));
            }
            if !(e.length > 0.0 && e.length.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "edge ({}, {}) has nonpositive length {}",
                    e.u, e.v, e.length
                )));
            }
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if edges.windows(2).any(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::InvalidParameter("duplicate undirected edge".into()));
        }

        // CSR adjacency, neighbors in ascending order for determinism
        let mut degree = vec![0usize; vertex_count];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut adj_offsets = vec![0usize; vertex_count + 1];
        for i in 0..vertex_count {
            adj_offsets[i + 1] = adj_offsets[i] + degree[i];
        }
        let mut adj = vec![(0usize, 0.0f64); adj_offsets[vertex_count]];
        let mut cursor = adj_offsets.clone();
        for e in &edges {
            adj[cursor[e.u]] = (e.v, e.length);
            cursor[e.u] += 1;
            adj[cursor[e.v]] = (e.u, e.length);
            cursor[e.v] += 1;
        }
        for i in 0..vertex_count {
            adj[adj_offsets[i]..adj_offsets[i + 1]].sort_by_key(|&(v, _)| v);
        }

        let m = DiscreteManifold {
            label,
            dim_hint,
            edges,
            vertex_weight,
            total_weight,
            embedding: None,
            faces: None,
            points: None,
            adj_offsets,
            adj,
        };

        // connectivity
        if vertex_count > 1 {
            let mut seen = vec![false; vertex_count];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &(v, _) in m.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
            if count != vertex_count {
                return Err(Error::Disconnected(format!(
                    "{}: reached {count} of {vertex_count} vertices from vertex 0",
                    m.label
                )));
            }
        }
        Ok(m)
    }

    pub fn with_embedding(mut self, embedding: Vec<[f64; 3]>) -> Result<Self> {
        if embedding.len() != self.vertex_count() {
            return Err(Error::InvalidParameter("embedding length mismatch".into()));
        }
        self.embedding = Some(embedding);
        Ok(self)
    }

    pub fn with_faces(mut self, faces: Vec<[usize; 3]>) -> Self {
        self.faces = Some(faces);
        self
    }

    /// Attach per-vertex model-space coordinates, enabling
    /// [`DiscreteManifold::distance_oracle_field`].
    pub fn with_points(mut self, points: Vec<PointRef>) -> Result<Self> {
        if points.len() != self.vertex_count() {
            return Err(Error::InvalidParameter("points length mismatch".into()));
        }
        self.points = Some(points);
        Ok(self)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn dim_hint(&self) -> u32 {
        self.dim_hint
    }
    pub fn vertex_count(&self) -> usize {
        self.vertex_weight.len()
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn vertex_weight(&self, v: usize) -> f64 {
        self.vertex_weight[v]
    }
    pub fn weights(&self) -> &[f64] {
        &self.vertex_weight
    }
    /// Total measure, the discrete `V(M)`.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }
    pub fn embedding(&self) -> Option<&[[f64; 3]]> {
        self.embedding.as_deref()
    }
    pub fn faces(&self) -> Option<&[[usize; 3]]> {
        self.faces.as_deref()
    }
    pub fn points(&self) -> Option<&[PointRef]> {
        self.points.as_deref()
    }

    fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adj[self.adj_offsets[u]..self.adj_offsets[u + 1]]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            Err(Error::InvalidVertex { id: v, count: self.vertex_count() })
        } else {
            Ok(())
        }
    }

    /// Exact single-source shortest-path distances (Dijkstra). Priority-queue
    /// ties are broken by ascending vertex id, so identical inputs produce
    /// bit-identical fields.
    pub fn distance_field(&self, source: usize) -> Result<DistanceField> {
        self.check_vertex(source)?;
        let n = self.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        let mut settled = vec![false; n];
        dist[source] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(HeapEntry { dist: 0.0, vertex: source });
        while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
            if settled[u] {
                continue;
            }
            settled[u] = true;
            for &(v, len) in self.neighbors(u) {
                let nd = d + len;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(HeapEntry { dist: nd, vertex: v });
                }
            }
        }
        Ok(DistanceField { source, dist })
    }

    /// Distance field using exact model-space distances between the stored
    /// per-vertex coordinates, bypassing graph-metric error.
    pub fn distance_oracle_field(&self, space: &ModelSpace, source: usize) -> Result<DistanceField> {
        self.check_vertex(source)?;
        let points = self
            .points
            .as_ref()
            .ok_or_else(|| Error::MissingPoints(self.label.clone()))?;
        let src = &points[source];
        let dist = points
            .iter()
            .map(|p| space.distance(src, p))
            .collect::<Result<Vec<f64>>>()?;
        Ok(DistanceField { source, dist })
    }

    /// `f(p) = Σ_x d(p,x) w(x)` over all vertices.
    pub fn f_of(&self, source: usize) -> Result<f64> {
        let field = self.distance_field(source)?;
        Ok(self.functional(&field))
    }

    /// The functional for an already-computed field.
    pub fn functional(&self, field: &DistanceField) -> f64 {
        field
            .dist
            .iter()
            .zip(&self.vertex_weight)
            .map(|(d, w)| d * w)
            .sum()
    }

    /// Max distance from `source`.
    pub fn eccentricity(&self, source: usize) -> Result<f64> {
        Ok(self.distance_field(source)?.max())
    }

    /// Graph diameter, either exact (all sources, refused above
    /// [`EXACT_DIAMETER_BUDGET`] vertices) or sampled (a lower bound).
    pub fn diameter(&self, mode: DiameterMode) -> Result<DiameterEstimate> {
        let n = self.vertex_count();
        match mode {
            DiameterMode::Exact => {
                if n > EXACT_DIAMETER_BUDGET {
                    return Err(Error::BudgetExceeded(format!(
                        "exact diameter over {n} vertices exceeds the {EXACT_DIAMETER_BUDGET}-vertex budget"
                    )));
                }
                let value = (0..n)
                    .into_par_iter()
                    .map(|s| self.distance_field(s).map(|f| f.max()))
                    .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;
                Ok(DiameterEstimate { value, lower_bound_only: false })
            }
            DiameterMode::Sampled { seeds, seed } => {
                use rand::rngs::StdRng;
                use rand::{Rng, SeedableRng};
                let mut rng = StdRng::seed_from_u64(seed);
                let mut sources: Vec<usize> =
                    (0..seeds).map(|_| rng.random_range(0..n)).collect();
                sources.push(0);
                let mut best = 0.0f64;
                let mut farthest = 0usize;
                for &s in &sources {
                    let f = self.distance_field(s)?;
                    let (arg, m) = f.argmax();
                    if m > best {
                        best = m;
                        farthest = arg;
                    }
                }
                // two farthest-point refinement passes
                for _ in 0..2 {
                    let f = self.distance_field(farthest)?;
                    let (arg, m) = f.argmax();
                    if m > best {
                        best = m;
                    }
                    farthest = arg;
                }
                Ok(DiameterEstimate { value: best, lower_bound_only: true })
            }
        }
    }

    /// Cumulative ball-volume profile `r -> V_p(r)` from one source.
    pub fn ball_volume_profile(&self, source: usize) -> Result<BallVolumeProfile> {
        let field = self.distance_field(source)?;
        Ok(self.profile_from_field(&field))
    }

    /// Profile from an already-computed field (graph or oracle distances).
    /// Radii equal up to 1e-9 relative are merged into one step: symmetric
    /// shells otherwise split on floating-point noise across directions.
    pub fn profile_from_field(&self, field: &DistanceField) -> BallVolumeProfile {
        let mut order: Vec<usize> = (0..self.vertex_count()).collect();
        order.sort_by(|&a, &b| field.dist[a].total_cmp(&field.dist[b]));
        let mut radii: Vec<f64> = Vec::new();
        let mut volumes: Vec<f64> = Vec::new();
        let mut acc = 0.0;
        for &v in &order {
            let d = field.dist[v];
            acc += self.vertex_weight[v];
            match radii.last() {
                Some(&last) if d - last <= 1e-9 * d.max(1.0) => {
                    *volumes.last_mut().unwrap() = acc;
                }
                _ => {
                    radii.push(d);
                    volumes.push(acc);
                }
            }
        }
        BallVolumeProfile { source: field.source, radii, volumes }
    }
}

/// Per-vertex geodesic distances from one source vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceField {
    pub source: usize,
    pub dist: Vec<f64>,
}

impl DistanceField {
    pub fn max(&self) -> f64 {
        self.dist.iter().fold(0.0f64, |a, &b| a.max(b))
    }

    /// Farthest vertex and its distance; ties resolve to the lowest id.
    pub fn argmax(&self) -> (usize, f64) {
        let mut arg = 0;
        let mut best = f64::NEG_INFINITY;
        for (i, &d) in self.dist.iter().enumerate() {
            if d > best {
                best = d;
                arg = i;
            }
        }
        (arg, best)
    }
}

#[derive(Debug, Clone, Copy)]
pub enum DiameterMode {
    Exact,
    Sampled { seeds: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterEstimate {
    pub value: f64,
    /// Set for sampled mode: the value is a lower bound on the diameter.
    pub lower_bound_only: bool,
}

/// Nondecreasing cumulative volumes `V_p(r)` at the distinct radii of a
/// distance field.
#[derive(Debug, Clone, PartialEq)]
pub struct BallVolumeProfile {
    pub source: usize,
    pub radii: Vec<f64>,
    pub volumes: Vec<f64>,
}

impl BallVolumeProfile {
    /// Build from sampled radii/volumes (for closed-form model profiles).
    pub fn from_samples(radii: Vec<f64>, volumes: Vec<f64>) -> Result<Self> {
        if radii.len() != volumes.len() || radii.is_empty() {
            return Err(Error::InvalidParameter("profile samples empty or mismatched".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("profile radii must be increasing".into()));
        }
        if volumes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("profile volumes must be nondecreasing".into()));
        }
        Ok(BallVolumeProfile { source: 0, radii, volumes })
    }

    /// `Σ λ ΔV` over profile steps: the discrete coarea form of `f(p)`.
    /// Reorganizes exactly the data summed by `f_of`.
    pub fn radial_integral(&self) -> f64 {
        let mut prev = 0.0;
        let mut acc = 0.0;
        for (r, v) in self.radii.iter().zip(&self.volumes) {
            acc += r * (v - prev);
            prev = *v;
        }
        acc
    }

    pub fn total_volume(&self) -> f64 {
        *self.volumes.last().unwrap_or(&0.0)
    }
}

/// Max-heap entry ordered so that the smallest (dist, vertex) pops first.
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist && self.vertex == other.vertex
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}
