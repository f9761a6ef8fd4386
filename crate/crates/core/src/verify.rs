//! Built-in verification suites over a fixed corpus of model spaces and
//! discrete manifolds. Each suite emits one result row per check; a row
//! fails only when its inequality genuinely fails at the stated tolerance.

use crate::bounds::{
    argmax_g_compact, argmax_g_hadamard, argmax_g_noncompact, c_compact, c_hadamard, c_noncompact,
    check_lower_bound, check_upper_bound_sphere, g_compact, g_hadamard, g_noncompact, growth_check,
    volume_comparison_check, BoundSpec, MonotoneDirection, Theorem, MONOTONICITY_BAND,
};
use crate::discrete::{generators, BallVolumeProfile, DiscreteManifold};
use crate::dumbbell::{build_mesh, DumbbellParams};
use crate::error::{Error, Result};
use crate::model::{ModelSpace, Provenance, Quantity};
use crate::numeric;
use crate::report::ResultRow;
use rayon::prelude::*;

/// Verification tolerances, overridable from the CLI.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Absolute slack in the triangle-inequality-derived properties.
    pub property_slack: f64,
    /// Relative band for profile monotonicity.
    pub monotonicity_band: f64,
    /// Relative equality tolerance for sphere bounds on exact inputs.
    pub sphere_equality_exact: f64,
    /// Relative equality tolerance for sphere bounds on mesh inputs.
    pub sphere_equality_mesh: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            property_slack: 1e-9,
            monotonicity_band: MONOTONICITY_BAND,
            sphere_equality_exact: crate::bounds::SPHERE_EQUALITY_TOL_EXACT,
            sphere_equality_mesh: crate::bounds::SPHERE_EQUALITY_TOL_MESH,
        }
    }
}

impl Tolerances {
    pub fn set(&mut self, key: &str, value: f64) -> Result<()> {
        match key {
            "property-slack" => self.property_slack = value,
            "monotonicity-band" => self.monotonicity_band = value,
            "sphere-equality-exact" => self.sphere_equality_exact = value,
            "sphere-equality-mesh" => self.sphere_equality_mesh = value,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown tolerance key '{key}' (expected property-slack, monotonicity-band, sphere-equality-exact, sphere-equality-mesh)"
                )))
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    CompactRicci,
    SphereUpper,
    CartanHadamard,
    NoncompactRicci,
    HalfDiameterEccentricity,
    TriangleProperties,
    VolumeComparison,
}

impl Suite {
    pub fn from_token(s: &str) -> Option<Suite> {
        match s {
            "all" => Some(Suite::All),
            "t1_1" => Some(Suite::CompactRicci),
            "p2_5" => Some(Suite::SphereUpper),
            "t4_1" => Some(Suite::CartanHadamard),
            "t4_2" => Some(Suite::NoncompactRicci),
            "lemma3_1" => Some(Suite::HalfDiameterEccentricity),
            "section2" => Some(Suite::TriangleProperties),
            "bishop_gromov" => Some(Suite::VolumeComparison),
            _ => None,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::CompactRicci => "t1_1",
            Suite::SphereUpper => "p2_5",
            Suite::CartanHadamard => "t4_1",
            Suite::NoncompactRicci => "t4_2",
            Suite::HalfDiameterEccentricity => "lemma3_1",
            Suite::TriangleProperties => "section2",
            Suite::VolumeComparison => "bishop_gromov",
        }
    }
}

/// Run a suite, returning one row per check.
pub fn run_suite(suite: Suite, tol: &Tolerances) -> Result<Vec<ResultRow>> {
    match suite {
        Suite::All => {
            let mut rows = Vec::new();
            for s in [
                Suite::CompactRicci,
                Suite::SphereUpper,
                Suite::CartanHadamard,
                Suite::NoncompactRicci,
                Suite::HalfDiameterEccentricity,
                Suite::TriangleProperties,
                Suite::VolumeComparison,
            ] {
                rows.extend(run_suite(s, tol)?);
            }
            Ok(rows)
        }
        Suite::CompactRicci => suite_compact_ricci(),
        Suite::SphereUpper => suite_sphere_upper(tol),
        Suite::CartanHadamard => suite_cartan_hadamard(),
        Suite::NoncompactRicci => suite_noncompact_ricci(),
        Suite::HalfDiameterEccentricity => suite_eccentricity(tol),
        Suite::TriangleProperties => suite_triangle_properties(tol),
        Suite::VolumeComparison => suite_volume_comparison(tol),
    }
}

/// The discrete test corpus (all manifolds at most 2000 vertices).
pub fn corpus() -> Result<Vec<DiscreteManifold>> {
    Ok(vec![
        generators::cycle(100, 1.0)?,
        generators::cycle(8, 8.0)?,
        generators::icosphere(2)?,
        generators::icosphere(3)?,
        generators::torus_grid(20, 1.0, 1.0)?,
        generators::torus_grid(14, 2.0, 0.5)?,
        build_mesh(&DumbbellParams::new(2.0, 0.05, 12, 12, 4)?)?.manifold,
    ])
}

/// Per-source functional sweep: min/max of `f` and the max observed distance
/// (the exact diameter when `sources` covers all vertices).
#[derive(Debug, Clone, Copy)]
pub struct SourceSweep {
    pub min_f: f64,
    pub min_source: usize,
    pub max_f: f64,
    pub max_source: usize,
    pub max_distance: f64,
}

/// Sweep `f` over the given sources with either graph or oracle distances.
pub fn sweep_sources(
    m: &DiscreteManifold,
    oracle: Option<&ModelSpace>,
    sources: &[usize],
) -> Result<SourceSweep> {
    if sources.is_empty() {
        return Err(Error::InvalidParameter("no sources requested".into()));
    }
    let per_source: Vec<(usize, f64, f64)> = sources
        .par_iter()
        .map(|&s| {
            let field = match oracle {
                Some(space) => m.distance_oracle_field(space, s)?,
                None => m.distance_field(s)?,
            };
            Ok((s, m.functional(&field), field.max()))
        })
        .collect::<Result<_>>()?;
    let mut sweep = SourceSweep {
        min_f: f64::INFINITY,
        min_source: sources[0],
        max_f: f64::NEG_INFINITY,
        max_source: sources[0],
        max_distance: 0.0,
    };
    for (s, f, dmax) in per_source {
        if f < sweep.min_f {
            sweep.min_f = f;
            sweep.min_source = s;
        }
        if f > sweep.max_f {
            sweep.max_f = f;
            sweep.max_source = s;
        }
        sweep.max_distance = sweep.max_distance.max(dmax);
    }
    Ok(sweep)
}

fn all_sources(m: &DiscreteManifold) -> Vec<usize> {
    (0..m.vertex_count()).collect()
}

fn suite_compact_ricci() -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();

    // exact model spaces with nonnegative Ricci curvature
    let spaces = [
        ModelSpace::circle(1.0)?,
        ModelSpace::sphere(1, 1.0)?,
        ModelSpace::sphere(2, 1.0)?,
        ModelSpace::sphere(3, 1.0)?,
        ModelSpace::flat_torus(1.0, 1.0)?,
    ];
    for space in &spaces {
        let f = space.mean_distance_exact(&space.base_point())?;
        let spec = BoundSpec::new(Theorem::CompactRicci, space.dim())?;
        let report = check_lower_bound(&spec, f, space.diameter(), space.volume())?;
        rows.push(
            ResultRow::new(
                format!("{} f/(dV)", space.describe()),
                report.ratio,
                f.provenance.label(),
            )
            .with_theorem(spec.theorem.token())
            .with_verdict(report.verdict),
        );
    }

    // discrete corpus, min ratio over all sources
    let discrete: Vec<(DiscreteManifold, Option<ModelSpace>)> = vec![
        (generators::cycle(200, 1.0)?, None),
        (generators::icosphere(2)?, None),
        (generators::torus_grid(40, 1.0, 1.0)?, Some(ModelSpace::flat_torus(1.0, 1.0)?)),
    ];
    for (m, oracle) in &discrete {
        let sweep = sweep_sources(m, oracle.as_ref(), &all_sources(m))?;
        let ratio = sweep.min_f / (sweep.max_distance * m.total_weight());
        let c = c_compact(m.dim_hint());
        let backend = if oracle.is_some() { "oracle" } else { "graph" };
        rows.push(
            ResultRow::new(format!("{} min f/(dV)", m.label()), ratio, backend)
                .with_theorem("t1_1")
                .with_pass(ratio > c),
        );
    }
    Ok(rows)
}

fn suite_sphere_upper(tol: &Tolerances) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for &(n, k) in &[(1u32, 1.0f64), (2, 1.0), (2, 4.0), (3, 1.0)] {
        let space = ModelSpace::sphere(n, k)?;
        let f = space.mean_distance_exact(&space.base_point())?;
        let report = check_upper_bound_sphere(n, k, f)?;
        let pass = report.satisfied
            && report.equality == Some(true)
            && (report.ratio - 0.5).abs() <= tol.sphere_equality_exact;
        rows.push(
            ResultRow::new(format!("sphere(n={n}, k={k}) f/(dV)"), report.ratio, "exact")
                .with_theorem("p2_5")
                .with_pass(pass),
        );
    }
    // icosphere mesh with oracle distances: equality within the mesh band
    let m = generators::icosphere(4)?;
    let space = ModelSpace::sphere(2, 1.0)?;
    let field = m.distance_oracle_field(&space, 0)?;
    let f = Quantity { value: m.functional(&field), provenance: Provenance::Oracle };
    let report = check_upper_bound_sphere(2, 1.0, f)?;
    let pass = report.equality == Some(true)
        && (report.ratio - 0.5).abs() <= tol.sphere_equality_mesh * 0.5;
    rows.push(
        ResultRow::new("icosphere(level=4) f/(dV) from a pole", report.ratio, "oracle")
            .with_theorem("p2_5")
            .with_pass(pass),
    );
    Ok(rows)
}

fn suite_cartan_hadamard() -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for n in 1..=6u32 {
        let spec = BoundSpec::new(Theorem::CartanHadamard, n)?;
        let radius = 1.0;
        let ball = ModelSpace::euclidean_ball(n, radius)?;
        let f = ball.ball_mean_distance()?;
        // Thm-4.1-shaped inputs: radius (not ball diameter) and ball volume
        let report =
            check_lower_bound(&spec, f, Quantity::exact(radius), ball.volume())?;
        let exact = n as f64 / (n as f64 + 1.0);
        let pass = report.satisfied && (report.ratio - exact).abs() < 1e-12;
        rows.push(
            ResultRow::new(format!("euclidean-ball(n={n}) f/(dV_p(d))"), report.ratio, "exact")
                .with_theorem("t4_1")
                .with_pass(pass),
        );
    }
    for &d in &[0.5f64, 1.0, 2.0] {
        let spec = BoundSpec::new(Theorem::CartanHadamard, 2)?;
        let ball = ModelSpace::hyperbolic_ball(2, d)?;
        let f = ball.ball_mean_distance()?;
        let report = check_lower_bound(&spec, f, Quantity::exact(d), ball.volume())?;
        rows.push(
            ResultRow::new(
                format!("hyperbolic-ball(n=2, d={d}) f/(dV_p(d))"),
                report.ratio,
                f.provenance.label(),
            )
            .with_theorem("t4_1")
            .with_verdict(report.verdict),
        );
    }
    Ok(rows)
}

fn suite_noncompact_ricci() -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    // constants against an independent grid search of the proof function
    for n in 1..=6u32 {
        let c = c_noncompact(n);
        let (grid_arg, grid_max) = grid_search(|t| g_noncompact(t, 1.0, n).unwrap(), 0.0, 0.5);
        let consistent = (grid_max - c).abs() / c < 1e-6
            && (grid_arg - argmax_g_noncompact(1.0, n)).abs() < 1e-5;
        rows.push(
            ResultRow::new(format!("c_noncompact({n})"), c, "exact")
                .with_theorem("t4_2")
                .with_pass(consistent),
        );
    }
    // Euclidean balls are valid nonnegative-Ricci instances
    for n in 1..=6u32 {
        let spec = BoundSpec::new(Theorem::NoncompactRicci, n)?;
        let ball = ModelSpace::euclidean_ball(n, 1.0)?;
        let f = ball.ball_mean_distance()?;
        let report = check_lower_bound(&spec, f, Quantity::exact(1.0), ball.volume())?;
        // margin: these instances sit far above the bound
        let pass = report.satisfied && report.ratio >= 2.0 * spec.constant;
        rows.push(
            ResultRow::new(format!("euclidean-ball(n={n}) f/(dV_p(d))"), report.ratio, "exact")
                .with_theorem("t4_2")
                .with_pass(pass),
        );
    }
    // growth of f(p,r)/r on the Euclidean plane
    let samples: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0]
        .iter()
        .map(|&r| {
            let ball = ModelSpace::euclidean_ball(2, r).unwrap();
            (r, ball.ball_mean_distance().unwrap().value / r)
        })
        .collect();
    let growth = growth_check(&samples)?;
    rows.push(
        ResultRow::new("euclidean n=2: min growth factor of f(p,r)/r per doubling", growth.min_factor, "exact")
            .with_theorem("t4_2")
            .with_pass(growth.passes && (growth.min_factor - 4.0).abs() < 1e-9),
    );
    Ok(rows)
}

fn suite_eccentricity(tol: &Tolerances) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for m in corpus()? {
        let eccs: Vec<f64> = (0..m.vertex_count())
            .into_par_iter()
            .map(|s| m.eccentricity(s))
            .collect::<Result<_>>()?;
        let diameter = eccs.iter().cloned().fold(0.0f64, f64::max);
        let min_ecc = eccs.iter().cloned().fold(f64::INFINITY, f64::min);
        let pass = min_ecc >= 0.5 * diameter - tol.property_slack;
        rows.push(
            ResultRow::new(
                format!("{}: min eccentricity / diameter", m.label()),
                min_ecc / diameter,
                "graph",
            )
            .with_theorem("lemma3_1")
            .with_pass(pass),
        );
    }
    Ok(rows)
}

fn suite_triangle_properties(tol: &Tolerances) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for m in corpus()? {
        let n = m.vertex_count();
        let fields: Vec<_> = (0..n)
            .into_par_iter()
            .map(|s| m.distance_field(s))
            .collect::<Result<Vec<_>>>()?;
        let f: Vec<f64> = fields.iter().map(|fd| m.functional(fd)).collect();
        let v = m.total_weight();
        let slack = tol.property_slack;

        let mut sum_ok = true;
        let mut lipschitz_ok = true;
        let mut worst_sum = f64::INFINITY;
        let mut worst_lip = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let d = fields[p].dist[q];
                if f[p] + f[q] < d * v - slack {
                    sum_ok = false;
                }
                worst_sum = worst_sum.min(f[p] + f[q] - d * v);
                let gap = (f[p] - f[q]).abs() - d * v;
                if gap > slack {
                    lipschitz_ok = false;
                }
                worst_lip = worst_lip.max(gap);
            }
        }
        let diameter = fields
            .iter()
            .map(|fd| fd.max())
            .fold(0.0f64, f64::max);
        let max_f = f.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let max_ok = max_f >= 0.5 * diameter * v - slack;

        rows.push(
            ResultRow::new(
                format!("{}: worst f(p)+f(q)-d(p,q)V over all pairs", m.label()),
                worst_sum,
                "graph",
            )
            .with_theorem("section2")
            .with_pass(sum_ok),
        );
        rows.push(
            ResultRow::new(
                format!("{}: worst |f(p)-f(q)|-d(p,q)V over all pairs", m.label()),
                worst_lip,
                "graph",
            )
            .with_theorem("section2")
            .with_pass(lipschitz_ok),
        );
        rows.push(
            ResultRow::new(
                format!("{}: max f / (dV/2)", m.label()),
                max_f / (0.5 * diameter * v),
                "graph",
            )
            .with_theorem("section2")
            .with_pass(max_ok),
        );
    }
    Ok(rows)
}

fn suite_volume_comparison(tol: &Tolerances) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();

    // icosphere profile from a pole, oracle distances: nonincreasing.
    // The comparison grid is coarsened to a few edge lengths: below the mesh
    // resolution the step profile cannot track the continuum ratio.
    let m = generators::icosphere(4)?;
    let space = ModelSpace::sphere(2, 1.0)?;
    let field = m.distance_oracle_field(&space, 0)?;
    let profile = m.profile_from_field(&field);
    let mean_edge = m.edges().iter().map(|e| e.length).sum::<f64>() / m.edges().len() as f64;
    let report = volume_comparison_check(
        &profile,
        2,
        MonotoneDirection::NonIncreasing,
        None,
        tol.monotonicity_band,
        3.0 * mean_edge,
    )?;
    rows.push(
        ResultRow::new("icosphere(level=4): worst V_p(r)/r^2 increase", report.worst_violation, "oracle")
            .with_theorem("bishop_gromov")
            .with_pass(report.passes),
    );
    // negative control: the same profile must fail the opposite direction
    let control = volume_comparison_check(
        &profile,
        2,
        MonotoneDirection::NonDecreasing,
        None,
        tol.monotonicity_band,
        3.0 * mean_edge,
    )?;
    rows.push(
        ResultRow::new(
            "icosphere(level=4): nondecreasing control must fail",
            control.worst_violation,
            "oracle",
        )
        .with_theorem("bishop_gromov")
        .with_pass(!control.passes),
    );

    // hyperbolic ball, closed-form profile: nondecreasing
    for &(n, d) in &[(2u32, 2.0f64), (3, 1.5)] {
        let shell = numeric::sphere_surface_area(n - 1);
        let radii: Vec<f64> = (1..=64).map(|i| d * i as f64 / 64.0).collect();
        let volumes: Vec<f64> = radii
            .iter()
            .map(|&r| shell * numeric::sinh_power_integral(n - 1, r))
            .collect();
        let profile = BallVolumeProfile::from_samples(radii, volumes)?;
        let report = volume_comparison_check(
            &profile,
            n,
            MonotoneDirection::NonDecreasing,
            None,
            tol.monotonicity_band,
            0.0,
        )?;
        rows.push(
            ResultRow::new(
                format!("hyperbolic-ball(n={n}, d={d}): worst V_p(r)/r^n decrease"),
                report.worst_violation,
                "exact",
            )
            .with_theorem("bishop_gromov")
            .with_pass(report.passes),
        );
    }

    // Euclidean profile: the ratio is exactly constant
    for n in [2u32, 3] {
        let radii: Vec<f64> = (1..=64).map(|i| 2.0 * i as f64 / 64.0).collect();
        let volumes: Vec<f64> = radii
            .iter()
            .map(|&r| numeric::euclidean_ball_volume(n, r))
            .collect();
        let profile = BallVolumeProfile::from_samples(radii, volumes)?;
        let mut constant = true;
        for dir in [MonotoneDirection::NonIncreasing, MonotoneDirection::NonDecreasing] {
            let report =
                volume_comparison_check(&profile, n, dir, None, tol.monotonicity_band, 0.0)?;
            constant &= report.passes && report.worst_violation < 1e-12;
        }
        rows.push(
            ResultRow::new(format!("euclidean-ball(n={n}): V_p(r)/r^n constant"), 0.0, "exact")
                .with_theorem("bishop_gromov")
                .with_pass(constant),
        );
    }
    Ok(rows)
}

fn grid_search(g: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let points = 100_000;
    let mut best = f64::NEG_INFINITY;
    let mut arg = lo;
    for i in 0..=points {
        let r = lo + (hi - lo) * i as f64 / points as f64;
        let v = g(r);
        if v > best {
            best = v;
            arg = r;
        }
    }
    (arg, best)
}

/// Consistency of all three proof-function maximizers against brute-force
/// grid search, for dimensions up to `max_n`.
pub fn g_consistency_rows(max_n: u32) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    let d = 1.0;
    type ProofFn = Box<dyn Fn(f64) -> f64>;
    for n in 1..=max_n {
        let checks: [(&str, f64, f64, ProofFn); 3] = [
            (
                "g_compact",
                argmax_g_compact(d, n),
                c_compact(n) * d,
                Box::new(move |r| g_compact(r, d, n).unwrap()),
            ),
            (
                "g_hadamard",
                argmax_g_hadamard(d, n),
                c_hadamard(n) * d,
                Box::new(move |r| g_hadamard(r, d, n).unwrap()),
            ),
            (
                "g_noncompact",
                argmax_g_noncompact(d, n),
                c_noncompact(n) * d,
                Box::new(move |r| g_noncompact(r, d, n).unwrap()),
            ),
        ];
        for (name, argmax, cmax, g) in checks {
            let hi = if name == "g_hadamard" { d } else { d / 2.0 };
            let (grid_arg, grid_max) = grid_search(&g, 0.0, hi);
            let pass = (grid_arg - argmax).abs() <= 1e-5 * d
                && (grid_max - cmax).abs() / cmax <= 1e-6;
            rows.push(
                ResultRow::new(format!("{name}(n={n}) grid max"), grid_max, "exact")
                    .with_pass(pass),
            );
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_builtin_corpus() {
        let tol = Tolerances::default();
        for suite in [
            Suite::CompactRicci,
            Suite::SphereUpper,
            Suite::CartanHadamard,
            Suite::NoncompactRicci,
        ] {
            let rows = run_suite(suite, &tol).unwrap();
            assert!(!rows.is_empty());
            for r in &rows {
                assert!(r.passed(), "{} failed: {:?}", suite.token(), r);
            }
        }
    }

    #[test]
    fn suite_tokens_round_trip() {
        for s in [
            Suite::All,
            Suite::CompactRicci,
            Suite::SphereUpper,
            Suite::CartanHadamard,
            Suite::NoncompactRicci,
            Suite::HalfDiameterEccentricity,
            Suite::TriangleProperties,
            Suite::VolumeComparison,
        ] {
            assert_eq!(Suite::from_token(s.token()), Some(s));
        }
        assert_eq!(Suite::from_token("nope"), None);
    }

    #[test]
    fn g_consistency_all_pass() {
        for r in g_consistency_rows(10).unwrap() {
            assert!(r.passed(), "{r:?}");
        }
    }
}
