//! Batch command-line surface. Every command emits a machine-readable report
//! (JSON by default, CSV on request) and exits 0 on success, 1 when a
//! requested verification fails, 2 on input errors.

use crate::bounds::{check_lower_bound, check_upper_bound_sphere, BoundSpec, Theorem};
use crate::discrete::mesh::load_mesh;
use crate::discrete::{generators, DiscreteManifold};
use crate::dumbbell::{self, CRule, DumbbellParams, SweepMode};
use crate::error::{Error, Result};
use crate::model::{
    dumbbell_asymptotics, DumbbellPoint, ModelSpace, PointRef, Provenance, Quantity,
};
use crate::report::{sweep_csv, Report, ResultRow};
use crate::verify::{self, Suite, Tolerances};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "meandist", version, about = "Distance-integral functionals and diameter-volume bounds on model spaces and meshes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CommonOpts {
    /// Output format (dumbbell-sweep defaults to csv).
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the report to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for every randomized routine (sampled sources, sampled diameter).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance overrides, repeatable: KEY=VALUE with keys property-slack,
    /// monotonicity-band, sphere-equality-exact, sphere-equality-mesh.
    #[arg(long = "tolerance", value_name = "KEY=VALUE")]
    pub tolerances: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate f, diameter, volume and their ratio on a model space.
    ModelEval {
        /// Space spec: circle:L | sphere:N,K | torus:A,B | eball:N,D |
        /// hball:N,D | dumbbell:EPS,L
        #[arg(long)]
        space: String,
        /// Optional base point (validated; f is point-independent on the
        /// homogeneous spaces).
        #[arg(long)]
        point: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Evaluate f over sources of a mesh or generated manifold.
    MeshEval {
        /// Mesh file (.off or .obj).
        #[arg(long, conflicts_with = "generator")]
        mesh: Option<PathBuf>,
        /// Generator spec: cycle:N,L | torus_grid:N,A,B | icosphere:LEVELS |
        /// dumbbell:L,C[,RS,RC,FD]
        #[arg(long)]
        generator: Option<String>,
        /// Source selector: all | sample:K | a vertex id | a named point
        /// (pole, origin, p, q).
        #[arg(long, default_value = "all")]
        source: String,
        /// Distance backend: graph shortest paths, or exact model-space
        /// distances (generated manifolds only).
        #[arg(long, value_enum, default_value_t = DistanceBackend::Graph)]
        distances: DistanceBackend,
        /// Check a bound on the swept values: t1_1 | p2_5.
        #[arg(long)]
        theorem: Option<String>,
        /// Write the (loaded or generated) triangle mesh to a file in OFF
        /// format for inspection.
        #[arg(long)]
        emit_off: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a built-in verification suite.
    Verify {
        /// all | t1_1 | p2_5 | t4_1 | t4_2 | lemma3_1 | section2 | bishop_gromov
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sweep the dumbbell family over increasing neck lengths.
    DumbbellSweep {
        /// Comma-separated increasing neck lengths.
        #[arg(long = "L", value_delimiter = ',', default_value = "5,10,20,40,80")]
        l_values: Vec<f64>,
        /// Neck-circumference rule: inverse-cube | fixed:C
        #[arg(long, default_value = "inverse-cube")]
        rule: String,
        /// asymptotic | mesh
        #[arg(long, default_value = "asymptotic")]
        mode: String,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistanceBackend {
    Graph,
    Oracle,
}

/// Entry point used by `main`; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(command: Command) -> Result<bool> {
    match command {
        Command::ModelEval { space, point, common } => {
            let report = cmd_model_eval(&space, point.as_deref())?;
            emit(&report, &common, OutputFormat::Json)?;
            Ok(report.all_passed())
        }
        Command::MeshEval { mesh, generator, source, distances, theorem, emit_off, common } => {
            let report = cmd_mesh_eval(
                mesh.as_deref(),
                generator.as_deref(),
                &source,
                distances,
                theorem.as_deref(),
                emit_off.as_deref(),
                common.seed,
            )?;
            emit(&report, &common, OutputFormat::Json)?;
            Ok(report.all_passed())
        }
        Command::Verify { suite, common } => {
            let tol = parse_tolerances(&common.tolerances)?;
            let report = cmd_verify(&suite, &tol)?;
            emit(&report, &common, OutputFormat::Json)?;
            Ok(report.all_passed())
        }
        Command::DumbbellSweep { l_values, rule, mode, common } => {
            let (report, csv) = cmd_dumbbell_sweep(&l_values, &rule, &mode)?;
            match common.format.unwrap_or(OutputFormat::Csv) {
                OutputFormat::Csv => write_output(&csv, &common.out)?,
                OutputFormat::Json => write_output(&report.to_json(), &common.out)?,
            }
            Ok(true)
        }
    }
}

fn emit(report: &Report, common: &CommonOpts, default: OutputFormat) -> Result<()> {
    let text = match common.format.unwrap_or(default) {
        OutputFormat::Json => report.to_json(),
        OutputFormat::Csv => report.to_csv(),
    };
    write_output(&text, &common.out)
}

fn write_output(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn parse_tolerances(entries: &[String]) -> Result<Tolerances> {
    let mut tol = Tolerances::default();
    for e in entries {
        let (key, value) = e
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("tolerance '{e}' is not KEY=VALUE")))?;
        let value: f64 = value
            .parse()
            .map_err(|err| Error::Parse(format!("tolerance '{e}': {err}")))?;
        tol.set(key, value)?;
    }
    Ok(tol)
}

fn parse_floats(s: &str, what: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{what}: bad number '{t}': {e}")))
        })
        .collect()
}

/// Parse a space spec like `torus:1,1`.
pub fn parse_space(spec: &str) -> Result<ModelSpace> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("space spec '{spec}' is not KIND:PARAMS")))?;
    let params = parse_floats(rest, "space parameters")?;
    let arity = |n: usize| -> Result<()> {
        if params.len() != n {
            Err(Error::Parse(format!("space '{kind}' expects {n} parameters, got {}", params.len())))
        } else {
            Ok(())
        }
    };
    match kind {
        "circle" => {
            arity(1)?;
            ModelSpace::circle(params[0])
        }
        "sphere" => {
            arity(2)?;
            ModelSpace::sphere(params[0] as u32, params[1])
        }
        "torus" => {
            arity(2)?;
            ModelSpace::flat_torus(params[0], params[1])
        }
        "eball" | "euclidean-ball" | "euclidean_ball" => {
            arity(2)?;
            ModelSpace::euclidean_ball(params[0] as u32, params[1])
        }
        "hball" | "hyperbolic-ball" | "hyperbolic_ball" => {
            arity(2)?;
            ModelSpace::hyperbolic_ball(params[0] as u32, params[1])
        }
        "dumbbell" => {
            arity(2)?;
            ModelSpace::dumbbell(params[0], params[1])
        }
        other => Err(Error::Parse(format!("unknown space kind '{other}'"))),
    }
}

/// Parse a point spec for the given space.
pub fn parse_point(space: &ModelSpace, spec: &str) -> Result<PointRef> {
    let point = match space {
        ModelSpace::Circle { .. } => {
            let v = parse_floats(spec, "circle point")?;
            if v.len() != 1 {
                return Err(Error::Parse("circle point is one arc parameter".into()));
            }
            PointRef::Circle { arc: v[0] }
        }
        ModelSpace::Sphere { .. } => {
            PointRef::Sphere { coords: parse_floats(spec, "sphere point")? }
        }
        ModelSpace::FlatTorus { .. } => {
            let v = parse_floats(spec, "torus point")?;
            if v.len() != 2 {
                return Err(Error::Parse("torus point is x,y".into()));
            }
            PointRef::Torus { x: v[0], y: v[1] }
        }
        ModelSpace::EuclideanBall { .. } | ModelSpace::HyperbolicBall { .. } => {
            let v = parse_floats(spec, "ball point")?;
            if v.len() < 2 {
                return Err(Error::Parse("ball point is radial,dir1,...,dirN".into()));
            }
            PointRef::Ball { radial: v[0], direction: v[1..].to_vec() }
        }
        ModelSpace::Dumbbell { .. } => {
            let (region, rest) = spec
                .split_once(':')
                .ok_or_else(|| Error::Parse("dumbbell point is REGION:A,B".into()))?;
            let v = parse_floats(rest, "dumbbell point")?;
            if v.len() != 2 {
                return Err(Error::Parse("dumbbell point takes two coordinates".into()));
            }
            let dp = match region {
                "sphere" => DumbbellPoint::SpherePart { polar: v[0], azimuth: v[1] },
                "cyl" | "cylinder" => DumbbellPoint::CylinderPart { depth: v[0], azimuth: v[1] },
                "disk" => DumbbellPoint::DiskPart { radial: v[0], azimuth: v[1] },
                other => return Err(Error::Parse(format!("unknown dumbbell region '{other}'"))),
            };
            PointRef::Dumbbell(dp)
        }
    };
    space.check_point(&point)?;
    Ok(point)
}

/// `model-eval`: f, diameter, volume, ratio, with provenance labels and
/// bound verdicts where a theorem applies.
pub fn cmd_model_eval(space_spec: &str, point_spec: Option<&str>) -> Result<Report> {
    let space = parse_space(space_spec)?;
    let mut report = Report::new("model-eval");
    report.input("space", space_spec);
    if let Some(p) = point_spec {
        report.input("point", p);
    }
    let point = match point_spec {
        Some(spec) => parse_point(&space, spec)?,
        None => space.base_point(),
    };

    let d = space.diameter();
    let v = space.volume();
    match &space {
        ModelSpace::Circle { .. } | ModelSpace::Sphere { .. } | ModelSpace::FlatTorus { .. } => {
            let f = space.mean_distance_exact(&point)?;
            let ratio = f.value / (d.value * v.value);
            report.push(ResultRow::new("f", f.value, f.provenance.label()));
            report.push(ResultRow::new("diameter", d.value, d.provenance.label()));
            report.push(ResultRow::new("volume", v.value, v.provenance.label()));
            let spec = BoundSpec::new(Theorem::CompactRicci, space.dim())?;
            let bound = check_lower_bound(&spec, f, d, v)?;
            report.push(
                ResultRow::new("ratio[f/(dV)]", ratio, f.provenance.label())
                    .with_theorem("t1_1")
                    .with_verdict(bound.verdict),
            );
            if let ModelSpace::Sphere { dim, curvature } = space {
                let upper = check_upper_bound_sphere(dim, curvature, f)?;
                report.push(
                    ResultRow::new("ratio[f/(dV)] equality", upper.ratio, f.provenance.label())
                        .with_theorem("p2_5")
                        .with_pass(upper.satisfied && upper.equality == Some(true)),
                );
            }
        }
        ModelSpace::EuclideanBall { dim, radius } | ModelSpace::HyperbolicBall { dim, radius } => {
            let f = space.ball_mean_distance()?;
            report.push(ResultRow::new("f", f.value, f.provenance.label()));
            report.push(ResultRow::new("diameter", d.value, d.provenance.label()));
            report.push(ResultRow::new("volume", v.value, v.provenance.label()));
            let spec = BoundSpec::new(Theorem::CartanHadamard, *dim)?;
            let bound = check_lower_bound(&spec, f, Quantity::exact(*radius), v)?;
            report.push(
                ResultRow::new("ratio[f/(d V_p(d))]", bound.ratio, f.provenance.label())
                    .with_theorem("t4_1")
                    .with_verdict(bound.verdict),
            );
        }
        ModelSpace::Dumbbell { eps, neck_length } => {
            let a = dumbbell_asymptotics(*eps, *neck_length)?;
            report.push(ResultRow::new("f(p)", a.f_p.value, a.f_p.provenance.label()));
            report.push(ResultRow::new("f(q)", a.f_q.value, a.f_q.provenance.label()));
            report.push(ResultRow::new("diameter", d.value, d.provenance.label()));
            report.push(ResultRow::new("volume", v.value, v.provenance.label()));
            report.push(ResultRow::new(
                "ratio_p[f(p)/(dV)]",
                a.f_p.value / a.diameter_volume.value,
                "asymptotic",
            ));
            report.push(ResultRow::new(
                "ratio_q[f(q)/(dV)]",
                a.f_q.value / a.diameter_volume.value,
                "asymptotic",
            ));
        }
    }
    Ok(report)
}

/// A manifold plus the model space its vertices sample (when generated).
struct LoadedManifold {
    manifold: DiscreteManifold,
    oracle_space: Option<ModelSpace>,
    named: Vec<(&'static str, usize)>,
}

fn parse_generator(spec: &str) -> Result<LoadedManifold> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("generator spec '{spec}' is not KIND:PARAMS")))?;
    let params = parse_floats(rest, "generator parameters")?;
    match kind {
        "cycle" => {
            if params.len() != 2 {
                return Err(Error::Parse("cycle generator takes N,LENGTH".into()));
            }
            let m = generators::cycle(params[0] as usize, params[1])?;
            Ok(LoadedManifold {
                oracle_space: Some(ModelSpace::circle(params[1])?),
                named: vec![("origin", 0), ("base", 0)],
                manifold: m,
            })
        }
        "torus_grid" | "torus-grid" => {
            if params.len() != 3 {
                return Err(Error::Parse("torus_grid generator takes N,A,B".into()));
            }
            let m = generators::torus_grid(params[0] as usize, params[1], params[2])?;
            Ok(LoadedManifold {
                oracle_space: Some(ModelSpace::flat_torus(params[1], params[2])?),
                named: vec![("origin", 0), ("base", 0)],
                manifold: m,
            })
        }
        "icosphere" => {
            if params.len() != 1 {
                return Err(Error::Parse("icosphere generator takes LEVELS".into()));
            }
            let m = generators::icosphere(params[0] as usize)?;
            Ok(LoadedManifold {
                oracle_space: Some(ModelSpace::sphere(2, 1.0)?),
                named: vec![("pole", 0), ("base", 0)],
                manifold: m,
            })
        }
        "dumbbell" => {
            let p = match params.len() {
                2 => DumbbellParams::with_default_resolution(params[0], params[1])?,
                5 => DumbbellParams::new(
                    params[0],
                    params[1],
                    params[2] as usize,
                    params[3] as usize,
                    params[4] as usize,
                )?,
                _ => {
                    return Err(Error::Parse("dumbbell generator takes L,C or L,C,RS,RC,FD".into()))
                }
            };
            let built = dumbbell::build_mesh(&p)?;
            Ok(LoadedManifold {
                oracle_space: Some(ModelSpace::dumbbell(p.eps, p.neck_length)?),
                named: vec![("p", built.p), ("q", built.q), ("pole", built.p)],
                manifold: built.manifold,
            })
        }
        other => Err(Error::Parse(format!("unknown generator '{other}'"))),
    }
}

fn parse_sources(
    selector: &str,
    loaded: &LoadedManifold,
    seed: u64,
) -> Result<Vec<usize>> {
    let n = loaded.manifold.vertex_count();
    if selector == "all" {
        return Ok((0..n).collect());
    }
    if let Some(count) = selector.strip_prefix("sample:") {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let k: usize = count
            .parse()
            .map_err(|e| Error::Parse(format!("bad sample count '{count}': {e}")))?;
        if k == 0 {
            return Err(Error::Parse("sample count must be positive".into()));
        }
        let mut rng = StdRng::seed_from_u64(seed);
        return Ok((0..k).map(|_| rng.random_range(0..n)).collect());
    }
    if let Some(&(_, id)) = loaded.named.iter().find(|(name, _)| *name == selector) {
        return Ok(vec![id]);
    }
    let id: usize = selector.parse().map_err(|_| {
        Error::Parse(format!(
            "source '{selector}' is not all, sample:K, a vertex id, or a named point"
        ))
    })?;
    if id >= n {
        return Err(Error::InvalidVertex { id, count: n });
    }
    Ok(vec![id])
}

/// `mesh-eval`: per-source functionals with a min/max summary and optional
/// bound verdicts.
pub fn cmd_mesh_eval(
    mesh_path: Option<&std::path::Path>,
    generator: Option<&str>,
    source_selector: &str,
    backend: DistanceBackend,
    theorem: Option<&str>,
    emit_off: Option<&std::path::Path>,
    seed: u64,
) -> Result<Report> {
    let loaded = match (mesh_path, generator) {
        (Some(path), None) => {
            let (mesh, warnings) = load_mesh(path)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            let label = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "mesh".to_string());
            LoadedManifold {
                manifold: crate::discrete::mesh::from_mesh(&mesh, label)?,
                oracle_space: None,
                named: vec![("base", 0)],
            }
        }
        (None, Some(spec)) => parse_generator(spec)?,
        _ => {
            return Err(Error::InvalidParameter(
                "exactly one of --mesh or --generator is required".into(),
            ))
        }
    };

    if let Some(off_path) = emit_off {
        let mesh = crate::discrete::mesh::mesh_of(&loaded.manifold)?;
        let mut file = std::io::BufWriter::new(std::fs::File::create(off_path)?);
        mesh.write_off(&mut file)?;
    }

    let mut report = Report::new("mesh-eval");
    if let Some(p) = mesh_path {
        report.input("mesh", p.display());
    }
    if let Some(g) = generator {
        report.input("generator", g);
    }
    report.input("source", source_selector);
    report.input("seed", seed);
    report.input(
        "distances",
        match backend {
            DistanceBackend::Graph => "graph",
            DistanceBackend::Oracle => "oracle",
        },
    );

    let oracle = match backend {
        DistanceBackend::Graph => None,
        DistanceBackend::Oracle => Some(loaded.oracle_space.as_ref().ok_or_else(|| {
            Error::MissingPoints(format!(
                "oracle distances need a generated manifold, not {}",
                loaded.manifold.label()
            ))
        })?),
    };

    let sources = parse_sources(source_selector, &loaded, seed)?;
    let m = &loaded.manifold;
    let provenance = match backend {
        DistanceBackend::Graph => Provenance::Graph,
        DistanceBackend::Oracle => Provenance::Oracle,
    };
    let sweep = verify::sweep_sources(m, oracle, &sources)?;
    let v = m.total_weight();
    // the swept max distance is the exact diameter only when all sources ran
    let exhaustive = sources.len() == m.vertex_count();
    let d = if exhaustive {
        Quantity { value: sweep.max_distance, provenance }
    } else {
        Quantity { value: sweep.max_distance, provenance: Provenance::Sampled }
    };

    if sources.len() <= 64 {
        for &s in &sources {
            let field = match oracle {
                Some(space) => m.distance_oracle_field(space, s)?,
                None => m.distance_field(s)?,
            };
            report.push(ResultRow::new(
                format!("f(vertex {s})"),
                m.functional(&field),
                provenance.label(),
            ));
        }
    }
    report.push(ResultRow::new(
        format!("min f (vertex {})", sweep.min_source),
        sweep.min_f,
        provenance.label(),
    ));
    report.push(ResultRow::new(
        format!("max f (vertex {})", sweep.max_source),
        sweep.max_f,
        provenance.label(),
    ));
    report.push(ResultRow::new("diameter", d.value, d.provenance.label()));
    report.push(ResultRow::new("volume", v, "exact"));
    let min_ratio = sweep.min_f / (d.value * v);
    let max_ratio = sweep.max_f / (d.value * v);
    report.push(ResultRow::new("min ratio[f/(dV)]", min_ratio, provenance.label()));
    report.push(ResultRow::new("max ratio[f/(dV)]", max_ratio, provenance.label()));

    match theorem {
        None => {}
        Some("t1_1") => {
            let spec = BoundSpec::new(Theorem::CompactRicci, m.dim_hint())?;
            let bound = check_lower_bound(
                &spec,
                Quantity { value: sweep.min_f, provenance },
                d,
                Quantity::exact(v),
            )?;
            report.push(
                ResultRow::new("min ratio vs c_compact", bound.ratio, provenance.label())
                    .with_theorem("t1_1")
                    .with_verdict(bound.verdict),
            );
        }
        Some("p2_5") => {
            let bound = check_upper_bound_sphere(
                2,
                1.0,
                Quantity { value: sweep.min_f, provenance },
            )?;
            report.push(
                ResultRow::new("min f vs sphere upper bound", bound.ratio, provenance.label())
                    .with_theorem("p2_5")
                    .with_pass(bound.satisfied && bound.equality == Some(true)),
            );
        }
        Some(other) => {
            return Err(Error::InvalidParameter(format!(
                "mesh-eval supports --theorem t1_1 or p2_5, got '{other}'"
            )))
        }
    }
    Ok(report)
}

/// `verify`: run a built-in suite.
pub fn cmd_verify(suite_token: &str, tol: &Tolerances) -> Result<Report> {
    let suite = Suite::from_token(suite_token).ok_or_else(|| {
        Error::Parse(format!(
            "unknown suite '{suite_token}' (expected all, t1_1, p2_5, t4_1, t4_2, lemma3_1, section2, bishop_gromov)"
        ))
    })?;
    let mut report = Report::new("verify");
    report.input("suite", suite_token);
    for row in verify::run_suite(suite, tol)? {
        report.push(row);
    }
    Ok(report)
}

/// `dumbbell-sweep`: returns the JSON report and the fixed-column CSV.
pub fn cmd_dumbbell_sweep(
    l_values: &[f64],
    rule_spec: &str,
    mode_spec: &str,
) -> Result<(Report, String)> {
    let rule = if rule_spec == "inverse-cube" {
        CRule::InverseCube
    } else if let Some(c) = rule_spec.strip_prefix("fixed:") {
        let c: f64 = c
            .parse()
            .map_err(|e| Error::Parse(format!("bad fixed circumference '{c}': {e}")))?;
        CRule::Fixed(c)
    } else {
        return Err(Error::Parse(format!(
            "unknown rule '{rule_spec}' (expected inverse-cube or fixed:C)"
        )));
    };
    let mode = match mode_spec {
        "asymptotic" => SweepMode::Asymptotic,
        "mesh" => SweepMode::Mesh,
        other => {
            return Err(Error::Parse(format!(
                "unknown mode '{other}' (expected asymptotic or mesh)"
            )))
        }
    };
    let records = dumbbell::sweep(l_values, rule, mode)?;
    let mut report = Report::new("dumbbell-sweep");
    report.input("L", l_values.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","));
    report.input("rule", rule_spec);
    report.input("mode", mode_spec);
    for r in &records {
        let source = match r.source {
            dumbbell::SweepSource::Asymptotic => "asymptotic",
            dumbbell::SweepSource::Mesh => "mesh",
        };
        report.push(ResultRow::new(
            format!("ratio_p[L={}]", r.neck_length),
            r.ratio_p,
            source,
        ));
        report.push(ResultRow::new(
            format!("ratio_q[L={}]", r.neck_length),
            r.ratio_q,
            source,
        ));
    }
    Ok((report, sweep_csv(&records)))
}
