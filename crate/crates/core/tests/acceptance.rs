//! Acceptance suite: every exit criterion as one test with a pass/fail line
//! and a runtime budget. Run with `-- --nocapture` to see the lines.

use meandist::bounds::{c_compact, c_hadamard, c_noncompact};
use meandist::cli;
use meandist::discrete::generators;
use meandist::dumbbell::{sweep, CRule, SweepMode};
use meandist::model::ModelSpace;
use meandist::verify::{self, Suite, Tolerances};
use std::time::{Duration, Instant};

struct Criterion {
    id: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn start(id: &'static str, budget_secs: u64) -> Self {
        Criterion { id, budget: Duration::from_secs(budget_secs), start: Instant::now() }
    }

    fn conclude(self, pass: bool, detail: &str) {
        let elapsed = self.start.elapsed();
        let verdict = if pass && elapsed <= self.budget { "PASS" } else { "FAIL" };
        println!(
            "acceptance {}: {verdict} [{:.2?} of {:.0?}] {detail}",
            self.id, elapsed, self.budget
        );
        assert!(pass, "acceptance {} failed: {detail}", self.id);
        assert!(
            elapsed <= self.budget,
            "acceptance {} exceeded its runtime budget ({elapsed:.2?} > {:?})",
            self.id,
            self.budget
        );
    }
}

fn report_value(report: &meandist::report::Report, quantity: &str) -> f64 {
    report
        .results
        .iter()
        .find(|r| r.quantity == quantity)
        .unwrap_or_else(|| panic!("report lacks quantity '{quantity}'"))
        .value
}

#[test]
fn acceptance_01_torus_exact_value() {
    let c = Criterion::start("1 (torus exact value)", 1);
    let report = cli::cmd_model_eval("torus:1,1", None).unwrap();
    let f = report_value(&report, "f");
    let closed_form = (2f64.sqrt() + (1.0 + 2f64.sqrt()).ln()) / 6.0;
    let pass = (f - closed_form).abs() < 1e-12
        && (f - 0.3826).abs() < 5e-5
        && f > 2f64.sqrt() / 4.0;
    c.conclude(pass, &format!("f = {f:.6}, closed form {closed_form:.6}, vs sqrt(2)/4 = 0.353553"));
}

#[test]
fn acceptance_02_torus_discrete_convergence() {
    let c = Criterion::start("2 (torus discrete convergence)", 30);
    let exact = (2f64.sqrt() + (1.0 + 2f64.sqrt()).ln()) / 6.0;
    let space = ModelSpace::flat_torus(1.0, 1.0).unwrap();
    let mut errors = Vec::new();
    for n in [50usize, 100, 200] {
        let m = generators::torus_grid(n, 1.0, 1.0).unwrap();
        let field = m.distance_oracle_field(&space, 0).unwrap();
        errors.push((m.functional(&field) - exact).abs());
    }
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let final_rel = errors[2] / exact;
    c.conclude(
        decreasing && final_rel < 0.01,
        &format!("errors {errors:?}, final relative {final_rel:.2e}"),
    );
}

#[test]
fn acceptance_03_sphere_equality() {
    let c = Criterion::start("3 (sphere equality)", 60);
    let mut detail = String::new();
    let mut pass = true;
    for &(n, k) in &[(1u32, 1.0f64), (2, 1.0), (2, 4.0), (3, 1.0)] {
        let s = ModelSpace::sphere(n, k).unwrap();
        let f = s.mean_distance_exact(&s.base_point()).unwrap().value;
        let ratio = f / (s.diameter().value * s.volume().value);
        pass &= (ratio - 0.5).abs() < 1e-15;
        detail.push_str(&format!("S^{n}(k={k}) ratio {ratio}; "));
    }
    let m = generators::icosphere(4).unwrap();
    let space = ModelSpace::sphere(2, 1.0).unwrap();
    let field = m.distance_oracle_field(&space, 0).unwrap();
    let mesh_ratio = m.functional(&field) / (field.max() * m.total_weight());
    pass &= (mesh_ratio - 0.5).abs() < 0.005;
    detail.push_str(&format!("icosphere-4 oracle ratio {mesh_ratio:.6}"));
    c.conclude(pass, &detail);
}

#[test]
fn acceptance_04_circle_cycle() {
    let c = Criterion::start("4 (circle cycle graph)", 5);
    let m = generators::cycle(1000, 1.0).unwrap();
    let f = m.f_of(0).unwrap();
    let rel = (f - 0.25).abs() / 0.25;
    c.conclude(rel < 0.001, &format!("cycle N=1000: f = {f}, relative error {rel:.2e}"));
}

/// The corpus rows of the compact-Ricci criterion with their margins over
/// the bound constant (ratio / c_compact(n)).
fn compact_ricci_margins() -> Vec<(String, f64)> {
    let mut out = Vec::new();
    let spaces = [
        ModelSpace::circle(1.0).unwrap(),
        ModelSpace::sphere(1, 1.0).unwrap(),
        ModelSpace::sphere(2, 1.0).unwrap(),
        ModelSpace::sphere(3, 1.0).unwrap(),
        ModelSpace::flat_torus(1.0, 1.0).unwrap(),
    ];
    for s in &spaces {
        let f = s.mean_distance_exact(&s.base_point()).unwrap().value;
        let ratio = f / (s.diameter().value * s.volume().value);
        out.push((s.describe(), ratio / c_compact(s.dim())));
    }
    let discrete: Vec<(meandist::discrete::DiscreteManifold, Option<ModelSpace>)> = vec![
        (generators::cycle(200, 1.0).unwrap(), None),
        (generators::icosphere(2).unwrap(), None),
        (
            generators::torus_grid(40, 1.0, 1.0).unwrap(),
            Some(ModelSpace::flat_torus(1.0, 1.0).unwrap()),
        ),
    ];
    for (m, oracle) in &discrete {
        let sources: Vec<usize> = (0..m.vertex_count()).collect();
        let sweep = verify::sweep_sources(m, oracle.as_ref(), &sources).unwrap();
        let ratio = sweep.min_f / (sweep.max_distance * m.total_weight());
        out.push((m.label().to_string(), ratio / c_compact(m.dim_hint())));
    }
    out
}

#[test]
fn acceptance_05a_compact_ricci_bounds_and_constants() {
    let c = Criterion::start("5a (compact-Ricci bounds hold, constants exact)", 60);
    let rows = verify::run_suite(Suite::CompactRicci, &Tolerances::default()).unwrap();
    let bounds_ok = rows.iter().all(|r| r.passed());
    let constants_ok = (c_compact(1) - 1.0 / 16.0).abs() < 1e-12
        && (c_compact(2) - 1.0 / 54.0).abs() < 1e-12;
    let margins = compact_ricci_margins();
    let all_above = margins.iter().all(|(_, m)| *m > 1.0);
    c.conclude(
        bounds_ok && constants_ok && all_above,
        &format!(
            "{} suite rows pass; c(1)=1/16, c(2)=1/54 to 1e-12; margins {:?}",
            rows.len(),
            margins.iter().map(|(l, m)| format!("{l}: {m:.1}x")).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn acceptance_05b_compact_ricci_margin_factor() {
    // As stated, every corpus space must clear the constant by a factor of
    // ten. The circle (and S^1) clears it by exactly eight: f/(dV) = 1/2 and
    // c_compact(1) = 1/16, so 10x is arithmetically unattainable there. The
    // check is kept as stated rather than weakened; see the margins printed
    // by 5a for the full picture.
    let c = Criterion::start("5b (compact-Ricci margin >= 10x per space)", 60);
    let margins = compact_ricci_margins();
    let worst = margins
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .cloned()
        .unwrap();
    let pass = margins.iter().all(|(_, m)| *m >= 10.0);
    c.conclude(
        pass,
        &format!(
            "worst margin {:.3}x on {} (n=1 spaces have exact margin 8 = (1/2)/(1/16))",
            worst.1, worst.0
        ),
    );
}

#[test]
fn acceptance_06_g_optimizer_consistency() {
    let c = Criterion::start("6 (g-optimizer consistency)", 5);
    let rows = verify::g_consistency_rows(10).unwrap();
    let pass = rows.iter().all(|r| r.passed());
    c.conclude(pass, &format!("{} grid-search checks across n = 1..10", rows.len()));
}

#[test]
fn acceptance_07_cartan_hadamard_at_desk_scale() {
    let c = Criterion::start("7 (Cartan-Hadamard balls)", 5);
    let mut pass = true;
    let mut detail = String::new();
    for n in 1..=6u32 {
        let ball = ModelSpace::euclidean_ball(n, 1.0).unwrap();
        let ratio = ball.ball_mean_distance().unwrap().value / (1.0 * ball.volume().value);
        let expect = n as f64 / (n as f64 + 1.0);
        pass &= (ratio - expect).abs() < 1e-12 && ratio > c_hadamard(n);
    }
    detail.push_str("euclidean n=1..6 ratios = n/(n+1) > c_hadamard(n); ");
    for &d in &[0.5f64, 1.0, 2.0] {
        let ball = ModelSpace::hyperbolic_ball(2, d).unwrap();
        let ratio = ball.ball_mean_distance().unwrap().value / (d * ball.volume().value);
        pass &= ratio > c_hadamard(2);
        detail.push_str(&format!("hyperbolic d={d}: {ratio:.5}; "));
    }
    detail.push_str(&format!("c_hadamard(2) = {:.5}", c_hadamard(2)));
    c.conclude(pass, &detail);
}

#[test]
fn acceptance_08_noncompact_constant() {
    let c = Criterion::start("8 (noncompact constant and bound)", 5);
    // independent algebraic simplifications of the proof formula
    let c1 = c_noncompact(1);
    let c2 = c_noncompact(2);
    let alg1 = 7.0 - 4.0 * 3f64.sqrt();
    let alg2 = (14.0 * 7f64.sqrt() - 37.0) / 3.0;
    let mut pass = (c1 - alg1).abs() < 1e-9 && (c2 - alg2).abs() < 1e-9;
    // and the spec's printed decimals at their display precision
    pass &= (c1 - 0.071797).abs() < 1e-5 && (c2 - 0.013507).abs() < 1e-5;
    for n in 1..=6u32 {
        let ball = ModelSpace::euclidean_ball(n, 1.0).unwrap();
        let ratio = ball.ball_mean_distance().unwrap().value / ball.volume().value;
        pass &= ratio > c_noncompact(n) && ratio >= 2.0 * c_noncompact(n);
    }
    c.conclude(
        pass,
        &format!("c(1) = {c1:.9} (= 7-4sqrt3), c(2) = {c2:.9} (= (14sqrt7-37)/3); balls clear the bound"),
    );
}

#[test]
fn acceptance_09_dumbbell_sweep() {
    let c = Criterion::start("9 (dumbbell sweep)", 300);
    let rows = sweep(
        &[5.0, 10.0, 20.0, 40.0, 80.0],
        CRule::InverseCube,
        SweepMode::Asymptotic,
    )
    .unwrap();
    let p_decreasing = rows.windows(2).all(|w| w[1].ratio_p < w[0].ratio_p);
    let q_increasing = rows.windows(2).all(|w| w[1].ratio_q > w[0].ratio_q);
    let last = rows.last().unwrap();
    let mut pass = p_decreasing && q_increasing && last.ratio_p < 0.05 && last.ratio_q > 0.9;

    // mesh row at L = 10 agrees with the asymptotic ratio within 10%
    let mesh_rows = sweep(&[10.0], CRule::InverseCube, SweepMode::Mesh).unwrap();
    let mesh_p = mesh_rows[0].ratio_p;
    let asym_p = rows[1].ratio_p;
    let rel = ((mesh_p - asym_p) / asym_p).abs();
    pass &= mesh_rows[0].source == meandist::dumbbell::SweepSource::Mesh && rel < 0.10;
    c.conclude(
        pass,
        &format!(
            "ratio_p {:.4} -> {:.4} (final < 0.05), ratio_q final {:.4} (> 0.9); mesh L=10 {mesh_p:.4} vs asymptotic {asym_p:.4} ({:.1}%)",
            rows[0].ratio_p, last.ratio_p, last.ratio_q, rel * 100.0
        ),
    );
}

#[test]
fn acceptance_10_property_suites() {
    let c = Criterion::start("10 (triangle/Lipschitz/max-f/eccentricity suites)", 120);
    let tol = Tolerances::default();
    let mut rows = verify::run_suite(Suite::TriangleProperties, &tol).unwrap();
    rows.extend(verify::run_suite(Suite::HalfDiameterEccentricity, &tol).unwrap());
    let pass = rows.iter().all(|r| r.passed());
    c.conclude(pass, &format!("{} all-pairs property rows at slack 1e-9", rows.len()));
}

#[test]
fn acceptance_11_volume_comparison_monitor() {
    let c = Criterion::start("11 (volume-comparison monitor)", 30);
    let rows = verify::run_suite(Suite::VolumeComparison, &Tolerances::default()).unwrap();
    let pass = rows.iter().all(|r| r.passed());
    c.conclude(
        pass,
        &format!(
            "{} profiles: icosphere nonincreasing, hyperbolic nondecreasing, euclidean constant",
            rows.len()
        ),
    );
}

#[test]
fn acceptance_12_growth_of_f_over_r() {
    let c = Criterion::start("12 (growth of f(p,r)/r)", 1);
    let samples: Vec<(f64, f64)> = [1.0f64, 2.0, 4.0, 8.0]
        .iter()
        .map(|&r| {
            let ball = ModelSpace::euclidean_ball(2, r).unwrap();
            (r, ball.ball_mean_distance().unwrap().value / r)
        })
        .collect();
    let mut pass = true;
    for w in samples.windows(2) {
        let factor = w[1].1 / w[0].1;
        pass &= (factor - 4.0).abs() < 1e-12;
    }
    c.conclude(pass, "f(p,r)/r quadruples per radius doubling for n=2 over r in {1,2,4,8}");
}
