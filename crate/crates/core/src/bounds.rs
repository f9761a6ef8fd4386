//! Explicit bound constants, the proof functions `g` and their maximizers,
//! inequality reports, and volume-comparison monotonicity checks.
//!
//! Three families of lower bounds on `f/(d·V)` are evaluated:
//! - compact, nonnegative Ricci: constant `(1 - 1/(n+1))^n / (2^{n+1}(n+1))`,
//!   realized as the maximum of `g(r) = (d/2 - r) r^n / d^n` on `[0, d/2]`;
//! - Cartan-Hadamard balls: constant `n/(n+1) · (n+1)^{-1/n}`, the maximum of
//!   `g(r) = r (1 - r^n/d^n)` on `[0, d]`, divided by `d`;
//! - complete noncompact, nonnegative Ricci balls: the maximum of
//!   `g(t) = (d - 2t) t^n / (2d - t)^n` on `[0, d/2]`, divided by `d`.
//!
//! The sphere upper bound `f <= ½ d V` (with equality exactly on the round
//! sphere) closes the family.

use crate::error::{Error, Result};
use crate::model::Quantity;
use serde::{Deserialize, Serialize};

/// Bound constant for compact manifolds with nonnegative Ricci curvature:
/// `(1 - 1/(n+1))^n · 1/(2^{n+1}(n+1))`.
pub fn c_compact(n: u32) -> f64 {
    assert!(n >= 1, "dimension must be at least 1");
    let nf = n as f64;
    (1.0 - 1.0 / (nf + 1.0)).powi(n as i32) / (2f64.powi(n as i32 + 1) * (nf + 1.0))
}

/// Bound constant for Cartan-Hadamard manifolds:
/// `n/(n+1) · (n+1)^{-1/n}`. Tends to 1 as `n` grows.
pub fn c_hadamard(n: u32) -> f64 {
    assert!(n >= 1, "dimension must be at least 1");
    let nf = n as f64;
    nf / (nf + 1.0) * (nf + 1.0).powf(-1.0 / nf)
}

/// Bound constant for complete noncompact manifolds with nonnegative Ricci:
/// `3/(2√(n²+n+1) + 2n + 1) · (n/(n + 2 + 2√(n²+n+1)))^n`.
pub fn c_noncompact(n: u32) -> f64 {
    assert!(n >= 1, "dimension must be at least 1");
    let nf = n as f64;
    let root = (nf * nf + nf + 1.0).sqrt();
    3.0 / (2.0 * root + 2.0 * nf + 1.0) * (nf / (nf + 2.0 + 2.0 * root)).powi(n as i32)
}

/// `g(r) = (d/2 - r) r^n / d^n` on `[0, d/2]`.
pub fn g_compact(r: f64, d: f64, n: u32) -> Result<f64> {
    check_g_domain(r, 0.0, d / 2.0, d)?;
    Ok((d / 2.0 - r) * (r / d).powi(n as i32))
}

/// Maximizer of [`g_compact`]: `r = n d / (2(n+1))`. The maximum value is
/// `c_compact(n) · d`.
pub fn argmax_g_compact(d: f64, n: u32) -> f64 {
    n as f64 * d / (2.0 * (n as f64 + 1.0))
}

/// `g(r) = r (1 - r^n / d^n)` on `[0, d]`.
pub fn g_hadamard(r: f64, d: f64, n: u32) -> Result<f64> {
    check_g_domain(r, 0.0, d, d)?;
    Ok(r * (1.0 - (r / d).powi(n as i32)))
}

/// Maximizer of [`g_hadamard`]: `r = d / (n+1)^{1/n}`. The maximum value is
/// `c_hadamard(n) · d`.
pub fn argmax_g_hadamard(d: f64, n: u32) -> f64 {
    d * (n as f64 + 1.0).powf(-1.0 / n as f64)
}

/// `g(t) = (d - 2t) t^n / (2d - t)^n` on `[0, d/2]`.
pub fn g_noncompact(t: f64, d: f64, n: u32) -> Result<f64> {
    check_g_domain(t, 0.0, d / 2.0, d)?;
    Ok((d - 2.0 * t) * (t / (2.0 * d - t)).powi(n as i32))
}

/// Maximizer of [`g_noncompact`]: `t = (n + 1 - √(n² + n + 1)) d`, the root
/// of `t² - 2d(n+1)t + nd² = 0` inside `[0, d/2]`. The maximum value is
/// `c_noncompact(n) · d`.
pub fn argmax_g_noncompact(d: f64, n: u32) -> f64 {
    let nf = n as f64;
    (nf + 1.0 - (nf * nf + nf + 1.0).sqrt()) * d
}

fn check_g_domain(r: f64, lo: f64, hi: f64, d: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!("diameter must be positive, got {d}")));
    }
    if !(lo..=hi).contains(&r) {
        return Err(Error::InvalidParameter(format!("argument {r} outside [{lo}, {hi}]")));
    }
    Ok(())
}

/// Which theorem-shaped inequality a report refers to. The serialized tokens
/// (`t1_1`, `p2_5`, `t4_1`, `t4_2`) are the stable interface names used by
/// the CLI and its reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    /// Compact, nonnegative Ricci: `f(p) > c(n) d V`.
    #[serde(rename = "t1_1")]
    CompactRicci,
    /// Positive Ricci upper bound: `f <= ½ d(S^n_k) V(S^n_k)`.
    #[serde(rename = "p2_5")]
    SphereUpper,
    /// Cartan-Hadamard balls: `f(p,d) > c(n) d V_p(d)`.
    #[serde(rename = "t4_1")]
    CartanHadamard,
    /// Noncompact, nonnegative Ricci balls: `f(p,d) >= c(n) d V_p(d)`.
    #[serde(rename = "t4_2")]
    NoncompactRicci,
}

impl Theorem {
    pub fn token(self) -> &'static str {
        match self {
            Theorem::CompactRicci => "t1_1",
            Theorem::SphereUpper => "p2_5",
            Theorem::CartanHadamard => "t4_1",
            Theorem::NoncompactRicci => "t4_2",
        }
    }

    pub fn from_token(s: &str) -> Option<Theorem> {
        match s {
            "t1_1" => Some(Theorem::CompactRicci),
            "p2_5" => Some(Theorem::SphereUpper),
            "t4_1" => Some(Theorem::CartanHadamard),
            "t4_2" => Some(Theorem::NoncompactRicci),
            _ => None,
        }
    }

    fn default_hypothesis(self) -> &'static str {
        match self {
            Theorem::CompactRicci => "Ric >= 0, compact (asserted, not measured)",
            Theorem::SphereUpper => "Ric >= (n-1)k > 0 (asserted, not measured)",
            Theorem::CartanHadamard => "Cartan-Hadamard (asserted, not measured)",
            Theorem::NoncompactRicci => "Ric >= 0, complete noncompact (asserted, not measured)",
        }
    }
}

/// A theorem instance: dimension, constant, and the curvature hypothesis it
/// assumes (declared per test space, never measured).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundSpec {
    pub theorem: Theorem,
    pub dim: u32,
    pub constant: f64,
    pub hypothesis_note: String,
}

impl BoundSpec {
    pub fn new(theorem: Theorem, dim: u32) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        let constant = match theorem {
            Theorem::CompactRicci => c_compact(dim),
            Theorem::SphereUpper => 0.5,
            Theorem::CartanHadamard => c_hadamard(dim),
            Theorem::NoncompactRicci => c_noncompact(dim),
        };
        // sanity invariants on the constants themselves
        if constant <= 0.0 || constant.is_nan() {
            return Err(Error::InvalidParameter("bound constant must be positive".into()));
        }
        if theorem == Theorem::CompactRicci && constant >= 0.5 {
            return Err(Error::InvalidParameter(
                "compact bound constant must stay below 1/2 (the value attained by the circle and the sphere)".into(),
            ));
        }
        if theorem == Theorem::CartanHadamard && constant >= 1.0 {
            return Err(Error::InvalidParameter(
                "ball bound constant must stay below 1 (f < d V always)".into(),
            ));
        }
        Ok(BoundSpec {
            theorem,
            dim,
            constant,
            hypothesis_note: theorem.default_hypothesis().to_string(),
        })
    }

    pub fn with_hypothesis(mut self, note: impl Into<String>) -> Self {
        self.hypothesis_note = note.into();
        self
    }
}

/// Outcome of one inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
    /// Inputs were asymptotic or sampled and the ratio sits within 5% of the
    /// threshold: too close to call.
    Inconclusive,
}

/// One inequality check: functional value, diameter, volume, constant,
/// ratio, verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub spec: BoundSpec,
    pub f_value: f64,
    pub diameter: f64,
    pub volume: f64,
    /// `f / (diameter * volume)`.
    pub ratio: f64,
    pub threshold: f64,
    pub satisfied: bool,
    pub verdict: Verdict,
    /// Set when any input is asymptotic or a sampled lower bound.
    pub asymptotic_inputs: bool,
    /// For the sphere upper bound: whether equality holds within tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<bool>,
}

/// Margin under which an asymptotic-input report refuses to claim violation.
const ASYMPTOTIC_GUARD_BAND: f64 = 0.05;

/// Check a lower bound `f > c · d · V`.
///
/// When the inputs carry asymptotic or sampled provenance the verdict
/// refuses to claim `Violated` within a 5% band of the threshold.
pub fn check_lower_bound(
    spec: &BoundSpec,
    f_value: Quantity,
    diameter: Quantity,
    volume: Quantity,
) -> Result<BoundReport> {
    if spec.theorem == Theorem::SphereUpper {
        return Err(Error::InvalidParameter(
            "use check_upper_bound_sphere for the sphere upper bound".into(),
        ));
    }
    for (name, q) in [("f", f_value), ("diameter", diameter), ("volume", volume)] {
        if !(q.value > 0.0 && q.value.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "{name} must be positive and finite, got {}",
                q.value
            )));
        }
    }
    let ratio = f_value.value / (diameter.value * volume.value);
    let asymptotic_inputs = f_value.provenance.is_asymptotic_input()
        || diameter.provenance.is_asymptotic_input()
        || volume.provenance.is_asymptotic_input();
    let satisfied = ratio > spec.constant;
    let verdict = if satisfied {
        Verdict::Satisfied
    } else if asymptotic_inputs && ratio >= spec.constant * (1.0 - ASYMPTOTIC_GUARD_BAND) {
        Verdict::Inconclusive
    } else {
        Verdict::Violated
    };
    Ok(BoundReport {
        spec: spec.clone(),
        f_value: f_value.value,
        diameter: diameter.value,
        volume: volume.value,
        ratio,
        threshold: spec.constant,
        satisfied,
        verdict,
        asymptotic_inputs,
        equality: None,
    })
}

/// Relative tolerance for declaring sphere-upper-bound equality on exact
/// inputs.
pub const SPHERE_EQUALITY_TOL_EXACT: f64 = 1e-9;
/// Relative tolerance for declaring sphere-upper-bound equality on mesh
/// inputs.
pub const SPHERE_EQUALITY_TOL_MESH: f64 = 0.01;

/// Check the sphere upper bound `f <= ½ d(S^n_k) V(S^n_k)` and flag equality.
///
/// The equality tolerance follows the provenance of `f_value`: 1e-9 relative
/// for exact/quadrature inputs, 1% for graph/oracle (mesh) inputs.
pub fn check_upper_bound_sphere(n: u32, k: f64, f_value: Quantity) -> Result<BoundReport> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParameter(format!("curvature must be positive, got {k}")));
    }
    let spec = BoundSpec::new(Theorem::SphereUpper, n)?;
    let sphere = crate::model::ModelSpace::sphere(n, k)?;
    let d = sphere.diameter().value;
    let v = sphere.volume().value;
    let bound = 0.5 * d * v;
    let tol = match f_value.provenance {
        crate::model::Provenance::Graph | crate::model::Provenance::Oracle => {
            SPHERE_EQUALITY_TOL_MESH
        }
        _ => SPHERE_EQUALITY_TOL_EXACT,
    };
    let ratio = f_value.value / (d * v);
    let satisfied = f_value.value <= bound * (1.0 + tol);
    let equality = ((f_value.value - bound) / bound).abs() <= tol;
    let verdict = if satisfied { Verdict::Satisfied } else { Verdict::Violated };
    Ok(BoundReport {
        spec,
        f_value: f_value.value,
        diameter: d,
        volume: v,
        ratio,
        threshold: 0.5,
        satisfied,
        verdict,
        asymptotic_inputs: f_value.provenance.is_asymptotic_input(),
        equality: Some(equality),
    })
}

/// Direction of the expected volume-ratio monotonicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneDirection {
    /// Nonnegative Ricci: `V_p(r)/r^n` nonincreasing in `r`.
    NonIncreasing,
    /// Cartan-Hadamard: `V_p(r)/r^n` nondecreasing in `r`.
    NonDecreasing,
}

/// Tolerance band absorbing discretization steps in profile monotonicity.
pub const MONOTONICITY_BAND: f64 = 0.02;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub direction: MonotoneDirection,
    pub passes: bool,
    /// Largest relative breach of the monotone direction (0 when perfectly
    /// monotone).
    pub worst_violation: f64,
    /// Radii of the worst-violating adjacent pair.
    pub worst_pair: Option<(f64, f64)>,
    pub checked_points: usize,
}

/// Check that `r -> V_p(r)/r^n` is monotone in the stated direction over a
/// ball-volume profile, within a relative tolerance band.
///
/// Radii above `reference_radius` (when given) are ignored; the zero radius
/// is always skipped. `min_step` coarsens the comparison grid: consecutive
/// comparison radii differ by at least that much, so step-function noise
/// below the mesh resolution is not mistaken for a monotonicity violation.
/// Pass `0.0` for closed-form profiles.
pub fn volume_comparison_check(
    profile: &crate::discrete::BallVolumeProfile,
    n: u32,
    direction: MonotoneDirection,
    reference_radius: Option<f64>,
    band: f64,
    min_step: f64,
) -> Result<MonotonicityReport> {
    let mut ratios: Vec<(f64, f64)> = Vec::new();
    let mut last_kept = f64::NEG_INFINITY;
    for (&r, &v) in profile.radii.iter().zip(&profile.volumes) {
        if r <= 0.0 {
            continue;
        }
        if let Some(cap) = reference_radius {
            if r > cap {
                break;
            }
        }
        if r - last_kept >= min_step {
            ratios.push((r, v / r.powi(n as i32)));
            last_kept = r;
        }
    }
    if ratios.len() < 2 {
        return Err(Error::InvalidParameter(
            "profile has fewer than two usable radii".into(),
        ));
    }
    let mut worst = 0.0f64;
    let mut worst_pair = None;
    for w in ratios.windows(2) {
        let ((r0, q0), (r1, q1)) = (w[0], w[1]);
        let breach = match direction {
            MonotoneDirection::NonIncreasing => q1 / q0 - 1.0,
            MonotoneDirection::NonDecreasing => 1.0 - q1 / q0,
        };
        if breach > worst {
            worst = breach;
            worst_pair = Some((r0, r1));
        }
    }
    Ok(MonotonicityReport {
        direction,
        passes: worst <= band,
        worst_violation: worst,
        worst_pair,
        checked_points: ratios.len(),
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GrowthReport {
    pub passes: bool,
    /// Smallest ratio of consecutive `f(p,r)/r` values.
    pub min_factor: f64,
}

/// Check that `f(p,r)/r` is strictly increasing along a family of radii
/// (the unbounded-growth behavior on noncompact nonnegative-Ricci spaces).
/// Requires at least 3 radii.
pub fn growth_check(samples: &[(f64, f64)]) -> Result<GrowthReport> {
    if samples.len() < 3 {
        return Err(Error::InvalidParameter("growth check needs at least 3 radii".into()));
    }
    if samples.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(Error::InvalidParameter("radii must be strictly increasing".into()));
    }
    let mut min_factor = f64::INFINITY;
    let mut passes = true;
    for w in samples.windows(2) {
        let factor = w[1].1 / w[0].1;
        min_factor = min_factor.min(factor);
        if w[1].1 <= w[0].1 {
            passes = false;
        }
    }
    Ok(GrowthReport { passes, min_factor })
}
