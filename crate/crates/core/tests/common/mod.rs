//! Shared helpers for the integration suites: seeded random points on model
//! spaces and small Monte Carlo oracles.

use meandist::model::{DumbbellPoint, ModelSpace, PointRef};
use rand::rngs::StdRng;
use rand::Rng;
use std::f64::consts::PI;

/// Standard normal via Box-Muller (keeps the dependency surface to `rand`).
pub fn gaussian(rng: &mut StdRng) -> f64 {
    let u1: f64 = rng.random_range(1e-300..1.0);
    let u2: f64 = rng.random_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

pub fn unit_vector(rng: &mut StdRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// A uniform-ish random point on the space (exact distribution does not
/// matter for inequality testing; coverage of all regions does).
pub fn random_point(rng: &mut StdRng, space: &ModelSpace) -> PointRef {
    match *space {
        ModelSpace::Circle { length } => PointRef::Circle { arc: rng.random_range(0.0..length) },
        ModelSpace::Sphere { dim, .. } => {
            PointRef::Sphere { coords: unit_vector(rng, dim as usize + 1) }
        }
        ModelSpace::FlatTorus { side_a, side_b } => PointRef::Torus {
            x: rng.random_range(0.0..side_a),
            y: rng.random_range(0.0..side_b),
        },
        ModelSpace::EuclideanBall { dim, radius } | ModelSpace::HyperbolicBall { dim, radius } => {
            PointRef::Ball {
                radial: rng.random_range(0.0..=radius),
                direction: unit_vector(rng, dim as usize),
            }
        }
        ModelSpace::Dumbbell { eps, neck_length } => {
            let rho = meandist::model::dumbbell_neck_radius(eps);
            let cut = meandist::model::dumbbell_cut_polar_angle(eps);
            let azimuth = rng.random_range(0.0..2.0 * PI);
            let region = rng.random_range(0..3);
            PointRef::Dumbbell(match region {
                0 => DumbbellPoint::SpherePart { polar: rng.random_range(0.0..=cut), azimuth },
                1 => DumbbellPoint::CylinderPart {
                    depth: rng.random_range(0.0..=neck_length),
                    azimuth,
                },
                _ => DumbbellPoint::DiskPart { radial: rng.random_range(0.0..=rho), azimuth },
            })
        }
    }
}
