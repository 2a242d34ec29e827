//! The one-dimensional warm-up model and the counts of boundaries meeting a
//! small ball around the origin.

use crate::error::{domain, Result};
use crate::geom::{norm, Dimension};
use crate::ppp::{sample_poisson_count, sample_region_points, Region};
use crate::stats::{mean_estimate, Estimate};
use rand::Rng;

/// `U = [-1, 1] ∩ ⋂ (c + [-1, 1])` for Poisson centres of intensity `lambda`
/// on `[-1, 1]`. Returns `(inf U, sup U)`.
pub fn warmup_1d<R: Rng + ?Sized>(lambda: f64, rng: &mut R) -> Result<(f64, f64)> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return domain(format!("intensity {lambda} must be finite and nonnegative"));
    }
    let n = sample_poisson_count(2.0 * lambda, rng)?;
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    for _ in 0..n {
        let c = rng.random_range(-1.0..1.0);
        lo = lo.max(c - 1.0);
        hi = hi.min(c + 1.0);
    }
    Ok((lo, hi))
}

/// Random boundaries whose number meeting `B(eps)` is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeetingModel {
    /// Spheres `∂(C + B)` of the intersection model, centres of intensity
    /// `lambda` in the unit ball.
    Boolean,
    /// Hyperplanes `{<x, theta> = r}` with `r` of intensity `lambda` on the
    /// line.
    HyperplaneTess,
    /// Unit spheres about nuclei of intensity `lambda` in all of `R^d`.
    SphereTess,
}

/// Leading-order mean count: `S_d lambda eps`, `2 lambda eps` and
/// `2 S_d lambda eps`.
pub fn meeting_count_target(model: MeetingModel, d: Dimension, lambda: f64, eps: f64) -> f64 {
    match model {
        MeetingModel::Boolean => d.sphere_area() * lambda * eps,
        MeetingModel::HyperplaneTess => 2.0 * lambda * eps,
        MeetingModel::SphereTess => 2.0 * d.sphere_area() * lambda * eps,
    }
}

fn meeting_once<R: Rng + ?Sized>(model: MeetingModel, d: Dimension, lambda: f64, eps: f64, rng: &mut R) -> Result<usize> {
    // Sample a region twice as thick as the meeting zone and count geometrically.
    Ok(match model {
        MeetingModel::Boolean => {
            // |x - C| = 1 meets B(eps) iff |C| > 1 - eps.
            let pts = sample_region_points(d, lambda, Region::InnerShell(2.0 * eps), rng)?;
            pts.iter().filter(|c| norm(c) > 1.0 - eps).count()
        }
        MeetingModel::HyperplaneTess => {
            let n = sample_poisson_count(4.0 * lambda * eps, rng)?;
            (0..n).filter(|_| rng.random_range(-2.0 * eps..2.0 * eps).abs() < eps).count()
        }
        MeetingModel::SphereTess => {
            let pts = sample_region_points(d, lambda, Region::Annulus(2.0 * eps), rng)?;
            pts.iter().filter(|c| (norm(c) - 1.0).abs() < eps).count()
        }
    })
}

/// Monte Carlo mean number of boundaries meeting `B(eps)`.
pub fn count_meeting_origin_ball<R: Rng + ?Sized>(
    model: MeetingModel,
    d: Dimension,
    lambda: f64,
    eps: f64,
    replicates: usize,
    rng: &mut R,
) -> Result<Estimate> {
    if !(eps > 0.0 && eps < 0.5) || !(lambda >= 0.0) || replicates == 0 {
        return domain(format!("need 0 < eps < 1/2, lambda >= 0, replicates >= 1 (got {eps}, {lambda}, {replicates})"));
    }
    let counts = (0..replicates)
        .map(|_| meeting_once(model, d, lambda, eps, rng).map(|c| c as f64))
        .collect::<Result<Vec<_>>>()?;
    Ok(mean_estimate(&counts))
}
