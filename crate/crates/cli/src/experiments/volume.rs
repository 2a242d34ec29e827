//! `lambda^d E|I|` by quadrature, radius moments and hit-or-miss, against
//! the limit constant; plus the uniform half-space model in the plane.

use super::{par_replicates, Ctx};
use crate::error::CliError;
use randset_core::analytics::{
    asymptotic_volume_constant, expected_volume_quadrature, hit_or_miss_volume, radius_moment_volume, RadiusLaw,
};
use randset_core::geom::direction_grid;
use randset_core::models::{sample_intersection, ShapeKind};
use randset_core::stats::mean_estimate;
use randset_core::{Direction, RadialMeasure};
use std::f64::consts::PI;

/// Process-simulated sets per lambda for the estimators that need whole sets.
const MAX_SETS: usize = 500;
/// Process replicates for the uniform half-space line.
const MAX_EXAMPLE_REPS: usize = 10_000;

pub(super) fn run(ctx: &mut Ctx) -> Result<(), CliError> {
    let d = ctx.cfg.d;
    let k = d.get() as i32;
    let n = ctx.cfg.replicates;
    let samples = ctx.cfg.samples;
    let e1 = Direction::axis(d, 0);
    let probe = direction_grid(d, ctx.cfg.grid_size, 0)?;
    let mu = RadialMeasure::uniform_ball(d);
    ctx.for_each_lambda(|ctx, lambda| {
        let scale = lambda.powi(k);
        let law = RadiusLaw::ball(d, lambda)?;
        ctx.exact("limit_constant", asymptotic_volume_constant(d));
        let q = expected_volume_quadrature(d, lambda, |r| law.f(r))?;
        ctx.exact("scaled_volume_quadrature", scale * q);

        let radii = par_replicates(n, |i| Ok(law.sample(&mut ctx.stream("exact", i).rng())))?;
        ctx.estimate("scaled_volume_radius_moment", radius_moment_volume(d, &radii)?.scaled(scale));

        let sets = n.min(MAX_SETS);
        let per_set = par_replicates(sets, |i| {
            let mut rng = ctx.stream("process", i).rng();
            let m = sample_intersection(d, lambda, &mu, ShapeKind::Ball, &mut rng)?;
            let r_e1 = m.radius(e1.as_slice());
            // The cell is convex and contains the origin; twice the largest
            // probed radius bounds it comfortably.
            let bound = (2.0 * probe.iter().map(|t| m.radius(t.as_slice())).fold(0.0, f64::max)).min(1.0);
            let v = hit_or_miss_volume(d, bound, samples, |x| m.contains(x), &mut rng)?;
            Ok((r_e1, v.value))
        })?;
        let r_e1: Vec<f64> = per_set.iter().map(|p| p.0).collect();
        let hom: Vec<f64> = per_set.iter().map(|p| p.1).collect();
        ctx.estimate("scaled_volume_radius_moment_process", radius_moment_volume(d, &r_e1)?.scaled(scale));
        ctx.estimate("scaled_volume_hit_or_miss", mean_estimate(&hom).scaled(scale));

        if d.get() == 2 {
            // Half-spaces {<x, Theta> <= P} with P uniform on the disk:
            // F(r) = r^2 / 4, so lambda E|I| -> 4.
            let q = expected_volume_quadrature(d, lambda, |r| r * r / 4.0)?;
            ctx.exact("uniform_halfspace_scaled_volume_quadrature", lambda * q);
            let reps = n.min(MAX_EXAMPLE_REPS);
            let radii = par_replicates(reps, |i| {
                let mut rng = ctx.stream("uniform-halfspace", i).rng();
                Ok(sample_intersection(d, lambda, &mu, ShapeKind::HalfSpace, &mut rng)?.radius(e1.as_slice()))
            })?;
            ctx.estimate("uniform_halfspace_scaled_volume_mc", radius_moment_volume(d, &radii)?.scaled(lambda));
            ctx.exact("uniform_halfspace_limit", 4.0);
            ctx.exact("uniform_halfspace_stated_limit", 4.0 / PI);
        }
        Ok(())
    })
}
