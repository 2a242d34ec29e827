//! The one-dimensional warm-up, boundary meeting counts and the planar cone
//! model.

use super::{par_replicates, Ctx};
use crate::error::CliError;
use randset_core::analytics::{cone_lune_fraction, expected_volume_quadrature, f_generic_mc, radius_moment_volume};
use randset_core::models::{count_meeting_origin_ball, meeting_count_target, sample_intersection, warmup_1d, MeetingModel, ShapeKind};
use randset_core::stats::{correlation, mean_estimate, variance_estimate};
use randset_core::{Direction, RadialMeasure};
use std::f64::consts::PI;

pub(super) fn warmup(ctx: &mut Ctx) -> Result<(), CliError> {
    let n = ctx.cfg.replicates;
    ctx.for_each_lambda(|ctx, lambda| {
        let ends = par_replicates(n, |i| warmup_1d(lambda, &mut ctx.stream("interval", i).rng()))?;
        let len: Vec<f64> = ends.iter().map(|(a, b)| lambda * (b - a)).collect();
        let left: Vec<f64> = ends.iter().map(|(a, _)| -lambda * a).collect();
        let right: Vec<f64> = ends.iter().map(|(_, b)| lambda * b).collect();
        ctx.estimate("scaled_length_mean", mean_estimate(&len));
        ctx.exact("scaled_length_mean_target", 2.0);
        ctx.estimate("scaled_length_variance", variance_estimate(&len));
        ctx.exact("scaled_length_variance_target", 2.0);
        ctx.exact("endpoint_correlation", correlation(&left, &right));
        Ok(())
    })
}

pub(super) fn meeting_counts(ctx: &mut Ctx) -> Result<(), CliError> {
    let (d, n, eps) = (ctx.cfg.d, ctx.cfg.replicates, ctx.cfg.eps);
    ctx.for_each_lambda(|ctx, lambda| {
        let models = [
            ("boolean", MeetingModel::Boolean),
            ("hyperplane", MeetingModel::HyperplaneTess),
            ("sphere", MeetingModel::SphereTess),
        ];
        for (name, model) in models {
            let counts = par_replicates(n, |i| {
                let mut rng = ctx.stream(name, i).rng();
                Ok(count_meeting_origin_ball(model, d, lambda, eps, 1, &mut rng)?.value)
            })?;
            ctx.estimate(format!("meeting_{name}"), mean_estimate(&counts));
            ctx.exact(format!("meeting_{name}_target"), meeting_count_target(model, d, lambda, eps));
        }
        Ok(())
    })
}

/// Offsets at which `F(r)` is estimated for the cone.
const CONE_OFFSETS: [f64; 3] = [0.05, 0.1, 0.2];

pub(super) fn cone(ctx: &mut Ctx) -> Result<(), CliError> {
    let d = ctx.cfg.d;
    let (n, samples) = (ctx.cfg.replicates, ctx.cfg.samples);
    let betas = ctx.cfg.beta_grid.clone();
    let mu = RadialMeasure::uniform_ball(d);
    let e1 = Direction::axis(d, 0);
    ctx.for_each_lambda(|ctx, lambda| {
        for &beta in &betas {
            let tag = format!("b{beta:.4}");
            // The exact form holds up to r = sin(beta) for acute beta.
            let r_max = if beta <= PI / 2.0 { beta.sin() } else { 1.0 };
            let k = cone_lune_fraction(beta, r_max)? / (r_max * r_max);
            let shape = ShapeKind::Cone { beta };
            for (j, &r) in CONE_OFFSETS.iter().enumerate() {
                let r = r.min(r_max);
                let mut rng = ctx.stream(&format!("{tag}/f"), j as u64).rng();
                let f = f_generic_mc(shape, &mu, d, r, samples, &mut rng)?;
                ctx.estimate(format!("f_over_r_{tag}_r{r:.4}"), f.scaled(1.0 / r));
                ctx.estimate(format!("f_over_r2_{tag}_r{r:.4}"), f.scaled(1.0 / (r * r)));
            }
            ctx.exact(format!("f_over_r2_exact_{tag}"), k);
            let radii = par_replicates(n, |i| {
                let mut rng = ctx.stream(&format!("{tag}/process"), i).rng();
                Ok(sample_intersection(d, lambda, &mu, shape, &mut rng)?.radius(e1.as_slice()))
            })?;
            let v = radius_moment_volume(d, &radii)?;
            ctx.estimate(format!("scaled_volume_lambda1_{tag}"), v.scaled(lambda));
            ctx.estimate(format!("scaled_volume_lambda2_{tag}"), v.scaled(lambda * lambda));
            let q = expected_volume_quadrature(d, lambda, |r| cone_lune_fraction(beta, r.min(r_max)).unwrap_or(f64::NAN))?;
            ctx.exact(format!("scaled_volume_lambda1_quadrature_{tag}"), lambda * q);
            ctx.exact(format!("scaled_volume_lambda1_limit_{tag}"), 1.0 / k);
        }
        Ok(())
    })
}
