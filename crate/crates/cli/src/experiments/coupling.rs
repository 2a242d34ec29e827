//! Shift-and-transport coupling of the ball intersection with the sphere
//! tessellation cell, and the shell events it relies on.

use super::{par_replicates, Ctx};
use crate::error::CliError;
use randset_core::geom::direction_grid;
use randset_core::models::{arc_occupancy, coupling_eps, sample_coupling, shell_containment};
use randset_core::ppp::coupon_bound;
use randset_core::stats::{median, proportion, quantile};

/// Sectors for the arc-occupancy event.
const ARCS: usize = 6;

pub(super) fn run(ctx: &mut Ctx) -> Result<(), CliError> {
    let n = ctx.cfg.replicates;
    let grid = direction_grid(ctx.cfg.d, ctx.cfg.grid_size, 0)?;
    ctx.for_each_lambda(|ctx, lambda| {
        let reps = par_replicates(n, |i| {
            let out = sample_coupling(lambda, &grid, ctx.stream("pair", i))?;
            let shell = shell_containment(lambda, &grid, &mut ctx.stream("shell", i).rng())?;
            let arcs = arc_occupancy(lambda, ARCS, &mut ctx.stream("arcs", i).rng())?;
            Ok((out.hausdorff_scaled, out.flagged_rays, out.rays, shell.contained, arcs.iter().all(|&c| c > 0)))
        })?;
        let h: Vec<f64> = reps.iter().map(|r| r.0).collect();
        for (i, r) in reps.iter().enumerate() {
            ctx.replicate(i, "hausdorff_scaled", r.0);
            ctx.replicate(i, "flagged_fraction", r.1 as f64 / r.2 as f64);
        }
        ctx.exact("eps", coupling_eps(lambda));
        ctx.exact("hausdorff_scaled_median", median(&h));
        ctx.exact("hausdorff_scaled_p90", quantile(&h, 0.9));
        let (flagged, rays) = reps.iter().fold((0, 0), |(f, t), r| (f + r.1, t + r.2));
        ctx.exact("flagged_fraction", flagged as f64 / rays as f64);
        ctx.estimate("shell_contained", proportion(reps.iter().filter(|r| r.3).count(), n));
        ctx.estimate("arcs_all_occupied", proportion(reps.iter().filter(|r| r.4).count(), n));
        ctx.exact("arcs_miss_bound", coupon_bound(ARCS, 1.0 / ARCS as f64, lambda)?);
        Ok(())
    })
}
