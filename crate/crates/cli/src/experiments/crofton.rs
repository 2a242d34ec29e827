//! Zero cell of the Poisson hyperplane tessellation and segment crossings.
//! The lambda column carries the hyperplane rate.

use super::{par_replicates, Ctx};
use crate::error::CliError;
use randset_core::analytics::goudsmit_constants;
use randset_core::models::{crofton_cell_with_probe, segment_crossings, vertex_count_2d, Normalization};
use randset_core::geom::direction_grid;
use randset_core::stats::{mean, mean_estimate};
use randset_core::{Error, Estimate};
use std::f64::consts::PI;

/// Fresh processes tried per replicate when a cell is not certified bounded.
const MAX_RESAMPLES: u64 = 10;

fn normalization(rate: f64) -> Normalization {
    if rate == 2.0 {
        Normalization::DiameterRate
    } else {
        Normalization::Custom(rate)
    }
}

pub(super) fn run(ctx: &mut Ctx) -> Result<(), CliError> {
    let d = ctx.cfg.d;
    let k = d.get() as i32;
    let n = ctx.cfg.replicates;
    let (window, length) = (ctx.cfg.window, ctx.cfg.length);
    let probe = if d.get() >= 3 { Some(direction_grid(d, ctx.cfg.grid_size.max(4000), 0)?) } else { None };
    let consts = goudsmit_constants(d)?;
    ctx.for_each_lambda(|ctx, rate| {
        let norm = normalization(rate);
        let cells = par_replicates(n, |i| {
            for attempt in 0..MAX_RESAMPLES {
                let mut rng = ctx.stream(&format!("cell/{attempt}"), i).rng();
                match crofton_cell_with_probe(d, norm, window, probe.as_ref(), &mut rng) {
                    Ok(c) => return Ok((c.volume(), attempt)),
                    Err(Error::UnboundedCell { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::Numerical(format!("zero cell unbounded after {MAX_RESAMPLES} resamples")))
        })?;
        let v: Vec<f64> = cells.iter().map(|c| c.0).collect();
        let resamples: u64 = cells.iter().map(|c| c.1).sum();
        // Volumes scale as rate^{-d} relative to the rate-2 constants.
        let scale = (2.0 / rate).powi(k);
        let ev = mean_estimate(&v);
        ctx.estimate("zero_cell_mean", ev);
        ctx.exact("zero_cell_mean_target", consts.zero_cell_mean * scale);
        // The zero cell is the volume-biased typical cell, so E V0 * E(1/V0)
        // equals E V^2 / (E V)^2 of the typical cell.
        let inv: Vec<f64> = v.iter().map(|x| 1.0 / x).collect();
        let einv = mean_estimate(&inv);
        ctx.estimate("moment_ratio_inverse_mean", product_estimate(ev, einv, &v, &inv));
        // In the plane 1/E V is the vertex intensity, which has light tails;
        // 1/V0 does not (its variance diverges logarithmically).
        let inv_typical = if d.get() == 2 {
            let area = PI * window * window;
            let counts = par_replicates(n, |i| vertex_count_2d(norm, window, &mut ctx.stream("vertices", i).rng()))?;
            let dens: Vec<f64> = counts.into_iter().map(|c| c as f64 / area).collect();
            let e = mean_estimate(&dens);
            ctx.estimate("vertex_intensity", e);
            e
        } else {
            einv
        };
        let ratio = ev.value * inv_typical.value;
        let ratio_se = ratio * ((ev.std_err / ev.value).powi(2) + (inv_typical.std_err / inv_typical.value).powi(2)).sqrt();
        ctx.estimate("moment_ratio", Estimate { value: ratio, std_err: ratio_se, n });
        ctx.exact("moment_ratio_target", consts.moment_ratio);
        let m = inv_typical.value.recip();
        ctx.estimate("typical_cell_mean", Estimate { value: m, std_err: inv_typical.std_err * m * m, n });
        ctx.exact("typical_cell_mean_target", consts.mean_typical * scale);
        ctx.exact("resamples", resamples as f64);

        let hits = par_replicates(n, |i| segment_crossings(d, norm, length, &mut ctx.stream("segment", i).rng()))?;
        let hits: Vec<f64> = hits.into_iter().map(|h| h as f64).collect();
        ctx.estimate("segment_crossings", mean_estimate(&hits));
        ctx.exact("segment_crossings_target", rate * consts.c_d * length / 2.0);
        if d.get() == 2 {
            let unit = par_replicates(n, |i| {
                segment_crossings(d, Normalization::Custom(2.0 * PI), length, &mut ctx.stream("segment-unit", i).rng())
            })?;
            let unit: Vec<f64> = unit.into_iter().map(|h| h as f64).collect();
            ctx.estimate("segment_crossings_unit_intensity", mean_estimate(&unit));
            ctx.exact("segment_crossings_unit_intensity_target", 2.0 * length);
        }
        Ok(())
    })
}

/// Delta-method standard error of `mean(a) * mean(b)` from paired samples.
fn product_estimate(a: Estimate, b: Estimate, xs: &[f64], ys: &[f64]) -> Estimate {
    let n = xs.len() as f64;
    let (ma, mb) = (mean(xs), mean(ys));
    let cov = if xs.len() > 1 {
        xs.iter().zip(ys).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / (n - 1.0) / n
    } else {
        0.0
    };
    let var = mb * mb * a.std_err * a.std_err + ma * ma * b.std_err * b.std_err + 2.0 * ma * mb * cov;
    Estimate { value: a.value * b.value, std_err: var.max(0.0).sqrt(), n: xs.len() }
}
