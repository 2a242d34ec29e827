//! `lambda omega_d F(R)` against Exp(1), for the exact inversion sampler and
//! for radii read off simulated processes.

use super::{par_replicates, Ctx};
use crate::error::CliError;
use randset_core::analytics::{ks_statistic, ks_two_sample, RadiusLaw};
use randset_core::models::{sample_intersection, ShapeKind};
use randset_core::stats::proportion;
use randset_core::{Direction, RadialMeasure};

pub(super) fn run(ctx: &mut Ctx) -> Result<(), CliError> {
    let d = ctx.cfg.d;
    let n = ctx.cfg.replicates;
    let e1 = Direction::axis(d, 0);
    ctx.for_each_lambda(|ctx, lambda| {
        let models = [
            ("ball", RadiusLaw::ball(d, lambda)?, ShapeKind::Ball, RadialMeasure::uniform_ball(d)),
            ("halfspace", RadiusLaw::halfspace(d, lambda)?, ShapeKind::HalfSpace, RadialMeasure::nu_hat(d)),
        ];
        for (name, law, shape, mu) in models {
            let exact = par_replicates(n, |i| {
                let mut rng = ctx.stream(&format!("{name}/exact"), i).rng();
                Ok(law.transform(law.sample(&mut rng)))
            })?;
            let process = par_replicates(n, |i| {
                let mut rng = ctx.stream(&format!("{name}/process"), i).rng();
                let m = sample_intersection(d, lambda, &mu, shape, &mut rng)?;
                Ok(law.transform(m.radius(e1.as_slice())))
            })?;
            let cut = law.transform(1.0);
            let cdf = |x: f64| if x >= cut { 1.0 } else { -(-x).exp_m1() };
            ctx.exact(format!("ks_exact_{name}"), ks_statistic(&exact, cdf)?);
            ctx.exact(format!("ks_process_{name}"), ks_statistic(&process, cdf)?);
            let (d2, p) = ks_two_sample(&exact, &process)?;
            ctx.exact(format!("ks_two_sample_{name}"), d2);
            ctx.exact(format!("ks_two_sample_p_{name}"), p);
            ctx.exact(format!("truncation_{name}"), cut);
            let over = process.iter().chain(&exact).filter(|&&z| z > cut).count();
            ctx.exact(format!("above_truncation_{name}"), over as f64);
            let atoms = process.iter().filter(|&&z| z == cut).count();
            ctx.estimate(format!("atom_frequency_{name}"), proportion(atoms, n));
            ctx.exact(format!("atom_probability_{name}"), law.atom());
        }
        Ok(())
    })
}
