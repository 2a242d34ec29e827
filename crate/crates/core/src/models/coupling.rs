//! Shift-and-transport coupling between the ball intersection model and the
//! cell of the sphere tessellation, in the plane.

use super::{sphere_tessellation_cell_2d, BallIntersection, Intersection};
use crate::error::{domain, Result};
use crate::geom::{norm, Dimension, DirectionGrid, Points, StarSet};
use crate::ppp::{sample_region_points, sample_shell, ProcessSample, Region, ShellSide, ShellTransport};
use crate::rng::RngStream;
use rand::Rng;
use std::f64::consts::PI;

/// Shell half-width `ln^2(lambda) / (2 lambda)` used by the coupling.
pub fn coupling_eps(lambda: f64) -> f64 {
    let l = lambda.ln();
    l * l / (2.0 * lambda)
}

#[derive(Debug, Clone)]
pub struct CouplingOutput {
    /// Tessellation nuclei on the annulus, at intensity `lambda / 2`.
    pub tess_points: ProcessSample,
    /// Nuclei after `s theta -> (s - 2) theta` for outer points; inner points
    /// unchanged. Same order and length as `tess_points`.
    pub shifted_points: Points,
    /// Shifted points with their depths carried onto the inner-shell law.
    pub transported_points: Points,
    /// Extra ball centres filling `|x| < 1 - eps` at intensity `lambda`.
    pub deep_points: Points,
    /// `I'`: ball intersection of transported and deep centres.
    pub intersection: StarSet,
    /// `J`: first-hit cell of the circles about the original nuclei.
    pub tess_cell: StarSet,
    pub flagged_rays: usize,
    pub rays: usize,
    /// `lambda * sup_theta |R_I'(theta) - R_J(theta)|`, the Hausdorff
    /// distance between the sets blown up by `lambda`.
    pub hausdorff_scaled: f64,
}

impl CouplingOutput {
    pub fn flagged_fraction(&self) -> f64 {
        self.flagged_rays as f64 / self.rays as f64
    }
}

/// Build `I'` and `J` from one annulus sample. The model intensity is twice
/// the sampling intensity stored in `tess_sample`.
pub fn coupling_transform<R: Rng + ?Sized>(
    tess_sample: &ProcessSample,
    eps: f64,
    ray_grid: &DirectionGrid,
    rng: &mut R,
) -> Result<CouplingOutput> {
    if !(eps > 0.0 && eps < 1.0) {
        return domain(format!("coupling shell width {eps} outside (0, 1)"));
    }
    let d = tess_sample.dim();
    if d.get() != 2 || ray_grid.dim() != d {
        return domain("the coupling is planar only");
    }
    let transport = ShellTransport::new(d, eps)?;
    let lambda = 2.0 * tess_sample.lambda;

    let n = tess_sample.len();
    let mut shifted = Points::with_capacity(2, n);
    let mut transported = Points::with_capacity(2, n);
    for x in tess_sample.points.iter() {
        let s = norm(x);
        let theta = [x[0] / s, x[1] / s];
        // Depth below the unit sphere and the direction it is measured in.
        let (depth, dir) = if s > 1.0 {
            shifted.push(&[(s - 2.0) * theta[0], (s - 2.0) * theta[1]]);
            (s - 1.0, [-theta[0], -theta[1]])
        } else {
            shifted.push(x);
            (1.0 - s, theta)
        };
        let w = transport.transport(depth.clamp(0.0, eps))?;
        transported.push(&[(1.0 - w) * dir[0], (1.0 - w) * dir[1]]);
    }

    let deep_all = sample_region_points(d, lambda, Region::Ball, rng)?;
    let mut deep = Points::new(2);
    for x in deep_all.iter().filter(|x| norm(x) < 1.0 - eps) {
        deep.push(x);
    }
    let mut centers = transported.clone();
    for x in deep.iter() {
        centers.push(x);
    }
    let intersection = Intersection::Ball(BallIntersection::new(&centers)?).into_star_set(d).with_cache(ray_grid);
    let cell = sphere_tessellation_cell_2d(&tess_sample.points, ray_grid)?;
    let sup = intersection
        .radii_on(ray_grid)
        .iter()
        .zip(cell.radii())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    Ok(CouplingOutput {
        tess_points: tess_sample.clone(),
        shifted_points: shifted,
        transported_points: transported,
        deep_points: deep,
        intersection,
        tess_cell: cell.star_set(),
        flagged_rays: cell.flagged_rays(),
        rays: ray_grid.len(),
        hausdorff_scaled: lambda * sup,
    })
}

/// One coupling replicate at model intensity `lambda`: nuclei from
/// `stream`, deep centres from a child stream.
pub fn sample_coupling(lambda: f64, ray_grid: &DirectionGrid, stream: RngStream) -> Result<CouplingOutput> {
    if !(lambda > 1.0) {
        return domain(format!("coupling needs lambda > 1 (got {lambda})"));
    }
    let eps = coupling_eps(lambda);
    if eps >= 1.0 {
        return domain(format!("lambda {lambda} too small: shell width {eps} >= 1"));
    }
    let d = Dimension::new(2)?;
    let tess = sample_shell(d, lambda / 2.0, eps, ShellSide::Both, stream)?;
    coupling_transform(&tess, eps, ray_grid, &mut stream.child(1).rng())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellContainment {
    /// `ln^2(lambda) / lambda`.
    pub eps: f64,
    /// Largest grid radius of the intersection.
    pub max_radius: f64,
    /// `max_radius <= 2 eps`.
    pub contained: bool,
}

/// Whether the planar ball intersection at intensity `lambda` lies inside
/// `B(2 eps)`. Only centres in the inner shell of width `2 eps` are sampled:
/// a ball about a deeper centre contains `B(2 eps)` and cannot cut it.
pub fn shell_containment<R: Rng + ?Sized>(lambda: f64, ray_grid: &DirectionGrid, rng: &mut R) -> Result<ShellContainment> {
    if !(lambda > 1.0) {
        return domain(format!("containment needs lambda > 1 (got {lambda})"));
    }
    let l = lambda.ln();
    let eps = l * l / lambda;
    if 2.0 * eps >= 1.0 {
        return domain(format!("lambda {lambda} too small: shell width {} >= 1", 2.0 * eps));
    }
    let d = ray_grid.dim();
    let pts = sample_region_points(d, lambda, Region::InnerShell(2.0 * eps), rng)?;
    let m = BallIntersection::new(&pts)?;
    let max_radius = ray_grid.iter().map(|t| m.radius(t.as_slice())).fold(0.0, f64::max);
    Ok(ShellContainment { eps, max_radius, contained: max_radius <= 2.0 * eps })
}

/// Point counts in `k` equal angular sectors of the planar inner shell of
/// width `ln^2(lambda) / lambda`, at intensity `lambda`.
pub fn arc_occupancy<R: Rng + ?Sized>(lambda: f64, k: usize, rng: &mut R) -> Result<Vec<usize>> {
    if !(lambda > 1.0) || k == 0 {
        return domain(format!("arc occupancy needs lambda > 1 and k >= 1 (got {lambda}, {k})"));
    }
    let l = lambda.ln();
    let eps = l * l / lambda;
    if eps >= 1.0 {
        return domain(format!("lambda {lambda} too small: shell width {eps} >= 1"));
    }
    let pts = sample_region_points(Dimension::new(2)?, lambda, Region::InnerShell(eps), rng)?;
    let mut counts = vec![0; k];
    for x in pts.iter() {
        let phi = x[1].atan2(x[0]).rem_euclid(2.0 * PI);
        counts[((phi / (2.0 * PI) * k as f64) as usize).min(k - 1)] += 1;
    }
    Ok(counts)
}
