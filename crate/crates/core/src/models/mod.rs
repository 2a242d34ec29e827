//! Intersection models, tessellation cells and the coupling between them.

mod coupling;
mod crofton;
mod scaling;
mod tess;

pub use coupling::{
    arc_occupancy, coupling_eps, coupling_transform, sample_coupling, shell_containment,
    CouplingOutput, ShellContainment,
};
pub use crofton::{
    crofton_cell, crofton_cell_from_hyperplanes, crofton_cell_with_probe, segment_crossings,
    vertex_count_2d, CroftonCell, Hyperplane, Normalization,
};
pub use scaling::{count_meeting_origin_ball, meeting_count_target, warmup_1d, MeetingModel};
pub use tess::{sphere_tessellation_cell_2d, TessCell};

use crate::error::{domain, Error, Result};
use crate::geom::{dot, norm, Dimension, Direction, Points, StarSet};
use crate::ppp::{sample_product_points, RadialMeasure};
use rand::Rng;
use std::sync::Arc;

/// `{x : <x, normal> <= offset}` with `0 < offset <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    normal: Direction,
    offset: f64,
}

impl HalfSpace {
    pub fn new(normal: Direction, offset: f64) -> Result<Self> {
        if !(offset > 0.0 && offset <= 1.0) {
            return domain(format!("half-space offset {offset} outside (0, 1]"));
        }
        Ok(Self { normal, offset })
    }

    pub fn normal(&self) -> &Direction {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        dot(x, self.normal.as_slice()) <= self.offset
    }
}

/// The convex set whose randomly placed copies are intersected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShapeKind {
    /// `C + B`.
    Ball,
    /// `{x : <x, Theta> <= P}` for a centre `C = P Theta`.
    HalfSpace,
    /// Planar cone with apex `C`, axis `-C/|C|` (towards the origin) and
    /// half-angle `beta` in `(0, pi)`. `beta = pi/2` is the half-space.
    Cone { beta: f64 },
}

impl ShapeKind {
    pub fn validate(self, d: Dimension) -> Result<()> {
        if let ShapeKind::Cone { beta } = self {
            if d.get() != 2 {
                return Err(Error::Unsupported(format!("cone model needs d = 2, got d = {}", d.get())));
            }
            if !(beta > 0.0 && beta < std::f64::consts::PI) {
                return domain(format!("cone half-angle {beta} outside (0, pi)"));
            }
        }
        Ok(())
    }

    /// Whether `x` lies in the copy of the shape attached to centre `c`.
    pub fn contains(self, c: &[f64], x: &[f64]) -> bool {
        match self {
            ShapeKind::Ball => crate::geom::distance(c, x) <= 1.0,
            ShapeKind::HalfSpace => {
                let p = norm(c);
                p == 0.0 || dot(x, c) <= p * p
            }
            ShapeKind::Cone { beta } => {
                // angle between x - c and -c is below beta
                let v: Vec<f64> = x.iter().zip(c).map(|(a, b)| a - b).collect();
                let (nv, nc) = (norm(&v), norm(c));
                if nv == 0.0 || nc == 0.0 {
                    return true;
                }
                let cos = (-dot(&v, c) / (nv * nc)).clamp(-1.0, 1.0);
                cos.acos() < beta
            }
        }
    }
}

fn check_theta(dim: usize, theta: &[f64]) {
    debug_assert_eq!(theta.len(), dim);
    debug_assert!((norm(theta) - 1.0).abs() < 1e-9);
}

/// `B ∩ ⋂ (C + B)`, with centres kept in decreasing norm so that radius
/// queries stop once no remaining ball can cut closer than the current best.
#[derive(Debug, Clone)]
pub struct BallIntersection {
    dim: usize,
    centers: Points,
    norms: Vec<f64>,
}

impl BallIntersection {
    pub fn new(centers: &Points) -> Result<Self> {
        let mut idx: Vec<(f64, usize)> = centers.iter().map(norm).zip(0..).collect();
        if let Some(&(n, _)) = idx.iter().find(|(n, _)| *n > 1.0 + 1e-12) {
            return domain(format!("ball centre at distance {n} outside the unit ball"));
        }
        idx.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut sorted = Points::with_capacity(centers.dim(), centers.len());
        for &(_, i) in &idx {
            sorted.push(centers.get(i));
        }
        Ok(Self { dim: centers.dim(), centers: sorted, norms: idx.into_iter().map(|p| p.0).collect() })
    }

    pub fn centers(&self) -> &Points {
        &self.centers
    }

    /// `sup {t in [0, 1] : t theta in I}`.
    pub fn radius(&self, theta: &[f64]) -> f64 {
        check_theta(self.dim, theta);
        let mut best: f64 = 1.0;
        for (c, &n) in self.centers.iter().zip(&self.norms) {
            // |t theta - c| <= t + |c|, so this ball cannot cut before 1 - |c|.
            if 1.0 - n >= best {
                break;
            }
            let b = dot(theta, c);
            let t = b + (b * b - (n * n - 1.0)).max(0.0).sqrt();
            best = best.min(t.max(0.0));
        }
        best
    }

    /// Direct membership test against every centre.
    pub fn contains(&self, x: &[f64]) -> bool {
        norm(x) <= 1.0 && self.centers.iter().all(|c| crate::geom::distance(c, x) <= 1.0)
    }
}

/// `B ∩ ⋂ H_i`, half-spaces kept in increasing offset.
#[derive(Debug, Clone)]
pub struct HalfSpaceIntersection {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
}

impl HalfSpaceIntersection {
    pub fn new(dim: Dimension, mut halfspaces: Vec<HalfSpace>) -> Result<Self> {
        if halfspaces.iter().any(|h| h.normal.dim() != dim.get()) {
            return domain("half-space of wrong dimension");
        }
        halfspaces.sort_by(|a, b| a.offset.total_cmp(&b.offset));
        Ok(Self { dim: dim.get(), halfspaces })
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn radius(&self, theta: &[f64]) -> f64 {
        check_theta(self.dim, theta);
        let mut best: f64 = 1.0;
        for h in &self.halfspaces {
            // offset / cos >= offset
            if h.offset >= best {
                break;
            }
            let c = dot(theta, h.normal.as_slice());
            if c > 0.0 {
                best = best.min(h.offset / c);
            }
        }
        best
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        norm(x) <= 1.0 && self.halfspaces.iter().all(|h| h.contains(x))
    }
}

fn cross(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

fn rotate(v: [f64; 2], phi: f64) -> [f64; 2] {
    let (s, c) = phi.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

/// `(apex, left boundary direction, right boundary direction)`.
type PlanarCone = ([f64; 2], [f64; 2], [f64; 2]);

/// Planar cone intersection `B ∩ ⋂ Cone_i`, radius by first exit through
/// either boundary ray of any cone.
#[derive(Debug, Clone)]
pub struct ConeIntersection {
    beta: f64,
    /// Sorted by apex norm.
    cones: Vec<PlanarCone>,
    norms: Vec<f64>,
    /// Distance from the origin to a cone boundary is at least `reach * |C|`.
    reach: f64,
}

impl ConeIntersection {
    pub fn new(apexes: &Points, beta: f64) -> Result<Self> {
        ShapeKind::Cone { beta }.validate(Dimension::new(apexes.dim())?)?;
        let mut cones: Vec<(f64, PlanarCone)> = apexes
            .iter()
            .map(|c| {
                let n = norm(c);
                let axis = if n > 0.0 { [-c[0] / n, -c[1] / n] } else { [1.0, 0.0] };
                (n, ([c[0], c[1]], rotate(axis, beta), rotate(axis, -beta)))
            })
            .collect();
        cones.sort_by(|a, b| a.0.total_cmp(&b.0));
        let reach = if beta <= std::f64::consts::FRAC_PI_2 { beta.sin() } else { 1.0 };
        Ok(Self {
            beta,
            norms: cones.iter().map(|c| c.0).collect(),
            cones: cones.into_iter().map(|c| c.1).collect(),
            reach,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn radius(&self, theta: &[f64]) -> f64 {
        check_theta(2, theta);
        let th = [theta[0], theta[1]];
        let mut best: f64 = 1.0;
        for (&(c, b1, b2), &n) in self.cones.iter().zip(&self.norms) {
            if self.reach * n >= best {
                break;
            }
            for b in [b1, b2] {
                // t theta = c + s b
                let den = cross(th, b);
                if den == 0.0 {
                    continue;
                }
                let t = cross(c, b) / den;
                let s = cross(c, th) / den;
                if t > 0.0 && s >= 0.0 {
                    best = best.min(t);
                }
            }
        }
        best
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let shape = ShapeKind::Cone { beta: self.beta };
        norm(x) <= 1.0 && self.cones.iter().all(|(c, _, _)| shape.contains(c, x))
    }
}

/// A realised intersection model.
#[derive(Debug, Clone)]
pub enum Intersection {
    Ball(BallIntersection),
    HalfSpace(HalfSpaceIntersection),
    Cone(ConeIntersection),
}

impl Intersection {
    pub fn radius(&self, theta: &[f64]) -> f64 {
        match self {
            Intersection::Ball(m) => m.radius(theta),
            Intersection::HalfSpace(m) => m.radius(theta),
            Intersection::Cone(m) => m.radius(theta),
        }
    }

    /// Exact membership against the generating shapes.
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Intersection::Ball(m) => m.contains(x),
            Intersection::HalfSpace(m) => m.contains(x),
            Intersection::Cone(m) => m.contains(x),
        }
    }

    pub fn into_star_set(self, d: Dimension) -> StarSet {
        let m = Arc::new(self);
        StarSet::new(d, move |t| m.radius(t))
    }
}

/// `min(1, min_i t_i)` where `t_i` is the exit time of the ray along `theta`
/// from `C_i + B`.
pub fn ball_intersection_radius(centers: &Points, theta: &Direction) -> Result<f64> {
    Ok(BallIntersection::new(centers)?.radius(theta.as_slice()))
}

/// `min(1, min over <theta, n> > 0 of offset / <theta, n>)`.
pub fn halfspace_intersection_radius(halfspaces: &[HalfSpace], theta: &Direction) -> Result<f64> {
    let d = Dimension::new(theta.dim())?;
    Ok(HalfSpaceIntersection::new(d, halfspaces.to_vec())?.radius(theta.as_slice()))
}

/// Place the shape at every point of `centers`.
pub fn intersection_from_centers(centers: &Points, shape: ShapeKind) -> Result<Intersection> {
    let d = Dimension::new(centers.dim())?;
    shape.validate(d)?;
    Ok(match shape {
        ShapeKind::Ball => Intersection::Ball(BallIntersection::new(centers)?),
        ShapeKind::HalfSpace => {
            let hs = centers
                .iter()
                .filter_map(|c| {
                    let p = norm(c);
                    // A zero offset has probability zero; treat it as absent.
                    (p > 0.0).then(|| HalfSpace::new(Direction::new(c.to_vec()).ok()?, p.min(1.0)).ok())?
                })
                .collect();
            Intersection::HalfSpace(HalfSpaceIntersection::new(d, hs)?)
        }
        ShapeKind::Cone { beta } => Intersection::Cone(ConeIntersection::new(centers, beta)?),
    })
}

/// Sample the process `lambda (mu x sigma)` and intersect the placed shapes.
pub fn sample_intersection<R: Rng + ?Sized>(
    d: Dimension,
    lambda: f64,
    mu: &RadialMeasure,
    shape: ShapeKind,
    rng: &mut R,
) -> Result<Intersection> {
    shape.validate(d)?;
    let centers = sample_product_points(d, lambda, mu, rng)?;
    intersection_from_centers(&centers, shape)
}

/// The realised intersection as a star set.
pub fn build_intersection<R: Rng + ?Sized>(
    d: Dimension,
    lambda: f64,
    mu: &RadialMeasure,
    shape: ShapeKind,
    rng: &mut R,
) -> Result<StarSet> {
    Ok(sample_intersection(d, lambda, mu, shape, rng)?.into_star_set(d))
}

/// `|x| <= f(x / |x|)`; the origin is always a member.
pub fn membership(s: &StarSet, x: &[f64]) -> bool {
    s.contains(x)
}
