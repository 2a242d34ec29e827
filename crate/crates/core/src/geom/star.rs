use super::{norm, Dimension, Direction, DirectionGrid};
use crate::error::{domain, Result};
use std::fmt;
use std::sync::Arc;

type RadiusFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A set star-shaped about the origin, `{t theta : 0 <= t <= f(theta)}`,
/// described by its radius function `f` with values in `[0, 1]`.
///
/// Cloning is cheap; the radius function is shared.
#[derive(Clone)]
pub struct StarSet {
    dim: Dimension,
    radius: Arc<RadiusFn>,
    cache: Option<Arc<(DirectionGrid, Vec<f64>)>>,
}

impl fmt::Debug for StarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarSet")
            .field("dim", &self.dim)
            .field("cached_nodes", &self.cache.as_ref().map(|c| c.1.len()))
            .finish()
    }
}

impl StarSet {
    /// Wrap a radius function. Values are clamped to `[0, 1]` on evaluation.
    pub fn new<F>(dim: Dimension, radius: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self { dim, radius: Arc::new(radius), cache: None }
    }

    /// The centred ball of radius `r`.
    pub fn ball(dim: Dimension, r: f64) -> Self {
        Self::new(dim, move |_| r)
    }

    pub fn dim(&self) -> Dimension {
        self.dim
    }

    /// Radius in direction `theta` (a unit vector).
    pub fn radius(&self, theta: &[f64]) -> f64 {
        (self.radius)(theta).clamp(0.0, 1.0)
    }

    /// Evaluate the radius function on `grid` and keep the table.
    pub fn with_cache(mut self, grid: &DirectionGrid) -> Self {
        let values = self.eval_grid(grid);
        self.cache = Some(Arc::new((grid.clone(), values)));
        self
    }

    fn eval_grid(&self, grid: &DirectionGrid) -> Vec<f64> {
        grid.iter().map(|t| self.radius(t.as_slice())).collect()
    }

    /// Radii on `grid`, served from the cache when it was built on the same grid.
    pub fn radii_on(&self, grid: &DirectionGrid) -> Vec<f64> {
        match &self.cache {
            Some(c) if c.0 == *grid => c.1.clone(),
            _ => self.eval_grid(grid),
        }
    }

    /// Whether `x` (with `|x| <= 1`) belongs to the set. The origin always does.
    pub fn contains(&self, x: &[f64]) -> bool {
        let r = norm(x);
        if r == 0.0 {
            return true;
        }
        let theta: Vec<f64> = x.iter().map(|v| v / r).collect();
        r <= self.radius(&theta)
    }

    /// Boundary point `f(theta) theta`.
    pub fn boundary_point(&self, theta: &Direction) -> Vec<f64> {
        let r = self.radius(theta.as_slice());
        theta.as_slice().iter().map(|x| r * x).collect()
    }
}

/// Equal-weight quadrature of `(1/d) * int_S f(theta)^d dsigma`.
pub fn star_volume(s: &StarSet, grid: &DirectionGrid) -> Result<f64> {
    if grid.is_empty() {
        return domain("empty direction grid");
    }
    if grid.dim() != s.dim() {
        return domain("grid and star set dimensions differ");
    }
    let d = s.dim().get() as i32;
    let sum: f64 = s.radii_on(grid).iter().map(|r| r.powi(d)).sum();
    Ok(grid.weight() * sum / d as f64)
}

/// `sup_theta |f(theta) - g(theta)|` over the grid.
///
/// For star sets sharing the origin this bounds their Hausdorff distance
/// from above; the two agree for dilates of one another. It is a grid
/// approximation of the sup.
pub fn hausdorff_star(f: &StarSet, g: &StarSet, grid: &DirectionGrid) -> Result<f64> {
    if f.dim() != g.dim() || f.dim() != grid.dim() {
        return domain("dimension mismatch in hausdorff_star");
    }
    let a = f.radii_on(grid);
    let b = g.radii_on(grid);
    Ok(a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}
