//! Cell of the origin in the planar tessellation by unit circles.

use crate::error::{domain, Result};
use crate::geom::{dot, norm, DirectionGrid, Points, StarSet};
use std::sync::Arc;

#[derive(Debug)]
struct Circles {
    /// Centres sorted by `||X| - 1|`, the distance from the origin to the circle.
    centers: Vec<[f64; 2]>,
    gaps: Vec<f64>,
}

impl Circles {
    fn new(points: &Points) -> Self {
        let mut v: Vec<(f64, [f64; 2])> = points.iter().map(|x| ((norm(x) - 1.0).abs(), [x[0], x[1]])).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { gaps: v.iter().map(|p| p.0).collect(), centers: v.into_iter().map(|p| p.1).collect() }
    }

    /// Both crossing times of the ray `t theta` with `|x - X| = 1`, if any.
    fn crossings(theta: &[f64], x: &[f64; 2]) -> Option<(f64, f64)> {
        let b = dot(theta, x);
        let c = x[0] * x[0] + x[1] * x[1] - 1.0;
        let disc = b * b - c;
        if disc <= 0.0 {
            return None;
        }
        let s = disc.sqrt();
        Some((b - s, b + s))
    }

    /// First positive crossing, capped at 1.
    fn first_hit(&self, theta: &[f64]) -> f64 {
        let mut best: f64 = 1.0;
        for (x, &gap) in self.centers.iter().zip(&self.gaps) {
            if gap >= best {
                break;
            }
            if let Some((t0, t1)) = Self::crossings(theta, x) {
                let t = if t0 > 0.0 { t0 } else { t1 };
                if t > 0.0 {
                    best = best.min(t);
                }
            }
        }
        best
    }

    /// Whether the ray re-enters the origin's cell before `t = 1` after its
    /// first boundary crossing at `t_hit`: the set of circles whose side
    /// differs from the origin's becomes empty again.
    fn reenters(&self, theta: &[f64], t_hit: f64) -> bool {
        if t_hit >= 1.0 {
            return false;
        }
        // Each crossing toggles one circle between the origin's side and the
        // other; count the circles currently on the other side.
        let mut differing = 0i64;
        let mut ev: Vec<(f64, usize)> = Vec::new();
        for (i, (x, &gap)) in self.centers.iter().zip(&self.gaps).enumerate() {
            if gap >= 1.0 {
                break;
            }
            if let Some((t0, t1)) = Self::crossings(theta, x) {
                for t in [t0, t1] {
                    if t > 0.0 && t < 1.0 {
                        ev.push((t, i));
                    }
                }
            }
        }
        ev.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut state = vec![false; self.centers.len()];
        for (t, i) in ev {
            state[i] = !state[i];
            differing += if state[i] { 1 } else { -1 };
            if differing == 0 && t > t_hit {
                return true;
            }
        }
        false
    }
}

/// Cell of the origin in the arrangement of circles `|x - X_i| = 1`,
/// extracted ray by ray.
#[derive(Debug, Clone)]
pub struct TessCell {
    circles: Arc<Circles>,
    grid: DirectionGrid,
    radii: Vec<f64>,
    flagged: usize,
}

impl TessCell {
    /// First-hit radius on each grid ray.
    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn grid(&self) -> &DirectionGrid {
        &self.grid
    }

    /// Rays that, past their first crossing, come back into the origin's
    /// cell before leaving the unit disk. On these rays the first-hit radius
    /// under-reports a cell that is not star-shaped.
    pub fn flagged_rays(&self) -> usize {
        self.flagged
    }

    pub fn flagged_fraction(&self) -> f64 {
        self.flagged as f64 / self.radii.len() as f64
    }

    /// First-hit radius in an arbitrary direction.
    pub fn radius(&self, theta: &[f64]) -> f64 {
        self.circles.first_hit(theta)
    }

    /// Star set of the first-hit radius, cached on the grid.
    pub fn star_set(&self) -> StarSet {
        let c = Arc::clone(&self.circles);
        StarSet::new(self.grid.dim(), move |t| c.first_hit(t)).with_cache(&self.grid)
    }
}

/// First crossing of each grid ray with any unit circle centred at a point of
/// `centers`, capped at 1, with the star-shapedness diagnostic.
pub fn sphere_tessellation_cell_2d(centers: &Points, ray_grid: &DirectionGrid) -> Result<TessCell> {
    if centers.dim() != 2 || ray_grid.dim().get() != 2 {
        return domain("sphere tessellation cell is planar only");
    }
    let circles = Circles::new(centers);
    let mut radii = Vec::with_capacity(ray_grid.len());
    let mut flagged = 0;
    for t in ray_grid.iter() {
        let r = circles.first_hit(t.as_slice());
        if circles.reenters(t.as_slice(), r) {
            flagged += 1;
        }
        radii.push(r);
    }
    Ok(TessCell { circles: Arc::new(circles), grid: ray_grid.clone(), radii, flagged })
}
