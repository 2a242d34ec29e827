//! Ball geometry, star-shaped sets and direction grids.

mod grid;
mod lune;
mod star;

pub use grid::{direction_grid, random_direction, DirectionGrid, GridKind};
pub use lune::{cap_hyp_bound_holds, cap_hyp_distance, lune_fraction, spherical_cap_volume, wedge_volume};
pub use star::{hausdorff_star, star_volume, StarSet};

use crate::error::{domain, Result};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Norm tolerance for [`Direction`].
pub const UNIT_TOL: f64 = 1e-12;

/// Volume of the unit ball in `R^k`, `pi^(k/2) / Gamma(k/2 + 1)`.
///
/// Defined for every `k >= 0`; `k = 0` gives 1. Uses the recursion
/// `omega_k = 2 pi omega_{k-2} / k`, exact to rounding for moderate `k`.
pub fn ball_volume(k: usize) -> f64 {
    if k > 100 {
        let h = k as f64 / 2.0;
        return (h * PI.ln() - ln_gamma(h + 1.0)).exp();
    }
    let mut w = if k % 2 == 0 { 1.0 } else { 2.0 };
    let mut j = 2 + k % 2;
    while j <= k {
        w *= 2.0 * PI / j as f64;
        j += 2;
    }
    w
}

/// Ambient dimension `d >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dimension(usize);

impl Dimension {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return domain("dimension must be at least 1");
        }
        Ok(Self(d))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// `omega_d`, the volume of the unit ball.
    pub fn ball_volume(self) -> f64 {
        ball_volume(self.0)
    }

    /// `omega_{d-1}`, with `omega_0 = 1`.
    pub fn lower_ball_volume(self) -> f64 {
        ball_volume(self.0 - 1)
    }

    /// `S_d = d * omega_d`, the surface area of the unit sphere.
    pub fn sphere_area(self) -> f64 {
        self.0 as f64 * self.ball_volume()
    }
}

impl TryFrom<usize> for Dimension {
    type Error = crate::Error;
    fn try_from(d: usize) -> Result<Self> {
        Self::new(d)
    }
}

/// `omega_d` for a validated dimension.
pub fn unit_ball_volume(d: Dimension) -> f64 {
    d.ball_volume()
}

/// A unit vector. Constructors normalise their input.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        let n = norm(&coords);
        if coords.is_empty() || !n.is_finite() || n == 0.0 {
            return domain("direction must be a finite nonzero vector");
        }
        Ok(Self(coords.into_iter().map(|x| x / n).collect()))
    }

    pub fn from_angle(phi: f64) -> Self {
        Self(vec![phi.cos(), phi.sin()])
    }

    /// The `i`-th standard basis vector of `R^d`.
    pub fn axis(d: Dimension, i: usize) -> Self {
        let mut v = vec![0.0; d.get()];
        v[i] = 1.0;
        Self(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }
}

impl AsRef<[f64]> for Direction {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// A set of points in `R^d` stored contiguously.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Points {
    dim: usize,
    coords: Vec<f64>,
}

impl Points {
    pub fn new(dim: usize) -> Self {
        Self { dim, coords: Vec::new() }
    }

    pub fn with_capacity(dim: usize, n: usize) -> Self {
        Self { dim, coords: Vec::with_capacity(dim * n) }
    }

    pub fn from_rows<I, P>(dim: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: AsRef<[f64]>,
    {
        let mut pts = Self::new(dim);
        for r in rows {
            let r = r.as_ref();
            if r.len() != dim {
                return domain(format!("point of length {} in a {dim}-dimensional set", r.len()));
            }
            pts.push(r);
        }
        Ok(pts)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim.max(1))
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dimensional_ball_volumes() {
        let d = |k| Dimension::new(k).unwrap();
        assert!((unit_ball_volume(d(1)) - 2.0).abs() < 1e-14);
        assert!((unit_ball_volume(d(2)) - PI).abs() < 1e-14);
        assert!((unit_ball_volume(d(3)) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((d(3).sphere_area() - 4.0 * PI).abs() < 1e-13);
        assert_eq!(ball_volume(0), 1.0);
        assert_eq!(d(1).lower_ball_volume(), 1.0);
    }

    #[test]
    fn ball_volume_recurrence() {
        // omega_k = 2 pi / k * omega_{k-2}
        for k in 2..=20 {
            let lhs = ball_volume(k);
            let rhs = 2.0 * PI / k as f64 * ball_volume(k - 2);
            assert!(((lhs - rhs) / rhs).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(Dimension::new(0).is_err());
    }

    #[test]
    fn directions_are_normalised() {
        let u = Direction::new(vec![3.0, 4.0]).unwrap();
        assert!((norm(u.as_slice()) - 1.0).abs() < UNIT_TOL);
        assert!(Direction::new(vec![0.0, 0.0]).is_err());
        assert!(Direction::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn points_round_trip_rows() {
        let p = Points::from_rows(2, [[1.0, 2.0], [3.0, 4.0]]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.get(1), &[3.0, 4.0]);
        assert!(Points::from_rows(3, [[1.0, 2.0]]).is_err());
    }
}
