use super::{Dimension, Direction};
use crate::error::{domain, Result};
use crate::rng::RngStream;
use rand::Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// The two points of the 0-sphere.
    Antipodal1d,
    /// `n` equally spaced angles starting at 0.
    Regular2d,
    /// Golden-angle spiral on the 2-sphere.
    Fibonacci3d,
    /// iid uniform directions from a seeded stream.
    Random,
}

/// Nodes for equal-weight quadrature over the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectionGrid {
    dim: Dimension,
    kind: GridKind,
    points: Vec<Direction>,
}

impl DirectionGrid {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Direction> {
        self.points.iter()
    }

    /// Surface measure carried by each node, `S_d / n`.
    pub fn weight(&self) -> f64 {
        self.dim.sphere_area() / self.points.len() as f64
    }

    /// Build a grid from explicit directions.
    pub fn from_directions(dim: Dimension, points: Vec<Direction>) -> Result<Self> {
        if points.is_empty() {
            return domain("direction grid must be nonempty");
        }
        if points.iter().any(|p| p.dim() != dim.get()) {
            return domain("direction of wrong dimension in grid");
        }
        Ok(Self { dim, kind: GridKind::Random, points })
    }
}

/// A uniform direction: an angle in the plane, a normalised Gaussian vector
/// otherwise.
pub fn random_direction<R: Rng + ?Sized>(d: usize, rng: &mut R, out: &mut [f64]) {
    debug_assert_eq!(out.len(), d);
    match d {
        1 => out[0] = if rng.random::<bool>() { 1.0 } else { -1.0 },
        2 => {
            let phi = 2.0 * PI * rng.random::<f64>();
            out[0] = phi.cos();
            out[1] = phi.sin();
        }
        _ => loop {
            let mut s = 0.0;
            for x in out.iter_mut() {
                *x = rng.sample(StandardNormal);
                s += *x * *x;
            }
            if s > 1e-300 {
                let n = s.sqrt();
                out.iter_mut().for_each(|x| *x /= n);
                return;
            }
        },
    }
}

/// `n` directions on the unit sphere of `R^d`.
///
/// d = 1 gives the two unit vectors regardless of `n`; d = 2 gives `n`
/// equally spaced angles; d = 3 the Fibonacci spiral; d >= 4 `n` iid uniform
/// directions from stream `(seed, 0)`.
pub fn direction_grid(d: Dimension, n: usize, seed: u64) -> Result<DirectionGrid> {
    if n == 0 {
        return domain("direction grid needs at least one node");
    }
    let (kind, points) = match d.get() {
        1 => (
            GridKind::Antipodal1d,
            vec![Direction(vec![1.0]), Direction(vec![-1.0])],
        ),
        2 => (
            GridKind::Regular2d,
            (0..n)
                .map(|k| Direction::from_angle(2.0 * PI * k as f64 / n as f64))
                .collect(),
        ),
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            let pts = (0..n)
                .map(|k| {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
                    let rho = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * k as f64;
                    Direction(vec![rho * phi.cos(), rho * phi.sin(), z])
                })
                .collect();
            (GridKind::Fibonacci3d, pts)
        }
        dd => {
            let mut rng = RngStream::new(seed, 0).rng();
            let pts = (0..n)
                .map(|_| {
                    let mut v = vec![0.0; dd];
                    random_direction(dd, &mut rng, &mut v);
                    Direction(v)
                })
                .collect();
            (GridKind::Random, pts)
        }
    };
    Ok(DirectionGrid { dim: d, kind, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{distance, norm, UNIT_TOL};

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn four_regular_angles() {
        let g = direction_grid(dim(2), 4, 0).unwrap();
        let expected = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (p, e) in g.iter().zip(expected) {
            assert!(distance(p.as_slice(), &e) < 1e-15);
        }
    }

    #[test]
    fn fibonacci_spacing() {
        let g = direction_grid(dim(3), 1000, 0).unwrap();
        let pts = g.directions();
        let mut worst: f64 = 0.0;
        for (i, p) in pts.iter().enumerate() {
            let nn = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, q)| distance(p.as_slice(), q.as_slice()))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(nn);
        }
        assert!(worst < 0.2, "max nearest-neighbour spacing {worst}");
    }

    #[test]
    fn random_grid_is_reproducible() {
        let a = direction_grid(dim(5), 100, 42).unwrap();
        let b = direction_grid(dim(5), 100, 42).unwrap();
        let bits = |g: &DirectionGrid| -> Vec<u64> {
            g.iter().flat_map(|p| p.as_slice().iter().map(|x| x.to_bits())).collect()
        };
        assert_eq!(bits(&a), bits(&b));
        let c = direction_grid(dim(5), 100, 43).unwrap();
        assert_ne!(bits(&a), bits(&c));
    }

    #[test]
    fn all_nodes_unit_norm() {
        for d in 1..=6 {
            let g = direction_grid(dim(d), 257, 1).unwrap();
            assert!(!g.is_empty());
            for p in g.iter() {
                assert!((norm(p.as_slice()) - 1.0).abs() < UNIT_TOL);
            }
        }
    }

    #[test]
    fn empty_grid_rejected() {
        assert!(direction_grid(dim(2), 0, 0).is_err());
    }
}
