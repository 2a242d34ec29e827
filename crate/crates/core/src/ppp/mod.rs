//! Poisson point processes on the unit ball and on shells around its
//! boundary, with product intensity `lambda * (mu x uniform angle)`.

mod bounds;
mod measure;
mod transport;

pub use bounds::{
    coupon_bound, coupon_exact_uniform, coupon_empirical, poisson_tail_check, poisson_tv,
    TailCheck,
};
pub use measure::RadialMeasure;
pub use transport::ShellTransport;

use crate::error::{domain, Result};
use crate::geom::{norm, random_direction, Dimension, Points};
use crate::rng::{open01, RngStream};
use rand::Rng;
use rand_distr::{Distribution, Poisson};

/// Below this mean, counts are drawn by sequential inversion.
const INVERSION_LIMIT: f64 = 30.0;

/// Where the points of a sample live.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// The open unit ball.
    Ball,
    /// `1 - eps < |x| < 1`.
    InnerShell(f64),
    /// `1 < |x| < 1 + eps`.
    OuterShell(f64),
    /// `1 - eps < |x| < 1 + eps`, both shells together.
    Annulus(f64),
}

impl Region {
    /// Open radial interval `(lo, hi)` occupied by the region.
    pub fn radii(self) -> (f64, f64) {
        match self {
            Region::Ball => (0.0, 1.0),
            Region::InnerShell(e) => (1.0 - e, 1.0),
            Region::OuterShell(e) => (1.0, 1.0 + e),
            Region::Annulus(e) => (1.0 - e, 1.0 + e),
        }
    }

    pub fn volume(self, d: Dimension) -> f64 {
        let (lo, hi) = self.radii();
        let k = d.get() as i32;
        d.ball_volume() * (hi.powi(k) - lo.powi(k))
    }

    pub fn contains(self, x: &[f64]) -> bool {
        let r = norm(x);
        let (lo, hi) = self.radii();
        match self {
            Region::Ball => r < hi,
            _ => r > lo && r < hi && r != 1.0,
        }
    }

    fn validate(self) -> Result<()> {
        match self {
            Region::Ball => Ok(()),
            Region::InnerShell(e) | Region::OuterShell(e) | Region::Annulus(e) => {
                if e > 0.0 && e < 1.0 {
                    Ok(())
                } else {
                    domain(format!("shell width {e} outside (0, 1)"))
                }
            }
        }
    }
}

/// Which shell [`sample_shell`] fills.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShellSide {
    Inner,
    Outer,
    Both,
}

/// A realised point configuration and the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessSample {
    pub points: Points,
    pub lambda: f64,
    pub region: Region,
    pub stream: RngStream,
    dim: Dimension,
}

impl ProcessSample {
    pub fn dim(&self) -> Dimension {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// A Poisson(`mean`) count.
pub fn sample_poisson_count<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    if !(mean >= 0.0) || !mean.is_finite() {
        return domain(format!("Poisson mean {mean} must be finite and nonnegative"));
    }
    if mean == 0.0 {
        return Ok(0);
    }
    if mean < INVERSION_LIMIT {
        let u = open01(rng);
        let mut k = 0u64;
        let mut p = (-mean).exp();
        let mut cdf = p;
        // The tail beyond k ~ 200 has mass below 1e-100 for mean < 30.
        while u > cdf && k < 1000 {
            k += 1;
            p *= mean / k as f64;
            cdf += p;
        }
        return Ok(k);
    }
    let dist = Poisson::new(mean).map_err(|e| crate::Error::Numerical(e.to_string()))?;
    Ok(dist.sample(rng) as u64)
}

/// Points of a Poisson process on the unit ball with `Poisson(lambda * omega_d)`
/// points, radii iid from `mu`, angles uniform.
///
/// With `mu = RadialMeasure::uniform_ball(d)` this is the homogeneous process
/// of intensity `lambda` on the ball.
pub fn sample_product_points<R: Rng + ?Sized>(
    d: Dimension,
    lambda: f64,
    mu: &RadialMeasure,
    rng: &mut R,
) -> Result<Points> {
    if !(lambda >= 0.0) {
        return domain(format!("intensity {lambda} is negative"));
    }
    let n = sample_poisson_count(lambda * d.ball_volume(), rng)? as usize;
    let dd = d.get();
    let mut pts = Points::with_capacity(dd, n);
    let mut theta = vec![0.0; dd];
    for _ in 0..n {
        let r = mu.sample(rng);
        random_direction(dd, rng, &mut theta);
        theta.iter_mut().for_each(|x| *x *= r);
        pts.push(&theta);
    }
    Ok(pts)
}

pub fn sample_product_process(
    d: Dimension,
    lambda: f64,
    mu: &RadialMeasure,
    stream: RngStream,
) -> Result<ProcessSample> {
    let points = sample_product_points(d, lambda, mu, &mut stream.rng())?;
    Ok(ProcessSample { points, lambda, region: Region::Ball, stream, dim: d })
}

/// Homogeneous Poisson points of intensity `lambda` in `region`.
pub fn sample_region_points<R: Rng + ?Sized>(
    d: Dimension,
    lambda: f64,
    region: Region,
    rng: &mut R,
) -> Result<Points> {
    region.validate()?;
    if !(lambda >= 0.0) {
        return domain(format!("intensity {lambda} is negative"));
    }
    let n = sample_poisson_count(lambda * region.volume(d), rng)? as usize;
    let dd = d.get();
    let k = dd as i32;
    let (lo, hi) = region.radii();
    let (a, b) = (lo.powi(k), hi.powi(k));
    let mut pts = Points::with_capacity(dd, n);
    let mut x = vec![0.0; dd];
    while pts.len() < n {
        // |X|^d is uniform on (lo^d, hi^d).
        let r = (a + open01(rng) * (b - a)).powf(1.0 / dd as f64);
        random_direction(dd, rng, &mut x);
        x.iter_mut().for_each(|v| *v *= r);
        // Rounding can land a point exactly on the unit sphere; redraw it.
        if region.contains(&x) {
            pts.push(&x);
        }
    }
    Ok(pts)
}

pub fn sample_shell(
    d: Dimension,
    lambda: f64,
    eps: f64,
    side: ShellSide,
    stream: RngStream,
) -> Result<ProcessSample> {
    let region = match side {
        ShellSide::Inner => Region::InnerShell(eps),
        ShellSide::Outer => Region::OuterShell(eps),
        ShellSide::Both => Region::Annulus(eps),
    };
    let points = sample_region_points(d, lambda, region, &mut stream.rng())?;
    Ok(ProcessSample { points, lambda, region, stream, dim: d })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::{correlation, mean, proportion, variance};
    use std::f64::consts::PI;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn zero_mean_gives_zero() {
        let mut rng = RngStream::new(1, 0).rng();
        for _ in 0..100 {
            assert_eq!(sample_poisson_count(0.0, &mut rng).unwrap(), 0);
        }
        assert!(sample_poisson_count(-1.0, &mut rng).is_err());
        assert!(sample_poisson_count(f64::NAN, &mut rng).is_err());
    }

    #[test]
    fn poisson_small_mean_moments() {
        let mut rng = RngStream::new(2, 0).rng();
        let xs: Vec<f64> = (0..100_000)
            .map(|_| sample_poisson_count(10.0, &mut rng).unwrap() as f64)
            .collect();
        assert!((mean(&xs) - 10.0).abs() < 0.1);
        assert!((variance(&xs) - 10.0).abs() < 0.3);
    }

    #[test]
    fn poisson_large_mean() {
        let mut rng = RngStream::new(3, 0).rng();
        let xs: Vec<f64> = (0..1000)
            .map(|_| sample_poisson_count(1e6, &mut rng).unwrap() as f64 / 1e6)
            .collect();
        let m = mean(&xs);
        assert!((0.997..=1.003).contains(&m), "{m}");
    }

    #[test]
    fn poisson_across_inversion_limit() {
        // Both samplers agree on the mean near the switch.
        let mut rng = RngStream::new(4, 0).rng();
        for &m in &[29.5, 30.5] {
            let xs: Vec<f64> = (0..50_000)
                .map(|_| sample_poisson_count(m, &mut rng).unwrap() as f64)
                .collect();
            let se = (m / xs.len() as f64).sqrt();
            assert!((mean(&xs) - m).abs() < 4.0 * se);
        }
    }

    #[test]
    fn empty_at_zero_intensity() {
        let s = sample_product_process(dim(2), 0.0, &RadialMeasure::uniform_ball(dim(2)), RngStream::new(0, 0)).unwrap();
        assert!(s.is_empty());
        let s = sample_shell(dim(2), 0.0, 0.1, ShellSide::Both, RngStream::new(0, 0)).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn uniform_radii_follow_r_squared() {
        let d = dim(2);
        let mu = RadialMeasure::uniform_ball(d);
        let mut radii = Vec::new();
        let mut rep = 0;
        while radii.len() < 100_000 {
            let s = sample_product_process(d, 100.0, &mu, RngStream::new(9, rep)).unwrap();
            radii.extend(s.points.iter().map(norm));
            rep += 1;
        }
        radii.sort_by(f64::total_cmp);
        let n = radii.len() as f64;
        let ks = radii
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let c = r * r;
                (c - i as f64 / n).abs().max(((i + 1) as f64 / n - c).abs())
            })
            .fold(0.0, f64::max);
        assert!(ks < 0.01, "{ks}");
    }

    #[test]
    fn nu_hat_radii_tail() {
        let d = dim(2);
        let mu = RadialMeasure::nu_hat(d);
        let mut over = 0;
        let mut total = 0;
        for rep in 0..400 {
            let s = sample_product_process(d, 100.0, &mu, RngStream::new(10, rep)).unwrap();
            total += s.len();
            over += s.points.iter().filter(|x| norm(x) > 0.9).count();
        }
        let p = proportion(over, total);
        assert!(p.within_sigma(0.01, 3.0), "{p:?}");
    }

    #[test]
    fn shell_count_and_containment() {
        let d = dim(2);
        let counts: Vec<f64> = (0..400)
            .map(|rep| {
                let s = sample_shell(d, 1000.0, 0.1, ShellSide::Inner, RngStream::new(11, rep)).unwrap();
                assert!(s.points.iter().all(|x| Region::InnerShell(0.1).contains(x)));
                s.len() as f64
            })
            .collect();
        let target = 190.0 * PI;
        let se = (target / counts.len() as f64).sqrt();
        assert!((mean(&counts) - target).abs() < 3.0 * se);
        let s = sample_shell(d, 1000.0, 0.1, ShellSide::Outer, RngStream::new(12, 0)).unwrap();
        assert!(s.points.iter().all(|x| {
            let r = norm(x);
            r > 1.0 && r < 1.1
        }));
        assert!(sample_shell(d, 10.0, 1.0, ShellSide::Inner, RngStream::new(0, 0)).is_err());
        assert!(sample_shell(d, 10.0, 0.0, ShellSide::Inner, RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn samples_are_deterministic() {
        let mu = RadialMeasure::nu_hat(dim(3));
        let a = sample_product_process(dim(3), 50.0, &mu, RngStream::new(5, 7)).unwrap();
        let b = sample_product_process(dim(3), 50.0, &mu, RngStream::new(5, 7)).unwrap();
        let bits = |s: &ProcessSample| -> Vec<u64> { s.points.as_flat().iter().map(|x| x.to_bits()).collect() };
        assert_eq!(bits(&a), bits(&b));
    }

    #[test]
    fn void_probability() {
        // A = disk of radius 0.2 about (0.5, 0).
        let lambda = 20.0;
        let area = PI * 0.04;
        let reps = 10_000;
        let mu = RadialMeasure::uniform_ball(dim(2));
        let empty = (0..reps)
            .filter(|&rep| {
                let s = sample_product_process(dim(2), lambda, &mu, RngStream::new(13, rep)).unwrap();
                let clear = s.points.iter().all(|x| (x[0] - 0.5).powi(2) + x[1] * x[1] >= 0.04);
                clear
            })
            .count();
        let p = proportion(empty, reps as usize);
        assert!(p.within_sigma((-lambda * area).exp(), 3.0), "{p:?}");
    }

    #[test]
    fn disjoint_subshells_are_uncorrelated() {
        let reps = 10_000;
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for rep in 0..reps {
            let s = sample_shell(dim(2), 200.0, 0.2, ShellSide::Inner, RngStream::new(14, rep)).unwrap();
            a.push(s.points.iter().filter(|x| norm(x) < 0.9).count() as f64);
            b.push(s.points.iter().filter(|x| norm(x) >= 0.9).count() as f64);
        }
        let r = correlation(&a, &b);
        assert!(r.abs() < 3.0 / (reps as f64).sqrt(), "{r}");
    }
}
