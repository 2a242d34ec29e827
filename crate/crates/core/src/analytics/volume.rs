use super::f_inverse;
use crate::error::{domain, Result};
use crate::geom::{random_direction, Dimension};
use crate::quad::{integrate_with_breaks, Tolerance};
use crate::rng::open01;
use crate::stats::{mean_estimate, proportion, Estimate};
use rand::Rng;
use statrs::function::factorial::factorial;

/// Exponent levels `lambda omega_d F(r) = u` used as quadrature breakpoints.
const LEVELS: [f64; 14] = [0.125, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0, 24.0, 40.0, 80.0];

/// `E|I| = d omega_d int_0^1 r^{d-1} exp(-lambda omega_d F(r)) dr`.
///
/// At large `lambda` the integrand lives on `r ~ 1/lambda`; breakpoints at
/// the radii where the exponent crosses fixed levels keep every piece on the
/// integrand's own scale, and the tolerance is relative.
pub fn expected_volume_quadrature<F: Fn(f64) -> f64>(d: Dimension, lambda: f64, f: F) -> Result<f64> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return domain(format!("intensity {lambda} must be finite and nonnegative"));
    }
    let w = d.ball_volume();
    if lambda == 0.0 {
        return Ok(w);
    }
    let scale = lambda * w;
    let top = f(1.0);
    let mut breaks = vec![0.0];
    for u in LEVELS {
        let y = u / scale;
        if y >= top {
            break;
        }
        breaks.push(f_inverse(&f, y)?);
    }
    breaks.push(1.0);
    breaks.dedup();
    let k = d.get() as i32;
    let tol = Tolerance { abs: 0.0, rel: 1e-10, max_intervals: 4000 };
    let q = integrate_with_breaks(|r: f64| r.powi(k - 1) * (-scale * f(r)).exp(), &breaks, tol)?;
    if !q.value.is_finite() {
        return Err(crate::Error::Numerical("volume integral is not finite".into()));
    }
    Ok(d.get() as f64 * w * q.value)
}

/// `lim lambda^d E|I| = d! omega_d / omega_{d-1}^d`.
pub fn asymptotic_volume_constant(d: Dimension) -> f64 {
    factorial(d.get() as u64) * d.ball_volume() / d.lower_ball_volume().powi(d.get() as i32)
}

/// Moments of the Poisson hyperplane tessellation whose hyperplanes meeting
/// the unit ball number 2 on average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoudsmitConstants {
    pub d: Dimension,
    /// Mean chord length constant `2 omega_{d-1} / (d omega_d)`.
    pub c_d: f64,
    /// `E V`, the typical cell volume.
    pub mean_typical: f64,
    /// `E V^2 / (E V)^2`.
    pub moment_ratio: f64,
    /// `E V^0`, the zero cell volume.
    pub zero_cell_mean: f64,
}

pub fn goudsmit_constants(d: Dimension) -> Result<GoudsmitConstants> {
    if d.get() < 2 {
        return domain("tessellation constants need d >= 2");
    }
    let k = d.get() as i32;
    let w = d.ball_volume();
    let c_d = 2.0 * d.lower_ball_volume() / (d.get() as f64 * w);
    let mean_typical = (2.0 / c_d).powi(k) / w;
    let moment_ratio = factorial(d.get() as u64) * w * w / 2f64.powi(k);
    Ok(GoudsmitConstants { d, c_d, mean_typical, moment_ratio, zero_cell_mean: moment_ratio * mean_typical })
}

/// `omega_d E[R^d]` from radii in one fixed direction of a rotation
/// invariant star-shaped set.
pub fn radius_moment_volume(d: Dimension, radii: &[f64]) -> Result<Estimate> {
    if radii.is_empty() {
        return domain("need at least one radius");
    }
    if radii.iter().any(|r| !(0.0..=1.0).contains(r)) {
        return domain("radii must lie in [0, 1]");
    }
    let k = d.get() as i32;
    let p: Vec<f64> = radii.iter().map(|r| r.powi(k)).collect();
    Ok(mean_estimate(&p).scaled(d.ball_volume()))
}

/// Hit-or-miss volume of `{x : contains(x)}` using `n` uniform points in
/// the centred ball of radius `bound`, which must contain the set.
pub fn hit_or_miss_volume<C, R>(d: Dimension, bound: f64, n: usize, contains: C, rng: &mut R) -> Result<Estimate>
where
    C: Fn(&[f64]) -> bool,
    R: Rng + ?Sized,
{
    if !(bound > 0.0) || n == 0 {
        return domain(format!("need bound > 0 and n >= 1 (got {bound}, {n})"));
    }
    let dd = d.get();
    let mut x = vec![0.0; dd];
    let mut hits = 0;
    for _ in 0..n {
        random_direction(dd, rng, &mut x);
        let r = bound * open01(rng).powf(1.0 / dd as f64);
        x.iter_mut().for_each(|v| *v *= r);
        if contains(&x) {
            hits += 1;
        }
    }
    Ok(proportion(hits, n).scaled(d.ball_volume() * bound.powi(dd as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytics::{f_closed_form_2d, g_sum, RadiusLaw};
    use crate::geom::lune_fraction;
    use crate::rng::RngStream;
    use std::f64::consts::PI;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    #[test]
    fn limit_constants() {
        assert!((asymptotic_volume_constant(dim(2)) - PI / 2.0).abs() < 1e-14);
        assert!((asymptotic_volume_constant(dim(1)) - 2.0).abs() < 1e-14);
        assert!((asymptotic_volume_constant(dim(3)) - 8.0 / (PI * PI)).abs() < 1e-14);
    }

    #[test]
    fn zero_intensity_volume_is_the_ball() {
        for d in 1..=4 {
            let v = expected_volume_quadrature(dim(d), 0.0, |r| lune_fraction(dim(d), r).unwrap()).unwrap();
            assert_eq!(v, dim(d).ball_volume());
        }
    }

    #[test]
    fn one_dimensional_volume_in_closed_form() {
        // F(r) = r / 2 and omega_1 = 2: E|U| = 2 (1 - e^{-lambda}) / lambda.
        for lambda in [0.5, 10.0, 1e4] {
            let v = expected_volume_quadrature(dim(1), lambda, |r| r / 2.0).unwrap();
            let exact = -2.0 * (-lambda).exp_m1() / lambda;
            assert!((v / exact - 1.0).abs() < 1e-10, "{v} vs {exact}");
        }
    }

    #[test]
    fn scaled_volumes_approach_the_constant() {
        let f2 = |r: f64| f_closed_form_2d(r).unwrap();
        let f3 = |r: f64| lune_fraction(dim(3), r).unwrap();
        let v = expected_volume_quadrature(dim(2), 1e4, f2).unwrap() * 1e8;
        assert!((v / (PI / 2.0) - 1.0).abs() < 0.01, "{v}");
        let v = expected_volume_quadrature(dim(3), 1e4, f3).unwrap() * 1e12;
        assert!((v / (8.0 / (PI * PI)) - 1.0).abs() < 0.02, "{v}");
        let gaps: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&l| (expected_volume_quadrature(dim(2), l, f2).unwrap() * l * l / (PI / 2.0) - 1.0).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    }

    #[test]
    fn goudsmit_planar_values() {
        let g = goudsmit_constants(dim(2)).unwrap();
        assert!((g.c_d - 2.0 / PI).abs() < 1e-15);
        assert!((g.moment_ratio - PI * PI / 2.0).abs() < 1e-13);
        assert!((g.zero_cell_mean - PI.powi(3) / 2.0).abs() < 1e-12);
        let g3 = goudsmit_constants(dim(3)).unwrap();
        assert!((g3.zero_cell_mean - 64.0 * PI).abs() < 1e-10);
        // E V^0 = d! d^d omega_d^{d+1} / (2^d omega_{d-1}^d)
        for d in 2..=5 {
            let dd = dim(d);
            let g = goudsmit_constants(dd).unwrap();
            let k = d as i32;
            let direct = factorial(d as u64) * (d as f64).powi(k) * dd.ball_volume().powi(k + 1)
                / (2f64.powi(k) * dd.lower_ball_volume().powi(k));
            assert!((g.zero_cell_mean / direct - 1.0).abs() < 1e-12);
        }
        assert!(goudsmit_constants(dim(1)).is_err());
    }

    #[test]
    fn radius_moments() {
        let v = radius_moment_volume(dim(3), &[1.0; 10]).unwrap();
        assert!((v.value - dim(3).ball_volume()).abs() < 1e-15);
        assert!(radius_moment_volume(dim(2), &[]).is_err());
        assert!(radius_moment_volume(dim(2), &[1.5]).is_err());
    }

    #[test]
    fn exact_sampler_moment_matches_quadrature() {
        let law = RadiusLaw::ball(dim(2), 200.0).unwrap();
        let mut rng = RngStream::new(11, 0).rng();
        let radii: Vec<f64> = (0..100_000).map(|_| law.sample(&mut rng)).collect();
        let mc = radius_moment_volume(dim(2), &radii).unwrap();
        let q = expected_volume_quadrature(dim(2), 200.0, |r| law.f(r)).unwrap();
        assert!(mc.within_sigma(q, 3.0), "{mc:?} vs {q}");
    }

    #[test]
    fn halfspace_volume_uses_g() {
        // d = 2 with nu_hat: the limit is pi omega_1^{-2} * 2 = pi/2 as well.
        let v = expected_volume_quadrature(dim(2), 1e4, |r| g_sum(dim(2), r).unwrap()).unwrap() * 1e8;
        assert!((v / (PI / 2.0) - 1.0).abs() < 0.01, "{v}");
    }

    #[test]
    fn hit_or_miss_of_a_disk() {
        let mut rng = RngStream::new(12, 0).rng();
        let e = hit_or_miss_volume(dim(2), 1.0, 200_000, |x| x[0] * x[0] + x[1] * x[1] <= 0.25, &mut rng).unwrap();
        assert!(e.within_sigma(PI / 4.0, 3.5), "{e:?}");
        assert!(hit_or_miss_volume(dim(2), 0.0, 10, |_| true, &mut rng).is_err());
    }
}
