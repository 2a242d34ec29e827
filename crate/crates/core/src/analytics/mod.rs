//! Closed forms, exact radius laws, volume integrals and goodness-of-fit
//! tests.

mod ks;
mod volume;

pub use ks::{kolmogorov_p, ks_one_sample, ks_statistic, ks_two_sample};
pub use volume::{
    asymptotic_volume_constant, expected_volume_quadrature, goudsmit_constants, hit_or_miss_volume,
    radius_moment_volume, GoudsmitConstants,
};

use crate::error::{domain, Result};
use crate::geom::{lune_fraction, random_direction, Dimension};
use crate::models::ShapeKind;
use crate::ppp::RadialMeasure;
use crate::quad::{integrate, Tolerance};
use crate::rng::exp1;
use crate::stats::{proportion, Estimate};
use rand::Rng;
use statrs::function::factorial::binomial;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;
use std::sync::Arc;

/// Planar lune fraction `1 - (2 acos(r/2) - r sqrt(1 - r^2/4)) / pi`.
pub fn f_closed_form_2d(r: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&r) {
        return domain(format!("offset {r} outside [0, 2]"));
    }
    Ok(1.0 - (2.0 * (r / 2.0).acos() - r * (1.0 - r * r / 4.0).sqrt()) / PI)
}

/// `int_0^{pi/2} cos^k(a) sin^{d-2}(a) da = Gamma((d-1)/2) Gamma((k+1)/2) / (2 Gamma((k+d)/2))`.
pub fn beta_identity(k: u32, d: Dimension) -> Result<f64> {
    if d.get() < 2 {
        return domain("latitude integral needs d >= 2");
    }
    let (k, d) = (k as f64, d.get() as f64);
    Ok(0.5 * (ln_gamma((d - 1.0) / 2.0) + ln_gamma((k + 1.0) / 2.0) - ln_gamma((k + d) / 2.0)).exp())
}

/// The same latitude integral by adaptive quadrature.
pub fn beta_identity_quadrature(k: u32, d: Dimension) -> Result<f64> {
    if d.get() < 2 {
        return domain("latitude integral needs d >= 2");
    }
    let m = d.get() as i32 - 2;
    let tol = Tolerance { abs: 1e-15, rel: 1e-13, max_intervals: 2000 };
    Ok(integrate(|a: f64| a.cos().powi(k as i32) * a.sin().powi(m), 0.0, PI / 2.0, tol)?.value)
}

fn check_unit(r: f64) -> Result<()> {
    if (0.0..=1.0).contains(&r) {
        Ok(())
    } else {
        domain(format!("radius {r} outside [0, 1]"))
    }
}

/// Half-space lune fraction `G(r)` for the radial law `nu_hat`, by the
/// finite alternating sum over `k = 1..d`. In `d = 1`, `G(r) = r / 2`.
pub fn g_sum(d: Dimension, r: f64) -> Result<f64> {
    check_unit(r)?;
    if d.get() == 1 {
        return Ok(r / 2.0);
    }
    let dd = d.get() as u64;
    let pre = (d.get() - 1) as f64 * d.lower_ball_volume() / d.sphere_area();
    let mut sum = 0.0;
    for k in 1..=dd {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * binomial(dd, k) * beta_identity(k as u32, d)? * r.powi(k as i32);
    }
    Ok(pre * sum)
}

/// `G(r)` from the latitude integral
/// `((d-1) omega_{d-1} / (d omega_d)) int_0^{pi/2} (1 - (1 - r cos a)^d) sin^{d-2}(a) da`.
pub fn g_quadrature(d: Dimension, r: f64) -> Result<f64> {
    check_unit(r)?;
    if d.get() == 1 {
        return Ok(r / 2.0);
    }
    let k = d.get() as i32;
    let pre = (d.get() - 1) as f64 * d.lower_ball_volume() / d.sphere_area();
    let tol = Tolerance { abs: 1e-15, rel: 1e-13, max_intervals: 2000 };
    let f = |a: f64| -((k as f64) * (-r * a.cos()).ln_1p()).exp_m1() * a.sin().powi(k - 2);
    Ok(pre * integrate(f, 0.0, PI / 2.0, tol)?.value)
}

/// Solve `f(r) = y` on `[0, 1]` by bisection to `1e-12`, for increasing `f`
/// with `f(0) = 0`.
pub fn f_inverse<F: Fn(f64) -> f64>(f: F, y: f64) -> Result<f64> {
    let top = f(1.0);
    if !(0.0..=top).contains(&y) {
        return domain(format!("value {y} outside [0, F(1) = {top}]"));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

type LuneFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Law of the radius in a fixed direction: `P(R > r) = exp(-lambda omega_d F(r))`
/// for `r < 1`, with an atom `exp(-lambda omega_d F(1))` at 1.
#[derive(Clone)]
pub struct RadiusLaw {
    d: Dimension,
    lambda: f64,
    f: Arc<LuneFn>,
    f_one: f64,
}

impl std::fmt::Debug for RadiusLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadiusLaw").field("d", &self.d).field("lambda", &self.lambda).finish()
    }
}

impl RadiusLaw {
    pub fn new<F>(d: Dimension, lambda: f64, f: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return domain(format!("intensity {lambda} must be finite and nonnegative"));
        }
        let f_one = f(1.0);
        Ok(Self { d, lambda, f: Arc::new(f), f_one })
    }

    /// The ball model: `F` is the lune fraction (closed form in the plane).
    pub fn ball(d: Dimension, lambda: f64) -> Result<Self> {
        if d.get() == 2 {
            Self::new(d, lambda, |r| f_closed_form_2d(r).unwrap_or(f64::NAN))
        } else {
            Self::new(d, lambda, move |r| lune_fraction(d, r).unwrap_or(f64::NAN))
        }
    }

    /// The half-space model with radial law `nu_hat`.
    pub fn halfspace(d: Dimension, lambda: f64) -> Result<Self> {
        Self::new(d, lambda, move |r| g_sum(d, r).unwrap_or(f64::NAN))
    }

    pub fn dim(&self) -> Dimension {
        self.d
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn f(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    /// `lambda omega_d`.
    pub fn scale(&self) -> f64 {
        self.lambda * self.d.ball_volume()
    }

    /// `lambda omega_d F(r)`, which is `Exp(1)` truncated at `lambda omega_d F(1)`.
    pub fn transform(&self, r: f64) -> f64 {
        self.scale() * self.f(r)
    }

    pub fn survival(&self, r: f64) -> f64 {
        if r >= 1.0 {
            0.0
        } else if r <= 0.0 {
            1.0
        } else {
            (-self.transform(r)).exp()
        }
    }

    /// Probability of the atom at 1.
    pub fn atom(&self) -> f64 {
        (-self.scale() * self.f_one).exp()
    }

    /// Inversion sampler: `E ~ Exp(1)`, `z = E / (lambda omega_d)`, and
    /// `F^{-1}(z)` when `z < F(1)`, else 1.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let e = exp1(rng);
        let s = self.scale();
        if s == 0.0 {
            return 1.0;
        }
        let z = e / s;
        if z >= self.f_one {
            return 1.0;
        }
        f_inverse(|r| self.f(r), z).unwrap_or(1.0)
    }
}

/// One exact draw of the radius for lune function `f`.
pub fn sample_radius_exact<F, R>(d: Dimension, lambda: f64, f: F, rng: &mut R) -> Result<f64>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
    R: Rng + ?Sized,
{
    Ok(RadiusLaw::new(d, lambda, f)?.sample(rng))
}

/// Monte Carlo `F^mu_A(r) = P(r e_1 not in A + C)` with `C` drawn from the
/// product measure `mu x uniform angle`.
pub fn f_generic_mc<R: Rng + ?Sized>(
    shape: ShapeKind,
    mu: &RadialMeasure,
    d: Dimension,
    r: f64,
    n: usize,
    rng: &mut R,
) -> Result<Estimate> {
    shape.validate(d)?;
    check_unit(r)?;
    if n == 0 {
        return domain("need at least one sample");
    }
    let dd = d.get();
    let mut x = vec![0.0; dd];
    x[0] = r;
    let mut c = vec![0.0; dd];
    let mut misses = 0;
    for _ in 0..n {
        let s = mu.sample(rng);
        random_direction(dd, rng, &mut c);
        c.iter_mut().for_each(|v| *v *= s);
        if !shape.contains(&c, &x) {
            misses += 1;
        }
    }
    Ok(proportion(misses, n))
}

/// Exact planar cone lune fraction for centres uniform in the disk, valid
/// while the excluded apex region stays inside the disk
/// (`r <= sin beta` for `beta <= pi/2`, any `r <= 1` otherwise).
///
/// Apexes from which the segment `[0, r e_1]` subtends an angle of at least
/// `beta` exclude `r e_1`. That region is bounded by arcs of the two circles
/// of radius `R = r / (2 sin beta)` through both endpoints: their union for
/// acute `beta`, their lens for obtuse `beta`. So `F` is exactly quadratic
/// in `r`.
pub fn cone_lune_fraction(beta: f64, r: f64) -> Result<f64> {
    if !(beta > 0.0 && beta < PI) {
        return domain(format!("cone half-angle {beta} outside (0, pi)"));
    }
    check_unit(r)?;
    let acute = beta <= PI / 2.0;
    if acute && r > beta.sin() {
        return domain(format!("offset {r} beyond sin(beta) = {}", beta.sin()));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let big_r = r / (2.0 * beta.sin());
    let sep = 2.0 * big_r * beta.cos().abs();
    let lens = 2.0 * big_r * big_r * (sep / (2.0 * big_r)).min(1.0).acos()
        - 0.5 * sep * (4.0 * big_r * big_r - sep * sep).max(0.0).sqrt();
    let area = if acute { 2.0 * PI * big_r * big_r - lens } else { lens };
    Ok(area / PI)
}
