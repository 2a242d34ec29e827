use crate::error::{domain, Result};
use crate::geom::Dimension;
use crate::rng::open01;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

type Cdf = dyn Fn(f64) -> f64 + Send + Sync;

#[derive(Clone)]
enum Law {
    /// `r^d`: radius of a uniform point in the ball.
    Power(i32),
    /// `1 - (1 - r)^d`.
    NuHat(i32),
    Custom(Arc<Cdf>),
}

/// A probability law on `[0, 1]` for the radius of process points.
#[derive(Clone)]
pub struct RadialMeasure {
    name: String,
    law: Law,
}

impl fmt::Debug for RadialMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialMeasure").field("name", &self.name).finish()
    }
}

impl PartialEq for RadialMeasure {
    fn eq(&self, other: &Self) -> bool {
        match (&self.law, &other.law) {
            (Law::Power(a), Law::Power(b)) | (Law::NuHat(a), Law::NuHat(b)) => a == b,
            (Law::Custom(a), Law::Custom(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

/// Bisection tolerance for inverting a custom CDF.
const INVERSE_TOL: f64 = 1e-12;

impl RadialMeasure {
    /// `rho(0, r) = r^d`.
    pub fn uniform_ball(d: Dimension) -> Self {
        Self { name: "rho".into(), law: Law::Power(d.get() as i32) }
    }

    /// `nu_hat(0, r) = 1 - (1 - r)^d`: half-space offsets that match the
    /// tangent distances of the ball model.
    pub fn nu_hat(d: Dimension) -> Self {
        Self { name: "nu_hat".into(), law: Law::NuHat(d.get() as i32) }
    }

    /// A measure given only by its CDF, inverted by bisection.
    ///
    /// Checks `cdf(0) = 0`, `cdf(1) = 1` and monotonicity on a 1001-point grid.
    pub fn from_cdf<F>(name: impl Into<String>, cdf: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if cdf(0.0).abs() > 1e-12 || (cdf(1.0) - 1.0).abs() > 1e-12 {
            return domain("radial CDF must run from 0 at r = 0 to 1 at r = 1");
        }
        let mut prev = 0.0;
        for i in 0..=1000 {
            let v = cdf(i as f64 / 1000.0);
            if !(v >= prev - 1e-15) || v > 1.0 + 1e-12 {
                return domain("radial CDF must be nondecreasing with values in [0, 1]");
            }
            prev = v;
        }
        Ok(Self { name: name.into(), law: Law::Custom(Arc::new(cdf)) })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn cdf(&self, r: f64) -> f64 {
        let r = r.clamp(0.0, 1.0);
        match &self.law {
            Law::Power(d) => r.powi(*d),
            Law::NuHat(d) => 1.0 - (1.0 - r).powi(*d),
            Law::Custom(f) => f(r).clamp(0.0, 1.0),
        }
    }

    /// Smallest `r` with `cdf(r) >= u`.
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        match &self.law {
            Law::Power(d) => u.powf(1.0 / *d as f64),
            Law::NuHat(d) => 1.0 - (1.0 - u).powf(1.0 / *d as f64),
            Law::Custom(f) => {
                let (mut lo, mut hi) = (0.0, 1.0);
                while hi - lo > INVERSE_TOL {
                    let mid = 0.5 * (lo + hi);
                    if f(mid) < u {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                hi
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.inverse_cdf(open01(rng))
    }
}
