use crate::error::{domain, Result};
use crate::geom::Dimension;

/// Radial laws on the shell of width `eps` and the monotone transport between
/// them, in the depth coordinate `w = 1 - |x|`.
///
/// * `H(w) = P(R <= 1 - w)` for a uniform point of the inner shell.
/// * `H'(w)` is the same probability for the annulus after every outer point
///   `s theta` has been moved to `(s - 2) theta`.
///
/// Both are decreasing with `H(0) = H'(0) = 1` and `H(eps) = H'(eps) = 0`.
/// Matching quantiles, `w = H^{-1}(H'(w'))` carries a shifted depth `w'`
/// onto a depth with the uniform inner-shell law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellTransport {
    d: i32,
    eps: f64,
    inner_mass: f64,
    annulus_mass: f64,
}

impl ShellTransport {
    pub fn new(d: Dimension, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return domain(format!("shell width {eps} outside (0, 1)"));
        }
        let k = d.get() as i32;
        // 1 - (1-e)^k and (1+e)^k - (1-e)^k, written to avoid cancellation.
        let inner_mass = -(k as f64 * (-eps).ln_1p()).exp_m1();
        let annulus_mass = (k as f64 * eps.ln_1p()).exp_m1() + inner_mass;
        Ok(Self { d: k, eps, inner_mass, annulus_mass })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    fn check(&self, w: f64) -> Result<()> {
        if (0.0..=self.eps).contains(&w) {
            Ok(())
        } else {
            domain(format!("depth {w} outside [0, {}]", self.eps))
        }
    }

    /// `((1-w)^d - (1-eps)^d) / (1 - (1-eps)^d)`.
    pub fn h(&self, w: f64) -> Result<f64> {
        self.check(w)?;
        Ok(self.h_raw(w))
    }

    fn h_raw(&self, w: f64) -> f64 {
        let a = (1.0 - w).powi(self.d);
        let b = (1.0 - self.eps).powi(self.d);
        ((a - b) / self.inner_mass).clamp(0.0, 1.0)
    }

    /// `1 - ((1+w)^d - (1-w)^d) / ((1+eps)^d - (1-eps)^d)`.
    pub fn h_prime(&self, w: f64) -> Result<f64> {
        self.check(w)?;
        Ok(self.h_prime_raw(w))
    }

    fn h_prime_raw(&self, w: f64) -> f64 {
        let s = (1.0 + w).powi(self.d) - (1.0 - w).powi(self.d);
        (1.0 - s / self.annulus_mass).clamp(0.0, 1.0)
    }

    /// Depth at which `H` takes the value `u`, in closed form.
    pub fn h_inv(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return domain(format!("probability {u} outside [0, 1]"));
        }
        let b = (1.0 - self.eps).powi(self.d);
        let w = 1.0 - (b + u * self.inner_mass).powf(1.0 / self.d as f64);
        Ok(w.clamp(0.0, self.eps))
    }

    /// Depth at which `H'` takes the value `u`, by bisection (closed form for
    /// d <= 2, where `(1+w)^d - (1-w)^d` is linear in `w`).
    pub fn h_prime_inv(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return domain(format!("probability {u} outside [0, 1]"));
        }
        let target = (1.0 - u) * self.annulus_mass;
        if self.d <= 2 {
            return Ok((target / (2.0 * self.d as f64)).clamp(0.0, self.eps));
        }
        let (mut lo, mut hi) = (0.0, self.eps);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let s = (1.0 + mid).powi(self.d) - (1.0 - mid).powi(self.d);
            if s < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Transport a shifted depth onto the inner-shell law, `H^{-1}(H'(w'))`.
    pub fn transport(&self, w_shifted: f64) -> Result<f64> {
        self.h_inv(self.h_prime(w_shifted)?)
    }

    /// The inverse transport `H'^{-1}(H(w))`.
    pub fn inverse_transport(&self, w: f64) -> Result<f64> {
        self.h_prime_inv(self.h(w)?)
    }

    /// `sup |w - H'^{-1}(H(w))|` and `sup |w - H^{-1}(H'(w))|` over `n + 1`
    /// equally spaced depths.
    pub fn sup_displacement(&self, n: usize) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for i in 0..=n {
            let w = self.eps * i as f64 / n as f64;
            worst = worst
                .max((w - self.inverse_transport(w)?).abs())
                .max((w - self.transport(w)?).abs());
        }
        Ok(worst)
    }
}
