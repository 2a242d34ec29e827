//! Discrete probability bounds: coupon collection and Poisson comparisons.

use crate::error::{domain, Result};
use crate::geom::Dimension;
use crate::stats::{proportion, Estimate};
use rand::Rng;
use statrs::distribution::{Discrete, DiscreteCDF, Poisson};
use statrs::function::factorial::binomial;

/// `K * lambda^{ln(1 - a_star)}`, bounding the probability that `ln(lambda)`
/// draws miss some coupon when every coupon has probability at least `a_star`.
pub fn coupon_bound(k: usize, a_star: f64, lambda: f64) -> Result<f64> {
    if k == 0 || !(a_star > 0.0 && a_star <= 1.0 / k as f64 + 1e-15) || !(lambda > 1.0) {
        return domain(format!("coupon bound needs K >= 1, 0 < a* <= 1/K, lambda > 1 (got {k}, {a_star}, {lambda})"));
    }
    if a_star >= 1.0 {
        return Ok(0.0);
    }
    // lambda^{ln(1-a)} = (1-a)^{ln lambda}
    Ok(k as f64 * (lambda.ln() * (-a_star).ln_1p()).exp())
}

/// `P(T > t)` for `K` equally likely coupons, by inclusion–exclusion.
pub fn coupon_exact_uniform(k: usize, t: u64) -> f64 {
    (1..=k)
        .map(|j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            sign * binomial(k as u64, j as u64) * (1.0 - j as f64 / k as f64).powi(t as i32)
        })
        .sum()
}

/// Monte Carlo estimate of `P(T > t)`: the chance that `t` iid draws from
/// `probs` leave some coupon uncollected.
pub fn coupon_empirical<R: Rng + ?Sized>(
    probs: &[f64],
    t: u64,
    replicates: usize,
    rng: &mut R,
) -> Result<Estimate> {
    if probs.is_empty() || probs.iter().any(|&p| !(p >= 0.0)) || (probs.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
        return domain("coupon probabilities must be nonnegative and sum to 1");
    }
    if replicates == 0 {
        return domain("need at least one replicate");
    }
    let k = probs.len();
    let mut cum = Vec::with_capacity(k);
    let mut acc = 0.0;
    for p in probs {
        acc += p;
        cum.push(acc);
    }
    let mut seen = vec![false; k];
    let mut incomplete = 0;
    for _ in 0..replicates {
        seen.iter_mut().for_each(|s| *s = false);
        let mut missing = k;
        for _ in 0..t {
            let u: f64 = rng.random::<f64>() * acc;
            let i = cum.partition_point(|&c| c <= u).min(k - 1);
            if !seen[i] {
                seen[i] = true;
                missing -= 1;
                if missing == 0 {
                    break;
                }
            }
        }
        if missing > 0 {
            incomplete += 1;
        }
    }
    Ok(proportion(incomplete, replicates))
}

/// Exact total variation distance between `Poisson(mu)` and
/// `Poisson(mu + delta)`, summing pmf differences in log space over every
/// `k` whose mass can matter in double precision.
pub fn poisson_tv(mu: f64, delta: f64) -> Result<f64> {
    if !(mu > 0.0) || !(delta >= 0.0) || !mu.is_finite() || !delta.is_finite() {
        return domain(format!("need mu > 0 and delta >= 0 (got {mu}, {delta})"));
    }
    if delta == 0.0 {
        return Ok(0.0);
    }
    let p = Poisson::new(mu).map_err(|e| crate::Error::Numerical(e.to_string()))?;
    let q = Poisson::new(mu + delta).map_err(|e| crate::Error::Numerical(e.to_string()))?;
    let top = mu + delta;
    let spread = 40.0 * top.sqrt() + 60.0;
    let lo = (mu - spread).max(0.0).floor() as u64;
    let hi = (top + spread).ceil() as u64;
    let mut terms: Vec<f64> = (lo..=hi).map(|k| (p.ln_pmf(k).exp() - q.ln_pmf(k).exp()).abs()).collect();
    // Mass outside [lo, hi] is below 1e-300 for both laws.
    terms.sort_by(f64::total_cmp);
    Ok(0.5 * terms.iter().sum::<f64>())
}

/// Outcome of the shell-occupancy tail check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailCheck {
    pub lambda: f64,
    pub eps: f64,
    /// `lambda * |Sh(eps)|`.
    pub mean: f64,
    /// `P(Y < ln lambda)` for `Y ~ Poisson(mean)`.
    pub probability: f64,
    /// `probability < 1 / lambda`.
    pub holds: bool,
}

/// Check `P(Y < ln lambda) < 1/lambda` for `Y ~ Poisson(lambda |Sh(eps)|)`,
/// where `Sh(eps)` is the annulus of half-width `eps = ln^2(lambda)/lambda`.
pub fn poisson_tail_check(d: Dimension, lambda: f64) -> Result<TailCheck> {
    if !(lambda > 1.0) || !lambda.is_finite() {
        return domain(format!("tail check needs lambda > 1 (got {lambda})"));
    }
    let l = lambda.ln();
    let eps = l * l / lambda;
    let k = d.get() as i32;
    let shell = d.ball_volume() * ((1.0 + eps).powi(k) - (1.0 - eps).max(0.0).powi(k));
    let mean = lambda * shell;
    let p = Poisson::new(mean).map_err(|e| crate::Error::Numerical(e.to_string()))?;
    // Y < ln(lambda) means Y <= ceil(ln lambda) - 1.
    let cut = l.ceil() as u64;
    let probability = if cut == 0 { 0.0 } else { p.cdf(cut - 1) };
    Ok(TailCheck { lambda, eps, mean, probability, holds: probability < 1.0 / lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;

    #[test]
    fn coupon_bound_examples() {
        assert_eq!(coupon_bound(1, 1.0, 5.0).unwrap(), 0.0);
        let b = coupon_bound(6, 1.0 / 6.0, 10f64.exp()).unwrap();
        assert!((b - 6.0 * (5.0f64 / 6.0).powi(10)).abs() < 1e-12);
        assert!((b - 0.96903).abs() < 1e-5);
        let b = coupon_bound(6, 1.0 / 6.0, 100f64.exp()).unwrap();
        assert!((b / 7.25e-8 - 1.0).abs() < 1e-3, "{b}");
        assert!(coupon_bound(6, 0.5, 10.0).is_err());
        assert!(coupon_bound(6, 0.1, 1.0).is_err());
        assert!(coupon_bound(0, 0.1, 10.0).is_err());
    }

    #[test]
    fn single_coupon_always_collected() {
        let mut rng = RngStream::new(1, 0).rng();
        let e = coupon_empirical(&[1.0], 1, 1000, &mut rng).unwrap();
        assert_eq!(e.value, 0.0);
        assert_eq!(coupon_exact_uniform(1, 1), 0.0);
    }

    #[test]
    fn coupon_empirical_matches_inclusion_exclusion() {
        let mut rng = RngStream::new(2, 0).rng();
        let exact = coupon_exact_uniform(6, 30);
        let e = coupon_empirical(&[1.0 / 6.0; 6], 30, 200_000, &mut rng).unwrap();
        assert!(e.within_sigma(exact, 3.0), "{e:?} vs {exact}");
        let bound = coupon_bound(6, 1.0 / 6.0, 30f64.exp()).unwrap();
        assert!(e.value <= bound + 3.0 * e.std_err);
    }

    #[test]
    fn nonuniform_coupons_respect_bound() {
        let mut rng = RngStream::new(3, 0).rng();
        let probs = [0.1, 0.1, 0.2, 0.2, 0.2, 0.2];
        for t in [10u64, 20, 40] {
            let e = coupon_empirical(&probs, t, 50_000, &mut rng).unwrap();
            let bound = coupon_bound(6, 0.1, (t as f64).exp()).unwrap();
            assert!(e.value <= bound + 3.0 * e.std_err, "t={t}: {e:?} > {bound}");
        }
    }

    #[test]
    fn invalid_coupon_distribution() {
        let mut rng = RngStream::new(4, 0).rng();
        assert!(coupon_empirical(&[0.5, 0.4], 3, 10, &mut rng).is_err());
        assert!(coupon_empirical(&[], 3, 10, &mut rng).is_err());
    }

    /// Naive pmf summation in plain probability space.
    fn tv_naive(mu: f64, nu: f64) -> f64 {
        let (mut p, mut q) = ((-mu).exp(), (-nu).exp());
        let mut tv = (p - q).abs();
        for k in 1..400 {
            p *= mu / k as f64;
            q *= nu / k as f64;
            tv += (p - q).abs();
        }
        0.5 * tv
    }

    #[test]
    fn poisson_tv_values() {
        assert_eq!(poisson_tv(5.0, 0.0).unwrap(), 0.0);
        let tv = poisson_tv(5.0, 0.1).unwrap();
        assert!(tv <= 0.1);
        assert!((tv - tv_naive(5.0, 5.1)).abs() < 1e-14);
        for &mu in &[0.5, 3.0, 20.0, 100.0] {
            for &delta in &[1e-3, 0.05, 0.5, 2.0] {
                let tv = poisson_tv(mu, delta).unwrap();
                assert!(tv <= delta + 1e-15, "mu={mu} delta={delta}");
                assert!((tv - tv_naive(mu, mu + delta)).abs() < 1e-12);
            }
        }
        // Large means stay finite.
        let tv = poisson_tv(1e6, 10.0).unwrap();
        assert!(tv > 0.0 && tv <= 10.0);
        assert!(poisson_tv(0.0, 1.0).is_err());
        assert!(poisson_tv(1.0, -1.0).is_err());
    }

    #[test]
    fn tail_check_at_one_million() {
        let t = poisson_tail_check(Dimension::new(2).unwrap(), 1e6).unwrap();
        assert!(t.holds);
        assert!(t.probability < 1e-6);
        assert!(poisson_tail_check(Dimension::new(2).unwrap(), 0.5).is_err());
    }
}
