use crate::error::{domain, Result};

/// Kolmogorov survival function `Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2)`.
pub fn kolmogorov_p(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 0.2 {
        // The alternating series converges too slowly here and Q is 1 to
        // double precision.
        return 1.0;
    }
    let mut sum = 0.0;
    let mut sign = 1.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += sign * term;
        if term < 1e-17 * sum.abs() {
            break;
        }
        sign = -sign;
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

fn sorted(xs: &[f64]) -> Result<Vec<f64>> {
    if xs.is_empty() {
        return domain("KS statistic needs a nonempty sample");
    }
    if xs.iter().any(|x| x.is_nan()) {
        return domain("KS sample contains NaN");
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// `sup_x |F_n(x) - cdf(x)|`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    let v = sorted(samples)?;
    let n = v.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in v.iter().enumerate() {
        let c = cdf(x);
        d = d.max((i + 1) as f64 / n - c).max(c - i as f64 / n);
    }
    Ok(d)
}

/// Statistic and asymptotic p-value of the one-sample test.
pub fn ks_one_sample<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<(f64, f64)> {
    let d = ks_statistic(samples, cdf)?;
    let en = (samples.len() as f64).sqrt();
    Ok((d, kolmogorov_p((en + 0.12 + 0.11 / en) * d)))
}

/// Two-sample statistic and p-value, with the effective size
/// `sqrt(n m / (n + m))` and the usual small-sample correction.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    let (a, b) = (sorted(a)?, sorted(b)?);
    let (n, m) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    let en = (n * m / (n + m)).sqrt();
    Ok((d, kolmogorov_p((en + 0.12 + 0.11 / en) * d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{exp1, RngStream};
    use rand::Rng;

    #[test]
    fn kolmogorov_values() {
        assert!((kolmogorov_p(1.36) - 0.0494).abs() < 1e-3);
        assert!((kolmogorov_p(1.95) - 0.001).abs() < 2e-4);
        assert_eq!(kolmogorov_p(0.0), 1.0);
        assert!(kolmogorov_p(5.0) < 1e-20);
    }

    #[test]
    fn statistic_of_own_cdf_is_small() {
        let n = 100_000;
        let mut passes = 0;
        for seed in 0..20 {
            let mut rng = RngStream::new(seed, 0).rng();
            let xs: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let d = ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap();
            if d < 1.95 / (n as f64).sqrt() {
                passes += 1;
            }
        }
        assert!(passes >= 19);
    }

    #[test]
    fn degenerate_and_mismatched_samples() {
        let d = ks_statistic(&[0.5; 1000], |x| x.clamp(0.0, 1.0)).unwrap();
        assert!((d - 0.5).abs() < 1e-12);
        let d = ks_statistic(&[0.0; 1000], |x| 1.0 - (-x).exp()).unwrap();
        assert!(d > 0.99);
        let mut rng = RngStream::new(1, 0).rng();
        let xs: Vec<f64> = (0..10_000).map(|_| exp1(&mut rng)).collect();
        assert!(ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap() > 0.3);
        assert!(ks_statistic(&[], |x| x).is_err());
    }

    #[test]
    fn two_sample() {
        let mut rng = RngStream::new(2, 0).rng();
        let a: Vec<f64> = (0..20_000).map(|_| exp1(&mut rng)).collect();
        let b: Vec<f64> = (0..30_000).map(|_| exp1(&mut rng)).collect();
        let (_, p) = ks_two_sample(&a, &b).unwrap();
        assert!(p > 0.001);
        let c: Vec<f64> = b.iter().map(|x| 1.1 * x).collect();
        let (d, p) = ks_two_sample(&a, &c).unwrap();
        assert!(p < 1e-6, "{d} {p}");
        let (d, p) = ks_two_sample(&a, &a).unwrap();
        assert_eq!((d, p), (0.0, 1.0));
    }
}
