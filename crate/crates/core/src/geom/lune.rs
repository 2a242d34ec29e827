use super::Dimension;
use crate::error::{domain, Result};
use statrs::function::beta::beta_reg;
use std::f64::consts::FRAC_PI_2;

/// Volume of the cap `{x in B : x_1 >= 1 - h}` of the unit ball, `0 <= h <= 2`.
///
/// `omega_d / 2 * I_{2h - h^2}((d+1)/2, 1/2)` for `h <= 1`, and the
/// complement of the opposite cap above that.
pub fn spherical_cap_volume(d: Dimension, h: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&h) {
        return domain(format!("cap height {h} outside [0, 2]"));
    }
    let w = d.ball_volume();
    if h > 1.0 {
        return Ok(w - spherical_cap_volume(d, 2.0 - h)?);
    }
    let x = (2.0 * h - h * h).clamp(0.0, 1.0);
    Ok(0.5 * w * beta_reg((d.get() as f64 + 1.0) / 2.0, 0.5, x))
}

/// Normalised lune volume `F(r) = |B \ (r e_1 + B)| / omega_d` for `0 <= r <= 2`.
///
/// The two balls overlap in two caps of height `1 - r/2`, so
/// `F(r) = 1 - I_{1 - r^2/4}((d+1)/2, 1/2)`. We evaluate the complementary
/// form `I_{r^2/4}(1/2, (d+1)/2)`, which keeps full relative precision as
/// `r -> 0`.
pub fn lune_fraction(d: Dimension, r: f64) -> Result<f64> {
    if !(0.0..=2.0).contains(&r) {
        return domain(format!("lune offset {r} outside [0, 2]"));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let x = (r * r / 4.0).min(1.0);
    Ok(beta_reg(0.5, (d.get() as f64 + 1.0) / 2.0, x))
}

/// `|Wedge(r)| = omega_{d-1} r`: half the unit sphere swept a distance `r`
/// along `e_1`.
pub fn wedge_volume(d: Dimension, r: f64) -> Result<f64> {
    if r < 0.0 || r.is_nan() {
        return domain(format!("wedge length {r} is negative"));
    }
    Ok(d.lower_ball_volume() * r)
}

/// Hausdorff distance between the spherical cap and the flat cap of angular
/// radius `delta` about a common axis, `1 - cos(delta)`.
pub fn cap_hyp_distance(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < FRAC_PI_2) {
        return domain(format!("cap angle {delta} outside (0, pi/2)"));
    }
    // 1 - cos(x) = 2 sin^2(x/2), without cancellation.
    let s = (delta / 2.0).sin();
    Ok(2.0 * s * s)
}

/// Whether `1 - cos(delta) <= delta^2`.
pub fn cap_hyp_bound_holds(delta: f64) -> Result<bool> {
    Ok(cap_hyp_distance(delta)? <= delta * delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use proptest::prelude::*;
    use rand::Rng;
    use std::f64::consts::PI;

    fn dim(d: usize) -> Dimension {
        Dimension::new(d).unwrap()
    }

    /// Circle-intersection closed form in the plane.
    fn lune_2d_closed(r: f64) -> f64 {
        1.0 - (2.0 * (r / 2.0).acos() - r * (1.0 - r * r / 4.0).sqrt()) / PI
    }

    #[test]
    fn lune_endpoints() {
        for d in 1..=6 {
            assert_eq!(lune_fraction(dim(d), 0.0).unwrap(), 0.0);
            assert!((lune_fraction(dim(d), 2.0).unwrap() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn lune_unit_offset_in_plane() {
        let expected = 1.0 / 3.0 + 3f64.sqrt() / (2.0 * PI);
        assert!((lune_fraction(dim(2), 1.0).unwrap() - expected).abs() < 1e-14);
        assert!((expected - 0.609_00).abs() < 1e-5);
    }

    #[test]
    fn lune_unit_offset_hit_or_miss() {
        // Uniform points in the disk that are farther than 1 from e_1.
        let mut rng = RngStream::new(5, 0).rng();
        let n = 400_000;
        let mut inside = 0usize;
        let mut hits = 0usize;
        while inside < n {
            let x: f64 = rng.random_range(-1.0..1.0);
            let y: f64 = rng.random_range(-1.0..1.0);
            if x * x + y * y > 1.0 {
                continue;
            }
            inside += 1;
            if (x - 1.0).powi(2) + y * y > 1.0 {
                hits += 1;
            }
        }
        let p = hits as f64 / n as f64;
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let f = lune_fraction(dim(2), 1.0).unwrap();
        assert!((p - f).abs() < 4.0 * se, "{p} vs {f}");
    }

    #[test]
    fn lune_matches_planar_closed_form() {
        for i in 0..=200 {
            let r = 2.0 * i as f64 / 200.0;
            let a = lune_fraction(dim(2), r).unwrap();
            assert!((a - lune_2d_closed(r)).abs() < 1e-12, "r={r}");
        }
    }

    #[test]
    fn lune_matches_3d_closed_form() {
        // Two unit balls at distance r overlap in pi (4 + r)(2 - r)^2 / 12.
        for i in 0..=40 {
            let r = 2.0 * i as f64 / 40.0;
            let overlap = PI * (4.0 + r) * (2.0 - r).powi(2) / 12.0;
            let expected = 1.0 - overlap / (4.0 * PI / 3.0);
            assert!((lune_fraction(dim(3), r).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn lune_linear_term() {
        let r = 1e-4;
        let got = lune_fraction(dim(2), r).unwrap();
        let lin = 2e-4 / PI;
        assert!(((got - lin) / lin).abs() < 1e-7);
        for d in 1..=6 {
            let dd = dim(d);
            let c = dd.lower_ball_volume() / dd.ball_volume();
            for &r in &[1e-2, 5e-3, 1e-3] {
                let slope = lune_fraction(dd, r).unwrap() / r;
                assert!((slope - c).abs() <= c * r * r, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn lune_agrees_with_cap_difference() {
        for d in 1..=8 {
            let dd = dim(d);
            for &r in &[0.05, 0.5, 1.3, 1.9] {
                let caps = 2.0 * spherical_cap_volume(dd, 1.0 - r / 2.0).unwrap();
                let f = 1.0 - caps / dd.ball_volume();
                assert!((lune_fraction(dd, r).unwrap() - f).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lune_domain() {
        assert!(lune_fraction(dim(2), -0.1).is_err());
        assert!(lune_fraction(dim(2), 2.1).is_err());
    }

    #[test]
    fn wedge_examples() {
        assert!((wedge_volume(dim(2), 0.1).unwrap() - 0.2).abs() < 1e-15);
        assert!((wedge_volume(dim(3), 0.1).unwrap() - 0.1 * PI).abs() < 1e-15);
        assert!(wedge_volume(dim(2), -1.0).is_err());
    }

    #[test]
    fn wedge_lune_cubic_bound() {
        for d in 1..=4 {
            let dd = dim(d);
            for i in 1..=30 {
                let r = 0.01 * i as f64;
                let gap = wedge_volume(dd, r).unwrap() - dd.ball_volume() * lune_fraction(dd, r).unwrap();
                let bound = (d as f64 - 1.0) * dd.lower_ball_volume() * r.powi(3) / 16.0;
                assert!(gap >= -1e-15, "d={d} r={r} gap={gap}");
                assert!(gap <= 1.05 * bound + 1e-15, "d={d} r={r}");
            }
        }
        let gap = wedge_volume(dim(2), 0.2).unwrap() - PI * lune_fraction(dim(2), 0.2).unwrap();
        assert!((0.0..=2.0 * 0.008 / 16.0 * 1.05).contains(&gap));
    }

    #[test]
    fn cap_hyp_examples() {
        assert!((cap_hyp_distance(0.1).unwrap() - 0.004_995_8).abs() < 1e-7);
        assert!((cap_hyp_distance(0.5).unwrap() - 0.122_42).abs() < 1e-5);
        assert!(cap_hyp_distance(1e-9).unwrap() < 1e-17);
        assert!(cap_hyp_distance(0.0).is_err());
        assert!(cap_hyp_distance(FRAC_PI_2).is_err());
    }

    proptest! {
        #[test]
        fn lune_is_strictly_increasing(d in 1usize..=6, a in 0.0f64..1.99, b in 0.0f64..1.99) {
            prop_assume!((a - b).abs() > 1e-4);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let dd = dim(d);
            prop_assert!(lune_fraction(dd, lo).unwrap() < lune_fraction(dd, hi).unwrap());
        }

        #[test]
        fn cap_hyp_below_square(delta in 1e-6f64..=0.5) {
            prop_assert!(cap_hyp_bound_holds(delta).unwrap());
        }
    }
}
