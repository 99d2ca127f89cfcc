use num_complex::Complex64;

/// Below this value of `|z·t|` the kernel switches to its Taylor series.
pub const SERIES_SWITCH: f64 = 1e-4;

/// `(e^{z t} - 1) / z`, the first exponential-integrator kernel scaled by `t`.
///
/// The removable singularity at `z = 0` is handled with a fifth-order Taylor
/// series for `|z t| < SERIES_SWITCH`; above it `e^{zt} - 1` is formed with
/// `expm1`-style cancellation-free arithmetic so both branches meet to
/// machine precision.
///
/// # Panics
///
/// If `t` is negative or not finite.
pub fn phi1(z: Complex64, t: f64) -> Complex64 {
    assert!(t.is_finite() && t >= 0.0, "phi1 needs a finite t >= 0, got {t}");
    let zt = z * t;
    if zt.norm() < SERIES_SWITCH {
        let series = 1.0 + zt * (0.5 + zt * (1.0 / 6.0 + zt * (1.0 / 24.0 + zt * (1.0 / 120.0))));
        series * t
    } else {
        exp_m1(zt) / z
    }
}

/// `e^{w} - 1` without cancellation for small `|w|`.
pub fn exp_m1(w: Complex64) -> Complex64 {
    let (sin, cos) = w.im.sin_cos();
    let em1 = w.re.exp_m1();
    // cos y - 1 = -2 sin²(y/2)
    let half = (0.5 * w.im).sin();
    let cosm1 = -2.0 * half * half;
    Complex64::new(em1 * cos + cosm1, (em1 + 1.0) * sin)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn removable_singularity() {
        assert_eq!(phi1(Complex64::new(0.0, 0.0), 5.0), Complex64::new(5.0, 0.0));
        assert_eq!(phi1(Complex64::new(-3.0, 2.0), 0.0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn closed_forms() {
        let v = phi1(Complex64::new(-1.0, 0.0), 1.0);
        assert!((v.re - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((v.re - 0.6321205588).abs() < 1e-10);
        assert_eq!(v.im, 0.0);

        let v = phi1(Complex64::new(0.0, 1.0), PI);
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-15);
    }

    #[test]
    fn branches_meet_at_switch() {
        // Evaluate both formulas at the switch point along several directions
        // and compare against a long Taylor series summed to convergence.
        for k in 0..16 {
            let angle = 2.0 * PI * k as f64 / 16.0;
            let z = Complex64::from_polar(SERIES_SWITCH, angle);
            let t = 1.0;
            let direct = exp_m1(z * t) / z;
            let zt = z * t;
            let series = t * (1.0 + zt * (0.5 + zt * (1.0 / 6.0 + zt * (1.0 / 24.0 + zt / 120.0))));
            let mut reference = Complex64::new(0.0, 0.0);
            let mut term = Complex64::new(t, 0.0);
            for n in 1..30 {
                reference += term;
                term = term * zt / (n as f64 + 1.0);
            }
            assert!(rel(direct, series) < 1e-14, "angle {angle}: {}", rel(direct, series));
            assert!(rel(series, reference) < 1e-15);
            assert!(rel(direct, reference) < 1e-15);
        }
    }

    #[test]
    fn exp_m1_matches_exp_away_from_zero() {
        for &(re, im) in &[(0.5, 0.3), (-2.0, 4.0), (-40.0, 1.0), (0.0, -7.0)] {
            let w = Complex64::new(re, im);
            let expected = w.exp() - 1.0;
            assert!((exp_m1(w) - expected).norm() <= 1e-15 * expected.norm().max(1.0));
        }
    }
}
