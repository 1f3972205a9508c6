//! Small numeric helpers: phase wrapping, sinc, golden-section search and a
//! fixed-order Simpson integrator.

use std::f64::consts::PI;

/// Wraps an angle to the half-open interval (-pi, pi].
pub fn wrap_phase(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Absolute distance between two phases on the circle, in [0, pi].
pub fn phase_distance(a: f64, b: f64) -> f64 {
    wrap_phase(a - b).abs()
}

/// sin(x)/x with the removable singularity at 0 handled analytically.
pub fn sinc(x: f64) -> f64 {
    // Below this threshold 1 - x^2/6 is exact to f64 precision.
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Golden-section minimization of a unimodal function on [a, b].
///
/// Runs a fixed number of evaluations so results are deterministic; returns
/// (argmin, min). With `max_evals = 80` the bracket shrinks by ~1e-16 of its
/// initial width, i.e. to f64 resolution.
pub fn golden_section_minimize(f: impl Fn(f64) -> f64, a: f64, b: f64, max_evals: u32) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8; // 1/phi
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 2..max_evals {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Composite Simpson integration with a fixed even interval count.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, intervals: u32) -> f64 {
    let n = intervals.max(2) & !1; // even, >= 2
    let h = (b - a) / f64::from(n);
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * f64::from(i));
    }
    acc * h / 3.0
}

/// `count` logarithmically spaced values over [lo, hi], endpoints included.
pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(lo > 0.0 && hi >= lo && count >= 1);
    if count == 1 {
        return vec![lo];
    }
    let (la, lb) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| {
            // exact endpoints, no exp/ln round-trip error
            if i == 0 {
                lo
            } else if i == count - 1 {
                hi
            } else {
                (la + (lb - la) * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect()
}

/// `count` linearly spaced values over [lo, hi], endpoints included.
pub fn lin_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    debug_assert!(count >= 1);
    if count == 1 {
        return vec![lo];
    }
    (0..count)
        .map(|i| {
            if i == count - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (count - 1) as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn wrap_covers_half_open_interval() {
        assert_eq!(wrap_phase(PI), PI);
        assert_relative_eq!(wrap_phase(-PI), PI);
        assert_relative_eq!(wrap_phase(6.0 * PI), 0.0);
        assert_relative_eq!(wrap_phase(3.5 * PI), -0.5 * PI, max_relative = 1e-12);
        for k in -5..=5 {
            let x = 1.234 + 2.0 * PI * f64::from(k);
            assert_relative_eq!(wrap_phase(x), 1.234, epsilon = 1e-9);
        }
    }

    #[test]
    fn sinc_is_even_and_regular_at_zero() {
        assert_eq!(sinc(0.0), 1.0);
        assert_relative_eq!(sinc(1e-9), 1.0, epsilon = 1e-15);
        assert_relative_eq!(sinc(2.5), sinc(-2.5));
        assert_relative_eq!(sinc(PI), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn golden_section_finds_parabola_minimum() {
        let (x, fx) = golden_section_minimize(|x| (x - 0.3).powi(2) + 1.0, -1.0, 1.0, 80);
        assert_relative_eq!(x, 0.3, epsilon = 1e-7);
        assert_relative_eq!(fx, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn simpson_integrates_cosine() {
        let v = simpson(f64::cos, 0.0, PI / 2.0, 1 << 12);
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn spacing_includes_exact_endpoints() {
        let v = log_spaced(0.1e-12, 0.5e-12, 512);
        assert_eq!(v.len(), 512);
        assert_eq!(v[0], 0.1e-12);
        assert_eq!(v[511], 0.5e-12);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        let l = lin_spaced(0.0, 1.0, 11);
        assert_eq!(l[10], 1.0);
    }
}
