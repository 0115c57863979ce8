//! Special functions: the complex gamma function, Jacobi polynomials with
//! arbitrary real parameters, and the exceptional (X_m) Jacobi combination
//! entering the rationally extended potentials.
//!
//! Jacobi polynomials are evaluated by the explicit finite sum
//!
//! ```text
//! P_n^{(a,b)}(z) = sum_{s=0}^{n} C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^{n-s}
//! ```
//!
//! with generalized binomial coefficients, so negative non-integer parameters
//! (which these potential families use throughout) are handled exactly like
//! classical ones. The sum has n+1 terms; degrees above [`MAX_DEGREE`] are
//! rejected rather than evaluated inaccurately.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Largest polynomial degree the explicit sum will evaluate.
pub const MAX_DEGREE: i32 = 200;

/// Distance from a nonpositive integer below which the gamma function
/// reports a pole instead of returning a huge finite value.
pub const GAMMA_POLE_EPS: f64 = 1e-13;

/// Parameter pair (alpha, beta) of a Jacobi polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64, beta: f64) -> Self {
        Self { alpha, beta }
    }
}

// Lanczos coefficients, g = 7, n = 9 (the standard double-precision set).
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex gamma function via the Lanczos approximation (g = 7, 9 terms)
/// with the reflection formula for Re z < 0.5.
///
/// Relative accuracy is better than 5e-13 for |z| <= 50. Arguments within
/// [`GAMMA_POLE_EPS`] of a pole (z = 0, -1, -2, ...) are a domain error.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidParameter(
            "gamma of non-finite argument".into(),
        ));
    }
    if z.re <= GAMMA_POLE_EPS {
        let nearest = z.re.round();
        if nearest <= 0.0 && (z - Complex64::new(nearest, 0.0)).norm() < GAMMA_POLE_EPS {
            return Err(Error::GammaPole { re: z.re, im: z.im });
        }
    }
    Ok(gamma_lanczos(z))
}

fn gamma_lanczos(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let s = (PI * z).sin();
        return PI / (s * gamma_lanczos(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * acc
}

/// Generalized binomial coefficient C(a, k) = a (a-1) ... (a-k+1) / k! for
/// real a and non-negative integer k, as the product of k exact-ratio factors.
fn gen_binom(a: f64, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 1..=k {
        r *= (a - (k - i) as f64) / i as f64;
    }
    r
}

/// Jacobi polynomial P_n^{(alpha,beta)}(z) for complex z and arbitrary real
/// parameters, by the explicit finite sum.
///
/// Negative degrees return 0 (the P_{-1} = 0 convention used by the
/// exceptional combination); degrees above [`MAX_DEGREE`] are an error.
pub fn jacobi_poly(n: i32, p: JacobiParams, z: Complex64) -> Result<Complex64> {
    if n < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            n: n as i64,
            max: MAX_DEGREE as i64,
        });
    }
    let n = n as usize;
    let zm = 0.5 * (z - 1.0);
    let zp = 0.5 * (z + 1.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..=n {
        let c = gen_binom(n as f64 + p.alpha, n - s) * gen_binom(n as f64 + p.beta, s);
        acc += c * zm.powu(s as u32) * zp.powu((n - s) as u32);
    }
    Ok(acc)
}

/// Derivative of a Jacobi polynomial:
/// d/dz P_n^{(a,b)}(z) = ((n+a+b+1)/2) P_{n-1}^{(a+1,b+1)}(z).
pub fn jacobi_poly_deriv(n: i32, p: JacobiParams, z: Complex64) -> Result<Complex64> {
    if n <= 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let shifted = JacobiParams::new(p.alpha + 1.0, p.beta + 1.0);
    let factor = 0.5 * (n as f64 + p.alpha + p.beta + 1.0);
    Ok(factor * jacobi_poly(n - 1, shifted, z)?)
}

/// Tolerance below which the exceptional prefactor denominator counts as zero.
const DEGENERATE_EPS: f64 = 1e-12;

/// The degree-(n+m) exceptional Jacobi combination
///
/// ```text
/// hatP_{n+m}^{(a,b)}(z) = (-1)^m [ (1+a+b+n)/(2(1+a+n)) (z-1)
///                                    P_m^{(-a-1,b-1)}(z) P_{n-1}^{(a+2,b)}(z)
///                                 + (1+a-m)/(1+a+n)
///                                    P_m^{(-a-2,b)}(z) P_n^{(a+1,b-1)}(z) ]
/// ```
///
/// which spans the polynomial subspace annihilating the node of the X_m
/// rational extension. At m = 0 it collapses to the conventional
/// P_n^{(a,b)}(z) (a contiguous-relation identity, checked in the tests).
/// Parameters with 1 + alpha + n = 0 make the prefactors singular and are a
/// domain error.
pub fn exceptional_jacobi(n: i32, m: u32, p: JacobiParams, z: Complex64) -> Result<Complex64> {
    if n < 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let denom = 1.0 + p.alpha + n as f64;
    if denom.abs() < DEGENERATE_EPS {
        return Err(Error::DegeneratePrefactor { value: denom });
    }
    let m_i = m as i32;
    let c1 = (1.0 + p.alpha + p.beta + n as f64) / (2.0 * denom);
    let c2 = (1.0 + p.alpha - m as f64) / denom;
    let t1 = c1
        * (z - 1.0)
        * jacobi_poly(m_i, JacobiParams::new(-p.alpha - 1.0, p.beta - 1.0), z)?
        * jacobi_poly(n - 1, JacobiParams::new(p.alpha + 2.0, p.beta), z)?;
    let t2 = c2
        * jacobi_poly(m_i, JacobiParams::new(-p.alpha - 2.0, p.beta), z)?
        * jacobi_poly(n, JacobiParams::new(p.alpha + 1.0, p.beta - 1.0), z)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * (t1 + t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel_err(got: Complex64, want: Complex64) -> f64 {
        (got - want).norm() / want.norm().max(1e-300)
    }

    // Independent gamma oracle: Stirling series at shifted argument plus
    // downward recurrence. Shares no code or coefficients with the Lanczos
    // path above.
    fn gamma_stirling(z: Complex64) -> Complex64 {
        if z.re < 0.5 {
            let s = (PI * z).sin();
            return PI / (s * gamma_stirling(Complex64::new(1.0, 0.0) - z));
        }
        let mut shift = Complex64::new(1.0, 0.0);
        let mut w = z;
        while w.norm() < 20.0 {
            shift *= w;
            w += 1.0;
        }
        // ln Gamma(w) = (w - 1/2) ln w - w + ln(2 pi)/2 + sum B_{2j}/(2j(2j-1) w^{2j-1})
        let coeffs = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360_360.0,
            1.0 / 156.0,
        ];
        let mut series = Complex64::new(0.0, 0.0);
        let w2 = w * w;
        let mut pw = w;
        for a in coeffs {
            series += a / pw;
            pw *= w2;
        }
        let ln_gamma = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series;
        ln_gamma.exp() / shift
    }

    #[test]
    fn gamma_matches_frozen_values() {
        let g = gamma_complex(c(2.0, 3.0)).unwrap();
        assert!(rel_err(g, c(-0.082395272665611883674, 0.091774287435259314596)) < 1e-12);
        let g = gamma_complex(c(-2.5, 1.5)).unwrap();
        assert!(rel_err(g, c(0.0034121395642391490286, -0.024053490434664735984)) < 1e-12);
        let g = gamma_complex(c(0.5, 40.0)).unwrap();
        assert!(rel_err(g, c(9.5295510494311588313e-28, 8.7375682018384417901e-28)) < 1e-12);
        let g = gamma_complex(c(6.25, 0.0)).unwrap();
        assert!(rel_err(g, c(184.86096222719834995, 0.0)) < 1e-12);
        let g = gamma_complex(c(-0.5, 0.0)).unwrap();
        assert!(rel_err(g, c(-3.5449077018110320546, 0.0)) < 1e-12);
    }

    #[test]
    fn gamma_agrees_with_independent_stirling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5a5a_1234);
        for _ in 0..500 {
            let z = c(rng.gen_range(-15.0..15.0), rng.gen_range(-15.0..15.0));
            if z.im.abs() < 0.1 && (z.re - z.re.round()).abs() < 0.1 && z.re < 0.5 {
                continue; // keep clear of poles
            }
            let got = gamma_complex(z).unwrap();
            assert!(
                rel_err(got, gamma_stirling(z)) < 1e-11,
                "gamma mismatch at {z}"
            );
        }
    }

    #[test]
    fn gamma_recurrence_holds_on_random_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let z = c(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
            let near_pole = |w: Complex64| {
                w.im.abs() < 0.05 && w.re < 0.6 && (w.re - w.re.round()).abs() < 0.05
            };
            if near_pole(z) || near_pole(z + 1.0) {
                continue;
            }
            let g1 = gamma_complex(z + 1.0).unwrap();
            let g0 = gamma_complex(z).unwrap();
            assert!(
                rel_err(g1, z * g0) < 1e-10,
                "recurrence failed at z = {z}: {:e}",
                rel_err(g1, z * g0)
            );
            checked += 1;
        }
    }

    #[test]
    fn gamma_reflection_holds_on_random_arguments() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 1000 {
            let z = c(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0));
            if z.im.abs() < 0.05 && (z.re - z.re.round()).abs() < 0.05 {
                continue;
            }
            let lhs =
                gamma_complex(z).unwrap() * gamma_complex(Complex64::new(1.0, 0.0) - z).unwrap();
            let rhs = Complex64::new(PI, 0.0) / (PI * z).sin();
            assert!(
                rel_err(lhs, rhs) < 1e-10,
                "reflection failed at z = {z}: {:e}",
                rel_err(lhs, rhs)
            );
            checked += 1;
        }
    }

    #[test]
    fn gamma_rejects_poles() {
        for z in [
            c(0.0, 0.0),
            c(-1.0, 0.0),
            c(-7.0, 0.0),
            c(-3.0 + 1e-14, 1e-14),
        ] {
            assert!(matches!(gamma_complex(z), Err(Error::GammaPole { .. })));
        }
        // nearby but not within tolerance is fine
        assert!(gamma_complex(c(-3.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn jacobi_matches_frozen_values() {
        // P_2^{(-3.5,-3.5)}(0) = 3/8
        let v = jacobi_poly(2, JacobiParams::new(-3.5, -3.5), c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        // complex argument, mixed negative parameters
        let v = jacobi_poly(3, JacobiParams::new(0.8, -2.3), c(0.6, 0.25)).unwrap();
        assert_abs_diff_eq!(v.re, 0.9462578125, epsilon = 1e-13);
        assert_abs_diff_eq!(v.im, 0.9168701171875, epsilon = 1e-13);
    }

    #[test]
    fn jacobi_low_degrees_match_closed_forms() {
        let p = JacobiParams::new(0.4, -1.7);
        let z = c(0.3, -0.8);
        let p0 = jacobi_poly(0, p, z).unwrap();
        assert_abs_diff_eq!((p0 - c(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        // P_1^{(a,b)}(z) = (a - b)/2 + (a + b + 2)/2 z
        let p1 = jacobi_poly(1, p, z).unwrap();
        let want = 0.5 * (p.alpha - p.beta) + 0.5 * (p.alpha + p.beta + 2.0) * z;
        assert!((p1 - want).norm() < 1e-14);
        // negative degree is identically zero
        assert_eq!(jacobi_poly(-1, p, z).unwrap(), c(0.0, 0.0));
        assert_eq!(jacobi_poly(-4, p, z).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn jacobi_rejects_large_degrees() {
        let p = JacobiParams::new(0.0, 0.0);
        assert!(jacobi_poly(MAX_DEGREE, p, c(0.5, 0.0)).is_ok());
        assert!(matches!(
            jacobi_poly(MAX_DEGREE + 1, p, c(0.5, 0.0)),
            Err(Error::DegreeTooLarge { .. })
        ));
    }

    // Three-term recurrence, an independent evaluation route:
    // 2n(n+a+b)(2n+a+b-2) P_n = (2n+a+b-1)[(2n+a+b)(2n+a+b-2) z + a^2-b^2] P_{n-1}
    //                           - 2(n+a-1)(n+b-1)(2n+a+b) P_{n-2}
    fn jacobi_by_recurrence(n: usize, p: JacobiParams, z: Complex64) -> Option<Complex64> {
        let (a, b) = (p.alpha, p.beta);
        let mut pm2 = Complex64::new(1.0, 0.0);
        if n == 0 {
            return Some(pm2);
        }
        let mut pm1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * z;
        for j in 2..=n {
            let jf = j as f64;
            let lead = 2.0 * jf * (jf + a + b) * (2.0 * jf + a + b - 2.0);
            if lead.abs() < 0.05 {
                return None; // degenerate recurrence coefficient; skip draw
            }
            let mid = (2.0 * jf + a + b - 1.0)
                * ((2.0 * jf + a + b) * (2.0 * jf + a + b - 2.0) * z + (a * a - b * b));
            let last = 2.0 * (jf + a - 1.0) * (jf + b - 1.0) * (2.0 * jf + a + b);
            let next = (mid * pm1 - last * pm2) / lead;
            pm2 = pm1;
            pm1 = next;
        }
        Some(pm1)
    }

    #[test]
    fn jacobi_sum_agrees_with_recurrence_on_random_parameters() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 1000 {
            let p = JacobiParams::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let n = rng.gen_range(2..=6usize);
            let Some(want) = jacobi_by_recurrence(n, p, z) else {
                continue;
            };
            let got = jacobi_poly(n as i32, p, z).unwrap();
            let scale = want.norm().max(1.0);
            assert!(
                (got - want).norm() / scale < 1e-10,
                "sum/recurrence mismatch: n={n} p={p:?} z={z}"
            );
            checked += 1;
        }
    }

    #[test]
    fn jacobi_derivative_matches_finite_differences() {
        let p = JacobiParams::new(-1.3, 0.9);
        for n in 1..=5 {
            for t in [-0.7_f64, 0.2, 1.4] {
                let z = c(t, 0.3 * t);
                let d = jacobi_poly_deriv(n, p, z).unwrap();
                let h = 1e-5;
                let fd = (jacobi_poly(n, p, z + h).unwrap() - jacobi_poly(n, p, z - h).unwrap())
                    / (2.0 * h);
                assert!((d - fd).norm() < 1e-7, "n={n} z={z}");
            }
        }
    }

    #[test]
    fn exceptional_combination_reduces_to_conventional_at_m_zero() {
        // hatP_{n+0} must be a constant multiple (in fact equal) to P_n.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let p = JacobiParams::new(rng.gen_range(-0.4..3.0), rng.gen_range(-3.0..3.0));
            let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
            for n in 0..=3 {
                let hat = exceptional_jacobi(n, 0, p, z).unwrap();
                let conv = jacobi_poly(n, p, z).unwrap();
                assert!(
                    (hat - conv).norm() < 1e-10 * conv.norm().max(1.0),
                    "m=0 reduction failed: n={n} p={p:?} z={z}"
                );
            }
        }
    }

    #[test]
    fn exceptional_combination_rejects_degenerate_prefactor() {
        // alpha + 1 + n = 0
        let p = JacobiParams::new(-3.0, 0.5);
        assert!(matches!(
            exceptional_jacobi(2, 1, p, c(0.2, 0.0)),
            Err(Error::DegeneratePrefactor { .. })
        ));
        assert!(exceptional_jacobi(1, 1, p, c(0.2, 0.0)).is_ok());
    }

    #[test]
    fn exceptional_combination_has_expected_degree() {
        // At generic parameters hatP_{n+m} has degree exactly n+m: its
        // (n+m+1)-th finite difference on a unit-step grid vanishes, the
        // (n+m)-th does not. (At special parameter values the leading
        // coefficient can vanish identically, so generic ones are probed.)
        let p = JacobiParams::new(0.3, -2.2);
        for (n, m) in [(0, 1u32), (1, 1), (2, 2), (3, 2), (2, 1)] {
            let deg = (n + m as i32) as usize;
            let sample =
                |j: usize| exceptional_jacobi(n, m, p, c(j as f64 * 1.0 - 3.0, 0.0)).unwrap();
            let mut vals: Vec<Complex64> = (0..deg + 2).map(sample).collect();
            for _ in 0..deg {
                vals = vals.windows(2).map(|w| w[1] - w[0]).collect();
            }
            assert!(vals[0].norm() > 1e-10, "degree too low for n={n}, m={m}");
            let last = vals[1] - vals[0];
            assert!(
                last.norm() < 1e-9 * vals[0].norm().max(1.0),
                "degree too high for n={n}, m={m}"
            );
        }
    }
}
