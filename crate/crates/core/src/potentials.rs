//! The closed-form potential families and their pointwise evaluation.
//!
//! All potentials here are reflectionless or become reflectionless on the
//! parameter lattice enumerated by [`crate::catalog`]; energies are in units
//! with hbar = 2m = 1 throughout.

use crate::error::{Error, Result};
use crate::grid::{GridFunction, GridSpec};
use crate::iso::{self, Denominator};
use crate::specfun::{jacobi_poly, JacobiParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Which tower of bound states a Scarf-II-type spec refers to.
///
/// The complex Scarf II potential supports two families of normalizable
/// eigenfunctions; the parametric branch is obtained from the normal one by
/// the substitution (a, b) -> (b - 1/2, a + 1/2), which leaves the potential
/// itself invariant.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    #[default]
    Normal,
    Parametric,
}

/// A member of one of the solvable families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PotentialSpec {
    /// V(x) = -N(N+1) sech^2 x, the real reflectionless well.
    RealSech { n: u32 },
    /// V(x) = -(b^2 + a(a+1)) sech^2 x + i b(2a+1) sech x tanh x,
    /// the PT-symmetric complex Scarf II potential.
    #[serde(rename = "scarf2")]
    ScarfII {
        a: f64,
        b: f64,
        #[serde(default)]
        branch: Branch,
    },
    /// Scarf II plus the rational X_m correction built on a degree-m
    /// Jacobi denominator polynomial.
    #[serde(rename = "scarf2_ext")]
    ScarfIIExtended {
        a: f64,
        b: f64,
        m: u32,
        #[serde(default)]
        branch: Branch,
    },
    /// One-parameter isospectral deformation of the N-well,
    /// V - 2 d^2/dx^2 ln(I + lambda), valid for lambda > 0 or lambda < -1.
    IsospectralFamily { n: u32, lambda: f64 },
    /// lambda -> 0 limit of the deformation: one bound state removed,
    /// still reflectionless.
    Pursey { n: u32 },
    /// lambda -> -1 limit: the mirror image of the Pursey potential.
    AbrahamMoses { n: u32 },
    /// SUSY partner V_2 = W^2 + W' + E_0 of a base potential, sharing its
    /// spectrum with the ground state removed.
    PartnerOf { base: Box<PotentialSpec> },
}

/// Image of (a, b) under the branch substitution (b - 1/2, a + 1/2).
pub fn parametric_image(a: f64, b: f64) -> (f64, f64) {
    (b - 0.5, a + 0.5)
}

/// V(x) = -N(N+1) sech^2 x.
pub fn eval_real_sech(n: u32, x: f64) -> f64 {
    let s = 1.0 / x.cosh();
    -(n as f64) * (n as f64 + 1.0) * s * s
}

/// Complex Scarf II: -(b^2 + a(a+1)) sech^2 x + i b(2a+1) sech x tanh x.
pub fn eval_scarf2(a: f64, b: f64, x: f64) -> Complex64 {
    let s = 1.0 / x.cosh();
    let t = x.tanh();
    Complex64::new(
        -(b * b + a * (a + 1.0)) * s * s,
        b * (2.0 * a + 1.0) * s * t,
    )
}

/// Scarf II evaluated at the parametric-branch image of (a, b). Equal to
/// [`eval_scarf2`] up to rounding; the invariance is exercised in the tests.
pub fn eval_scarf2_parametric(a: f64, b: f64, x: f64) -> Complex64 {
    let (ap, bp) = parametric_image(a, b);
    eval_scarf2(ap, bp, x)
}

/// Magnitude below which the X_m denominator polynomial counts as singular.
const SINGULAR_EPS: f64 = 1e-12;

/// Rationally extended Scarf II with an X_m denominator:
///
/// ```text
/// V_ext = V + 2m(2b - m + 1)
///           + (2b - m + 1) [-(2a+1) + (2b+1) i sinh x] P_{m-1}^{(-A, B)}(z) / P_m^{(-A-1, B-1)}(z)
///           - ((2b - m + 1)^2 cosh^2 x / 2) [P_{m-1}^{(-A, B)}(z) / P_m^{(-A-1, B-1)}(z)]^2
/// ```
///
/// with z = i sinh x, A = b - a - 1/2, B = -b - a - 1/2. m = 0 returns the
/// unextended potential. Errors if the denominator polynomial vanishes at x.
pub fn eval_scarf2_extended(a: f64, b: f64, m: u32, x: f64) -> Result<Complex64> {
    let base = eval_scarf2(a, b, x);
    if m == 0 {
        return Ok(base);
    }
    let alpha = b - a - 0.5;
    let beta = -b - a - 0.5;
    let z = Complex64::new(0.0, x.sinh());
    let pm = jacobi_poly(m as i32, JacobiParams::new(-alpha - 1.0, beta - 1.0), z)?;
    if pm.norm() < SINGULAR_EPS {
        return Err(Error::SingularDenominator {
            x,
            magnitude: pm.norm(),
        });
    }
    let pm1 = jacobi_poly(m as i32 - 1, JacobiParams::new(-alpha, beta), z)?;
    let ratio = pm1 / pm;
    let c = 2.0 * b - m as f64 + 1.0;
    let linear = Complex64::new(-(2.0 * a + 1.0), 0.0) + (2.0 * b + 1.0) * z;
    let cosh2 = x.cosh() * x.cosh();
    Ok(base + 2.0 * m as f64 * c + c * linear * ratio - 0.5 * c * c * cosh2 * ratio * ratio)
}

/// Deformed well of the isospectral family, V - 2 d^2/dx^2 ln(I(x) + lambda).
pub fn eval_isospectral(n: u32, lambda: f64, x: f64) -> f64 {
    iso::deformed_potential(n, Denominator::Shifted(lambda), x)
}

/// Pursey potential: the lambda -> 0 boundary of the family.
pub fn eval_pursey(n: u32, x: f64) -> f64 {
    iso::deformed_potential(n, Denominator::Bare, x)
}

/// Abraham-Moses potential: the lambda -> -1 boundary of the family.
pub fn eval_abraham_moses(n: u32, x: f64) -> f64 {
    iso::deformed_potential(n, Denominator::Depressed, x)
}

impl PotentialSpec {
    /// Check the parameter domain of this spec.
    pub fn validate(&self) -> Result<()> {
        match self {
            PotentialSpec::RealSech { n } => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("RealSech needs N >= 1".into()));
                }
            }
            PotentialSpec::ScarfII { a, b, .. } => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::InvalidParameter("ScarfII needs finite a, b".into()));
                }
            }
            PotentialSpec::ScarfIIExtended { a, b, .. } => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::InvalidParameter(
                        "ScarfIIExtended needs finite a, b".into(),
                    ));
                }
            }
            PotentialSpec::IsospectralFamily { n, lambda } => {
                if *n == 0 {
                    return Err(Error::InvalidParameter(
                        "IsospectralFamily needs N >= 1".into(),
                    ));
                }
                if !lambda.is_finite() || (-1.0..=0.0).contains(lambda) {
                    return Err(Error::InvalidLambda { lambda: *lambda });
                }
            }
            PotentialSpec::Pursey { n } | PotentialSpec::AbrahamMoses { n } => {
                if *n == 0 {
                    return Err(Error::InvalidParameter("deformed well needs N >= 1".into()));
                }
            }
            PotentialSpec::PartnerOf { base } => {
                base.validate()?;
                match **base {
                    PotentialSpec::RealSech { .. }
                    | PotentialSpec::ScarfII { .. }
                    | PotentialSpec::IsospectralFamily { .. } => {}
                    _ => {
                        return Err(Error::Unsupported(
                            "partner construction is provided for the sech^2 well, \
                             Scarf II, and the isospectral family"
                                .into(),
                        ))
                    }
                }
            }
        }
        Ok(())
    }

    /// Pointwise value of the potential.
    pub fn eval(&self, x: f64) -> Result<Complex64> {
        self.validate()?;
        Ok(match self {
            PotentialSpec::RealSech { n } => Complex64::new(eval_real_sech(*n, x), 0.0),
            PotentialSpec::ScarfII { a, b, .. } => eval_scarf2(*a, *b, x),
            PotentialSpec::ScarfIIExtended { a, b, m, branch } => {
                let (ae, be) = match branch {
                    Branch::Normal => (*a, *b),
                    Branch::Parametric => parametric_image(*a, *b),
                };
                eval_scarf2_extended(ae, be, *m, x)?
            }
            PotentialSpec::IsospectralFamily { n, lambda } => {
                Complex64::new(eval_isospectral(*n, *lambda, x), 0.0)
            }
            PotentialSpec::Pursey { n } => Complex64::new(eval_pursey(*n, x), 0.0),
            PotentialSpec::AbrahamMoses { n } => Complex64::new(eval_abraham_moses(*n, x), 0.0),
            PotentialSpec::PartnerOf { base } => match &**base {
                PotentialSpec::RealSech { n } | PotentialSpec::IsospectralFamily { n, .. } => {
                    // W^2 + W' + E_0 with W = N tanh x (the deformation does
                    // not change W^2 + W'): a sech^2 well one level shallower
                    Complex64::new(eval_real_sech(n - 1, x), 0.0)
                }
                PotentialSpec::ScarfII { a, b, branch } => match branch {
                    Branch::Normal => eval_scarf2(a - 1.0, *b, x),
                    Branch::Parametric => eval_scarf2_parametric(*a, b - 1.0, x),
                },
                _ => unreachable!("validate() restricts partner bases"),
            },
        })
    }

    /// Sample the potential on a grid (parallel over points when the
    /// `parallel` feature is active).
    pub fn sample(&self, grid: GridSpec) -> Result<GridFunction> {
        self.validate()?;
        let values = map_points(grid, |x| self.eval(x))?;
        GridFunction::new(grid, values)
    }

    /// Whether the potential is real-valued on the real line.
    pub fn is_real(&self) -> bool {
        match self {
            PotentialSpec::RealSech { .. }
            | PotentialSpec::IsospectralFamily { .. }
            | PotentialSpec::Pursey { .. }
            | PotentialSpec::AbrahamMoses { .. } => true,
            PotentialSpec::ScarfII { b, .. } | PotentialSpec::ScarfIIExtended { b, .. } => {
                *b == 0.0
            }
            PotentialSpec::PartnerOf { base } => base.is_real(),
        }
    }
}

impl std::fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PotentialSpec::RealSech { n } => write!(f, "sech^2 well (N={n})"),
            PotentialSpec::ScarfII { a, b, branch } => {
                write!(f, "Scarf II (a={a}, b={b}, {branch:?} branch)")
            }
            PotentialSpec::ScarfIIExtended { a, b, m, branch } => {
                write!(
                    f,
                    "extended Scarf II (a={a}, b={b}, m={m}, {branch:?} branch)"
                )
            }
            PotentialSpec::IsospectralFamily { n, lambda } => {
                write!(f, "isospectral family (N={n}, lambda={lambda})")
            }
            PotentialSpec::Pursey { n } => write!(f, "Pursey well (N={n})"),
            PotentialSpec::AbrahamMoses { n } => write!(f, "Abraham-Moses well (N={n})"),
            PotentialSpec::PartnerOf { base } => write!(f, "SUSY partner of {base}"),
        }
    }
}

/// Evaluate a fallible pointwise map over a grid, in parallel when enabled.
pub(crate) fn map_points<F>(grid: GridSpec, f: F) -> Result<Vec<Complex64>>
where
    F: Fn(f64) -> Result<Complex64> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..grid.len)
            .into_par_iter()
            .map(|i| f(grid.x(i)))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..grid.len).map(|i| f(grid.x(i))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn real_well_depth_and_decay() {
        assert_abs_diff_eq!(eval_real_sech(3, 0.0), -12.0, epsilon = 1e-15);
        assert!(eval_real_sech(3, 20.0).abs() < 1e-15);
        assert_abs_diff_eq!(
            eval_real_sech(1, 0.7),
            -2.0 / 0.7f64.cosh().powi(2),
            epsilon = 1e-15
        );
    }

    #[test]
    fn scarf2_is_pt_symmetric_bitwise() {
        for x in [0.0, 0.3, -1.7, 2.9, -11.25, 0.015625] {
            let v = eval_scarf2(1.3, 0.4, x);
            let w = eval_scarf2(1.3, 0.4, -x);
            assert_eq!(v.re.to_bits(), w.re.to_bits(), "Re not even at x={x}");
            assert_eq!(v.im.to_bits(), (-w.im).to_bits(), "Im not odd at x={x}");
        }
    }

    #[test]
    fn parametric_substitution_leaves_scarf2_invariant() {
        for &(a, b) in &[(2.5, 0.5), (1.5, 1.5), (3.0, 1.0), (1.0, 3.0), (0.7, 1.2)] {
            for i in 0..400 {
                let x = -10.0 + 0.05 * i as f64;
                let d = (eval_scarf2(a, b, x) - eval_scarf2_parametric(a, b, x)).norm();
                assert!(
                    d < 1e-13,
                    "invariance broken at (a={a}, b={b}, x={x}): {d:e}"
                );
            }
        }
    }

    #[test]
    fn extended_matches_frozen_values() {
        let v = eval_scarf2_extended(2.0, 1.0, 1, 0.0).unwrap();
        assert_abs_diff_eq!(v.re, -183.0 / 25.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-12);
        let v = eval_scarf2_extended(2.0, 1.0, 1, 0.6).unwrap();
        assert_abs_diff_eq!(v.re, -5.473725978755524452, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 2.541450753987290511, epsilon = 1e-12);
        // parametric branch of the same entry is a genuinely different potential
        let spec = PotentialSpec::ScarfIIExtended {
            a: 2.0,
            b: 1.0,
            m: 1,
            branch: Branch::Parametric,
        };
        let vp = spec.eval(0.6).unwrap();
        assert_abs_diff_eq!(vp.re, -4.257486642135232064, epsilon = 1e-12);
        assert_abs_diff_eq!(vp.im, -1.313120398590285471, epsilon = 1e-12);
        assert!((v - vp).norm() > 0.1);
    }

    #[test]
    fn extended_reduces_to_plain_scarf2_at_m_zero() {
        for i in 0..200 {
            let x = -8.0 + 0.08 * i as f64;
            let v0 = eval_scarf2_extended(1.3, 0.4, 0, x).unwrap();
            let v = eval_scarf2(1.3, 0.4, x);
            assert_eq!(v0, v);
        }
    }

    #[test]
    fn extended_correction_decays_exponentially() {
        // The rational correction falls off like e^{-|x|}, much slower than
        // the sech^2 core but still integrable.
        let tail = |x: f64| {
            (eval_scarf2_extended(2.0, 1.0, 1, x).unwrap() - eval_scarf2(2.0, 1.0, x)).norm()
        };
        let (t10, t12) = (tail(10.0), tail(12.0));
        assert!(t10 > 1e-6 && t10 < 1e-3);
        let ratio = t12 / t10;
        assert!((ratio.ln() - (-2.0)).abs() < 0.1, "decay rate off: {ratio}");
    }

    #[test]
    fn deformed_wells_match_frozen_values() {
        assert_abs_diff_eq!(eval_isospectral(3, 0.1, 0.0), -7.1171875, epsilon = 1e-12);
        assert_abs_diff_eq!(eval_pursey(3, 0.0), -159.0 / 32.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            eval_abraham_moses(3, 0.7),
            -2.200079040119176684,
            epsilon = 1e-11
        );
    }

    #[test]
    fn validation_rejects_bad_parameters() {
        assert!(PotentialSpec::RealSech { n: 0 }.validate().is_err());
        for lambda in [0.0, -1.0, -0.5, f64::NAN] {
            let s = PotentialSpec::IsospectralFamily { n: 3, lambda };
            assert!(s.validate().is_err(), "lambda = {lambda} must be rejected");
        }
        assert!(PotentialSpec::IsospectralFamily { n: 3, lambda: 0.1 }
            .validate()
            .is_ok());
        assert!(PotentialSpec::IsospectralFamily { n: 3, lambda: -1.1 }
            .validate()
            .is_ok());
        let nested = PotentialSpec::PartnerOf {
            base: Box::new(PotentialSpec::Pursey { n: 3 }),
        };
        assert!(nested.validate().is_err());
    }

    #[test]
    fn partner_of_real_well_is_one_level_shallower() {
        let p = PotentialSpec::PartnerOf {
            base: Box::new(PotentialSpec::RealSech { n: 3 }),
        };
        for x in [-2.0, 0.0, 1.3] {
            assert_abs_diff_eq!(p.eval(x).unwrap().re, eval_real_sech(2, x), epsilon = 1e-14);
        }
    }

    #[test]
    fn sampling_matches_pointwise_evaluation() {
        let spec = PotentialSpec::ScarfII {
            a: 1.3,
            b: 0.4,
            branch: Branch::Normal,
        };
        let grid = GridSpec::symmetric(8.0, 321).unwrap();
        let f = spec.sample(grid).unwrap();
        for (i, (x, v)) in f.iter().enumerate() {
            assert_eq!(v, spec.eval(x).unwrap(), "mismatch at point {i}");
        }
    }

    #[test]
    fn spec_round_trips_through_json() {
        let specs = vec![
            PotentialSpec::RealSech { n: 3 },
            PotentialSpec::ScarfII {
                a: 2.5,
                b: 0.5,
                branch: Branch::Parametric,
            },
            PotentialSpec::ScarfIIExtended {
                a: 2.0,
                b: 1.0,
                m: 1,
                branch: Branch::Normal,
            },
            PotentialSpec::IsospectralFamily { n: 3, lambda: 0.1 },
            PotentialSpec::PartnerOf {
                base: Box::new(PotentialSpec::RealSech { n: 2 }),
            },
        ];
        for s in specs {
            let txt = serde_json::to_string(&s).unwrap();
            let back: PotentialSpec = serde_json::from_str(&txt).unwrap();
            assert_eq!(s, back, "round trip failed for {txt}");
        }
        // branch may be omitted and defaults to normal
        let s: PotentialSpec =
            serde_json::from_str(r#"{"family":"scarf2","a":1.0,"b":2.0}"#).unwrap();
        assert_eq!(
            s,
            PotentialSpec::ScarfII {
                a: 1.0,
                b: 2.0,
                branch: Branch::Normal
            }
        );
    }
}
