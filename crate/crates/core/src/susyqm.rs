//! Superpotentials, intertwining operators, and partner potentials.
//!
//! Conventions: W = -(ln psi_0)', the factorization is taken on H - E_0, so
//!
//! ```text
//! V_1 = W^2 - W' + E_0      (the original potential)
//! V_2 = W^2 + W' + E_0      (its SUSY partner)
//! A   = d/dx + W,   Adag = -d/dx + W,   H_1 - E_0 = Adag A
//! ```
//!
//! Spectra are reported unshifted; E_0 only enters the factorization.

use crate::error::{Error, Result};
use crate::iso;
use crate::numerics::ComplexFn;
use crate::potentials::{parametric_image, Branch, PotentialSpec};
use num_complex::Complex64;

/// A superpotential W(x) together with its asymptotic values
/// W_-inf and W_+inf (which control the scattering phase relations).
#[derive(Debug, Clone)]
pub struct Superpotential {
    pub w: ComplexFn,
    pub w_minus: Complex64,
    pub w_plus: Complex64,
    /// Ground-state energy of the branch this W was built from.
    pub ground_energy: f64,
}

/// Superpotential of a solvable family.
///
/// For Scarf II the `branch` argument selects which tower of states defines
/// W (the two towers share the potential but not the superpotential); any
/// `branch` stored inside the spec itself is ignored here. The sech^2 well
/// and the isospectral family only have the normal branch.
pub fn superpotential(spec: &PotentialSpec, branch: Branch) -> Result<Superpotential> {
    spec.validate()?;
    match spec {
        PotentialSpec::RealSech { n } => {
            if branch == Branch::Parametric {
                return Err(Error::Unsupported(
                    "the sech^2 well has no parametric branch".into(),
                ));
            }
            let nf = *n as f64;
            Ok(Superpotential {
                w: ComplexFn::with_derivative(
                    move |x| Complex64::new(nf * x.tanh(), 0.0),
                    move |x| {
                        let s = 1.0 / x.cosh();
                        Complex64::new(nf * s * s, 0.0)
                    },
                ),
                w_minus: Complex64::new(-nf, 0.0),
                w_plus: Complex64::new(nf, 0.0),
                ground_energy: -nf * nf,
            })
        }
        PotentialSpec::ScarfII { a, b, .. } => {
            // W = a tanh x + i b sech x on the normal branch; the parametric
            // branch substitutes (a, b) -> (b - 1/2, a + 1/2)
            let (ae, be) = match branch {
                Branch::Normal => (*a, *b),
                Branch::Parametric => parametric_image(*a, *b),
            };
            Ok(Superpotential {
                w: ComplexFn::with_derivative(
                    move |x| {
                        let s = 1.0 / x.cosh();
                        Complex64::new(ae * x.tanh(), be * s)
                    },
                    move |x| {
                        let s = 1.0 / x.cosh();
                        Complex64::new(ae * s * s, -be * s * x.tanh())
                    },
                ),
                w_minus: Complex64::new(-ae, 0.0),
                w_plus: Complex64::new(ae, 0.0),
                ground_energy: -ae * ae,
            })
        }
        PotentialSpec::IsospectralFamily { n, lambda } => {
            if branch == Branch::Parametric {
                return Err(Error::Unsupported(
                    "the isospectral family has no parametric branch".into(),
                ));
            }
            let nf = *n as f64;
            let (n, lambda) = (*n, *lambda);
            Ok(Superpotential {
                w: ComplexFn::with_derivative(
                    move |x| Complex64::new(nf * x.tanh() + log_deriv(n, lambda, x), 0.0),
                    move |x| {
                        let s = 1.0 / x.cosh();
                        let u = log_deriv(n, lambda, x);
                        let (_, ipp) = iso::integral_derivs(n, x);
                        let d = iso::Denominator::Shifted(lambda).value(iso::integral_pair(n, x));
                        Complex64::new(nf * s * s + ipp / d - u * u, 0.0)
                    },
                ),
                w_minus: Complex64::new(-nf, 0.0),
                w_plus: Complex64::new(nf, 0.0),
                ground_energy: -nf * nf,
            })
        }
        _ => Err(Error::Unsupported(
            "superpotential is provided for the sech^2 well, Scarf II, \
             and the isospectral family"
                .into(),
        )),
    }
}

/// I'(x) / (I(x) + lambda), the logarithmic-derivative correction that turns
/// W into the deformed superpotential.
fn log_deriv(n: u32, lambda: f64, x: f64) -> f64 {
    let (ip, _) = iso::integral_derivs(n, x);
    if ip == 0.0 {
        return 0.0;
    }
    ip / iso::Denominator::Shifted(lambda).value(iso::integral_pair(n, x))
}

/// The partner potential V_2 = W^2 + W' + E_0, assembled from the
/// superpotential rather than from shifted closed-form parameters, so it can
/// be cross-checked against the latter.
pub fn partner_potential(spec: &PotentialSpec, branch: Branch) -> Result<ComplexFn> {
    let sp = superpotential(spec, branch)?;
    let e0 = sp.ground_energy;
    let w = sp.w;
    Ok(ComplexFn::new(move |x| {
        let wv = w.eval(x);
        wv * wv + w.deriv(x) + e0
    }))
}

/// The isospectral integral I(x) = int_{-inf}^x psi_0^2 together with its
/// first two derivatives: returns (I, I', I'').
pub fn isospectral_integral(n: u32, x: f64) -> Result<(f64, f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "isospectral integral needs N >= 1".into(),
        ));
    }
    let (i, _) = iso::integral_pair(n, x);
    let (ip, ipp) = iso::integral_derivs(n, x);
    Ok((i, ip, ipp))
}

/// Stable tail pair (I(x), 1 - I(x)); both members keep full relative
/// precision even where one of them is ~1e-300.
pub fn isospectral_integral_pair(n: u32, x: f64) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "isospectral integral needs N >= 1".into(),
        ));
    }
    Ok(iso::integral_pair(n, x))
}

/// Apply the annihilation-side intertwiner: (A f)(x) = f'(x) + W(x) f(x).
pub fn apply_a(sp: &Superpotential, f: &ComplexFn) -> ComplexFn {
    let w = sp.w.clone();
    let f = f.clone();
    ComplexFn::new(move |x| f.deriv(x) + w.eval(x) * f.eval(x))
}

/// Apply the creation-side intertwiner: (Adag f)(x) = -f'(x) + W(x) f(x).
pub fn apply_a_dagger(sp: &Superpotential, f: &ComplexFn) -> ComplexFn {
    let w = sp.w.clone();
    let f = f.clone();
    ComplexFn::new(move |x| -f.deriv(x) + w.eval(x) * f.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::{eval_real_sech, eval_scarf2, eval_scarf2_parametric};
    use crate::spectra::eigenfunction;

    fn grid(n: usize, half: f64) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| -half + 2.0 * half * i as f64 / (n - 1) as f64)
    }

    #[test]
    fn superpotential_asymptotics() {
        let sp = superpotential(&PotentialSpec::RealSech { n: 3 }, Branch::Normal).unwrap();
        assert_eq!(sp.w_minus.re, -3.0);
        assert_eq!(sp.w_plus.re, 3.0);
        assert!((sp.w.eval(18.0).re - 3.0).abs() < 1e-14);
        let s2 = PotentialSpec::ScarfII {
            a: 1.3,
            b: 0.4,
            branch: Branch::Normal,
        };
        let sp = superpotential(&s2, Branch::Normal).unwrap();
        assert_eq!(sp.w_plus.re, 1.3);
        // the imaginary sech part decays only like e^{-|x|}, so probe far out
        assert!((sp.w.eval(40.0) - sp.w_plus).norm() < 1e-14);
        let sp = superpotential(&s2, Branch::Parametric).unwrap();
        assert_eq!(sp.w_plus.re, 0.4 - 0.5);
        assert_eq!(sp.ground_energy, -(0.4f64 - 0.5) * (0.4 - 0.5));
    }

    #[test]
    fn factorization_reproduces_the_original_potential() {
        // V = W^2 - W' + E_0 pointwise
        let cases: Vec<(PotentialSpec, Branch)> = vec![
            (PotentialSpec::RealSech { n: 3 }, Branch::Normal),
            (
                PotentialSpec::ScarfII {
                    a: 1.3,
                    b: 0.4,
                    branch: Branch::Normal,
                },
                Branch::Normal,
            ),
            (
                PotentialSpec::ScarfII {
                    a: 1.3,
                    b: 0.4,
                    branch: Branch::Normal,
                },
                Branch::Parametric,
            ),
            (
                PotentialSpec::IsospectralFamily { n: 3, lambda: 0.1 },
                Branch::Normal,
            ),
            (
                PotentialSpec::IsospectralFamily { n: 3, lambda: -5.0 },
                Branch::Normal,
            ),
        ];
        for (spec, branch) in cases {
            let sp = superpotential(&spec, branch).unwrap();
            for x in grid(401, 12.0) {
                let w = sp.w.eval(x);
                let v = w * w - sp.w.deriv(x) + sp.ground_energy;
                let want = spec.eval(x).unwrap();
                assert!(
                    (v - want).norm() < 1e-10,
                    "factorization off for {spec} at x={x}: {:e}",
                    (v - want).norm()
                );
            }
        }
    }

    #[test]
    fn partner_matches_shifted_parameter_closed_forms() {
        let sech_partner =
            partner_potential(&PotentialSpec::RealSech { n: 3 }, Branch::Normal).unwrap();
        let s2 = PotentialSpec::ScarfII {
            a: 1.3,
            b: 0.4,
            branch: Branch::Normal,
        };
        let scarf_partner = partner_potential(&s2, Branch::Normal).unwrap();
        let scarf_partner_p = partner_potential(&s2, Branch::Parametric).unwrap();
        for x in grid(401, 10.0) {
            assert!((sech_partner.eval(x).re - eval_real_sech(2, x)).abs() < 1e-11);
            assert!((scarf_partner.eval(x) - eval_scarf2(0.3, 0.4, x)).norm() < 1e-11);
            // parametric-branch partner: the parametric image with b -> b - 1
            assert!(
                (scarf_partner_p.eval(x) - eval_scarf2_parametric(1.3, -0.6, x)).norm() < 1e-11
            );
        }
    }

    #[test]
    fn deformed_superpotential_has_undeformed_partner() {
        // What the deformation adds to W cancels in W^2 + W': every lambda
        // member has the same partner as the undeformed well.
        for lambda in [0.1, 5.0, -1.1, -5.0] {
            let fam = PotentialSpec::IsospectralFamily { n: 3, lambda };
            let partner = partner_potential(&fam, Branch::Normal).unwrap();
            for x in grid(301, 14.0) {
                let diff = (partner.eval(x).re - eval_real_sech(2, x)).abs();
                assert!(diff < 1e-8, "lambda={lambda}, x={x}: {diff:e}");
            }
        }
    }

    #[test]
    fn integral_parts_are_consistent() {
        let (i, ip, ipp) = isospectral_integral(3, -0.8).unwrap();
        assert!((i - 0.03625959933758642425).abs() < 1e-15);
        // I' is the normalized ground density, I'' its derivative; check
        // both with fourth-order five-point stencils
        let h = 1e-3;
        let at = |t: f64| isospectral_integral(3, t).unwrap();
        let stencil = |f: &dyn Fn(f64) -> f64| {
            (f(-0.8 - 2.0 * h) - 8.0 * f(-0.8 - h) + 8.0 * f(-0.8 + h) - f(-0.8 + 2.0 * h))
                / (12.0 * h)
        };
        assert!((stencil(&|t| at(t).0) - ip).abs() < 1e-10);
        assert!((stencil(&|t| at(t).1) - ipp).abs() < 1e-9);
        assert!(isospectral_integral(0, 1.0).is_err());
    }

    #[test]
    fn annihilator_kills_the_ground_state() {
        let spec = PotentialSpec::RealSech { n: 3 };
        let sp = superpotential(&spec, Branch::Normal).unwrap();
        let psi0 = eigenfunction(&spec, 0).unwrap();
        let a_psi0 = apply_a(&sp, &psi0.wavefunction);
        for x in grid(41, 8.0) {
            assert!(
                a_psi0.eval(x).norm() < 1e-9,
                "A psi_0 not annihilated at x={x}"
            );
        }
        let s2 = PotentialSpec::ScarfII {
            a: 1.3,
            b: 0.4,
            branch: Branch::Normal,
        };
        let sp = superpotential(&s2, Branch::Normal).unwrap();
        let psi0 = eigenfunction(&s2, 0).unwrap();
        let a_psi0 = apply_a(&sp, &psi0.wavefunction);
        for x in grid(41, 8.0) {
            assert!(a_psi0.eval(x).norm() < 1e-9);
        }
    }

    #[test]
    fn adag_a_reproduces_the_shifted_hamiltonian_eigenvalue() {
        // Adag A psi_n = (E_n - E_0) psi_n
        let spec = PotentialSpec::RealSech { n: 3 };
        let sp = superpotential(&spec, Branch::Normal).unwrap();
        for n in [1u32, 2] {
            let st = eigenfunction(&spec, n).unwrap();
            let gap = st.energy - (-9.0);
            let composed = apply_a_dagger(&sp, &apply_a(&sp, &st.wavefunction));
            for x in grid(33, 6.0) {
                let got = composed.eval(x);
                let want = gap * st.wavefunction.eval(x);
                assert!(
                    (got - want).norm() < 1e-6,
                    "composition off at n={n}, x={x}: {:e}",
                    (got - want).norm()
                );
            }
        }
    }
}
