//! Bound-state spectra and closed-form eigenfunctions.
//!
//! Energies are exact closed forms: E_n = -(N-n)^2 for the sech^2 well and
//! everything isospectral to it, E_n = -(a-n)^2 on the normal Scarf II
//! branch (n < a), and E_n = -(b - 1/2 - n)^2 on the parametric branch
//! (n < b - 1/2). Eigenfunctions come phase-fixed: the first nonvanishing of
//! (psi(0), psi'(0)) is rotated to the positive real axis.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::iso;
use crate::numerics::{adaptive_simpson, ComplexFn};
use crate::potentials::{parametric_image, Branch, PotentialSpec};
use crate::specfun::{exceptional_jacobi, jacobi_poly, jacobi_poly_deriv, JacobiParams};
use num_complex::Complex64;

/// A bound state: index within its family, exact energy, a normalized
/// phase-fixed wavefunction, and the real normalization constant that was
/// applied to the family's natural closed-form shape.
#[derive(Debug, Clone)]
pub struct BoundState {
    pub n: u32,
    pub energy: f64,
    pub wavefunction: ComplexFn,
    pub norm_constant: f64,
}

/// Number of bound states supported by the spec.
pub fn bound_count(spec: &PotentialSpec) -> Result<u32> {
    spec.validate()?;
    Ok(match spec {
        PotentialSpec::RealSech { n } | PotentialSpec::IsospectralFamily { n, .. } => *n,
        PotentialSpec::Pursey { n } | PotentialSpec::AbrahamMoses { n } => n - 1,
        PotentialSpec::ScarfII { a, b, branch }
        | PotentialSpec::ScarfIIExtended { a, b, branch, .. } => {
            let limit = match branch {
                Branch::Normal => *a,
                Branch::Parametric => b - 0.5,
            };
            count_below(limit)
        }
        PotentialSpec::PartnerOf { base } => bound_count(base)?.saturating_sub(1),
    })
}

/// Number of integers n >= 0 with n < limit, robust to limit sitting on an
/// integer up to rounding.
fn count_below(limit: f64) -> u32 {
    if limit <= 1e-12 {
        return 0;
    }
    (limit - 1e-12).ceil() as u32
}

/// All bound-state energies of the spec, in increasing n (decreasing depth).
pub fn bound_energies(spec: &PotentialSpec) -> Result<Vec<f64>> {
    spec.validate()?;
    let count = bound_count(spec)?;
    Ok(match spec {
        PotentialSpec::RealSech { n } | PotentialSpec::IsospectralFamily { n, .. } => {
            let nf = *n as f64;
            (0..count).map(|k| -sq(nf - k as f64)).collect()
        }
        PotentialSpec::Pursey { n } | PotentialSpec::AbrahamMoses { n } => {
            let nf = *n as f64;
            (0..count).map(|k| -sq(nf - 1.0 - k as f64)).collect()
        }
        PotentialSpec::ScarfII { a, b, branch }
        | PotentialSpec::ScarfIIExtended { a, b, branch, .. } => {
            let limit = match branch {
                Branch::Normal => *a,
                Branch::Parametric => b - 0.5,
            };
            (0..count).map(|k| -sq(limit - k as f64)).collect()
        }
        PotentialSpec::PartnerOf { base } => {
            let mut e = bound_energies(base)?;
            if !e.is_empty() {
                e.remove(0);
            }
            e
        }
    })
}

fn sq(x: f64) -> f64 {
    x * x
}

/// The n-th bound state of the spec.
pub fn eigenfunction(spec: &PotentialSpec, n: u32) -> Result<BoundState> {
    spec.validate()?;
    let count = bound_count(spec)?;
    if n >= count {
        return Err(Error::IndexOutOfRange { n, count });
    }
    let energy = bound_energies(spec)?[n as usize];
    match spec {
        PotentialSpec::RealSech { n: well } => real_sech_state(*well, n, energy),
        PotentialSpec::ScarfII { a, b, branch } => {
            let (ae, be) = effective(*a, *b, *branch);
            scarf_state(ae, be, n, energy)
        }
        PotentialSpec::ScarfIIExtended { a, b, m, branch } => {
            let (ae, be) = effective(*a, *b, *branch);
            extended_state(ae, be, *m, n, energy)
        }
        PotentialSpec::IsospectralFamily { n: well, lambda } => {
            deformed_state(*well, iso::Denominator::Shifted(*lambda), n, n, energy)
        }
        // the deleted ground shifts the index: family state n means base
        // state n+1 carried through the deformation formula
        PotentialSpec::Pursey { n: well } => {
            deformed_state(*well, iso::Denominator::Bare, n, n + 1, energy)
        }
        PotentialSpec::AbrahamMoses { n: well } => {
            deformed_state(*well, iso::Denominator::Depressed, n, n + 1, energy)
        }
        PotentialSpec::PartnerOf { base } => {
            // shape invariance: the partner's states are the states of the
            // same family with shifted parameters
            let shifted = match &**base {
                PotentialSpec::RealSech { n: well }
                | PotentialSpec::IsospectralFamily { n: well, .. } => {
                    PotentialSpec::RealSech { n: well - 1 }
                }
                PotentialSpec::ScarfII { a, b, branch } => match branch {
                    Branch::Normal => PotentialSpec::ScarfII {
                        a: a - 1.0,
                        b: *b,
                        branch: Branch::Normal,
                    },
                    Branch::Parametric => PotentialSpec::ScarfII {
                        a: *a,
                        b: b - 1.0,
                        branch: Branch::Parametric,
                    },
                },
                _ => unreachable!("validate() restricts partner bases"),
            };
            let st = eigenfunction(&shifted, n)?;
            debug_assert!((st.energy - energy).abs() < 1e-12);
            Ok(st)
        }
    }
}

fn effective(a: f64, b: f64, branch: Branch) -> (f64, f64) {
    match branch {
        Branch::Normal => (a, b),
        Branch::Parametric => parametric_image(a, b),
    }
}

/// Rotate the first nonvanishing of (f(0), f'(0)) to the positive real axis.
fn phase_factor(v0: Complex64, d0: Complex64) -> Complex64 {
    let w = if v0.norm() > 1e-12 { v0 } else { d0 };
    if w.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        w.conj() / w.norm()
    }
}

/// ln k!
fn ln_fact(k: u32) -> f64 {
    (2..=k).map(|i| (i as f64).ln()).sum()
}

/// Exact normalization constant of the sech^2-well state
/// psi_n = C_n sech^N x P_n^{(-N-1/2,-N-1/2)}(i sinh x):
///
/// C_n = 2^N sqrt( n! (N-n) Gamma(N-n+1/2)^2 / (Gamma(2N-n+1) pi) ),
///
/// evaluated in log space (the half-integer Gamma reduced to factorials via
/// the duplication formula, which cancels the pi).
pub fn real_sech_norm_constant(well: u32, n: u32) -> f64 {
    let big_n = well;
    let m = big_n - n; // N - n >= 1 for valid indices
    let ln4 = 4.0f64.ln();
    let ln_c_sq = big_n as f64 * ln4 + ln_fact(n) + (m as f64).ln() + 2.0 * ln_fact(2 * m)
        - 2.0 * m as f64 * ln4
        - 2.0 * ln_fact(m)
        - ln_fact(2 * big_n - n);
    (0.5 * ln_c_sq).exp()
}

fn real_sech_state(well: u32, n: u32, energy: f64) -> Result<BoundState> {
    let c = real_sech_norm_constant(well, n);
    let nf = well as f64;
    let p = JacobiParams::new(-nf - 0.5, -nf - 0.5);
    let deg = n as i32;
    let shape = move |x: f64| -> (Complex64, Complex64) {
        let z = Complex64::new(0.0, x.sinh());
        let pref = x.cosh().powf(-nf);
        let poly = jacobi_poly(deg, p, z).expect("degree already validated");
        let dpoly = jacobi_poly_deriv(deg, p, z).expect("degree already validated");
        let v = pref * poly;
        let d = pref * (-nf * x.tanh() * poly + Complex64::new(0.0, x.cosh()) * dpoly);
        (v, d)
    };
    let (v0, d0) = shape(0.0);
    let phase = phase_factor(v0, d0);
    let s2 = shape;
    Ok(BoundState {
        n,
        energy,
        wavefunction: ComplexFn::with_derivative(
            move |x| phase * c * shape(x).0,
            move |x| phase * c * s2(x).1,
        ),
        norm_constant: c,
    })
}

/// Half-width over which |psi|^2 is integrated for numerically normalized
/// states; widened when the decay exponent is small.
fn norm_half_width(decay: f64) -> f64 {
    40f64.max(16.0 / decay.max(1e-3)).min(400.0)
}

fn scarf_state(ae: f64, be: f64, n: u32, energy: f64) -> Result<BoundState> {
    let p = JacobiParams::new(be - ae - 0.5, -be - ae - 0.5);
    let deg = n as i32;
    jacobi_poly(deg, p, Complex64::new(0.0, 0.0))?; // degree check up front
    let shape = move |x: f64| -> (Complex64, Complex64) {
        let z = Complex64::new(0.0, x.sinh());
        // sech^a e^{-i b gd(x)}, gd the Gudermannian arctan(sinh x)
        let sech = 1.0 / x.cosh();
        let pref = sech.powf(ae) * Complex64::from_polar(1.0, -be * x.sinh().atan());
        let poly = jacobi_poly(deg, p, z).expect("degree already validated");
        let dpoly = jacobi_poly_deriv(deg, p, z).expect("degree already validated");
        let v = pref * poly;
        let d = pref
            * (Complex64::new(-ae * x.tanh(), -be * sech) * poly
                + Complex64::new(0.0, x.cosh()) * dpoly);
        (v, d)
    };
    let c = normalize(|x| shape(x).0.norm_sqr(), norm_half_width(2.0 * ae))?;
    let (v0, d0) = shape(0.0);
    let phase = phase_factor(v0, d0);
    let s2 = shape;
    Ok(BoundState {
        n,
        energy,
        wavefunction: ComplexFn::with_derivative(
            move |x| phase * c * shape(x).0,
            move |x| phase * c * s2(x).1,
        ),
        norm_constant: c,
    })
}

fn extended_state(ae: f64, be: f64, m: u32, n: u32, energy: f64) -> Result<BoundState> {
    let alpha = be - ae - 0.5;
    let beta = -be - ae - 0.5;
    let denom_params = JacobiParams::new(-alpha - 1.0, beta - 1.0);
    let hat_params = JacobiParams::new(alpha, beta);
    let deg = n as i32;
    // reject singular denominators on the real line up front
    let mut scan = -40.0f64;
    while scan <= 40.0 {
        let pm = jacobi_poly(m as i32, denom_params, Complex64::new(0.0, scan.sinh()))?;
        if pm.norm() < 1e-3 {
            return Err(Error::SingularDenominator {
                x: scan,
                magnitude: pm.norm(),
            });
        }
        scan += 0.005;
    }
    exceptional_jacobi(deg, m, hat_params, Complex64::new(0.0, 0.0))?; // degeneracy check
    let shape = move |x: f64| -> Complex64 {
        let z = Complex64::new(0.0, x.sinh());
        let sech = 1.0 / x.cosh();
        let pref = sech.powf(ae) * Complex64::from_polar(1.0, -be * x.sinh().atan());
        let pm = jacobi_poly(m as i32, denom_params, z).expect("degree already validated");
        let hat = exceptional_jacobi(deg, m, hat_params, z).expect("parameters already validated");
        pref * hat / pm
    };
    let c = normalize(|x| shape(x).norm_sqr(), norm_half_width(2.0 * ae))?;
    let v0 = shape(0.0);
    let d0 = ComplexFn::new(shape).deriv(0.0);
    let phase = phase_factor(v0, d0);
    Ok(BoundState {
        n,
        energy,
        wavefunction: ComplexFn::new(move |x| phase * c * shape(x)),
        norm_constant: c,
    })
}

/// States of the deformed wells. `family_index` is the index the caller
/// asked for; `base_index` the index of the sech^2-well state the closed
/// form is built from (they differ for Pursey/Abraham-Moses, which drop the
/// ground state). The deformation
///
/// ```text
/// psi_hat_0 = sqrt(lambda(1+lambda)) psi_0 / (I + lambda)
/// psi_hat_k = psi_k + (E_k - E_0)^{-1} [I'/(I+lambda)] (psi_k' + W psi_k)
/// ```
///
/// (with the denominator replaced by I or I-1 in the boundary families)
/// yields exactly normalized states, so no quadrature is needed.
fn deformed_state(
    well: u32,
    den: iso::Denominator,
    family_index: u32,
    base_index: u32,
    energy: f64,
) -> Result<BoundState> {
    let nf = well as f64;
    if base_index == 0 {
        let iso::Denominator::Shifted(lambda) = den else {
            unreachable!("boundary families never use base index 0");
        };
        let c0 = iso::ground_norm_sq(well).sqrt();
        let amp = (lambda * (1.0 + lambda)).sqrt() * c0;
        let value = move |x: f64| {
            let d = iso::Denominator::Shifted(lambda).value(iso::integral_pair(well, x));
            Complex64::new(amp * x.cosh().powf(-nf) / d, 0.0)
        };
        let deriv = move |x: f64| {
            let pair = iso::integral_pair(well, x);
            let d = iso::Denominator::Shifted(lambda).value(pair);
            let (ip, _) = iso::integral_derivs(well, x);
            Complex64::new(
                amp * x.cosh().powf(-nf) / d * (-nf * x.tanh() - ip / d),
                0.0,
            )
        };
        let phase = phase_factor(value(0.0), deriv(0.0)).re; // real family
        return Ok(BoundState {
            n: family_index,
            energy,
            wavefunction: ComplexFn::with_derivative(
                move |x| phase * value(x),
                move |x| phase * deriv(x),
            ),
            norm_constant: phase * amp,
        });
    }
    let base = eigenfunction(&PotentialSpec::RealSech { n: well }, base_index)?;
    let gap = energy - (-nf * nf);
    let psi = base.wavefunction.clone();
    let correction_scale = move |x: f64| -> (f64, f64) {
        // (u, u') with u = I'/D; u' = I''/D - u^2 since D' = I'
        let (ip, ipp) = iso::integral_derivs(well, x);
        if ip == 0.0 {
            return (0.0, 0.0);
        }
        let d = den.value(iso::integral_pair(well, x));
        let u = ip / d;
        (u, ipp / d - u * u)
    };
    let value = {
        let psi = psi.clone();
        move |x: f64| {
            let (u, _) = correction_scale(x);
            let w = nf * x.tanh();
            psi.eval(x) + (u / gap) * (psi.deriv(x) + w * psi.eval(x))
        }
    };
    let deriv = {
        let psi = psi.clone();
        let e_base = energy;
        move |x: f64| {
            let (u, du) = correction_scale(x);
            let w = nf * x.tanh();
            let sech2 = 1.0 / (x.cosh() * x.cosh());
            let dw = nf * sech2;
            let v = -nf * (nf + 1.0) * sech2;
            let (p, dp) = (psi.eval(x), psi.deriv(x));
            let ddp = (v - e_base) * p; // psi'' from the eigenvalue equation
            dp + (du / gap) * (dp + w * p) + (u / gap) * (ddp + dw * p + w * dp)
        }
    };
    let phase = phase_factor(value(0.0), deriv(0.0));
    let (v2, d2) = (value, deriv);
    Ok(BoundState {
        n: family_index,
        energy,
        wavefunction: ComplexFn::with_derivative(move |x| phase * v2(x), move |x| phase * d2(x)),
        norm_constant: 1.0,
    })
}

/// Normalize |shape|^2 to unit integral; returns the constant.
fn normalize<F: Fn(f64) -> f64>(density: F, half_width: f64) -> Result<f64> {
    let total = adaptive_simpson(&density, -half_width, half_width, 1e-11)?;
    if !(total > 0.0) {
        return Err(Error::InvalidParameter(
            "wavefunction has vanishing norm on the integration window".into(),
        ));
    }
    Ok(1.0 / total.sqrt())
}

/// L2 norm of a state over [-half_width, half_width].
pub fn state_norm(state: &BoundState, half_width: f64) -> Result<f64> {
    let f = state.wavefunction.clone();
    Ok(adaptive_simpson(&|x| f.eval(x).norm_sqr(), -half_width, half_width, 1e-11)?.sqrt())
}

/// Worst-case Schroedinger residual of a state on a grid:
///
/// max_i | -psi''(x_i) + (V(x_i) - E) psi(x_i) |  /  max_i |psi(x_i)|
///
/// with psi'' from the five-point fourth-order stencil on the grid values.
/// This is the library's independent check that a closed-form eigenfunction
/// actually solves the eigenvalue problem.
pub fn schrodinger_residual(
    spec: &PotentialSpec,
    state: &BoundState,
    grid: GridSpec,
) -> Result<f64> {
    if grid.len < 5 {
        return Err(Error::InvalidParameter(
            "residual scan needs at least 5 grid points".into(),
        ));
    }
    let v = spec.sample(grid)?;
    let psi = crate::potentials::map_points(grid, |x| Ok(state.wavefunction.eval(x)))?;
    let h2 = grid.dx * grid.dx;
    let scale = psi.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for i in 2..grid.len - 2 {
        let lap = (-psi[i + 2] + 16.0 * psi[i + 1] - 30.0 * psi[i] + 16.0 * psi[i - 1]
            - psi[i - 2])
            / (12.0 * h2);
        let r = (-lap + (v.values[i] - state.energy) * psi[i]).norm();
        worst = worst.max(r);
    }
    Ok(worst / scale.max(f64::MIN_POSITIVE))
}
