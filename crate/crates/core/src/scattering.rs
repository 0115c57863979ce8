//! Scattering amplitudes: closed forms for every family, partner phase
//! relations, and an independent fixed-step Runge-Kutta integrator that
//! extracts R and T directly from the Schroedinger equation.
//!
//! Conventions: scattering states at energy k^2 (k > 0). For left incidence
//! psi -> e^{ikx} + R e^{-ikx} as x -> -inf and psi -> T e^{ikx} as
//! x -> +inf; right incidence is the mirror problem. T is identical from
//! both sides for any potential; R generally is not once the potential is
//! complex.

use crate::error::{Error, Result};
use crate::numerics::{cos_pi, sin_pi};
use crate::potentials::{parametric_image, Branch, PotentialSpec};
use crate::specfun::gamma_complex;
use crate::susyqm::Superpotential;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which side the incident plane wave comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Incidence {
    Left,
    Right,
}

/// How a set of amplitudes was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Analytic,
    Numeric,
}

/// Reflection and transmission at one momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Amplitudes {
    pub k: f64,
    pub r: Complex64,
    pub t: Complex64,
    pub incidence: Incidence,
    pub source: Source,
}

fn check_k(k: f64) -> Result<()> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "momentum k must be finite and > 0, got {k}"
        )));
    }
    Ok(())
}

/// Transmission of the sech^2 well of depth N(N+1):
///
/// T(k) = Gamma(-N - ik) Gamma(N + 1 - ik) / [ Gamma(1 - ik) Gamma(-ik) ],
///
/// unimodular for every real k (the well is reflectionless).
pub fn transmission_real(n: u32, k: f64) -> Result<Complex64> {
    check_k(k)?;
    let nf = n as f64;
    let mik = Complex64::new(0.0, -k);
    let num = gamma_complex(mik - nf)? * gamma_complex(mik + (nf + 1.0))?;
    let den = gamma_complex(mik + 1.0)? * gamma_complex(mik)?;
    Ok(num / den)
}

/// Scarf II transmission,
///
/// T(k) = Gamma(-a-ik) Gamma(1+a-ik) Gamma(1/2-b-ik) Gamma(1/2+b-ik)
///        / [ Gamma(-ik) Gamma(1-ik) Gamma(1/2-ik)^2 ].
///
/// Invariant under the parametric substitution (the four numerator factors
/// permute), so it is a function of the potential alone.
pub fn scarf2_transmission(a: f64, b: f64, k: f64) -> Result<Complex64> {
    check_k(k)?;
    let mik = Complex64::new(0.0, -k);
    let num = gamma_complex(mik - a)?
        * gamma_complex(mik + (1.0 + a))?
        * gamma_complex(mik + (0.5 - b))?
        * gamma_complex(mik + (0.5 + b))?;
    let half = gamma_complex(mik + 0.5)?;
    let den = gamma_complex(mik)? * gamma_complex(mik + 1.0)? * half * half;
    Ok(num / den)
}

/// Scarf II reflection for the given incidence side:
///
/// R = T(k) * i [ s cos(pi a) sin(pi b) / cosh(pi k) + sin(pi a) cos(pi b) / sinh(pi k) ]
///
/// with s = +1 from the left, s = -1 from the right (the mirrored potential
/// is the one with b negated). The pi-lattice trig comes from the reduced
/// implementations, so R vanishes identically (not just to rounding) when a
/// and b are both integers or both half-integers.
pub fn scarf2_reflection(a: f64, b: f64, k: f64, incidence: Incidence) -> Result<Complex64> {
    let t = scarf2_transmission(a, b, k)?;
    let s = match incidence {
        Incidence::Left => 1.0,
        Incidence::Right => -1.0,
    };
    let bracket =
        s * cos_pi(a) * sin_pi(b) / (PI * k).cosh() + sin_pi(a) * cos_pi(b) / (PI * k).sinh();
    Ok(t * Complex64::new(0.0, bracket))
}

/// Amplitude ratio of the X_m extension relative to its conventional base:
///
/// zeta_m(k) = [ b^2 - (ik - 1/2)^2 + (b - ik + 1/2)(1 - m) ]
///           / [ b^2 - (ik + 1/2)^2 + (b + ik + 1/2)(1 - m) ].
///
/// Unimodular for every real k and m (numerator and denominator are complex
/// conjugates), and identically 1 at m = 0, so the extension never spoils
/// reflectionlessness. Depends on b and m only.
pub fn extension_factor(m: u32, b: f64, k: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    let one_m = 1.0 - m as f64;
    let num = b * b - (ik - 0.5) * (ik - 0.5) + (b + 0.5 - ik) * one_m;
    let den = b * b - (ik + 0.5) * (ik + 0.5) + (b + 0.5 + ik) * one_m;
    num / den
}

/// Closed-form amplitudes for a potential spec.
///
/// Scarf II amplitudes depend only on (a, b), never on the branch; the
/// extended families use the branch-effective parameters because there the
/// substitution changes the potential. Right incidence for an m >= 1
/// extension is not available in closed form.
pub fn analytic_amplitudes(
    spec: &PotentialSpec,
    k: f64,
    incidence: Incidence,
) -> Result<Amplitudes> {
    spec.validate()?;
    check_k(k)?;
    let zero = Complex64::new(0.0, 0.0);
    let (r, t) = match spec {
        PotentialSpec::RealSech { n } => (zero, transmission_real(*n, k)?),
        PotentialSpec::ScarfII { a, b, .. } => (
            scarf2_reflection(*a, *b, k, incidence)?,
            scarf2_transmission(*a, *b, k)?,
        ),
        PotentialSpec::ScarfIIExtended { a, b, m, branch } => {
            let (ae, be) = match branch {
                Branch::Normal => (*a, *b),
                Branch::Parametric => parametric_image(*a, *b),
            };
            if *m >= 1 && incidence == Incidence::Right {
                return Err(Error::Unsupported(
                    "closed-form right-incidence amplitudes for the m >= 1 extension".into(),
                ));
            }
            let zeta = extension_factor(*m, be, k);
            (
                scarf2_reflection(ae, be, k, incidence)? * zeta,
                scarf2_transmission(ae, be, k)? * zeta,
            )
        }
        PotentialSpec::IsospectralFamily { n, .. } => {
            // the deformation multiplies the Jost function by 1: R stays 0,
            // T stays the sech^2-well transmission
            (zero, transmission_real(*n, k)?)
        }
        PotentialSpec::Pursey { n } => {
            let w_minus = -(*n as f64);
            let phase = -(Complex64::new(w_minus, -k)) / Complex64::new(w_minus, k);
            (zero, phase * transmission_real(*n, k)?)
        }
        PotentialSpec::AbrahamMoses { n } => {
            let w_plus = *n as f64;
            let phase = -(Complex64::new(w_plus, k)) / Complex64::new(w_plus, -k);
            (zero, phase * transmission_real(*n, k)?)
        }
        PotentialSpec::PartnerOf { base } => {
            let base_amp = analytic_amplitudes(base, k, incidence)?;
            let branch = match &**base {
                PotentialSpec::ScarfII { branch, .. } => *branch,
                _ => Branch::Normal,
            };
            let sp = crate::susyqm::superpotential(base, branch)?;
            let partner = partner_rt(&base_amp, &sp, PartnerRelation::SusyPartner)?;
            (partner.r, partner.t)
        }
    };
    Ok(Amplitudes {
        k,
        r,
        t,
        incidence,
        source: Source::Analytic,
    })
}

/// Which spectral surgery a phase relation corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartnerRelation {
    /// V_2 = W^2 + W' + E_0: T_2 = T_1 (W_- - ik)/(W_+ - ik),
    /// R_2 = R_1 (W_-+ - ik)/(W_-+ + ik) on the incident side.
    SusyPartner,
    /// Pursey deletion: T = -T_1 (W_- - ik)/(W_- + ik), reflection stays zero.
    Pursey,
    /// Abraham-Moses deletion: T = -T_1 (W_+ + ik)/(W_+ - ik), reflection kept.
    AbrahamMoses,
}

/// Map base amplitudes through a SUSY phase relation.
///
/// Requires a propagating channel on both sides: k^2 must exceed both
/// asymptotic superpotential values squared.
pub fn partner_rt(
    base: &Amplitudes,
    sp: &Superpotential,
    relation: PartnerRelation,
) -> Result<Amplitudes> {
    let k = base.k;
    check_k(k)?;
    let w_sq = sp.w_minus.norm_sqr().max(sp.w_plus.norm_sqr());
    if k * k <= w_sq {
        return Err(Error::EvanescentChannel { k_sq: k * k, w_sq });
    }
    let ik = Complex64::new(0.0, k);
    let (r, t) = match relation {
        PartnerRelation::SusyPartner => {
            let t = base.t * (sp.w_minus - ik) / (sp.w_plus - ik);
            let r = match base.incidence {
                Incidence::Left => base.r * (sp.w_minus - ik) / (sp.w_minus + ik),
                Incidence::Right => base.r * (sp.w_plus + ik) / (sp.w_plus - ik),
            };
            (r, t)
        }
        PartnerRelation::Pursey => {
            if base.r.norm() != 0.0 {
                return Err(Error::Unsupported(
                    "the Pursey phase relation is implemented for reflectionless bases".into(),
                ));
            }
            let t = -base.t * (sp.w_minus - ik) / (sp.w_minus + ik);
            (Complex64::new(0.0, 0.0), t)
        }
        PartnerRelation::AbrahamMoses => {
            let t = -base.t * (sp.w_plus + ik) / (sp.w_plus - ik);
            (base.r, t)
        }
    };
    Ok(Amplitudes {
        k,
        r,
        t,
        incidence: base.incidence,
        source: base.source,
    })
}

/// Settings for the numerical scattering run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatterConfig {
    /// Integration box [-L, L].
    pub box_half_width: f64,
    /// Runge-Kutta step.
    pub dx: f64,
    /// The run refuses to start unless |V(+-L)| <= tail_factor * k^2.
    pub tail_factor: f64,
    /// Redo the run at dx/2 and reject if |R| or |T| moved too much.
    pub check_step_halving: bool,
    /// Largest |R| / |T| movement the step-halving check accepts.
    pub step_tolerance: f64,
}

impl Default for ScatterConfig {
    fn default() -> Self {
        Self {
            box_half_width: 25.0,
            dx: 1e-3,
            tail_factor: 1e-8,
            check_step_halving: true,
            step_tolerance: 1e-6,
        }
    }
}

/// Solve the scattering problem numerically: integrate psi'' = (V - k^2) psi
/// from +L back to -L with classic fixed-step RK4, then project the solution
/// at -L onto incoming/outgoing plane waves.
///
/// With `check_step_halving` the integration is repeated at half the step
/// and the finer result is returned; disagreement beyond `step_tolerance`
/// is an error rather than a silently wrong amplitude.
pub fn numeric_scatter(
    spec: &PotentialSpec,
    k: f64,
    incidence: Incidence,
    cfg: &ScatterConfig,
) -> Result<Amplitudes> {
    spec.validate()?;
    check_k(k)?;
    let l = cfg.box_half_width;
    if !(l > 0.0) || !(cfg.dx > 0.0) {
        return Err(Error::InvalidParameter(
            "scattering box and step must be positive".into(),
        ));
    }
    if cfg.dx > 0.25 / k || cfg.dx > 0.01 {
        return Err(Error::InvalidParameter(format!(
            "step {} too coarse for k = {k}",
            cfg.dx
        )));
    }
    let bound = cfg.tail_factor * k * k;
    let tail = spec.eval(l)?.norm().max(spec.eval(-l)?.norm());
    if tail > bound {
        return Err(Error::DomainTooSmall { l, tail, bound, k });
    }
    let (r1, t1) = integrate(spec, k, incidence, l, cfg.dx)?;
    if !cfg.check_step_halving {
        return Ok(Amplitudes {
            k,
            r: r1,
            t: t1,
            incidence,
            source: Source::Numeric,
        });
    }
    let (r2, t2) = integrate(spec, k, incidence, l, 0.5 * cfg.dx)?;
    let dr = (r1.norm() - r2.norm()).abs();
    let dt = (t1.norm() - t2.norm()).abs();
    if dr > cfg.step_tolerance {
        return Err(Error::NoConvergence {
            quantity: "|R|",
            delta: dr,
            k,
        });
    }
    if dt > cfg.step_tolerance {
        return Err(Error::NoConvergence {
            quantity: "|T|",
            delta: dt,
            k,
        });
    }
    Ok(Amplitudes {
        k,
        r: r2,
        t: t2,
        incidence,
        source: Source::Numeric,
    })
}

fn integrate(
    spec: &PotentialSpec,
    k: f64,
    incidence: Incidence,
    l: f64,
    dx: f64,
) -> Result<(Complex64, Complex64)> {
    // right incidence = left incidence on the mirrored potential
    let mirrored = incidence == Incidence::Right;
    let v = |x: f64| -> Result<Complex64> {
        if mirrored {
            spec.eval(-x)
        } else {
            spec.eval(x)
        }
    };
    let steps = ((2.0 * l / dx).round() as usize).max(1);
    let h = -2.0 * l / steps as f64;
    let ik = Complex64::new(0.0, k);
    let k2 = k * k;
    // outgoing wave at +L
    let mut psi = (ik * l).exp();
    let mut dpsi = ik * psi;
    let mut v_here = v(l)?;
    for i in 0..steps {
        let x = l + i as f64 * h;
        let v_mid = v(x + 0.5 * h)?;
        let v_next = v(x + h)?;
        let a1 = dpsi;
        let b1 = (v_here - k2) * psi;
        let a2 = dpsi + 0.5 * h * b1;
        let b2 = (v_mid - k2) * (psi + 0.5 * h * a1);
        let a3 = dpsi + 0.5 * h * b2;
        let b3 = (v_mid - k2) * (psi + 0.5 * h * a2);
        let a4 = dpsi + h * b3;
        let b4 = (v_next - k2) * (psi + h * a3);
        psi += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        dpsi += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        v_here = v_next;
    }
    let x_end = l + steps as f64 * h; // -L up to rounding
    let e = (ik * x_end).exp();
    let a_coef = 0.5 * (psi + dpsi / ik) / e;
    let b_coef = 0.5 * (psi - dpsi / ik) * e;
    Ok((b_coef / a_coef, 1.0 / a_coef))
}

/// Amplitudes across a momentum grid, in parallel when the `parallel`
/// feature is active.
pub fn scatter_sweep(
    spec: &PotentialSpec,
    ks: &[f64],
    incidence: Incidence,
    cfg: &ScatterConfig,
) -> Result<Vec<Amplitudes>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        ks.par_iter()
            .map(|&k| numeric_scatter(spec, k, incidence, cfg))
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        ks.iter()
            .map(|&k| numeric_scatter(spec, k, incidence, cfg))
            .collect()
    }
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

    // Independent transcription of the real-well transmission as a finite
    // product of first-order Jost factors: T = prod_{j=1}^{N} (ik - j)/(ik + j).
    fn t_real_product(n: u32, k: f64) -> Complex64 {
        let ik = c(0.0, k);
        let mut t = c(1.0, 0.0);
        for j in 1..=n {
            t *= (ik - j as f64) / (ik + j as f64);
        }
        t
    }

    #[test]
    fn real_transmission_matches_frozen_values() {
        let t = transmission_real(3, 2.0).unwrap();
        assert_abs_diff_eq!(t.re, -16.0 / 65.0, epsilon = 1e-13);
        assert_abs_diff_eq!(t.im, -63.0 / 65.0, epsilon = 1e-13);
        let t = transmission_real(3, 0.5).unwrap();
        assert_abs_diff_eq!(t.re, 0.1758346581875993641, epsilon = 1e-13);
        assert_abs_diff_eq!(t.im, 0.9844197138314785374, epsilon = 1e-13);
    }

    #[test]
    fn real_transmission_matches_product_oracle_and_is_unimodular() {
        for n in 1..=5u32 {
            for i in 0..50 {
                let k = 0.2 + (5.0 - 0.2) * i as f64 / 49.0;
                let t = transmission_real(n, k).unwrap();
                assert!((t - t_real_product(n, k)).norm() < 1e-12, "N={n}, k={k}");
                assert!(
                    (t.norm_sqr() - 1.0).abs() < 1e-10,
                    "|T|^2 != 1 at N={n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn scarf_amplitudes_match_frozen_controls() {
        // (a, b, k, T, R_left)
        let table = [
            (
                1.3,
                0.4,
                0.5,
                c(-0.9874171076494847695, -0.2536307763323246457),
                c(-0.08405911201647899997, 0.3272528928040717812),
            ),
            (
                1.3,
                0.4,
                1.0,
                c(-0.7144330630456470795, 0.7010319917532631966),
                c(0.04898247729595546715, 0.04991883637520232181),
            ),
            (
                1.3,
                0.4,
                2.0,
                c(0.1445139966755034673, 0.9895045184752344442),
                c(0.002989868831270181155, -0.000436660860334600428),
            ),
            (
                0.7,
                1.2,
                0.5,
                c(-0.9295394203002536852, -0.278637383902680345),
                c(-0.04088090006519054944, 0.1363794319904403986),
            ),
            (
                0.7,
                1.2,
                1.0,
                c(-0.6408594893530979578, 0.7661467937912983198),
                c(0.02058572309287279623, 0.01721935808669121114),
            ),
            (
                0.7,
                1.2,
                2.0,
                c(0.3047481516779531518, 0.9524307079373008489),
                c(0.001099253716229403562, -0.0003517269397702839809),
            ),
        ];
        for (a, b, k, t_want, r_want) in table {
            let t = scarf2_transmission(a, b, k).unwrap();
            let r = scarf2_reflection(a, b, k, Incidence::Left).unwrap();
            assert!((t - t_want).norm() < 1e-12, "T off at ({a},{b},{k})");
            assert!((r - r_want).norm() < 1e-12, "R off at ({a},{b},{k})");
        }
    }

    #[test]
    fn scarf_reflection_vanishes_exactly_on_the_lattice() {
        // both integers or both half-integers: R must be exactly zero
        for (a, b) in [(2.0, 1.0), (1.0, 3.0), (2.5, 0.5), (1.5, 1.5), (0.5, 2.5)] {
            for k in [0.5, 1.0, 2.0, 4.0] {
                for inc in [Incidence::Left, Incidence::Right] {
                    let r = scarf2_reflection(a, b, k, inc).unwrap();
                    assert_eq!(r, c(0.0, 0.0), "R not exactly 0 at ({a},{b},{k},{inc:?})");
                }
            }
        }
        // mixed integer/half-integer pairs are NOT reflectionless
        let r = scarf2_reflection(2.0, 0.5, 1.0, Incidence::Left).unwrap();
        assert!(r.norm() > 1e-6);
    }

    #[test]
    fn scarf_transmission_is_parametric_invariant() {
        for (a, b) in [(1.3, 0.4), (0.7, 1.2), (2.0, 1.0)] {
            let (ap, bp) = parametric_image(a, b);
            for k in [0.3, 1.0, 2.7] {
                let t1 = scarf2_transmission(a, b, k).unwrap();
                let t2 = scarf2_transmission(ap, bp, k).unwrap();
                assert!((t1 - t2).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn extension_factor_matches_frozen_values() {
        let z = extension_factor(1, 1.0, 1.0);
        assert_abs_diff_eq!(z.re, 33.0 / 65.0, epsilon = 1e-14);
        assert_abs_diff_eq!(z.im, 56.0 / 65.0, epsilon = 1e-14);
        let z = extension_factor(1, 0.4, 1.0);
        assert_abs_diff_eq!(z.re, -0.09403205513921557902, epsilon = 1e-14);
        assert_abs_diff_eq!(z.im, 0.9955691701766861769, epsilon = 1e-14);
    }

    #[test]
    fn extension_factor_is_trivial_at_m_zero_and_unimodular() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for _ in 0..1000 {
            let b = rng.gen_range(-4.0..4.0);
            let k = rng.gen_range(0.05..6.0);
            let z0 = extension_factor(0, b, k);
            assert!(
                (z0 - c(1.0, 0.0)).norm() < 1e-13,
                "zeta(m=0) != 1 at b={b}, k={k}"
            );
            for m in 1..=3 {
                let z = extension_factor(m, b, k);
                assert!((z.norm() - 1.0).abs() < 1e-12, "|zeta| != 1 at m={m}");
            }
        }
    }

    #[test]
    fn numeric_matches_analytic_for_the_real_well() {
        let spec = PotentialSpec::RealSech { n: 3 };
        let cfg = ScatterConfig {
            box_half_width: 18.0,
            dx: 2e-3,
            ..Default::default()
        };
        for k in [0.5, 2.0] {
            let num = numeric_scatter(&spec, k, Incidence::Left, &cfg).unwrap();
            let ana = analytic_amplitudes(&spec, k, Incidence::Left).unwrap();
            assert!(
                num.r.norm() < 1e-6,
                "numeric |R| = {:e} at k={k}",
                num.r.norm()
            );
            assert!((num.t - ana.t).norm() < 1e-5, "T mismatch at k={k}");
            assert!((num.t.norm_sqr() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn numeric_matches_analytic_for_scarf_controls_both_sides() {
        let spec = PotentialSpec::ScarfII {
            a: 1.3,
            b: 0.4,
            branch: Branch::Normal,
        };
        // the imaginary sech term decays like e^{-|x|}, so the box must be
        // wide enough for the tail precondition at k = 1
        let cfg = ScatterConfig {
            box_half_width: 25.0,
            dx: 2e-3,
            ..Default::default()
        };
        for inc in [Incidence::Left, Incidence::Right] {
            let num = numeric_scatter(&spec, 1.0, inc, &cfg).unwrap();
            let ana = analytic_amplitudes(&spec, 1.0, inc).unwrap();
            assert!(
                (num.r - ana.r).norm() < 1e-8,
                "R mismatch ({inc:?}): {:e}",
                (num.r - ana.r).norm()
            );
            assert!((num.t - ana.t).norm() < 1e-8, "T mismatch ({inc:?})");
        }
        // the two sides genuinely differ for a complex potential
        let rl = analytic_amplitudes(&spec, 1.0, Incidence::Left).unwrap().r;
        let rr = analytic_amplitudes(&spec, 1.0, Incidence::Right).unwrap().r;
        assert!((rl - rr).norm() > 1e-3);
    }

    #[test]
    fn numeric_confirms_deformed_families_stay_reflectionless() {
        let cfg = ScatterConfig {
            box_half_width: 18.0,
            dx: 2e-3,
            ..Default::default()
        };
        let specs = [
            PotentialSpec::IsospectralFamily { n: 3, lambda: 0.1 },
            PotentialSpec::Pursey { n: 3 },
            PotentialSpec::AbrahamMoses { n: 3 },
        ];
        for spec in specs {
            let num = numeric_scatter(&spec, 1.0, Incidence::Left, &cfg).unwrap();
            let ana = analytic_amplitudes(&spec, 1.0, Incidence::Left).unwrap();
            assert!(
                num.r.norm() < 1e-6,
                "{spec}: numeric |R| = {:e}",
                num.r.norm()
            );
            assert_eq!(ana.r, c(0.0, 0.0));
            assert!(
                (num.t - ana.t).norm() < 1e-6,
                "{spec}: T mismatch {:e}",
                (num.t - ana.t).norm()
            );
        }
    }

    #[test]
    fn numeric_confirms_extended_amplitudes() {
        let spec = PotentialSpec::ScarfIIExtended {
            a: 2.0,
            b: 1.0,
            m: 1,
            branch: Branch::Normal,
        };
        let cfg = ScatterConfig {
            dx: 2e-3,
            ..Default::default()
        };
        let num = numeric_scatter(&spec, 1.0, Incidence::Left, &cfg).unwrap();
        let ana = analytic_amplitudes(&spec, 1.0, Incidence::Left).unwrap();
        assert_eq!(ana.r, c(0.0, 0.0));
        assert!(num.r.norm() < 1e-5);
        assert!(
            (num.t - ana.t).norm() < 1e-5,
            "{:e}",
            (num.t - ana.t).norm()
        );
    }

    #[test]
    fn partner_relation_maps_amplitudes() {
        use crate::susyqm::superpotential;
        let base = PotentialSpec::RealSech { n: 3 };
        let sp = superpotential(&base, Branch::Normal).unwrap();
        let amp = analytic_amplitudes(&base, 4.0, Incidence::Left).unwrap();
        // partner of the N=3 well is the N=2 well
        let partner = partner_rt(&amp, &sp, PartnerRelation::SusyPartner).unwrap();
        let direct = transmission_real(2, 4.0).unwrap();
        assert!((partner.t - direct).norm() < 1e-12);
        // evanescent channel is rejected
        let slow = analytic_amplitudes(&base, 2.0, Incidence::Left).unwrap();
        assert!(matches!(
            partner_rt(&slow, &sp, PartnerRelation::SusyPartner),
            Err(Error::EvanescentChannel { .. })
        ));
    }

    #[test]
    fn deletion_relations_match_direct_formulas() {
        use crate::susyqm::superpotential;
        let base = PotentialSpec::RealSech { n: 3 };
        let sp = superpotential(&base, Branch::Normal).unwrap();
        let amp = analytic_amplitudes(&base, 4.0, Incidence::Left).unwrap();
        let p = partner_rt(&amp, &sp, PartnerRelation::Pursey).unwrap();
        let want =
            analytic_amplitudes(&PotentialSpec::Pursey { n: 3 }, 4.0, Incidence::Left).unwrap();
        assert!((p.t - want.t).norm() < 1e-13);
        let am = partner_rt(&amp, &sp, PartnerRelation::AbrahamMoses).unwrap();
        let want = analytic_amplitudes(&PotentialSpec::AbrahamMoses { n: 3 }, 4.0, Incidence::Left)
            .unwrap();
        assert!((am.t - want.t).norm() < 1e-13);
    }

    #[test]
    fn tail_and_step_preconditions_are_enforced() {
        let ext = PotentialSpec::ScarfIIExtended {
            a: 2.0,
            b: 1.0,
            m: 1,
            branch: Branch::Normal,
        };
        let cfg = ScatterConfig {
            box_half_width: 10.0, // e^{-10} tail: far too short for the extension
            dx: 2e-3,
            ..Default::default()
        };
        assert!(matches!(
            numeric_scatter(&ext, 1.0, Incidence::Left, &cfg),
            Err(Error::DomainTooSmall { .. })
        ));
        let coarse = ScatterConfig {
            dx: 0.2,
            ..Default::default()
        };
        assert!(numeric_scatter(
            &PotentialSpec::RealSech { n: 3 },
            1.0,
            Incidence::Left,
            &coarse
        )
        .is_err());
        assert!(numeric_scatter(
            &PotentialSpec::RealSech { n: 3 },
            -1.0,
            Incidence::Left,
            &ScatterConfig::default()
        )
        .is_err());
    }

    #[test]
    fn sweep_matches_single_runs() {
        let spec = PotentialSpec::RealSech { n: 2 };
        let cfg = ScatterConfig {
            box_half_width: 15.0,
            dx: 2e-3,
            check_step_halving: false,
            ..Default::default()
        };
        let ks = [0.5, 1.0, 1.5];
        let sweep = scatter_sweep(&spec, &ks, Incidence::Left, &cfg).unwrap();
        for (i, &k) in ks.iter().enumerate() {
            let single = numeric_scatter(&spec, k, Incidence::Left, &cfg).unwrap();
            assert_eq!(sweep[i].t, single.t);
            assert_eq!(sweep[i].r, single.r);
            assert_eq!(sweep[i].k, k);
        }
    }
}
