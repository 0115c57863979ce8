//! Ground-state probability integral for the sech^{2N} family and the
//! deformed potentials built from it.
//!
//! I(x) = int_{-inf}^{x} psi_0(t)^2 dt with psi_0^2 = c0^2 sech^{2N},
//! c0^2 = 1 / int (1-u^2)^{N-1} du over [-1, 1].
//!
//! Everything downstream (isospectral deformations, the Pursey and
//! Abraham-Moses limits) divides by I + lambda, I, or I - 1. Both I -> 0
//! (left tail) and 1 - I -> 0 (right tail) decay like e^{-2N|x|}, so this
//! module always computes the pair (I, 1 - I) with full relative precision
//! in whichever member is small: substituting u = tanh t turns the integral
//! into an exact polynomial in delta = 1 + tanh x, and delta itself is
//! evaluated as 2/(1 + e^{-2x}) which never cancels.

/// Total weight int_{-1}^{1} (1 - u^2)^{N-1} du = 2 sum_j C(N-1,j) (-1)^j / (2j+1).
pub(crate) fn total_weight(n: u32) -> f64 {
    let nm1 = (n - 1) as usize;
    let mut sum = 0.0;
    for j in 0..=nm1 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom(nm1, j) / (2 * j + 1) as f64;
    }
    2.0 * sum
}

fn binom(n: usize, k: usize) -> f64 {
    let mut r = 1.0;
    for i in 1..=k {
        r *= (n - k + i) as f64 / i as f64;
    }
    r
}

/// Unnormalized left-tail mass: int over u in [-1, tanh x] of (1-u^2)^{N-1} du
/// written as a polynomial in delta = 1 + tanh x,
///   T_N(delta) = sum_{j=0}^{N-1} C(N-1,j) (-1)^j 2^{N-1-j} delta^{N+j} / (N+j).
fn tail_mass(n: u32, delta: f64) -> f64 {
    let nm1 = (n - 1) as usize;
    let mut sum = 0.0;
    for j in 0..=nm1 {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign
            * binom(nm1, j)
            * 2f64.powi((nm1 - j) as i32)
            * delta.powi((n as usize + j) as i32)
            / (n as usize + j) as f64;
    }
    sum
}

/// (I(x), 1 - I(x)), each with full relative precision.
pub(crate) fn integral_pair(n: u32, x: f64) -> (f64, f64) {
    debug_assert!(n >= 1);
    let total = total_weight(n);
    if x <= 0.0 {
        // delta = 1 + tanh x = 2 / (1 + e^{-2x})
        let delta = 2.0 / (1.0 + (-2.0 * x).exp());
        let i = tail_mass(n, delta) / total;
        (i, 1.0 - i)
    } else {
        // by symmetry the right tail is the left tail of -x
        let delta = 2.0 / (1.0 + (2.0 * x).exp());
        let one_minus = tail_mass(n, delta) / total;
        (1.0 - one_minus, one_minus)
    }
}

/// Normalization of the ground state: c0^2 with psi_0 = c0 sech^N.
pub(crate) fn ground_norm_sq(n: u32) -> f64 {
    1.0 / total_weight(n)
}

/// I'(x) = c0^2 sech^{2N} x and I''(x) = -2N tanh x I'(x).
pub(crate) fn integral_derivs(n: u32, x: f64) -> (f64, f64) {
    let sech = 1.0 / x.cosh();
    let ip = ground_norm_sq(n) * sech.powi(2 * n as i32);
    (ip, -2.0 * n as f64 * x.tanh() * ip)
}

/// Denominator choice for the deformed families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Denominator {
    /// I + lambda (one-parameter isospectral family)
    Shifted(f64),
    /// I (Pursey limit)
    Bare,
    /// I - 1 (Abraham-Moses limit)
    Depressed,
}

impl Denominator {
    /// Evaluate the denominator from the stable (I, 1-I) pair.
    pub(crate) fn value(self, pair: (f64, f64)) -> f64 {
        match self {
            Denominator::Shifted(lambda) => pair.0 + lambda,
            Denominator::Bare => pair.0,
            Denominator::Depressed => -pair.1,
        }
    }
}

/// Deformed potential V(x) - 2 [ I''/D - (I'/D)^2 ] with D the chosen
/// denominator and V the base sech^2 well of depth N(N+1).
pub(crate) fn deformed_potential(n: u32, den: Denominator, x: f64) -> f64 {
    let sech = 1.0 / x.cosh();
    let base = -(n as f64) * (n as f64 + 1.0) * sech * sech;
    let (ip, ipp) = integral_derivs(n, x);
    if ip == 0.0 {
        // so far out that sech^{2N} underflows; the deformation term decays
        // at the same rate and is exactly negligible there
        return base;
    }
    let d = den.value(integral_pair(n, x));
    let u = ip / d;
    base - 2.0 * (ipp / d - u * u)
}
