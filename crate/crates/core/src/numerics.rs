//! Shared numerical kernels: complex-valued functions with optional analytic
//! derivatives, finite-difference stencils, and adaptive Simpson quadrature.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// Default spacing for finite-difference derivatives of smooth functions.
pub const FD_STEP: f64 = 1e-3;

type DynFn = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A complex-valued function of one real variable, optionally carrying an
/// analytic first derivative. When no analytic derivative is attached,
/// [`ComplexFn::deriv`] falls back to a fourth-order central difference.
#[derive(Clone)]
pub struct ComplexFn {
    value: DynFn,
    derivative: Option<DynFn>,
}

impl ComplexFn {
    pub fn new<F>(value: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            derivative: None,
        }
    }

    pub fn with_derivative<F, G>(value: F, derivative: G) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
        G: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(value),
            derivative: Some(Arc::new(derivative)),
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.value)(x)
    }

    /// First derivative: analytic when available, otherwise the five-point
    /// central difference with spacing [`FD_STEP`].
    pub fn deriv(&self, x: f64) -> Complex64 {
        match &self.derivative {
            Some(d) => d(x),
            None => deriv_central(|t| (self.value)(t), x, FD_STEP),
        }
    }

    pub fn has_analytic_derivative(&self) -> bool {
        self.derivative.is_some()
    }
}

impl std::fmt::Debug for ComplexFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComplexFn")
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

/// Fourth-order five-point central first derivative.
pub fn deriv_central<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Fourth-order five-point central second derivative.
pub fn second_deriv_central<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}

/// Adaptive Simpson quadrature of a real integrand on [a, b].
///
/// Classic bisection scheme with the |S_left + S_right - S| / 15 error
/// estimate; errors out if the depth limit is reached before the local
/// tolerance is met. The first MIN_SPLITS levels subdivide unconditionally
/// so a narrow feature between the initial probe points (a bound state in a
/// wide normalization window, say) cannot fool the error estimate into
/// accepting zero.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) || !(tol > 0.0) {
        return Err(Error::InvalidParameter(
            "adaptive_simpson needs finite bounds and tol > 0".into(),
        ));
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson_panel(a, b, fa, fm, fb);
    simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 48, MIN_SPLITS)
}

/// Unconditional bisection levels before the error estimate may terminate.
const MIN_SPLITS: u32 = 8;

fn simpson_panel(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn simpson_recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    force: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_panel(a, m, fa, flm, fm);
    let right = simpson_panel(m, b, fm, frm, fb);
    let err = left + right - whole;
    if force == 0 && err.abs() <= 15.0 * tol {
        return Ok(left + right + err / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureFailure {
            tol,
            best: err.abs() / 15.0,
        });
    }
    let half_tol = 0.5 * tol;
    let deeper = force.saturating_sub(1);
    Ok(
        simpson_recurse(f, a, m, fa, flm, fm, left, half_tol, depth - 1, deeper)?
            + simpson_recurse(f, m, b, fm, frm, fb, right, half_tol, depth - 1, deeper)?,
    )
}

/// sin(pi x) with exact zeros at integer x and exact +-1 at half-integer x.
///
/// The naive (PI * x).sin() loses the exact zeros that make reflectionless
/// parameter pairs reflectionless; reducing the argument first keeps them.
pub fn sin_pi(x: f64) -> f64 {
    // Reduce to y in [-1, 1] with x - y an even integer; the subtraction is
    // exact because 2*round(x/2) is representable whenever x is.
    let y = x - 2.0 * (0.5 * x).round();
    if y == 0.0 || y == 1.0 || y == -1.0 {
        return 0.0;
    }
    if y == 0.5 {
        return 1.0;
    }
    if y == -0.5 {
        return -1.0;
    }
    (std::f64::consts::PI * y).sin()
}

/// cos(pi x) with exact zeros at half-integer x and exact +-1 at integer x.
pub fn cos_pi(x: f64) -> f64 {
    let y = x - 2.0 * (0.5 * x).round();
    if y == 0.0 {
        return 1.0;
    }
    if y == 1.0 || y == -1.0 {
        return -1.0;
    }
    if y == 0.5 || y == -0.5 {
        return 0.0;
    }
    (std::f64::consts::PI * y).cos()
}
