//! Independent reference implementations used by the acceptance tests.
//! Everything here is transcribed directly from closed-form expressions and
//! deliberately shares no code with the library internals it checks.

use num_complex::Complex64;

/// Transmission of the depth-N(N+1) sech^2 well as a finite Jost product:
/// T(k) = prod_{j=1}^{N} (ik - j) / (ik + j).
pub fn t_real_product(n: u32, k: f64) -> Complex64 {
    let ik = Complex64::new(0.0, k);
    let mut t = Complex64::new(1.0, 0.0);
    for j in 1..=n {
        t *= (ik - j as f64) / (ik + j as f64);
    }
    t
}

/// Closed form of the normalized level-3 deformation integral:
/// I(x) = (8 + 15 t - 10 t^3 + 3 t^5) / 16 with t = tanh x.
pub fn i3_closed(x: f64) -> f64 {
    let t = x.tanh();
    (8.0 + 15.0 * t - 10.0 * t.powi(3) + 3.0 * t.powi(5)) / 16.0
}

/// Closed form of the level-3 deformed ground state:
/// psi_0(x; lambda) = sqrt(lambda (1 + lambda)) * sqrt(15/16) * sech^3 x / (I(x) + lambda).
pub fn family_ground_closed(lambda: f64, x: f64) -> f64 {
    let c0 = (15.0f64 / 16.0).sqrt();
    (lambda * (1.0 + lambda)).sqrt() * c0 / x.cosh().powi(3) / (i3_closed(x) + lambda)
}

/// The six level-3 reflectionless pairs, half-integer case first.
pub fn n3_pairs() -> [(f64, f64); 6] {
    [
        (2.5, 0.5),
        (1.5, 1.5),
        (0.5, 2.5),
        (2.0, 1.0),
        (1.0, 2.0),
        (0.0, 3.0),
    ]
}
