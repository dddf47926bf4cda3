//! Entire functions of √z evaluated on both sides of z = 0.
//!
//! With z = s/4 and s = ω·ω these cover every trigonometric/hyperbolic branch
//! of the Dirac-boost formulas by a single expression. Near z = 0 the Taylor
//! series is used so that nothing is singular at the null cone.

const SERIES_RADIUS: f64 = 0.25;
const SERIES_TERMS: usize = 14;

fn series(z: f64, coeff: impl Fn(usize) -> f64) -> f64 {
    let mut acc = 0.0;
    let mut zn = 1.0;
    for n in 0..SERIES_TERMS {
        acc += coeff(n) * zn;
        zn *= z;
    }
    acc
}

fn inv_factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc / k as f64)
}

/// cosh(√z); equals cos(√−z) for z < 0.
pub fn cosh_sqrt(z: f64) -> f64 {
    if z.abs() < SERIES_RADIUS {
        series(z, |n| inv_factorial(2 * n))
    } else if z > 0.0 {
        z.sqrt().cosh()
    } else {
        (-z).sqrt().cos()
    }
}

/// sinh(√z)/√z; equals sin(√−z)/√−z for z < 0.
pub fn sinhc_sqrt(z: f64) -> f64 {
    if z.abs() < SERIES_RADIUS {
        series(z, |n| inv_factorial(2 * n + 1))
    } else if z > 0.0 {
        let r = z.sqrt();
        r.sinh() / r
    } else {
        let r = (-z).sqrt();
        r.sin() / r
    }
}

/// (cosh(√z) − 1)/z; equals (1 − cos√−z)/(−z) for z < 0.
pub fn cosh_m1_over(z: f64) -> f64 {
    if z.abs() < SERIES_RADIUS {
        series(z, |n| inv_factorial(2 * n + 2))
    } else {
        (cosh_sqrt(z) - 1.0) / z
    }
}

/// (sinh(√z)/√z − cosh(√z))/z.
pub fn sinhc_m_cosh_over(z: f64) -> f64 {
    if z.abs() < SERIES_RADIUS {
        series(z, |n| -2.0 * (n + 1) as f64 * inv_factorial(2 * n + 3))
    } else {
        (sinhc_sqrt(z) - cosh_sqrt(z)) / z
    }
}
