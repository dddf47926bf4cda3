//! Recovery of W·L·R coordinates from a 4×4 group element.
//!
//! Because L and R commute with γ⁵ while every Γ^μ anticommutes with it,
//! P = Mγ⁵M⁻¹γ⁵ = W(ω)² depends on the Dirac factor alone. Its Clifford
//! components give ω in closed form; H = W⁻¹M = L·R then gives u from HH† = L²
//! and θ from L⁻¹H. Gauss–Newton on the Frobenius residual polishes the seed
//! (or recovers from a poor one).
//!
//! Not every group element has these coordinates: when the scalar part of P is
//! negative while its vector part is spacelike, P = −W(2ω) for a spacelike ω,
//! which no W(ω)² can equal. Such inputs are rejected with
//! [`Error::OutsideChart`] rather than handed to the solver.

use nalgebra::{SMatrix, SVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{frobenius, gamma, gamma5, is_finite, Matrix4C, Tolerances, C64, I};
use crate::error::{Error, Result};
use crate::extended::{dirac_w, extended_matrix, Coords, DiracParams, ExtendedParams};
use crate::lorentz::{boost_sl2, minkowski_square, BoostParams, FourVector, RotationParams};

const MAX_ITER: usize = 50;
const RESTARTS: usize = 8;
const JACOBIAN_STEP: f64 = 1e-7;
/// Spacelike vector parts of P below this are treated as numerically null.
const CHART_MARGIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorizationReport {
    pub params: ExtendedParams,
    /// ‖extended_matrix(params) − m‖_F.
    pub residual: f64,
    pub iterations: usize,
    /// Residual of the closed-form seed before refinement.
    pub seed_quality: f64,
}

/// Clifford components of P = Mγ⁵M⁻¹γ⁵ = a + i b_μγ^μ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartInvariant {
    pub scalar: f64,
    pub vector: FourVector,
}

impl ChartInvariant {
    pub fn vector_square(&self) -> f64 {
        minkowski_square(&self.vector)
    }

    pub fn in_chart(&self) -> bool {
        !(self.scalar < 0.0 && self.vector_square() > CHART_MARGIN)
    }
}

pub fn chart_invariant(m: &Matrix4C) -> Result<ChartInvariant> {
    let inv = m.try_inverse().ok_or(Error::NotInGroup { deviation: f64::INFINITY })?;
    let g5 = gamma5();
    let p = m * g5 * inv * g5;
    let scalar = p.trace().re / 4.0;
    let mut vector = FourVector::zeros();
    vector[0] = ((gamma(0) * p).trace() / (I * 4.0)).re;
    for k in 1..4 {
        vector[k] = -((gamma(k) * p).trace() / (I * 4.0)).re;
    }
    Ok(ChartInvariant { scalar, vector })
}

/// Relative violation of the two quadratic conditions defining the group,
/// γ⁰M†γ⁰M = 1 and CMᵀC⁻¹M = 1 with C = iγ²γ⁰, plus |det M − 1|.
pub fn group_deviation(m: &Matrix4C) -> f64 {
    let g0 = gamma(0);
    let c = gamma(2) * gamma(0) * I;
    let c_inv = c.try_inverse().expect("charge conjugation matrix is invertible");
    let id = Matrix4C::identity();
    let scale = frobenius(m).powi(2).max(1.0);
    let pseudo_unitary = frobenius(&(g0 * m.adjoint() * g0 * m - id)) / scale;
    let symplectic = frobenius(&(c * m.transpose() * c_inv * m - id)) / scale;
    let det = (m.determinant() - C64::new(1.0, 0.0)).norm();
    pseudo_unitary.max(symplectic).max(det / scale)
}

fn dirac_from_invariant(inv: &ChartInvariant) -> DiracParams {
    let b = inv.vector;
    let bb = minkowski_square(&b);
    let f = if bb.abs() < 1e-14 {
        1.0
    } else if bb > 0.0 {
        let r = bb.sqrt();
        r.asinh() / r
    } else {
        let r = (-bb).sqrt();
        let w = r.atan2(inv.scalar);
        w / w.sin()
    };
    DiracParams(b * f)
}

/// Closed-form coordinates of an in-chart element.
pub fn algebraic_seed(m: &Matrix4C) -> Result<ExtendedParams> {
    let inv = chart_invariant(m)?;
    let omega = dirac_from_invariant(&inv);
    let w_inv = dirac_w(&DiracParams(-omega.0))?;
    let h = w_inv * m;
    let hh = h * h.adjoint();
    let mut u = nalgebra::Vector3::zeros();
    for k in 0..3 {
        // α_k = γ⁰γ^k
        u[k] = ((gamma(0) * gamma(k + 1) * hh).trace().re) / 4.0;
    }
    let boost = BoostParams(u);
    let r = boost_sl2(&BoostParams(-u)) * h;
    let c = r.trace().re / 4.0;
    let mut v = nalgebra::Vector3::zeros();
    for k in 0..3 {
        // Σ_k = γ⁵α_k
        let sigma = gamma5() * gamma(0) * gamma(k + 1);
        v[k] = ((sigma * r).trace() / (I * 4.0)).re;
    }
    let theta = RotationParams::from_half_angle(c, v);
    Ok(ExtendedParams::new(omega, boost, theta))
}

type Residual = SVector<f64, 32>;
type Jacobian = SMatrix<f64, 32, 10>;

fn residual(x: &Coords, target: &Matrix4C) -> Option<Residual> {
    let m = extended_matrix(&ExtendedParams::from_coords(x)).ok()? - target;
    let mut r = Residual::zeros();
    for (k, z) in m.iter().enumerate() {
        r[2 * k] = z.re;
        r[2 * k + 1] = z.im;
    }
    r.iter().all(|v| v.is_finite()).then_some(r)
}

fn jacobian(x: &Coords, target: &Matrix4C) -> Option<Jacobian> {
    let mut j = Jacobian::zeros();
    for i in 0..10 {
        let h = JACOBIAN_STEP * x[i].abs().max(1.0);
        let mut xp = *x;
        let mut xm = *x;
        xp[i] += h;
        xm[i] -= h;
        let d = (residual(&xp, target)? - residual(&xm, target)?) / (2.0 * h);
        j.set_column(i, &d);
    }
    Some(j)
}

struct Refined {
    x: Coords,
    residual: f64,
    iterations: usize,
}

fn gauss_newton(start: Coords, target: &Matrix4C, goal: f64) -> Refined {
    let mut x = start;
    let mut r = match residual(&x, target) {
        Some(r) => r,
        None => return Refined { x, residual: f64::INFINITY, iterations: 0 },
    };
    let mut norm = r.norm();
    let mut iterations = 0;
    while iterations < MAX_ITER && norm > goal {
        iterations += 1;
        let Some(j) = jacobian(&x, target) else { break };
        let svd = j.svd(true, true);
        let cutoff = 1e-12 * svd.singular_values.max();
        let Ok(step) = svd.solve(&(-r), cutoff) else { break };
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let trial = x + step * t;
            if let Some(rt) = residual(&trial, target) {
                let nt = rt.norm();
                if nt < norm {
                    x = trial;
                    r = rt;
                    norm = nt;
                    improved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Refined { x, residual: norm, iterations }
}

/// Find (ω, u, θ) with W(ω)L(u)R(θ) = m.
///
/// The residual goal is `tol.fact` scaled by max(1, ‖m‖_F).
pub fn factorize_wlr(m: &Matrix4C, tol: &Tolerances) -> Result<FactorizationReport> {
    if !is_finite(m) {
        return Err(Error::NonFinite("factorization input"));
    }
    let deviation = group_deviation(m);
    if deviation > tol.group {
        return Err(Error::NotInGroup { deviation });
    }
    let inv = chart_invariant(m)?;
    if !inv.in_chart() {
        return Err(Error::OutsideChart {
            scalar: inv.scalar,
            vector_norm2: inv.vector_square(),
        });
    }
    let goal = tol.fact * frobenius(m).max(1.0);

    let seed = algebraic_seed(m).ok().filter(ExtendedParams::is_finite).unwrap_or_default();
    let seed_x = seed.coords();
    let seed_quality = residual(&seed_x, m).map_or(f64::INFINITY, |r| r.norm());
    if seed_quality <= goal {
        return Ok(FactorizationReport {
            params: seed.canonical(),
            residual: seed_quality,
            iterations: 0,
            seed_quality,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best = gauss_newton(seed_x, m, goal);
    let mut total = best.iterations;
    for _ in 0..RESTARTS {
        if best.residual <= goal {
            break;
        }
        let jitter = Coords::from_fn(|_, _| rng.random_range(-0.5..0.5));
        let run = gauss_newton(best.x + jitter, m, goal);
        total += run.iterations;
        if run.residual < best.residual {
            best = run;
        }
    }
    if best.residual > goal {
        return Err(Error::NoConvergence {
            best_residual: best.residual,
            iterations: total,
        });
    }
    let params = ExtendedParams::from_coords(&best.x).canonical();
    let residual = extended_matrix(&params).map_or(f64::INFINITY, |p| frobenius(&(p - m)));
    Ok(FactorizationReport { params, residual, iterations: total, seed_quality })
}
