//! Fundamental-representation matrices O+, Lie structure matrices Θ and the
//! structure constants of the ten-generator algebra.
//!
//! All 10×10 matrices are indexed in [`GeneratorIndex`] order. O+ rows and
//! columns are generator labels: S(M)⁻¹X_rS(M) = O+_r^s X_s. Θ rows are the
//! generator of the left perturbation, columns the chart coordinate.

use nalgebra::{Matrix3, SMatrix, Vector3};

use crate::algebra::{commutator, frobenius, gamma, generator, generators, GeneratorIndex, Matrix4C, Tolerances, C64, I};
use crate::error::{Error, Result};
use crate::extended::{compose_extended, extended_matrix, Coords, ExtendedParams};
use crate::factorize::group_deviation;
use crate::lorentz::{
    epsilon_contract, four_boost, four_generators, four_rotation, rotation3, BoostParams,
    RotationParams,
};
use crate::special::{cosh_m1_over, cosh_sqrt, sinhc_m_cosh_over, sinhc_sqrt};

pub type Matrix10 = SMatrix<f64, 10, 10>;

const J: usize = 0;
const K: usize = 3;
const G0: usize = 6;
const GS: usize = 7;

/// Gram diagonal tr(X_r X_r) of the generator basis; off-diagonal traces vanish.
const GRAM: [f64; 10] = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0, 1.0, -1.0, -1.0, -1.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OPlusMatrix(pub Matrix10);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaMatrix(pub Matrix10);

impl ThetaMatrix {
    /// 2-norm condition number.
    pub fn condition_number(&self) -> f64 {
        let sv = self.0.singular_values();
        sv.max() / sv.min()
    }
}

fn put3(m: &mut Matrix10, r: usize, c: usize, b: &Matrix3<f64>) {
    m.fixed_view_mut::<3, 3>(r, c).copy_from(b);
}

/// O+ of a pure rotation.
pub fn oplus_rotation(theta: &RotationParams) -> OPlusMatrix {
    let r3 = rotation3(theta);
    let mut m = Matrix10::zeros();
    put3(&mut m, J, J, &r3);
    put3(&mut m, K, K, &r3);
    m.fixed_view_mut::<4, 4>(G0, G0).copy_from(&four_rotation(theta));
    OPlusMatrix(m)
}

/// O+ of a pure Lorentz boost. The Γ-block is 𝓛 with both indices moved by
/// the metric, η𝓛(u)η = 𝓛(−u).
pub fn oplus_boost(u: &BoostParams) -> OPlusMatrix {
    let u0 = u.u0();
    let sym = Matrix3::identity() * u0 - u.0 * u.0.transpose() / (u0 + 1.0);
    let e = epsilon_contract(&u.0);
    let mut m = Matrix10::zeros();
    put3(&mut m, J, J, &sym);
    put3(&mut m, K, K, &sym);
    put3(&mut m, J, K, &e);
    put3(&mut m, K, J, &(-e));
    m.fixed_view_mut::<4, 4>(G0, G0).copy_from(&four_boost(&BoostParams(-u.0)));
    OPlusMatrix(m)
}

/// O+ of a pure Dirac boost, valid on all three branches.
pub fn oplus_dirac(omega: &crate::extended::DiracParams) -> OPlusMatrix {
    let s = omega.square();
    let o0 = omega.0[0];
    let ov = Vector3::new(omega.0[1], omega.0[2], omega.0[3]);
    let oo = ov.norm_squared();
    let c = cosh_sqrt(s);
    let sc = sinhc_sqrt(s);
    let oc = cosh_m1_over(s);
    let e = epsilon_contract(&ov);
    let outer = ov * ov.transpose();
    let id = Matrix3::identity();

    let mut m = Matrix10::zeros();
    put3(&mut m, J, J, &(id * (1.0 + oo * oc) - outer * oc));
    put3(&mut m, J, K, &(e * (o0 * oc)));
    put3(&mut m, J, GS, &(e * sc));
    put3(&mut m, K, J, &(e * (o0 * oc)));
    put3(&mut m, K, K, &(id * (c - oo * oc) + outer * oc));
    put3(&mut m, K, GS, &(id * (-o0 * sc)));
    put3(&mut m, GS, J, &(e * -sc));
    put3(&mut m, GS, K, &(id * (o0 * sc)));
    put3(&mut m, GS, GS, &(id * c - outer * oc));
    for k in 0..3 {
        m[(K + k, G0)] = -sc * ov[k];
        m[(G0, K + k)] = -sc * ov[k];
        m[(G0, GS + k)] = o0 * oc * ov[k];
        m[(GS + k, G0)] = -o0 * oc * ov[k];
    }
    m[(G0, G0)] = 1.0 + oo * oc;
    OPlusMatrix(m)
}

/// O+(ω, u, θ) = O+(ω,0,0)·O+(0,u,0)·O+(0,0,θ).
pub fn oplus_closed(p: &ExtendedParams) -> OPlusMatrix {
    OPlusMatrix(oplus_dirac(&p.omega).0 * oplus_boost(&p.u).0 * oplus_rotation(&p.theta).0)
}

/// O+ of an arbitrary group element by conjugating each generator and
/// projecting onto the generator basis with the trace form.
pub fn oplus_of_matrix(s: &Matrix4C, tol: &Tolerances) -> Result<OPlusMatrix> {
    let deviation = group_deviation(s);
    if deviation > tol.group {
        return Err(Error::NotInGroup { deviation });
    }
    // exact inverse on the group; an LU inverse would lose κ(S)² digits
    let s_inv = gamma(0) * s.adjoint() * gamma(0);
    let scale = frobenius(s).powi(2).max(1.0);
    let xs = generators();
    let mut m = Matrix10::zeros();
    for r in 0..10 {
        let y = s_inv * xs[r] * s;
        let mut rebuilt = Matrix4C::zeros();
        for q in 0..10 {
            let coeff = (xs[q] * y).trace().re / GRAM[q];
            m[(r, q)] = coeff;
            rebuilt += xs[q] * C64::new(coeff, 0.0);
        }
        let res = frobenius(&(y - rebuilt));
        if res > tol.lin * scale {
            return Err(Error::ExpansionResidual(res));
        }
    }
    Ok(OPlusMatrix(m))
}

pub fn oplus_numeric(p: &ExtendedParams, tol: &Tolerances) -> Result<OPlusMatrix> {
    oplus_of_matrix(&extended_matrix(p)?, tol)
}

/// Θ^(R)(θ) = 1 + ½E(θ) + ((θ/2)cot(θ/2) − 1)(1 − θ̂θ̂ᵀ).
pub fn theta_rotation(theta: &RotationParams) -> Matrix3<f64> {
    let t = theta.0;
    let z = -t.norm_squared() / 4.0;
    let coef = sinhc_m_cosh_over(z) / (4.0 * sinhc_sqrt(z));
    Matrix3::identity()
        + epsilon_contract(&t) * 0.5
        + (Matrix3::identity() * t.norm_squared() - t * t.transpose()) * coef
}

/// Closed-form Lie structure matrix.
pub fn theta_closed(p: &ExtendedParams) -> ThetaMatrix {
    let (jgen, kgen) = four_generators();
    let u = p.u.0;
    let u0 = p.u.u0();
    let w = p.omega.0;
    let ws = Vector3::new(w[1], w[2], w[3]);
    let s = p.omega.square();

    // tan(ω/2)/ω, ω cot ω and (1 − ω cot ω)/(ω·ω), continued to all branches
    let tq = 0.5 * sinhc_sqrt(s / 4.0) / cosh_sqrt(s / 4.0);
    let h = cosh_sqrt(s) / sinhc_sqrt(s);
    let g = sinhc_m_cosh_over(s) / sinhc_sqrt(s);

    let th_r = theta_rotation(&p.theta);
    let ju = epsilon_contract(&u);
    let th_l = -ju / (u0 + 1.0);

    let mut d_th = SMatrix::<f64, 4, 3>::zeros();
    let mut d_u = SMatrix::<f64, 4, 3>::zeros();
    let ew = epsilon_contract(&ws);
    for k in 0..3 {
        for j in 0..3 {
            d_th[(k + 1, j)] = -tq * ew[(k, j)];
        }
        d_u[(k + 1, k)] = w[0] * tq;
        d_u[(0, k)] = -ws[k] * tq;
    }
    let eta_w = nalgebra::Vector4::new(-w[0], w[1], w[2], w[3]);
    let d_om = nalgebra::Matrix4::identity() * h + eta_w * w.transpose() * g;

    let mut t = Matrix10::zeros();
    put3(&mut t, J, J, &th_r);
    put3(&mut t, J, K, &ju);
    put3(&mut t, K, J, &(th_l * th_r));
    put3(&mut t, K, K, &(Matrix3::identity() * u0));
    for k in 0..3 {
        let jw = jgen[k] * w;
        let kw = kgen[k] * w;
        for mu in 0..4 {
            t[(J + k, G0 + mu)] = jw[mu];
            t[(K + k, G0 + mu)] = kw[mu];
        }
    }
    t.fixed_view_mut::<4, 3>(G0, J).copy_from(&((d_th + d_u * th_l) * th_r));
    t.fixed_view_mut::<4, 3>(G0, K).copy_from(&(d_u * u0 + d_th * ju));
    t.fixed_view_mut::<4, 4>(G0, G0).copy_from(&d_om);
    ThetaMatrix(t)
}

/// Θ by central differences of the composition map, Richardson-extrapolated
/// from steps `h` and `h/2`.
pub fn theta_numeric(p: &ExtendedParams, h: f64, tol: &Tolerances) -> Result<ThetaMatrix> {
    let base = p.canonical();
    let central = |r: usize, step: f64| -> Result<Coords> {
        let mut e = Coords::zeros();
        e[r] = step;
        let plus = compose_extended(&ExtendedParams::from_coords(&e), &base, tol)?.nearest_to(&base);
        let minus = compose_extended(&ExtendedParams::from_coords(&-e), &base, tol)?.nearest_to(&base);
        Ok((plus.coords() - minus.coords()) / (2.0 * step))
    };
    let mut t = Matrix10::zeros();
    for r in 0..10 {
        let row = (central(r, h / 2.0)? * 4.0 - central(r, h)?) / 3.0;
        t.set_row(r, &row.transpose());
    }
    Ok(ThetaMatrix(t))
}

/// Largest violation of Θ_r^s ∂S/∂p^s = iX_r S, relative to ‖S‖_F, with the
/// coordinate derivatives taken by Richardson-extrapolated central
/// differences of steps `h` and `h/2`.
pub fn theta_relation_residual(p: &ExtendedParams, h: f64) -> Result<f64> {
    let s = extended_matrix(p)?;
    let x = p.coords();
    let central = |k: usize, step: f64| -> Result<Matrix4C> {
        let mut e = Coords::zeros();
        e[k] = step;
        let sp = extended_matrix(&ExtendedParams::from_coords(&(x + e)))?;
        let sm = extended_matrix(&ExtendedParams::from_coords(&(x - e)))?;
        Ok((sp - sm) / C64::new(2.0 * step, 0.0))
    };
    let mut ds = Vec::with_capacity(10);
    for k in 0..10 {
        ds.push((central(k, h / 2.0)? * C64::new(4.0, 0.0) - central(k, h)?) / C64::new(3.0, 0.0));
    }
    let theta = theta_closed(p).0;
    let mut worst: f64 = 0.0;
    for r in 0..10 {
        let lhs = (0..10).fold(Matrix4C::zeros(), |acc, k| acc + ds[k] * C64::new(theta[(r, k)], 0.0));
        let rhs = generator(GeneratorIndex::ALL[r]) * s * I;
        worst = worst.max(frobenius(&(lhs - rhs)));
    }
    Ok(worst / frobenius(&s))
}

/// c[r][s][m] with [X_r, X_s] = −i c_{rs}^m X_m.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    pub c: [[[f64; 10]; 10]; 10],
}

impl StructureConstants {
    pub fn get(&self, r: GeneratorIndex, s: GeneratorIndex, m: GeneratorIndex) -> f64 {
        self.c[r.index()][s.index()][m.index()]
    }

    pub fn max_difference(&self, other: &StructureConstants) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..10 {
            for s in 0..10 {
                for m in 0..10 {
                    d = d.max((self.c[r][s][m] - other.c[r][s][m]).abs());
                }
            }
        }
        d
    }

    pub fn antisymmetry_error(&self) -> f64 {
        let mut d: f64 = 0.0;
        for r in 0..10 {
            for s in 0..10 {
                for m in 0..10 {
                    d = d.max((self.c[r][s][m] + self.c[s][r][m]).abs());
                }
            }
        }
        d
    }

    /// max over (r, s, t, n) of |Σ_m c_{rs}^m c_{mt}^n + cyclic|.
    pub fn jacobi_error(&self) -> f64 {
        let c = &self.c;
        let mut d: f64 = 0.0;
        for r in 0..10 {
            for s in 0..10 {
                for t in 0..10 {
                    for n in 0..10 {
                        let sum: f64 = (0..10)
                            .map(|m| c[r][s][m] * c[m][t][n] + c[s][t][m] * c[m][r][n] + c[t][r][m] * c[m][s][n])
                            .sum();
                        d = d.max(sum.abs());
                    }
                }
            }
        }
        d
    }
}

/// Structure constants read off 4×4 commutators.
pub fn structure_constants_commutator() -> StructureConstants {
    let xs = generators();
    let mut c = [[[0.0; 10]; 10]; 10];
    for r in 0..10 {
        for s in 0..10 {
            let comm = commutator(&xs[r], &xs[s]) * I;
            for m in 0..10 {
                c[r][s][m] = (xs[m] * comm).trace().re / GRAM[m];
            }
        }
    }
    StructureConstants { c }
}

/// c_{sn}^m = ∂_nΘ_s^m − ∂_sΘ_n^m at the identity, by Richardson-extrapolated
/// central differences of the closed-form Θ.
pub fn structure_constants_theta(h: f64) -> StructureConstants {
    let derivative = |n: usize, step: f64| {
        let mut e = Coords::zeros();
        e[n] = step;
        let tp = theta_closed(&ExtendedParams::from_coords(&e)).0;
        let tm = theta_closed(&ExtendedParams::from_coords(&-e)).0;
        (tp - tm) / (2.0 * step)
    };
    let d: Vec<Matrix10> = (0..10)
        .map(|n| (derivative(n, h / 2.0) * 4.0 - derivative(n, h)) / 3.0)
        .collect();
    let mut c = [[[0.0; 10]; 10]; 10];
    for s in 0..10 {
        for n in 0..10 {
            for m in 0..10 {
                c[s][n][m] = d[n][(s, m)] - d[s][(n, m)];
            }
        }
    }
    StructureConstants { c }
}

/// Structure constants from Θ, cross-checked against the commutator path.
pub fn structure_constants(h: f64, tol: &Tolerances) -> Result<StructureConstants> {
    let from_theta = structure_constants_theta(h);
    let diff = from_theta.max_difference(&structure_constants_commutator());
    if diff > tol.fd {
        return Err(Error::StructureMismatch(diff));
    }
    Ok(from_theta)
}
