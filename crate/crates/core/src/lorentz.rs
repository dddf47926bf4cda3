//! Rotations, Lorentz boosts and their composition on the SU(2)/SL(2,C) cover.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::algebra::{generator, GeneratorIndex, Matrix4C, C64, I, ONE, ZERO};
use crate::special::{cosh_m1_over, cosh_sqrt, sinhc_sqrt};

/// Covariant four-vector (v₀, v₁, v₂, v₃).
pub type FourVector = Vector4<f64>;
/// Real 4×4 matrix acting on covariant four-vectors, ω′_μ = Λ_μ^ν ω_ν.
pub type FourMatrix = Matrix4<f64>;

/// Minkowski metric diag(−1, 1, 1, 1).
pub fn eta() -> FourMatrix {
    FourMatrix::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

/// ω·ω with the metric diag(−1, 1, 1, 1).
pub fn minkowski_square(v: &FourVector) -> f64 {
    -v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]
}

/// Levi-Civita symbol on 0-based indices, ε₀₁₂ = +1.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// E(v)_{km} = Σ_j v_j ε_{jkm}. Note E(v)·w = w × v.
pub fn epsilon_contract(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, v[2], -v[1], -v[2], 0.0, v[0], v[1], -v[0], 0.0)
}

fn unit_or_z(v: &Vector3<f64>) -> Vector3<f64> {
    let n = v.norm();
    if n > 0.0 {
        v / n
    } else {
        Vector3::z()
    }
}

/// Axis-angle rotation θ·θ̂ on the spinor cover.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RotationParams(pub Vector3<f64>);

impl RotationParams {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vector3::new(x, y, z))
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn angle(&self) -> f64 {
        self.0.norm()
    }

    /// Unit axis; ẑ when the angle vanishes.
    pub fn axis(&self) -> Vector3<f64> {
        unit_or_z(&self.0)
    }

    /// (cos(θ/2), sin(θ/2)θ̂): the unit quaternion of the spinor matrix.
    pub fn half_angle(&self) -> (f64, Vector3<f64>) {
        let z = -self.0.norm_squared() / 4.0;
        (cosh_sqrt(z), self.0 * (0.5 * sinhc_sqrt(z)))
    }

    /// Inverse of [`Self::half_angle`]; the angle lands in [0, 2π] and the
    /// element −1 is represented by 2πẑ.
    pub fn from_half_angle(c: f64, s: Vector3<f64>) -> Self {
        let n = s.norm();
        if n == 0.0 {
            return if c >= 0.0 {
                Self::identity()
            } else {
                Self(Vector3::z() * (2.0 * PI))
            };
        }
        Self(s * (2.0 * n.atan2(c) / n))
    }

    /// Angle in [0, 2π]; angles below 2π are returned unchanged.
    pub fn canonical(&self) -> Self {
        if self.angle() < 2.0 * PI {
            return *self;
        }
        let (c, s) = self.half_angle();
        Self::from_half_angle(c, s)
    }

    /// The same rotation multiplied by the central element −1.
    pub fn negated(&self) -> Self {
        let (c, s) = self.half_angle();
        Self::from_half_angle(-c, -s)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

/// Boost labelled by the spatial four-velocity u; u⁰ is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoostParams(pub Vector3<f64>);

impl BoostParams {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vector3::new(x, y, z))
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// Boost with rapidity β along `axis` (normalized internally).
    pub fn from_rapidity(beta: f64, axis: &Vector3<f64>) -> Self {
        Self(unit_or_z(axis) * beta.sinh())
    }

    pub fn u0(&self) -> f64 {
        (1.0 + self.0.norm_squared()).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }
}

/// Lorentz element L(u)R(θ).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LorentzParams {
    pub u: BoostParams,
    pub theta: RotationParams,
}

impl LorentzParams {
    pub fn new(u: BoostParams, theta: RotationParams) -> Self {
        Self { u, theta }
    }

    pub fn identity() -> Self {
        Self::default()
    }
}

fn spin_block(diag: &[[C64; 2]; 2], off: &[[C64; 2]; 2]) -> Matrix4C {
    // [[diag, off], [off, diag]]: the form shared by exp(iθ·J) and exp(iβ·K).
    let mut m = Matrix4C::zeros();
    for i in 0..2 {
        for j in 0..2 {
            m[(i, j)] = diag[i][j];
            m[(i + 2, j + 2)] = diag[i][j];
            m[(i, j + 2)] = off[i][j];
            m[(i + 2, j)] = off[i][j];
        }
    }
    m
}

fn pauli_dot(v: &Vector3<f64>, scale: C64) -> [[C64; 2]; 2] {
    let x = C64::new(v[0], 0.0);
    let y = C64::new(v[1], 0.0);
    let z = C64::new(v[2], 0.0);
    [[z * scale, (x - I * y) * scale], [(x + I * y) * scale, -z * scale]]
}

/// R(θ) = cos(θ/2) + i sin(θ/2) θ̂·Σ, block diagonal with equal blocks.
pub fn rot_su2(theta: &RotationParams) -> Matrix4C {
    let (c, s) = theta.half_angle();
    let mut d = pauli_dot(&s, I);
    d[0][0] += c;
    d[1][1] += c;
    spin_block(&d, &[[ZERO; 2]; 2])
}

/// L(u) = √((u⁰+1)/2) + √((u⁰−1)/2) û·α with α_k = offdiag(σ_k, σ_k).
pub fn boost_sl2(u: &BoostParams) -> Matrix4C {
    let u0 = u.u0();
    let c = ((u0 + 1.0) / 2.0).sqrt();
    let k = 1.0 / (2.0 * (u0 + 1.0)).sqrt();
    let mut d = [[ZERO; 2]; 2];
    d[0][0] = ONE * c;
    d[1][1] = ONE * c;
    spin_block(&d, &pauli_dot(&u.0, ONE * k))
}

pub fn lorentz_matrix(p: &LorentzParams) -> Matrix4C {
    boost_sl2(&p.u) * rot_su2(&p.theta)
}

/// θ_R with R(θ_R) = R(θ₂)R(θ₁), canonicalized to [0, 2π].
pub fn compose_rotations(theta2: &RotationParams, theta1: &RotationParams) -> RotationParams {
    let (c2, s2) = theta2.half_angle();
    let (c1, s1) = theta1.half_angle();
    let c = c2 * c1 - s2.dot(&s1);
    let s = s2 * c1 + s1 * c2 - s2.cross(&s1);
    RotationParams::from_half_angle(c, s)
}

/// (u_L, θ_L) with L(u₂)L(u₁) = L(u_L)R(θ_L).
pub fn compose_boosts(u2: &BoostParams, u1: &BoostParams) -> (BoostParams, RotationParams) {
    let (a, b) = (u2.0, u1.0);
    let (a0, b0) = (u2.u0(), u1.u0());
    let cross = a.cross(&b);
    let sin_part = cross.norm();
    let cos_part = (a0 + 1.0) * (b0 + 1.0) + a.dot(&b);
    let half = sin_part.atan2(cos_part);
    let axis = if sin_part > 0.0 { cross / sin_part } else { Vector3::zeros() };
    let theta_l = RotationParams(axis * (2.0 * half));

    let ul0 = a0 * b0 + a.dot(&b);
    let v = a * ((b0 + 1.0).sqrt() / (2.0 * (a0 + 1.0).sqrt()))
        + b * ((a0 + 1.0).sqrt() / (2.0 * (b0 + 1.0).sqrt()));
    // undo the half-angle Wigner rotation acting on û_L √((u_L⁰−1)/2)
    let x = v * half.cos() + v.cross(&axis) * half.sin();
    let ul = x * (2.0 * ((ul0 + 1.0) / 2.0).sqrt());
    (BoostParams(ul), theta_l)
}

/// Spatial block of [`four_rotation`].
pub fn rotation3(theta: &RotationParams) -> Matrix3<f64> {
    let t = theta.0;
    let z = -t.norm_squared();
    Matrix3::identity() * cosh_sqrt(z)
        + t * t.transpose() * cosh_m1_over(z)
        + epsilon_contract(&t) * sinhc_sqrt(z)
}

/// Composition L(u₂)R(θ₂)·L(u₁)R(θ₁).
pub fn compose_lorentz(p2: &LorentzParams, p1: &LorentzParams) -> LorentzParams {
    let u1r = BoostParams(rotation3(&p2.theta) * p1.u.0);
    let (u, theta_l) = compose_boosts(&p2.u, &u1r);
    let theta = compose_rotations(&theta_l, &compose_rotations(&p2.theta, &p1.theta));
    LorentzParams { u, theta }
}

/// {u, θ}⁻¹ = {−R(−θ)u, −θ}.
pub fn inverse_lorentz(p: &LorentzParams) -> LorentzParams {
    let minus = RotationParams(-p.theta.0);
    LorentzParams {
        u: BoostParams(-(rotation3(&minus) * p.u.0)),
        theta: minus.canonical(),
    }
}

/// 𝓡_μ^ν(θ) on covariant four-vectors.
pub fn four_rotation(theta: &RotationParams) -> FourMatrix {
    let mut m = FourMatrix::identity();
    m.fixed_view_mut::<3, 3>(1, 1).copy_from(&rotation3(theta));
    m
}

/// 𝓛_μ^ν(u): 𝓛₀⁰ = u⁰, 𝓛₀^m = 𝓛_m⁰ = −u_m, spatial δ + (u⁰−1)ûû.
pub fn four_boost(u: &BoostParams) -> FourMatrix {
    let u0 = u.u0();
    let mut m = FourMatrix::zeros();
    m[(0, 0)] = u0;
    for k in 0..3 {
        m[(0, k + 1)] = -u.0[k];
        m[(k + 1, 0)] = -u.0[k];
    }
    let spatial = Matrix3::identity() + u.0 * u.0.transpose() / (u0 + 1.0);
    m.fixed_view_mut::<3, 3>(1, 1).copy_from(&spatial);
    m
}

/// Four-vector generators (𝒥₁..𝒥₃, 𝒦₁..𝒦₃).
pub fn four_generators() -> ([FourMatrix; 3], [FourMatrix; 3]) {
    let j = std::array::from_fn(|m| {
        let mut g = FourMatrix::zeros();
        for a in 0..3 {
            for b in 0..3 {
                g[(a + 1, b + 1)] = levi_civita(m, a, b);
            }
        }
        g
    });
    let k = std::array::from_fn(|m| {
        let mut g = FourMatrix::zeros();
        g[(0, m + 1)] = -1.0;
        g[(m + 1, 0)] = -1.0;
        g
    });
    (j, k)
}

/// i θ·J, the algebra element whose exponential is [`rot_su2`].
pub fn rotation_algebra(theta: &RotationParams) -> Matrix4C {
    (0..3).fold(Matrix4C::zeros(), |acc, k| {
        acc + generator(GeneratorIndex::ALL[k]) * C64::new(0.0, theta.0[k])
    })
}

/// i β·K with β the rapidity vector of `u`.
pub fn boost_algebra(u: &BoostParams) -> Matrix4C {
    let n = u.0.norm();
    let beta = if n > 0.0 { u.0 * (n.asinh() / n) } else { u.0 };
    (0..3).fold(Matrix4C::zeros(), |acc, k| {
        acc + generator(GeneratorIndex::ALL[3 + k]) * C64::new(0.0, beta[k])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frobenius, mat_exp};
    use crate::sample::Sampler;

    #[test]
    fn rot_zero_and_two_pi() {
        assert_eq!(rot_su2(&RotationParams::identity()), Matrix4C::identity());
        let m = rot_su2(&RotationParams::new(0.0, 0.0, 2.0 * PI));
        assert!(frobenius(&(m + Matrix4C::identity())) < 1e-15);
        let r = four_rotation(&RotationParams::new(0.0, 0.0, 2.0 * PI));
        assert!((r - FourMatrix::identity()).norm() < 1e-15);
    }

    #[test]
    fn rot_matches_exponential() {
        let mut s = Sampler::new(11);
        for _ in 0..100 {
            let t = s.rotation();
            let e = mat_exp(&rotation_algebra(&t)).unwrap();
            assert!(frobenius(&(e - rot_su2(&t))) < 1e-12);
        }
    }

    #[test]
    fn boost_matches_exponential_and_eigenvalues() {
        let mut s = Sampler::new(12);
        for _ in 0..100 {
            let u = s.boost();
            let e = mat_exp(&boost_algebra(&u)).unwrap();
            assert!(frobenius(&(e - boost_sl2(&u))) < 1e-12);
        }
        let beta: f64 = 1.7;
        let l = boost_sl2(&BoostParams::from_rapidity(beta, &Vector3::x()));
        let eig = l.map(|z| z.re).symmetric_eigenvalues();
        let mut ev: Vec<f64> = eig.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - (-beta / 2.0).exp()).abs() < 1e-12);
        assert!((ev[3] - (beta / 2.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn rotation_composition_examples() {
        let t1 = RotationParams::new(0.3, -1.2, 0.4);
        let c = compose_rotations(&RotationParams::identity(), &t1);
        assert!((c.0 - t1.0).norm() < 1e-15);

        let q = RotationParams::new(0.0, 0.0, PI / 2.0);
        assert!((compose_rotations(&q, &q).0 - Vector3::new(0.0, 0.0, PI)).norm() < 1e-15);

        let c = compose_rotations(
            &RotationParams::new(PI / 2.0, 0.0, 0.0),
            &RotationParams::new(0.0, PI / 2.0, 0.0),
        );
        assert!((c.angle() - 2.0 * PI / 3.0).abs() < 1e-14);
        let want = Vector3::new(1.0, 1.0, -1.0) / 3f64.sqrt();
        assert!((c.axis() - want).norm() < 1e-14);
    }

    #[test]
    fn boost_composition_examples() {
        let u1 = BoostParams::new(0.2, -0.7, 1.1);
        let (ul, tl) = compose_boosts(&BoostParams::identity(), &u1);
        assert!((ul.0 - u1.0).norm() < 1e-15 && tl.angle() == 0.0);

        let beta: f64 = 0.9;
        let u = BoostParams::from_rapidity(beta, &Vector3::x());
        let (ul, tl) = compose_boosts(&u, &u);
        assert!((ul.u0() - (2.0 * beta).cosh()).abs() < 1e-13);
        assert_eq!(tl.angle(), 0.0);

        let (_, tl) = compose_boosts(&BoostParams::new(1.0, 0.0, 0.0), &BoostParams::new(0.0, 1.0, 0.0));
        let expected = 1.0 / (3.0 + 2.0 * 2f64.sqrt());
        assert!(((tl.angle() / 2.0).tan() - expected).abs() < 1e-15);
        assert!((tl.axis() - Vector3::z()).norm() < 1e-15);
    }

    #[test]
    fn composition_is_a_representation() {
        let mut s = Sampler::new(13);
        for _ in 0..200 {
            let (p2, p1) = (s.lorentz(), s.lorentz());
            let p = compose_lorentz(&p2, &p1);
            let direct = lorentz_matrix(&p2) * lorentz_matrix(&p1);
            assert!(frobenius(&(lorentz_matrix(&p) - direct)) < 1e-11 * frobenius(&direct).max(1.0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let mut s = Sampler::new(14);
        for _ in 0..200 {
            let p = s.lorentz();
            let inv = inverse_lorentz(&p);
            let prod = lorentz_matrix(&inv) * lorentz_matrix(&p);
            assert!(frobenius(&(prod - Matrix4C::identity())) < 1e-10);
        }
        let u = BoostParams::new(0.4, 0.1, -2.0);
        let inv = inverse_lorentz(&LorentzParams::new(u, RotationParams::identity()));
        assert_eq!(inv.u.0, -u.0);
    }

    #[test]
    fn four_matrices_preserve_metric() {
        let mut s = Sampler::new(15);
        let g = eta();
        for _ in 0..200 {
            let p = s.lorentz();
            for l in [four_rotation(&p.theta), four_boost(&p.u)] {
                assert!((l.transpose() * g * l - g).norm() < 1e-12 * l.norm_squared().max(1.0));
            }
            let inv = four_boost(&p.u) * four_boost(&BoostParams(-p.u.0));
            assert!((inv - FourMatrix::identity()).norm() < 1e-12 * p.u.0.norm_squared().max(1.0));
        }
    }

    #[test]
    fn four_boost_covariant_action() {
        let u = BoostParams::new(0.3, 0.0, 0.0);
        let w = four_boost(&u) * FourVector::new(1.0, 2.0, 0.0, 0.0);
        assert!((w[0] - (u.u0() - 0.3 * 2.0)).abs() < 1e-15);
    }

    #[test]
    fn four_generators_entries() {
        let (j, k) = four_generators();
        assert_eq!(j[2][(1, 2)], 1.0);
        assert_eq!(j[2][(2, 1)], -1.0);
        assert_eq!(k[0][(0, 1)], -1.0);
        let nonzero: usize = j.iter().chain(k.iter()).map(|g| g.iter().filter(|x| **x != 0.0).count()).sum();
        assert_eq!(nonzero, 12);

        let h = 1e-6;
        for m in 0..3 {
            let mut e = Vector3::zeros();
            e[m] = h;
            let d = (four_rotation(&RotationParams(e)) - four_rotation(&RotationParams(-e))) / (2.0 * h);
            assert!((d - j[m]).norm() < 1e-9);
            let d = (four_boost(&BoostParams(e)) - four_boost(&BoostParams(-e))) / (2.0 * h);
            assert!((d - k[m]).norm() < 1e-9);
        }
    }

    #[test]
    fn collinear_boosts_have_no_wigner_rotation() {
        let mut s = Sampler::new(16);
        for _ in 0..100 {
            let u = s.boost();
            let (_, tl) = compose_boosts(&BoostParams(u.0 * 0.7), &BoostParams(u.0 * -1.3));
            assert!(tl.angle() < 1e-12);
        }
    }
}
