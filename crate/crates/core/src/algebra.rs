//! Complex 4×4 matrix kernel for the spin-1/2 realization.
//!
//! Everything here is built from the standard Pauli matrices (σ₃ diagonal)
//! arranged into 2×2 blocks. The ten generators follow the fixed order of
//! [`GeneratorIndex`], which is also the row/column order of every 10×10
//! matrix in the crate.

use std::fmt;
use std::sync::LazyLock;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
/// 4×4 complex matrix; group elements live in SL(4,C).
pub type Matrix4C = Matrix4<C64>;
/// 2×2 complex matrix (Pauli block).
pub type Matrix2C = Matrix2<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);
pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Numerical tolerances shared by the library and the verification suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Linear-algebra identities on 4×4 products.
    pub lin: f64,
    /// |det − 1| for group elements.
    pub det: f64,
    /// Parameter-space comparisons.
    pub param: f64,
    /// Frobenius residual accepted by the W·L·R factorization.
    pub fact: f64,
    /// Relative band |ω·ω| < null·‖ω‖² treated as a null Dirac boost.
    pub null: f64,
    /// Residuals of the Dirac-boost composition relations.
    pub comp: f64,
    /// Finite-difference comparisons.
    pub fd: f64,
    /// Distance from the group manifold tolerated on factorization input.
    pub group: f64,
    /// Largest Θ condition number accepted by gauge solves.
    pub cond_max: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            lin: 1e-12,
            det: 1e-10,
            param: 1e-9,
            fact: 1e-10,
            null: 1e-8,
            comp: 1e-9,
            fd: 1e-6,
            group: 1e-6,
            cond_max: 1e8,
        }
    }
}

/// The ten generators, in the frozen order J₁..J₃, K₁..K₃, Γ⁰..Γ³.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorIndex {
    J1,
    J2,
    J3,
    K1,
    K2,
    K3,
    G0,
    G1,
    G2,
    G3,
}

impl GeneratorIndex {
    pub const ALL: [GeneratorIndex; 10] = [
        GeneratorIndex::J1,
        GeneratorIndex::J2,
        GeneratorIndex::J3,
        GeneratorIndex::K1,
        GeneratorIndex::K2,
        GeneratorIndex::K3,
        GeneratorIndex::G0,
        GeneratorIndex::G1,
        GeneratorIndex::G2,
        GeneratorIndex::G3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            GeneratorIndex::J1 => "J1",
            GeneratorIndex::J2 => "J2",
            GeneratorIndex::J3 => "J3",
            GeneratorIndex::K1 => "K1",
            GeneratorIndex::K2 => "K2",
            GeneratorIndex::K3 => "K3",
            GeneratorIndex::G0 => "G0",
            GeneratorIndex::G1 => "G1",
            GeneratorIndex::G2 => "G2",
            GeneratorIndex::G3 => "G3",
        }
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Standard Pauli matrix σ_k for k ∈ {1, 2, 3}.
pub fn pauli(k: usize) -> Result<Matrix2C> {
    match k {
        1 => Ok(Matrix2C::new(ZERO, ONE, ONE, ZERO)),
        2 => Ok(Matrix2C::new(ZERO, -I, I, ZERO)),
        3 => Ok(Matrix2C::new(ONE, ZERO, ZERO, -ONE)),
        _ => Err(Error::AxisIndex(k)),
    }
}

fn sigma(k: usize) -> Matrix2C {
    pauli(k + 1).expect("axis in range")
}

/// Assemble a 4×4 matrix from 2×2 blocks `[[a, b], [c, d]]`.
pub fn from_blocks(a: &Matrix2C, b: &Matrix2C, c: &Matrix2C, d: &Matrix2C) -> Matrix4C {
    let mut m = Matrix4C::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
    m
}

fn block_diag(a: &Matrix2C, d: &Matrix2C) -> Matrix4C {
    let z = Matrix2C::zeros();
    from_blocks(a, &z, &z, d)
}

fn off_diag(b: &Matrix2C, c: &Matrix2C) -> Matrix4C {
    let z = Matrix2C::zeros();
    from_blocks(&z, b, c, &z)
}

struct Basis {
    generators: [Matrix4C; 10],
    gammas: [Matrix4C; 4],
    gamma5: Matrix4C,
    clifford: [Matrix4C; 16],
    /// Inverse of each Clifford basis element (each squares to ±1).
    clifford_inv: [Matrix4C; 16],
}

static BASIS: LazyLock<Basis> = LazyLock::new(|| {
    let id2 = Matrix2C::identity();
    let half = C64::new(0.5, 0.0);
    let mut generators = [Matrix4C::zeros(); 10];
    for k in 0..3 {
        let s = sigma(k);
        generators[k] = block_diag(&s, &s) * half;
        generators[3 + k] = off_diag(&s, &s) * C64::new(0.0, -0.5);
        generators[7 + k] = off_diag(&s, &(-s)) * half;
    }
    generators[6] = block_diag(&id2, &(-id2)) * half;

    let gammas: [Matrix4C; 4] = std::array::from_fn(|mu| generators[6 + mu] * C64::new(2.0, 0.0));
    let gamma5 = gammas[0] * gammas[1] * gammas[2] * gammas[3] * I;

    let mut clifford = [Matrix4C::identity(); 16];
    clifford[1..5].copy_from_slice(&gammas);
    let mut slot = 5;
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            clifford[slot] = gammas[mu] * gammas[nu];
            slot += 1;
        }
    }
    for mu in 0..4 {
        clifford[11 + mu] = gamma5 * gammas[mu];
    }
    clifford[15] = gamma5;
    let clifford_inv = clifford.map(|b| {
        // b² = ±1, so b⁻¹ = b / (b²)₀₀.
        let sq = (b * b)[(0, 0)];
        b / sq
    });

    Basis {
        generators,
        gammas,
        gamma5,
        clifford,
        clifford_inv,
    }
});

/// Generator matrix X_r of the spin-1/2 realization.
///
/// J_k = ½ diag(σ_k, σ_k), K_k = −(i/2) offdiag(σ_k, σ_k),
/// Γ⁰ = ½ diag(1, −1), Γ^k = ½ offdiag(σ_k, −σ_k).
pub fn generator(r: GeneratorIndex) -> Matrix4C {
    BASIS.generators[r.index()]
}

/// All ten generators in [`GeneratorIndex`] order.
pub fn generators() -> &'static [Matrix4C; 10] {
    &BASIS.generators
}

/// Dirac matrix γ^μ = 2Γ^μ (Dirac representation).
pub fn gamma(mu: usize) -> Matrix4C {
    BASIS.gammas[mu]
}

/// γ⁵ = iγ⁰γ¹γ²γ³.
pub fn gamma5() -> Matrix4C {
    BASIS.gamma5
}

pub fn commutator(a: &Matrix4C, b: &Matrix4C) -> Matrix4C {
    a * b - b * a
}

pub fn frobenius(m: &Matrix4C) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn is_finite(m: &Matrix4C) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn one_norm(m: &Matrix4C) -> f64 {
    (0..4)
        .map(|j| (0..4).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

// Padé(13) coefficients and the θ₁₃ scaling threshold from Higham (2005).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with a [13/13] Padé approximant.
pub fn mat_exp(a: &Matrix4C) -> Result<Matrix4C> {
    if !is_finite(a) {
        return Err(Error::NonFinite("mat_exp input"));
    }
    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale(0.5f64.powi(squarings));

    let b = |k: usize| C64::new(PADE13[k], 0.0);
    let id = Matrix4C::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let u_inner = a6 * (a6 * b(13) + a4 * b(11) + a2 * b(9))
        + a6 * b(7)
        + a4 * b(5)
        + a2 * b(3)
        + id * b(1);
    let u = a * u_inner;
    let v = a6 * (a6 * b(12) + a4 * b(10) + a2 * b(8))
        + a6 * b(6)
        + a4 * b(4)
        + a2 * b(2)
        + id * b(0);

    let mut r = (v - u)
        .lu()
        .solve(&(v + u))
        .ok_or(Error::NonFinite("singular Padé denominator"))?;
    for _ in 0..squarings {
        r = r * r;
    }
    Ok(r)
}

/// Labels of the 16-element Clifford basis used by [`clifford_project`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordElement {
    Identity,
    /// γ^μ
    Vector(usize),
    /// γ^μ γ^ν with μ < ν
    Bivector(usize, usize),
    /// γ⁵ γ^μ
    Axial(usize),
    /// γ⁵
    Pseudoscalar,
}

impl CliffordElement {
    pub fn slot(self) -> usize {
        match self {
            CliffordElement::Identity => 0,
            CliffordElement::Vector(mu) => 1 + mu,
            CliffordElement::Bivector(mu, nu) => {
                assert!(mu < nu && nu < 4, "bivector indices must satisfy μ < ν ≤ 3");
                // (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
                5 + match (mu, nu) {
                    (0, n) => n - 1,
                    (1, n) => n + 1,
                    _ => 5,
                }
            }
            CliffordElement::Axial(mu) => 11 + mu,
            CliffordElement::Pseudoscalar => 15,
        }
    }
}

/// Coefficients of a 4×4 matrix over the Clifford basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordCoefficients {
    pub coeffs: [C64; 16],
}

impl CliffordCoefficients {
    pub fn get(&self, e: CliffordElement) -> C64 {
        self.coeffs[e.slot()]
    }

    pub fn reconstruct(&self) -> Matrix4C {
        self.coeffs
            .iter()
            .zip(BASIS.clifford.iter())
            .fold(Matrix4C::zeros(), |acc, (c, b)| acc + b * *c)
    }
}

/// The 16 Clifford basis matrices in slot order.
pub fn clifford_basis() -> &'static [Matrix4C; 16] {
    &BASIS.clifford
}

/// Expand `m` over the Clifford basis via normalized traces tr(B⁻¹m)/4.
pub fn clifford_project(m: &Matrix4C) -> CliffordCoefficients {
    let coeffs = std::array::from_fn(|k| (BASIS.clifford_inv[k] * m).trace() / 4.0);
    CliffordCoefficients { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Matrix4C, b: &Matrix4C, tol: f64) -> bool {
        frobenius(&(a - b)) < tol
    }

    #[test]
    fn pauli_conventions() {
        let s3 = pauli(3).unwrap();
        assert_eq!(s3, Matrix2C::new(ONE, ZERO, ZERO, -ONE));
        let s1 = pauli(1).unwrap();
        assert_eq!(s1, Matrix2C::new(ZERO, ONE, ONE, ZERO));
        let s2 = pauli(2).unwrap();
        assert!((s1 * s2 - s3 * I).norm() < 1e-15);
        assert!(matches!(pauli(0), Err(Error::AxisIndex(0))));
        assert!(matches!(pauli(4), Err(Error::AxisIndex(4))));
    }

    #[test]
    fn pauli_algebra_entrywise() {
        // σ_j σ_k = δ_jk + i ε_jkm σ_m
        for j in 1..=3 {
            for k in 1..=3 {
                let lhs = pauli(j).unwrap() * pauli(k).unwrap();
                let mut rhs = if j == k {
                    Matrix2C::identity()
                } else {
                    Matrix2C::zeros()
                };
                for m in 1..=3 {
                    let e = crate::lorentz::levi_civita(j - 1, k - 1, m - 1);
                    rhs += pauli(m).unwrap() * (I * e);
                }
                assert!((lhs - rhs).norm() < 1e-15, "j={j} k={k}");
                assert!(pauli(j).unwrap().trace().norm() == 0.0);
            }
        }
    }

    #[test]
    fn generator_block_forms() {
        let g0 = generator(GeneratorIndex::G0);
        let mut expected = Matrix4C::zeros();
        for i in 0..4 {
            expected[(i, i)] = C64::new(if i < 2 { 0.5 } else { -0.5 }, 0.0);
        }
        assert_eq!(g0, expected);
        let s3 = pauli(3).unwrap();
        assert_eq!(generator(GeneratorIndex::J3), block_diag(&s3, &s3) * C64::new(0.5, 0.0));
        for r in GeneratorIndex::ALL {
            assert_eq!(generator(r).trace(), ZERO, "{r} not traceless");
        }
    }

    #[test]
    fn commutator_examples() {
        let j = |k| generator(GeneratorIndex::ALL[k]);
        assert_eq!(commutator(&j(0), &j(0)), Matrix4C::zeros());
        assert!(close(&commutator(&j(0), &j(1)), &(j(2) * I), 1e-15));
        for k in 0..3 {
            let g0 = generator(GeneratorIndex::G0);
            let gk = generator(GeneratorIndex::ALL[7 + k]);
            let kk = generator(GeneratorIndex::ALL[3 + k]);
            assert!(close(&commutator(&g0, &gk), &(kk * I), 1e-15));
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(mat_exp(&Matrix4C::zeros()).unwrap(), Matrix4C::identity());
    }

    #[test]
    fn exp_two_pi_j3_is_minus_identity() {
        let a = generator(GeneratorIndex::J3) * C64::new(0.0, 2.0 * std::f64::consts::PI);
        let e = mat_exp(&a).unwrap();
        assert!(close(&e, &(-Matrix4C::identity()), 1e-13));
    }

    #[test]
    fn exp_rejects_non_finite() {
        let mut a = Matrix4C::zeros();
        a[(1, 2)] = C64::new(f64::NAN, 0.0);
        assert!(matches!(mat_exp(&a), Err(Error::NonFinite(_))));
    }

    #[test]
    fn exp_inverse_pair() {
        let mut a = Matrix4C::zeros();
        for (k, g) in generators().iter().enumerate() {
            a += g * C64::new(0.0, 0.3 * (k as f64) - 1.1);
        }
        let p = mat_exp(&a).unwrap() * mat_exp(&(-a)).unwrap();
        assert!(close(&p, &Matrix4C::identity(), 1e-12));
    }

    #[test]
    fn clifford_identity_and_gamma2() {
        let c = clifford_project(&Matrix4C::identity());
        assert_eq!(c.get(CliffordElement::Identity), ONE);
        assert!(c.coeffs[1..].iter().all(|z| z.norm() == 0.0));

        let c = clifford_project(&gamma(2));
        for (k, z) in c.coeffs.iter().enumerate() {
            let want = if k == CliffordElement::Vector(2).slot() { ONE } else { ZERO };
            assert!((z - want).norm() < 1e-15);
        }
    }

    #[test]
    fn clifford_slots_are_distinct() {
        let mut seen = [false; 16];
        let mut mark = |e: CliffordElement| {
            assert!(!seen[e.slot()]);
            seen[e.slot()] = true;
        };
        mark(CliffordElement::Identity);
        mark(CliffordElement::Pseudoscalar);
        for mu in 0..4 {
            mark(CliffordElement::Vector(mu));
            mark(CliffordElement::Axial(mu));
            for nu in (mu + 1)..4 {
                mark(CliffordElement::Bivector(mu, nu));
            }
        }
        assert!(seen.iter().all(|&s| s));
        // slot ordering matches the construction order of the basis
        let b = clifford_basis();
        assert_eq!(b[CliffordElement::Bivector(1, 3).slot()], gamma(1) * gamma(3));
    }
}
