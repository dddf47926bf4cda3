//! Dirac boosts and the ten-parameter extended group in W·L·R coordinates.

use std::f64::consts::PI;

use nalgebra::{SVector, Vector3};

use crate::algebra::{gamma, generator, GeneratorIndex, Matrix4C, Tolerances, C64, I};
use crate::error::{Error, Result};
use crate::factorize::factorize_wlr;
use crate::lorentz::{
    compose_boosts, compose_rotations, four_boost, four_rotation, minkowski_square, rot_su2,
    boost_sl2, rotation3, BoostParams, FourVector, LorentzParams, RotationParams,
};
use crate::special::{cosh_sqrt, sinhc_sqrt};

/// Coordinates in the frozen chart order θ₁..θ₃, u₁..u₃, ω₀..ω₃.
pub type Coords = SVector<f64, 10>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracClass {
    Timelike,
    Null,
    Spacelike,
}

/// Covariant Dirac-boost parameter ω_μ, conjugate to Γ^μ.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiracParams(pub FourVector);

impl DiracParams {
    pub fn new(w0: f64, w1: f64, w2: f64, w3: f64) -> Self {
        Self(FourVector::new(w0, w1, w2, w3))
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// ω·ω with metric diag(−1, 1, 1, 1).
    pub fn square(&self) -> f64 {
        minkowski_square(&self.0)
    }

    pub fn class(&self, tol_null: f64) -> DiracClass {
        let s = self.square();
        if s.abs() <= tol_null * self.0.norm_squared() {
            DiracClass::Null
        } else if s < 0.0 {
            DiracClass::Timelike
        } else {
            DiracClass::Spacelike
        }
    }

    /// (c, a) with W(ω) = c + i a_μγ^μ.
    pub fn half(&self) -> (f64, FourVector) {
        let z = self.square() / 4.0;
        (cosh_sqrt(z), self.0 * (0.5 * sinhc_sqrt(z)))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Fold a timelike magnitude into [0, π]. The flag reports whether the
    /// fold introduced the central sign −1.
    fn folded(&self) -> (Self, bool) {
        let s = self.square();
        if s >= 0.0 {
            return (*self, false);
        }
        let w = (-s).sqrt();
        if w <= PI {
            return (*self, false);
        }
        let r = w.rem_euclid(4.0 * PI);
        let k = (r / (2.0 * PI)).round();
        let q = self.0 / w;
        (Self(q * (r - 2.0 * PI * k)), k == 1.0)
    }
}

/// Group element W(ω)L(u)R(θ).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExtendedParams {
    pub omega: DiracParams,
    pub u: BoostParams,
    pub theta: RotationParams,
}

impl ExtendedParams {
    pub fn new(omega: DiracParams, u: BoostParams, theta: RotationParams) -> Self {
        Self { omega, u, theta }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_dirac(omega: DiracParams) -> Self {
        Self { omega, ..Self::default() }
    }

    pub fn from_lorentz(p: &LorentzParams) -> Self {
        Self::new(DiracParams::identity(), p.u, p.theta)
    }

    pub fn lorentz(&self) -> LorentzParams {
        LorentzParams::new(self.u, self.theta)
    }

    pub fn coords(&self) -> Coords {
        let mut c = Coords::zeros();
        c.fixed_rows_mut::<3>(0).copy_from(&self.theta.0);
        c.fixed_rows_mut::<3>(3).copy_from(&self.u.0);
        c.fixed_rows_mut::<4>(6).copy_from(&self.omega.0);
        c
    }

    pub fn from_coords(c: &Coords) -> Self {
        Self {
            theta: RotationParams(c.fixed_rows::<3>(0).into_owned()),
            u: BoostParams(c.fixed_rows::<3>(3).into_owned()),
            omega: DiracParams(c.fixed_rows::<4>(6).into_owned()),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.omega.is_finite() && self.u.is_finite() && self.theta.is_finite()
    }

    /// Canonical representative: timelike |ω| ≤ π, rotation angle in [0, 2π].
    pub fn canonical(&self) -> Self {
        let (omega, flip) = self.omega.folded();
        let theta = if flip { self.theta.negated() } else { self.theta.canonical() };
        Self { omega, u: self.u, theta }
    }

    /// Equivalent coordinates (same matrix) closest to `reference`.
    ///
    /// Canonical coordinates jump at θ = 2π and at timelike |ω| = π; this
    /// undoes those jumps so that neighbouring points can be differenced.
    pub fn nearest_to(&self, reference: &ExtendedParams) -> Self {
        let base = self.canonical();
        let target = reference.coords();
        let mut best = base;
        let mut best_d = (base.coords() - target).norm();
        for cand in base.equivalents() {
            let d = (cand.coords() - target).norm();
            if d < best_d {
                best = cand;
                best_d = d;
            }
        }
        best
    }

    fn equivalents(&self) -> Vec<Self> {
        let t = self.theta.angle();
        let n = self.theta.axis();
        let theta_even = [t - 4.0 * PI, t + 4.0 * PI];
        let theta_odd = [t - 2.0 * PI, t + 2.0 * PI];
        let mut out = Vec::new();
        for a in theta_even {
            out.push(Self { theta: RotationParams(n * a), ..*self });
        }
        let s = self.omega.square();
        let mut omegas = Vec::new();
        if s < 0.0 {
            let w = (-s).sqrt();
            let q = self.omega.0 / w;
            omegas.push(DiracParams(q * (w - 2.0 * PI)));
            omegas.push(DiracParams(q * (w + 2.0 * PI)));
        }
        for om in omegas {
            for a in theta_odd {
                out.push(Self { omega: om, u: self.u, theta: RotationParams(n * a) });
            }
        }
        out
    }
}

/// Distance between two parameter sets modulo the covering-group conventions.
///
/// Boost and Dirac parts are compared as coordinates; rotations through the
/// chord of their unit quaternions, scaled to match angle differences to first
/// order, so that the free axis of θ = 2π costs nothing. A timelike |ω| = π
/// admits two representatives and the closer one is used.
pub fn distance_mod_cover(a: &ExtendedParams, b: &ExtendedParams) -> f64 {
    let b = b.canonical();
    let mut candidates = vec![a.canonical()];
    let s = candidates[0].omega.square();
    if s < 0.0 {
        let c = candidates[0];
        let w = (-s).sqrt();
        let q = c.omega.0 / w;
        candidates.push(ExtendedParams::with_omega(&c, DiracParams(q * (w - 2.0 * PI)), true));
    }
    candidates
        .iter()
        .map(|c| {
            let (qa, va) = c.theta.half_angle();
            let (qb, vb) = b.theta.half_angle();
            let rot = 2.0 * ((qa - qb).powi(2) + (va - vb).norm_squared()).sqrt();
            let omega = (c.omega.0 - b.omega.0).norm();
            let u = (c.u.0 - b.u.0).norm();
            omega.max(u).max(rot)
        })
        .fold(f64::INFINITY, f64::min)
}

impl ExtendedParams {
    fn with_omega(p: &Self, omega: DiracParams, flip: bool) -> Self {
        let theta = if flip { p.theta.negated() } else { p.theta };
        Self { omega, u: p.u, theta }
    }
}

/// W(ω) = exp(iω_μΓ^μ).
///
/// Evaluated as C + i k ω_μγ^μ with C = cosh√z, k = sinh√z/(2√z), z = ω·ω/4,
/// which is the cos/sin form for timelike ω, cosh/sinh for spacelike ω and
/// 1 + iω·γ/2 on the null cone.
pub fn dirac_w(omega: &DiracParams) -> Result<Matrix4C> {
    if !omega.is_finite() {
        return Err(Error::NonFinite("Dirac boost parameters"));
    }
    let (c, a) = omega.half();
    let mut m = Matrix4C::identity() * C64::new(c, 0.0);
    for mu in 0..4 {
        m += gamma(mu) * (I * a[mu]);
    }
    Ok(m)
}

/// i ω_μΓ^μ, the algebra element whose exponential is [`dirac_w`].
pub fn dirac_algebra(omega: &DiracParams) -> Matrix4C {
    (0..4).fold(Matrix4C::zeros(), |acc, mu| {
        acc + generator(GeneratorIndex::ALL[6 + mu]) * C64::new(0.0, omega.0[mu])
    })
}

pub fn extended_matrix(p: &ExtendedParams) -> Result<Matrix4C> {
    if !p.is_finite() {
        return Err(Error::NonFinite("extended parameters"));
    }
    Ok(dirac_w(&p.omega)? * boost_sl2(&p.u) * rot_su2(&p.theta))
}

/// Result of composing two pure Dirac boosts: W(ω₂)W(ω₁) = W(ω_D)L(u_D)R(θ_D).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracComposition {
    pub omega: DiracParams,
    pub u: BoostParams,
    pub theta: RotationParams,
}

impl DiracComposition {
    pub fn params(&self) -> ExtendedParams {
        ExtendedParams::new(self.omega, self.u, self.theta)
    }
}

/// Compose two Dirac boosts through the matrix product and its factorization.
pub fn compose_dirac(
    omega2: &DiracParams,
    omega1: &DiracParams,
    tol: &Tolerances,
) -> Result<DiracComposition> {
    let m = dirac_w(omega2)? * dirac_w(omega1)?;
    let p = factorize_wlr(&m, tol)?.params;
    Ok(DiracComposition { omega: p.omega, u: p.u, theta: p.theta })
}

/// Residuals of the scalar/vector relations between (ω₂, ω₁) and their
/// composite, followed by the three orthogonality constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiracRelationResiduals {
    pub relations: [f64; 5],
    pub constraints: [f64; 3],
}

impl DiracRelationResiduals {
    pub fn max(&self) -> f64 {
        self.relations.iter().chain(self.constraints.iter()).fold(0.0, |m, x| m.max(x.abs()))
    }
}

fn dot4(a: &FourVector, b: &FourVector) -> f64 {
    minkowski_square(&(a + b)) / 2.0 - (minkowski_square(a) + minkowski_square(b)) / 2.0
}

fn unit(v: &Vector3<f64>) -> Option<Vector3<f64>> {
    let n = v.norm();
    (n > 1e-6).then(|| v / n)
}

pub fn dirac_relation_residuals(
    omega2: &DiracParams,
    omega1: &DiracParams,
    d: &DiracComposition,
) -> DiracRelationResiduals {
    let (c2, a2) = omega2.half();
    let (c1, a1) = omega1.half();
    let (cd, ad) = d.omega.half();
    let (a2v, a1v, adv) = (a2.fixed_rows::<3>(1), a1.fixed_rows::<3>(1), ad.fixed_rows::<3>(1));
    let (a2v, a1v, adv): (Vector3<f64>, Vector3<f64>, Vector3<f64>) =
        (a2v.into_owned(), a1v.into_owned(), adv.into_owned());
    let (a20, a10, ad0) = (a2[0], a1[0], ad[0]);

    let u0 = d.u.u0();
    let p = ((u0 + 1.0) / 2.0).sqrt();
    // √((u⁰−1)/2)û and sin(θ/2)θ̂, both smooth at their degenerate points
    let mu = d.u.0 / (2.0 * (u0 + 1.0)).sqrt();
    let (ct, sv) = d.theta.half_angle();

    let r1 = cd * p * ct - (c2 * c1 + dot4(&a2, &a1));
    let r2 = sv * (cd * p) - a2v.cross(&a1v);
    let r3 = mu * (cd * ct) + sv.cross(&mu) * cd - (a2v * a10 - a1v * a20);
    let r4 = ad0 * p * ct + ct * adv.dot(&mu) - sv.cross(&adv).dot(&mu) - (a20 * c1 + a10 * c2);
    let r5 = adv * (p * ct) + mu * (ct * ad0) + sv.cross(&adv) * p + sv.cross(&mu) * ad0
        - (a2v * c1 + a1v * c2);

    let theta_hat = unit(&sv);
    let k1 = match (unit(&mu), theta_hat) {
        (Some(uh), Some(th)) => uh.dot(&th),
        _ => 0.0,
    };
    let k2 = theta_hat.map_or(0.0, |th| adv.dot(&th));
    let k3 = (adv.cross(&mu) * ct + sv * adv.dot(&mu) + sv * (p * ad0)).norm();

    DiracRelationResiduals {
        relations: [r1, r2.norm(), r3.norm(), r4, r5.norm()],
        constraints: [k1, k2, k3],
    }
}

/// Composition M₂M₁ in W·L·R coordinates.
///
/// The Dirac part of M₁ is moved through L(u₂)R(θ₂) with the four-vector
/// matrices, the two Dirac boosts are combined, and the two resulting Lorentz
/// products each contribute a Wigner rotation.
pub fn compose_extended(
    p2: &ExtendedParams,
    p1: &ExtendedParams,
    tol: &Tolerances,
) -> Result<ExtendedParams> {
    if !p2.is_finite() || !p1.is_finite() {
        return Err(Error::NonFinite("extended parameters"));
    }
    let lambda = four_boost(&p2.u) * four_rotation(&p2.theta);
    let moved = DiracParams(lambda * p1.omega.0);
    let d = compose_dirac(&p2.omega, &moved, tol)?;

    let (ul, theta_l) = compose_boosts(&p2.u, &BoostParams(rotation3(&p2.theta) * p1.u.0));
    let (u, theta_w) = compose_boosts(&d.u, &BoostParams(rotation3(&d.theta) * ul.0));
    let theta = compose_rotations(
        &theta_w,
        &compose_rotations(&d.theta, &compose_rotations(&theta_l, &compose_rotations(&p2.theta, &p1.theta))),
    );
    Ok(ExtendedParams { omega: d.omega, u, theta }.canonical())
}

/// {ω, u, θ}⁻¹ = {−𝓡(−θ)𝓛(−u)ω, −R(−θ)u, −θ}.
pub fn inverse_extended(p: &ExtendedParams) -> ExtendedParams {
    let minus = RotationParams(-p.theta.0);
    let back = BoostParams(-p.u.0);
    let omega = DiracParams(-(four_rotation(&minus) * four_boost(&back) * p.omega.0));
    let u = BoostParams(-(rotation3(&minus) * p.u.0));
    ExtendedParams { omega, u, theta: minus }.canonical()
}
