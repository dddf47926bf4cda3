//! Seeded property checks comparing every closed form against an independent
//! brute-force computation.
//!
//! Each check draws from its own stream, derived from the suite seed and the
//! check's position, so reports are reproducible and checks do not perturb
//! each other.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;
use xlorentz::algebra::{frobenius, gamma, generator};
use xlorentz::extended::{
    compose_dirac, compose_extended, dirac_algebra, dirac_relation_residuals, dirac_w, distance_mod_cover,
    extended_matrix, inverse_extended, Coords,
};
use xlorentz::factorize::{chart_invariant, factorize_wlr};
use xlorentz::gauge::{
    infinitesimal_gauge_delta, is_interior, pure_gauge_component, site_at, FieldGrid, GaugeField, SiteStatus,
};
use xlorentz::lorentz::{
    boost_algebra, boost_sl2, compose_boosts, compose_lorentz, compose_rotations, inverse_lorentz,
    lorentz_matrix, rot_su2, rotation_algebra,
};
use xlorentz::sample::Sampler;
use xlorentz::structure::{
    oplus_closed, oplus_numeric, oplus_of_matrix, structure_constants_commutator, structure_constants_theta,
    theta_closed, theta_numeric, theta_relation_residual, Matrix10, StructureConstants,
};
use xlorentz::{
    BoostParams, Error, ExtendedParams, GeneratorIndex as X, Matrix4C, RotationParams, Tolerances, C64,
};

use crate::CliError;

/// Step used for the finite-difference Θ comparison.
pub const THETA_STEP: f64 = 1e-5;
/// Base step of the coordinate derivatives in the Θ generator relation.
pub const RELATION_STEP: f64 = 1e-3;
/// Step used for the Θ-derivative path to the structure constants.
pub const STRUCTURE_STEP: f64 = 1e-3;

/// Thresholds of the individual checks, keyed by check name.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckTolerances {
    pub exp: f64,
    pub compose_lorentz: f64,
    pub wigner: f64,
    pub compose_extended: f64,
    pub dirac_relations: f64,
    pub inverse_matrix: f64,
    pub inverse_roundtrip: f64,
    pub oplus: f64,
    pub oplus_representation: f64,
    pub theta: f64,
    pub theta_relation: f64,
    pub structure: f64,
    pub jacobi: f64,
    pub gauge_reconstruction: f64,
    /// Largest accepted shortfall of the observed ε-order below 2.
    pub gauge_order_deficit: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        Self {
            exp: 1e-12,
            compose_lorentz: 1e-11,
            wigner: 1e-10,
            compose_extended: 1e-7,
            dirac_relations: 1e-9,
            inverse_matrix: 1e-10,
            inverse_roundtrip: 1e-9,
            oplus: 1e-9,
            oplus_representation: 1e-9,
            theta: 1e-6,
            theta_relation: 1e-6,
            structure: 1e-6,
            jacobi: 1e-6,
            gauge_reconstruction: 1e-5,
            gauge_order_deficit: 0.1,
        }
    }
}

impl CheckTolerances {
    pub const NAMES: [&'static str; 15] = [
        "exp",
        "compose_lorentz",
        "wigner",
        "compose_extended",
        "dirac_relations",
        "inverse_matrix",
        "inverse_roundtrip",
        "oplus",
        "oplus_representation",
        "theta",
        "theta_relation",
        "structure",
        "jacobi",
        "gauge_reconstruction",
        "gauge_order_deficit",
    ];

    /// Set one threshold by name. Returns false for an unknown name.
    pub fn set(&mut self, name: &str, value: f64) -> bool {
        let slot = match name {
            "exp" => &mut self.exp,
            "compose_lorentz" => &mut self.compose_lorentz,
            "wigner" => &mut self.wigner,
            "compose_extended" => &mut self.compose_extended,
            "dirac_relations" => &mut self.dirac_relations,
            "inverse_matrix" => &mut self.inverse_matrix,
            "inverse_roundtrip" => &mut self.inverse_roundtrip,
            "oplus" => &mut self.oplus,
            "oplus_representation" => &mut self.oplus_representation,
            "theta" => &mut self.theta,
            "theta_relation" => &mut self.theta_relation,
            "structure" => &mut self.structure,
            "jacobi" => &mut self.jacobi,
            "gauge_reconstruction" => &mut self.gauge_reconstruction,
            "gauge_order_deficit" => &mut self.gauge_order_deficit,
            _ => return false,
        };
        *slot = value;
        true
    }

    /// Apply every threshold to all checks at once.
    pub fn uniform(value: f64) -> Self {
        let mut t = Self::default();
        for name in Self::NAMES {
            t.set(name, value);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// Relations exercised by the check.
    pub anchors: Vec<String>,
    pub samples: usize,
    /// Draws excluded because the product lies outside the W·L·R chart, as
    /// certified by the chart invariant.
    pub outside_chart: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub samples: usize,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

/// Running maximum that lets NaN win, so a NaN error fails its check.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxError(f64);

impl MaxError {
    pub fn push(&mut self, e: f64) {
        if e.is_nan() || e > self.0 {
            self.0 = e;
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub samples: usize,
    pub outside_chart: usize,
    pub max_error: f64,
}

impl Measurement {
    fn new(samples: usize, outside_chart: usize, max_error: MaxError) -> Self {
        Self { samples, outside_chart, max_error: max_error.get() }
    }
}

fn report(name: &str, anchors: &[&str], m: Measurement, tolerance: f64) -> CheckReport {
    CheckReport {
        name: name.to_string(),
        anchors: anchors.iter().map(|a| a.to_string()).collect(),
        samples: m.samples,
        outside_chart: m.outside_chart,
        max_error: m.max_error,
        tolerance,
        // written so that NaN fails
        pass: m.max_error <= tolerance,
    }
}

pub fn stream(seed: u64, check: u64) -> Sampler {
    Sampler::new(seed ^ check.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// exp(A) by scaling, a plain Taylor series and repeated squaring.
pub fn exp_series(a: &Matrix4C) -> Matrix4C {
    let norm = frobenius(a);
    let squarings = if norm > 0.25 { (norm / 0.25).log2().ceil() as i32 } else { 0 };
    let b = a * C64::new(0.5f64.powi(squarings), 0.0);
    let mut term = Matrix4C::identity();
    let mut sum = Matrix4C::identity();
    for k in 1..=24 {
        term = term * b / C64::new(k as f64, 0.0);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

fn matrix(p: &ExtendedParams) -> Matrix4C {
    extended_matrix(p).expect("sampled parameters are finite")
}

/// Closed-form rotation, boost and Dirac-boost exponentials against the
/// series oracle, as the worst Frobenius error of the three.
pub fn measure_exponentials(rng: &mut Sampler, n: usize) -> [Measurement; 3] {
    let (mut rot, mut boost, mut dirac) = (MaxError::default(), MaxError::default(), MaxError::default());
    for _ in 0..n {
        let theta = rng.rotation();
        rot.push(frobenius(&(rot_su2(&theta) - exp_series(&rotation_algebra(&theta)))));
        let u = rng.boost();
        boost.push(frobenius(&(boost_sl2(&u) - exp_series(&boost_algebra(&u)))));
        let omega = rng.dirac();
        let w = dirac_w(&omega).expect("finite");
        dirac.push(frobenius(&(w - exp_series(&dirac_algebra(&omega)))));
    }
    [rot, boost, dirac].map(|e| Measurement::new(n, 0, e))
}

/// Parameter-level rotation, boost and Lorentz composition mapped back to
/// matrices, against the direct two-factor products.
pub fn measure_lorentz_composition(rng: &mut Sampler, n: usize) -> Measurement {
    let mut err = MaxError::default();
    for _ in 0..n {
        let (t2, t1) = (rng.rotation(), rng.rotation());
        err.push(frobenius(&(rot_su2(&compose_rotations(&t2, &t1)) - rot_su2(&t2) * rot_su2(&t1))));

        let (u2, u1) = (rng.boost(), rng.boost());
        let (u, wigner) = compose_boosts(&u2, &u1);
        let direct = boost_sl2(&u2) * boost_sl2(&u1);
        err.push(frobenius(&(boost_sl2(&u) * rot_su2(&wigner) - direct)));

        let (p2, p1) = (rng.lorentz(), rng.lorentz());
        let direct = lorentz_matrix(&p2) * lorentz_matrix(&p1);
        err.push(frobenius(&(lorentz_matrix(&compose_lorentz(&p2, &p1)) - direct)));
    }
    Measurement::new(n, 0, err)
}

/// Rotation part of a boost product read off its polar decomposition:
/// PP† = u⁰ + u·α fixes the boost, and L(u)⁻¹P is the rotation.
fn polar_rotation(p: &Matrix4C) -> (f64, [f64; 3]) {
    let pp = p * p.adjoint();
    let alpha = |k: usize| gamma(0) * gamma(k + 1);
    let u = BoostParams::new(
        (alpha(0) * pp).trace().re / 4.0,
        (alpha(1) * pp).trace().re / 4.0,
        (alpha(2) * pp).trace().re / 4.0,
    );
    let r = boost_sl2(&BoostParams(-u.0)) * p;
    let spin = |k: usize| generator(X::ALL[k]) * C64::new(2.0, 0.0);
    let c = r.trace().re / 4.0;
    (c, [0, 1, 2].map(|k| (spin(k) * r).trace().im / 4.0))
}

fn quaternion_chord(a: (f64, [f64; 3]), b: (f64, [f64; 3])) -> f64 {
    let d2 = (a.0 - b.0).powi(2) + (0..3).map(|k| (a.1[k] - b.1[k]).powi(2)).sum::<f64>();
    2.0 * d2.sqrt()
}

/// Wigner rotation of the boost composition against the polar-decomposition
/// oracle, including the fixed case u₂ = x̂, u₁ = ŷ with tan(θ/2) = 1/(3+2√2)
/// about ẑ.
pub fn measure_wigner(rng: &mut Sampler, n: usize) -> Measurement {
    let mut err = MaxError::default();
    let quat = |t: &RotationParams| {
        let (c, s) = t.half_angle();
        (c, [s.x, s.y, s.z])
    };
    let (_, fixed) = compose_boosts(&BoostParams::new(1.0, 0.0, 0.0), &BoostParams::new(0.0, 1.0, 0.0));
    let half = (1.0 / (3.0 + 2.0 * SQRT_2)).atan();
    err.push(quaternion_chord(quat(&fixed), (half.cos(), [0.0, 0.0, half.sin()])));
    for _ in 0..n {
        let (u2, u1) = (rng.boost(), rng.boost());
        let (_, wigner) = compose_boosts(&u2, &u1);
        let oracle = polar_rotation(&(boost_sl2(&u2) * boost_sl2(&u1)));
        err.push(quaternion_chord(quat(&wigner), oracle));
    }
    Measurement::new(n + 1, 0, err)
}

/// Closed-form extended composition against W·L·R factorization of the
/// matrix product. Pairs whose product is outside the chart must be rejected
/// by both paths and certified by the chart invariant; they are counted but
/// carry no error.
pub fn measure_extended_composition(rng: &mut Sampler, n: usize, tol: &Tolerances) -> Measurement {
    let mut err = MaxError::default();
    let mut outside = 0;
    for _ in 0..n {
        let (p2, p1) = (rng.extended(), rng.extended());
        let product = matrix(&p2) * matrix(&p1);
        match (compose_extended(&p2, &p1, tol), factorize_wlr(&product, tol)) {
            (Ok(a), Ok(b)) => err.push(distance_mod_cover(&a, &b.params)),
            (Err(Error::OutsideChart { .. }), Err(Error::OutsideChart { .. }))
                if chart_invariant(&product).is_ok_and(|c| !c.in_chart()) =>
            {
                outside += 1
            }
            _ => err.push(f64::INFINITY),
        }
    }
    Measurement::new(n, outside, err)
}

/// Composition relations and unit-vector constraints on products of two pure
/// Dirac boosts.
pub fn measure_dirac_relations(rng: &mut Sampler, n: usize, tol: &Tolerances) -> Measurement {
    let mut err = MaxError::default();
    let mut outside = 0;
    for _ in 0..n {
        let (w2, w1) = (rng.dirac(), rng.dirac());
        match compose_dirac(&w2, &w1, tol) {
            Ok(d) => err.push(dirac_relation_residuals(&w2, &w1, &d).max()),
            Err(Error::OutsideChart { .. }) => outside += 1,
            Err(_) => err.push(f64::INFINITY),
        }
    }
    Measurement::new(n, outside, err)
}

/// ‖S(p⁻¹)S(p) − 1‖ for Lorentz and extended parameters.
pub fn measure_inverse_matrix(rng: &mut Sampler, n: usize) -> Measurement {
    let mut err = MaxError::default();
    for _ in 0..n {
        let l = rng.lorentz();
        err.push(frobenius(&(lorentz_matrix(&inverse_lorentz(&l)) * lorentz_matrix(&l) - Matrix4C::identity())));
        let p = rng.extended();
        err.push(frobenius(&(matrix(&inverse_extended(&p)) * matrix(&p) - Matrix4C::identity())));
    }
    Measurement::new(n, 0, err)
}

/// compose(p, inverse(p)) against the identity in parameter space.
pub fn measure_inverse_roundtrip(rng: &mut Sampler, n: usize, tol: &Tolerances) -> Measurement {
    let mut err = MaxError::default();
    let identity = ExtendedParams::identity();
    for _ in 0..n {
        let p = rng.extended();
        let e = compose_extended(&p, &inverse_extended(&p), tol)
            .map_or(f64::INFINITY, |q| distance_mod_cover(&q, &identity));
        err.push(e);
    }
    Measurement::new(n, 0, err)
}

fn max_abs(m: &Matrix10) -> f64 {
    m.iter().fold(0.0, |acc: f64, x| if x.is_nan() { f64::NAN } else { acc.max(x.abs()) })
}

/// Conjugation-derived O+ against the factorized closed form, entrywise.
pub fn measure_oplus(rng: &mut Sampler, n: usize, tol: &Tolerances) -> Measurement {
    let mut err = MaxError::default();
    for _ in 0..n {
        let p = rng.extended();
        let e = oplus_numeric(&p, tol).map_or(f64::INFINITY, |o| max_abs(&(o.0 - oplus_closed(&p).0)));
        err.push(e);
    }
    Measurement::new(n, 0, err)
}

/// O+ of the identity, closed form and conjugation; must vanish exactly.
pub fn measure_oplus_identity(tol: &Tolerances) -> Measurement {
    let id = ExtendedParams::identity();
    let mut err = MaxError::default();
    err.push(max_abs(&(oplus_closed(&id).0 - Matrix10::identity())));
    err.push(oplus_numeric(&id, tol).map_or(f64::INFINITY, |o| max_abs(&(o.0 - Matrix10::identity()))));
    Measurement::new(1, 0, err)
}

/// O+(M₂M₁) = O+(M₂)·O+(M₁), entrywise relative to the size of the factors.
pub fn measure_oplus_representation(rng: &mut Sampler, n: usize, tol: &Tolerances) -> Measurement {
    let mut err = MaxError::default();
    for _ in 0..n {
        let (p2, p1) = (rng.extended(), rng.extended());
        let (o2, o1) = (oplus_closed(&p2).0, oplus_closed(&p1).0);
        let expected = o2 * o1;
        let scale = max_abs(&o2) * max_abs(&o1);
        let e = oplus_of_matrix(&(matrix(&p2) * matrix(&p1)), tol)
            .map_or(f64::INFINITY, |o| max_abs(&(o.0 - expected)) / scale.max(1.0));
        err.push(e);
    }
    Measurement::new(n, 0, err)
}

/// Closed-form Θ against central differences of the composition map.
pub fn measure_theta(rng: &mut Sampler, n: usize, tol: &Tolerances) -> Measurement {
    let mut err = MaxError::default();
    let mut outside = 0;
    for _ in 0..n {
        let p = rng.extended().canonical();
        match theta_numeric(&p, THETA_STEP, tol) {
            Ok(num) => err.push(max_abs(&(num.0 - theta_closed(&p).0))),
            Err(Error::OutsideChart { .. }) => outside += 1,
            Err(_) => err.push(f64::INFINITY),
        }
    }
    Measurement::new(n, outside, err)
}

/// Θ_r^s ∂S/∂p^s = iX_r S with the derivatives taken numerically.
pub fn measure_theta_relation(rng: &mut Sampler, n: usize) -> Measurement {
    let mut err = MaxError::default();
    for _ in 0..n {
        let p = rng.extended();
        err.push(theta_relation_residual(&p, RELATION_STEP).unwrap_or(f64::INFINITY));
    }
    Measurement::new(n, 0, err)
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureMeasurement {
    pub paths: f64,
    pub antisymmetry: f64,
    pub jacobi: f64,
    /// c_{J1J2}^{J3} from each path.
    pub so3_theta: f64,
    pub so3_commutator: f64,
    pub constants: StructureConstants,
}

pub fn measure_structure() -> StructureMeasurement {
    let from_theta = structure_constants_theta(STRUCTURE_STEP);
    let from_comm = structure_constants_commutator();
    StructureMeasurement {
        paths: from_theta.max_difference(&from_comm),
        antisymmetry: from_theta.antisymmetry_error().max(from_comm.antisymmetry_error()),
        jacobi: from_theta.jacobi_error().max(from_comm.jacobi_error()),
        so3_theta: from_theta.get(X::J1, X::J2, X::J3),
        so3_commutator: from_comm.get(X::J1, X::J2, X::J3),
        constants: from_theta,
    }
}

/// Smooth random field 𝓜(x) with coordinates c_r + a_r sin(k_r·x + φ_r).
#[derive(Debug, Clone)]
pub struct SmoothField {
    offset: [f64; 10],
    amplitude: [f64; 10],
    wave: [[f64; 4]; 10],
    phase: [f64; 10],
}

impl SmoothField {
    pub fn random(rng: &mut Sampler) -> Self {
        let mut offset = [0.0; 10];
        for (r, o) in offset.iter_mut().enumerate() {
            // keep the Dirac part timelike-small so the chart stays well away from its edge
            *o = if r < 6 { rng.uniform(-1.0, 1.0) } else { rng.uniform(-0.6, 0.6) };
        }
        Self {
            offset,
            amplitude: std::array::from_fn(|_| rng.uniform(-0.4, 0.4)),
            wave: std::array::from_fn(|_| std::array::from_fn(|_| rng.uniform(-3.0, 3.0))),
            phase: std::array::from_fn(|_| rng.uniform(0.0, 2.0 * PI)),
        }
    }

    fn arg(&self, r: usize, x: &[f64; 4]) -> f64 {
        (0..4).map(|mu| self.wave[r][mu] * x[mu]).sum::<f64>() + self.phase[r]
    }

    pub fn at(&self, x: &[f64; 4]) -> ExtendedParams {
        let c = Coords::from_fn(|r, _| self.offset[r] + self.amplitude[r] * self.arg(r, x).sin());
        ExtendedParams::from_coords(&c)
    }

    /// Exact ∂_μ of the coordinates.
    pub fn derivative(&self, x: &[f64; 4], mu: usize) -> Coords {
        Coords::from_fn(|r, _| self.amplitude[r] * self.wave[r][mu] * self.arg(r, x).cos())
    }
}

fn grid_point(site: &[usize; 4], spacing: f64) -> [f64; 4] {
    site.map(|i| i as f64 * spacing)
}

/// a_μ from Θ(𝓜)ᵀa_μ = ∂_μ𝓜.
fn solve_gauge(p: &ExtendedParams, derivs: &[Coords; 4]) -> Option<[[f64; 10]; 4]> {
    let lu = theta_closed(p).0.transpose().lu();
    let mut out = [[0.0; 10]; 4];
    for mu in 0..4 {
        let a = lu.solve(&derivs[mu])?;
        out[mu].copy_from_slice(a.as_slice());
    }
    Some(out)
}

/// Pure-gauge component computed on the grid against the same quantity with
/// exact coordinate derivatives; the error is relative to the largest exact
/// component.
pub fn measure_gauge_reconstruction(
    field: &SmoothField,
    dims: [usize; 4],
    spacing: f64,
    tol: &Tolerances,
) -> Result<Measurement, Error> {
    let grid = FieldGrid::from_fn(dims, [spacing; 4], |x| field.at(&x))?;
    let a = pure_gauge_component(&grid, None, tol)?;
    let (mut diff, mut scale) = (0.0f64, 0.0f64);
    let mut sites = 0;
    for i in 0..grid.len() {
        let site = site_at(&dims, i);
        if !is_interior(&dims, &site) {
            continue;
        }
        if !matches!(a.status[i], SiteStatus::Computed) {
            return Ok(Measurement { samples: sites, outside_chart: 0, max_error: f64::INFINITY });
        }
        let x = grid_point(&site, spacing);
        let derivs = std::array::from_fn(|mu| field.derivative(&x, mu));
        let exact = solve_gauge(&field.at(&x), &derivs).ok_or(Error::IllConditioned(f64::INFINITY))?;
        for mu in 0..4 {
            for r in 0..10 {
                diff = diff.max((a.values[i][mu][r] - exact[mu][r]).abs());
                scale = scale.max(exact[mu][r].abs());
            }
        }
        sites += 1;
    }
    Ok(Measurement { samples: sites, outside_chart: 0, max_error: diff / scale })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeOrder {
    pub epsilons: Vec<f64>,
    /// max |A'(x) − A(x) − δA(x)| for each ε.
    pub mismatches: Vec<f64>,
    /// log₂ ratios of successive mismatches.
    pub orders: Vec<f64>,
}

impl GaugeOrder {
    pub fn min_order(&self) -> f64 {
        self.orders.iter().copied().fold(f64::INFINITY, |a, b| if b.is_nan() { b } else { a.min(b) })
    }
}

/// First-order consistency of the infinitesimal gauge increment.
///
/// The field 𝓜(x) is left-multiplied by exp(iδ𝓜(x)·X) with a linear
/// δ𝓜 = ε(d₀ + d_μx^μ), whose central differences are exact. The pure-gauge
/// fields A and A' of 𝓜 and of the shifted field are computed with exact and
/// Richardson-extrapolated derivatives respectively; their difference is
/// compared with the increment predicted from A and δ𝓜. The mismatch should
/// shrink as ε².
pub fn measure_gauge_order(
    field: &SmoothField,
    rng: &mut Sampler,
    dims: [usize; 4],
    spacing: f64,
    epsilons: &[f64],
    constants: &StructureConstants,
    tol: &Tolerances,
) -> Result<GaugeOrder, Error> {
    let d: [Coords; 5] = std::array::from_fn(|_| Coords::from_fn(|_, _| rng.uniform(-1.0, 1.0)));
    let n: usize = dims.iter().product();
    let interior: Vec<usize> = (0..n).filter(|&i| is_interior(&dims, &site_at(&dims, i))).collect();

    let mut a = GaugeField::zeros(dims);
    for i in 0..n {
        let site = site_at(&dims, i);
        if !is_interior(&dims, &site) {
            a.status[i] = SiteStatus::Boundary;
            continue;
        }
        let x = grid_point(&site, spacing);
        let derivs = std::array::from_fn(|mu| field.derivative(&x, mu));
        a.values[i] = solve_gauge(&field.at(&x), &derivs).ok_or(Error::IllConditioned(f64::INFINITY))?;
    }

    let mut mismatches = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let delta_at = |x: &[f64; 4]| (d[0] + d[1] * x[0] + d[2] * x[1] + d[3] * x[2] + d[4] * x[3]) * eps;
        let shifted = |x: &[f64; 4]| {
            compose_extended(&ExtendedParams::from_coords(&delta_at(x)), &field.at(x), tol)
        };
        let delta: Vec<Coords> = (0..n).map(|i| delta_at(&grid_point(&site_at(&dims, i), spacing))).collect();
        let predicted = infinitesimal_gauge_delta(&a, &delta, [spacing; 4], constants)?;

        let mut worst: f64 = 0.0;
        for &i in &interior {
            let x = grid_point(&site_at(&dims, i), spacing);
            let center = shifted(&x)?;
            let mut derivs = [Coords::zeros(); 4];
            for (mu, slot) in derivs.iter_mut().enumerate() {
                let central = |h: f64| -> Result<Coords, Error> {
                    let mut xp = x;
                    let mut xm = x;
                    xp[mu] += h;
                    xm[mu] -= h;
                    let cp = shifted(&xp)?.nearest_to(&center).coords();
                    let cm = shifted(&xm)?.nearest_to(&center).coords();
                    Ok((cp - cm) / (2.0 * h))
                };
                let h = 1e-3;
                *slot = (central(h / 2.0)? * 4.0 - central(h)?) / 3.0;
            }
            let a_shifted = solve_gauge(&center, &derivs).ok_or(Error::IllConditioned(f64::INFINITY))?;
            for mu in 0..4 {
                for r in 0..10 {
                    let m = a_shifted[mu][r] - a.values[i][mu][r] - predicted.values[i][mu][r];
                    worst = if m.is_nan() { f64::NAN } else { worst.max(m.abs()) };
                }
            }
        }
        mismatches.push(worst);
    }
    let orders = mismatches.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    Ok(GaugeOrder { epsilons: epsilons.to_vec(), mismatches, orders })
}

/// Grid used by the suite; the acceptance tests use a larger one.
pub const SUITE_GAUGE_DIMS: [usize; 4] = [5, 5, 5, 5];
pub const GAUGE_SPACING: f64 = 1e-3;
pub const GAUGE_EPSILONS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];

/// Run every check with `samples` draws each.
pub fn verify_suite(
    seed: u64,
    samples: usize,
    tol: &Tolerances,
    limits: &CheckTolerances,
) -> Result<VerifyReport, CliError> {
    if samples == 0 {
        return Err(CliError::Schema("samples must be at least 1".into()));
    }
    let mut checks = Vec::new();

    let [rot, boost, dirac] = measure_exponentials(&mut stream(seed, 1), samples);
    checks.push(report("exp_rotation", &["R(θ) = exp(iθ·J)"], rot, limits.exp));
    checks.push(report("exp_boost", &["L(u) = exp(iβ·K)"], boost, limits.exp));
    checks.push(report(
        "exp_dirac",
        &["W(ω) = exp(iω_μΓ^μ) on timelike, null and spacelike ω"],
        dirac,
        limits.exp,
    ));
    checks.push(report(
        "compose_lorentz",
        &["R(θ₂)R(θ₁) = R(θ)", "L(u₂)L(u₁) = L(u)R(θ_W)", "L(u₂)R(θ₂)L(u₁)R(θ₁) = L(u)R(θ)"],
        measure_lorentz_composition(&mut stream(seed, 2), samples),
        limits.compose_lorentz,
    ));
    checks.push(report(
        "wigner_rotation",
        &["Wigner rotation of two boosts", "u₂ = x̂, u₁ = ŷ: tan(θ/2) = 1/(3+2√2)"],
        measure_wigner(&mut stream(seed, 3), samples),
        limits.wigner,
    ));
    checks.push(report(
        "compose_extended",
        &["closed-form W·L·R composition = factorization of the product"],
        measure_extended_composition(&mut stream(seed, 4), samples, tol),
        limits.compose_extended,
    ));
    checks.push(report(
        "dirac_relations",
        &["Dirac-boost composition relations", "unit-vector constraints"],
        measure_dirac_relations(&mut stream(seed, 5), samples, tol),
        limits.dirac_relations,
    ));
    checks.push(report(
        "inverse_matrix",
        &["S(p⁻¹)S(p) = 1 for Lorentz and extended parameters"],
        measure_inverse_matrix(&mut stream(seed, 6), samples),
        limits.inverse_matrix,
    ));
    checks.push(report(
        "inverse_roundtrip",
        &["compose(p, p⁻¹) = identity"],
        measure_inverse_roundtrip(&mut stream(seed, 7), samples, tol),
        limits.inverse_roundtrip,
    ));
    checks.push(report(
        "oplus_conjugation",
        &["S⁻¹X_rS = O+_r^s X_s", "O+ = O+(ω)·O+(u)·O+(θ)"],
        measure_oplus(&mut stream(seed, 8), samples, tol),
        limits.oplus,
    ));
    checks.push(report("oplus_identity", &["O+(1) = 1"], measure_oplus_identity(tol), 0.0));
    checks.push(report(
        "oplus_representation",
        &["O+(M₂M₁) = O+(M₂)O+(M₁)"],
        measure_oplus_representation(&mut stream(seed, 9), samples, tol),
        limits.oplus_representation,
    ));
    checks.push(report(
        "theta_finite_difference",
        &["Θ = derivative of the composition map at the identity"],
        measure_theta(&mut stream(seed, 10), samples, tol),
        limits.theta,
    ));
    checks.push(report(
        "theta_generator_relation",
        &["Θ_r^s ∂S/∂p^s = iX_r S"],
        measure_theta_relation(&mut stream(seed, 11), samples),
        limits.theta_relation,
    ));

    let s = measure_structure();
    let single = |e: f64| Measurement { samples: 1, outside_chart: 0, max_error: e };
    checks.push(report(
        "structure_paths",
        &["c_{sn}^m = ∂_nΘ_s^m − ∂_sΘ_n^m", "[X_r, X_s] = −i c_{rs}^m X_m"],
        single(s.paths),
        limits.structure,
    ));
    checks.push(report("structure_antisymmetry", &["c_{rs}^m = −c_{sr}^m"], single(s.antisymmetry), 0.0));
    checks.push(report("structure_jacobi", &["Jacobi identity"], single(s.jacobi), limits.jacobi));
    checks.push(report(
        "structure_so3",
        &["[J₁, J₂] = iJ₃, so c_{J1J2}^{J3} = −1"],
        single((s.so3_theta + 1.0).abs().max((s.so3_commutator + 1.0).abs())),
        limits.structure,
    ));

    let mut gauge_rng = stream(seed, 12);
    let field = SmoothField::random(&mut gauge_rng);
    let recon = measure_gauge_reconstruction(&field, SUITE_GAUGE_DIMS, GAUGE_SPACING, tol)
        .map_err(CliError::Solver)?;
    checks.push(report(
        "gauge_reconstruction",
        &["∂_μ𝓜^s = a_μ^r Θ_r^s"],
        recon,
        limits.gauge_reconstruction,
    ));
    let order = measure_gauge_order(
        &field,
        &mut gauge_rng,
        SUITE_GAUGE_DIMS,
        GAUGE_SPACING,
        &GAUGE_EPSILONS,
        &s.constants,
        tol,
    )
    .map_err(CliError::Solver)?;
    checks.push(report(
        "gauge_first_order",
        &["δA^r = ∂δ𝓜^r + δ𝓜^s c_{sm}^r A^m up to O(ε²)", "error reported as 2 − observed order"],
        Measurement { samples: order.epsilons.len(), outside_chart: 0, max_error: 2.0 - order.min_order() },
        limits.gauge_order_deficit,
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport { seed, samples, pass, checks })
}
