//! Gauge fields on a sampled spacetime grid.
//!
//! Sites are stored row-major with axis 0 slowest. Derivatives are second-order
//! central differences taken at interior sites only; an axis of extent 1 is
//! treated as undifferentiated (its derivative is zero).

use nalgebra::{Vector4, SMatrix, SVector};

use crate::algebra::{generators, Matrix4C, Tolerances, C64, I};
use crate::error::{Error, Result};
use crate::extended::ExtendedParams;
use crate::structure::{theta_closed, StructureConstants};

pub type Site = [usize; 4];
/// A_μ^r at one site, indexed [μ][r].
pub type SiteComponents = [[f64; 10]; 4];
pub type Spinor = Vector4<C64>;

#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub dims: [usize; 4],
    pub spacing: [f64; 4],
    pub values: Vec<ExtendedParams>,
}

fn validate_layout(dims: &[usize; 4], spacing: &[f64; 4], len: usize) -> Result<()> {
    for (mu, (&d, &h)) in dims.iter().zip(spacing).enumerate() {
        if d == 0 || d == 2 {
            return Err(Error::InvalidGrid(format!("axis {mu} has extent {d}; need 1 or at least 3")));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidGrid(format!("axis {mu} has spacing {h}")));
        }
    }
    let n: usize = dims.iter().product();
    if n != len {
        return Err(Error::InvalidGrid(format!("expected {n} site values, found {len}")));
    }
    Ok(())
}

fn site_count(dims: &[usize; 4]) -> usize {
    dims.iter().product()
}

pub fn site_index(dims: &[usize; 4], site: &Site) -> usize {
    ((site[0] * dims[1] + site[1]) * dims[2] + site[2]) * dims[3] + site[3]
}

pub fn site_at(dims: &[usize; 4], mut index: usize) -> Site {
    let mut site = [0; 4];
    for mu in (0..4).rev() {
        site[mu] = index % dims[mu];
        index /= dims[mu];
    }
    site
}

/// True when every differentiated axis has a neighbour on both sides.
pub fn is_interior(dims: &[usize; 4], site: &Site) -> bool {
    (0..4).all(|mu| dims[mu] == 1 || (site[mu] > 0 && site[mu] + 1 < dims[mu]))
}

fn neighbours(dims: &[usize; 4], site: &Site, mu: usize) -> (usize, usize) {
    let mut up = *site;
    let mut down = *site;
    up[mu] += 1;
    down[mu] -= 1;
    (site_index(dims, &up), site_index(dims, &down))
}

impl FieldGrid {
    pub fn new(dims: [usize; 4], spacing: [f64; 4], values: Vec<ExtendedParams>) -> Result<Self> {
        validate_layout(&dims, &spacing, values.len())?;
        if let Some(i) = values.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite value at site {i}")));
        }
        Ok(Self { dims, spacing, values })
    }

    /// Sample `f` at x^μ = i_μ·spacing_μ.
    pub fn from_fn(
        dims: [usize; 4],
        spacing: [f64; 4],
        f: impl Fn([f64; 4]) -> ExtendedParams,
    ) -> Result<Self> {
        let values = (0..site_count(&dims))
            .map(|i| {
                let s = site_at(&dims, i);
                f(std::array::from_fn(|mu| s[mu] as f64 * spacing[mu]))
            })
            .collect();
        Self::new(dims, spacing, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Central-difference ∂_μ𝓜^s at an interior site.
    pub fn coordinate_derivatives(&self, site: &Site) -> [SVector<f64, 10>; 4] {
        let center = self.values[site_index(&self.dims, site)];
        std::array::from_fn(|mu| {
            if self.dims[mu] == 1 {
                return SVector::zeros();
            }
            let (up, down) = neighbours(&self.dims, site, mu);
            let cp = self.values[up].nearest_to(&center).coords();
            let cm = self.values[down].nearest_to(&center).coords();
            (cp - cm) / (2.0 * self.spacing[mu])
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SiteStatus {
    Computed,
    Boundary,
    IllConditioned { condition: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaugeField {
    pub dims: [usize; 4],
    pub values: Vec<SiteComponents>,
    pub status: Vec<SiteStatus>,
}

impl GaugeField {
    pub fn zeros(dims: [usize; 4]) -> Self {
        let n = site_count(&dims);
        Self {
            dims,
            values: vec![[[0.0; 10]; 4]; n],
            status: vec![SiteStatus::Computed; n],
        }
    }

    pub fn at(&self, site: &Site) -> &SiteComponents {
        &self.values[site_index(&self.dims, site)]
    }

    pub fn computed_sites(&self) -> impl Iterator<Item = usize> + '_ {
        self.status
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s, SiteStatus::Computed))
            .map(|(i, _)| i)
    }
}

/// a_μ^r with ∂_μ𝓜^s = a_μ^r Θ_r^s, plus an optional background A_μ^r(x: 1).
///
/// Boundary sites are flagged and left at zero; interior sites whose Θ has a
/// condition number above `tol.cond_max` are flagged with that number.
pub fn pure_gauge_component(
    grid: &FieldGrid,
    background: Option<&GaugeField>,
    tol: &Tolerances,
) -> Result<GaugeField> {
    if let Some(bg) = background {
        if bg.dims != grid.dims {
            return Err(Error::InvalidGrid("background dimensions differ from the grid".into()));
        }
    }
    let mut out = GaugeField::zeros(grid.dims);
    for i in 0..grid.len() {
        let site = site_at(&grid.dims, i);
        if !is_interior(&grid.dims, &site) {
            out.status[i] = SiteStatus::Boundary;
            continue;
        }
        let theta = theta_closed(&grid.values[i]);
        let condition = theta.condition_number();
        if !(condition <= tol.cond_max) {
            out.status[i] = SiteStatus::IllConditioned { condition };
            continue;
        }
        let lu = theta.0.transpose().lu();
        let derivs = grid.coordinate_derivatives(&site);
        for mu in 0..4 {
            let a = lu.solve(&derivs[mu]).ok_or(Error::IllConditioned(condition))?;
            for r in 0..10 {
                out.values[i][mu][r] = a[r] + background.map_or(0.0, |bg| bg.values[i][mu][r]);
            }
        }
    }
    Ok(out)
}

/// D_μ = 1·∂_μ − iA_μ^rX_r with its matrix part evaluated per site.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantDerivative {
    pub mu: usize,
    pub dims: [usize; 4],
    /// −iA_μ^rX_r; `None` where the gauge field was not computed.
    pub matrices: Vec<Option<Matrix4C>>,
}

pub fn covariant_derivative(a: &GaugeField, mu: usize) -> CovariantDerivative {
    assert!(mu < 4, "direction index {mu} out of range");
    let xs = generators();
    let matrices = a
        .values
        .iter()
        .zip(&a.status)
        .map(|(v, st)| {
            matches!(st, SiteStatus::Computed).then(|| {
                (0..10).fold(Matrix4C::zeros(), |acc, r| acc + xs[r] * (-I * v[mu][r]))
            })
        })
        .collect();
    CovariantDerivative { mu, dims: a.dims, matrices }
}

impl CovariantDerivative {
    /// D_μψ at every site where the matrix part exists and both neighbours
    /// along μ do too.
    pub fn apply(&self, psi: &[Spinor], spacing: f64) -> Vec<Option<Spinor>> {
        assert_eq!(psi.len(), self.matrices.len(), "spinor field size mismatch");
        (0..psi.len())
            .map(|i| {
                let m = self.matrices[i]?;
                let site = site_at(&self.dims, i);
                let deriv = if self.dims[self.mu] == 1 {
                    Spinor::zeros()
                } else {
                    if site[self.mu] == 0 || site[self.mu] + 1 >= self.dims[self.mu] {
                        return None;
                    }
                    let (up, down) = neighbours(&self.dims, &site, self.mu);
                    (psi[up] - psi[down]) / C64::new(2.0 * spacing, 0.0)
                };
                Some(deriv + m * psi[i])
            })
            .collect()
    }
}

/// δA_μ^r = ∂_μ(δ𝓜^r) + δ𝓜^s c_{sm}^r A_μ^m for a left multiplication by
/// exp(iδ𝓜^rX_r), evaluated where `a` is computed.
pub fn infinitesimal_gauge_delta(
    a: &GaugeField,
    delta: &[SVector<f64, 10>],
    spacing: [f64; 4],
    constants: &StructureConstants,
) -> Result<GaugeField> {
    validate_layout(&a.dims, &spacing, delta.len())?;
    let c = &constants.c;
    let mut out = GaugeField::zeros(a.dims);
    out.status.clone_from(&a.status);
    // c_{sm}^r contracted with δ𝓜^s, as a 10×10 map acting on A_μ^m
    for i in a.computed_sites().collect::<Vec<_>>() {
        let site = site_at(&a.dims, i);
        if !is_interior(&a.dims, &site) {
            out.status[i] = SiteStatus::Boundary;
            continue;
        }
        let mut adj = SMatrix::<f64, 10, 10>::zeros();
        for s in 0..10 {
            let d = delta[i][s];
            if d == 0.0 {
                continue;
            }
            for r in 0..10 {
                for m in 0..10 {
                    adj[(r, m)] += d * c[s][m][r];
                }
            }
        }
        for mu in 0..4 {
            let deriv = if a.dims[mu] == 1 {
                SVector::<f64, 10>::zeros()
            } else {
                let (up, down) = neighbours(&a.dims, &site, mu);
                (delta[up] - delta[down]) / (2.0 * spacing[mu])
            };
            let am = SVector::<f64, 10>::from_row_slice(&a.values[i][mu]);
            let inc = deriv + adj * am;
            out.values[i][mu].copy_from_slice(inc.as_slice());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generator;
    use crate::algebra::GeneratorIndex;
    use crate::extended::{Coords, DiracParams};
    use crate::lorentz::{BoostParams, RotationParams};
    use crate::structure::structure_constants_commutator;

    const DIMS: [usize; 4] = [3, 4, 3, 3];
    const H: [f64; 4] = [0.01; 4];

    #[test]
    fn site_indexing_round_trips() {
        for i in 0..site_count(&DIMS) {
            assert_eq!(site_index(&DIMS, &site_at(&DIMS, i)), i);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(FieldGrid::new([2, 3, 3, 3], H, vec![ExtendedParams::identity(); 54]).is_err());
        assert!(FieldGrid::new([3, 3, 3, 3], H, vec![ExtendedParams::identity(); 5]).is_err());
        assert!(FieldGrid::new([3, 3, 3, 3], [0.0, 1.0, 1.0, 1.0], vec![ExtendedParams::identity(); 81]).is_err());
    }

    #[test]
    fn constant_field_has_zero_connection() {
        let p = ExtendedParams::new(
            DiracParams::new(0.3, -0.2, 0.5, 0.1),
            BoostParams::new(0.4, 0.0, -0.3),
            RotationParams::new(0.2, 1.0, 0.0),
        );
        let grid = FieldGrid::from_fn(DIMS, H, |_| p).unwrap();
        let a = pure_gauge_component(&grid, None, &Tolerances::default()).unwrap();
        assert!(a.values.iter().flatten().flatten().all(|v| *v == 0.0));
        assert!(a.computed_sites().count() > 0);
        assert_eq!(a.status[0], SiteStatus::Boundary);
    }

    #[test]
    fn linear_ramp_near_identity() {
        let kappa = 1e-3;
        let grid = FieldGrid::from_fn(DIMS, H, |x| {
            ExtendedParams::new(DiracParams::identity(), BoostParams::identity(), RotationParams::new(0.0, 0.0, kappa * x[1]))
        })
        .unwrap();
        let a = pure_gauge_component(&grid, None, &Tolerances::default()).unwrap();
        for i in a.computed_sites() {
            let v = a.values[i];
            assert!((v[1][GeneratorIndex::J3.index()] - kappa).abs() < 1e-12);
            for r in 0..10 {
                if r != GeneratorIndex::J3.index() {
                    assert!(v[1][r].abs() < kappa * kappa);
                }
                assert_eq!(v[0][r], 0.0);
            }
        }
    }

    #[test]
    fn covariant_derivative_single_term() {
        let mut a = GaugeField::zeros([1, 1, 1, 1]);
        a.values[0][0][GeneratorIndex::G0.index()] = 0.7;
        let d = covariant_derivative(&a, 0);
        let expected = generator(GeneratorIndex::G0) * C64::new(0.0, -0.7);
        assert_eq!(d.matrices[0], Some(expected));

        let zero = covariant_derivative(&GaugeField::zeros([1, 1, 1, 1]), 2);
        assert_eq!(zero.matrices[0], Some(Matrix4C::zeros()));
        let psi = vec![Spinor::new(C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(2.0, 0.0))];
        assert_eq!(zero.apply(&psi, 1.0)[0], Some(Spinor::zeros()));
    }

    #[test]
    fn gauge_delta_trivial_cases() {
        let grid = FieldGrid::from_fn(DIMS, H, |x| {
            ExtendedParams::new(DiracParams::new(0.1 * x[0], 0.0, 0.0, 0.0), BoostParams::identity(), RotationParams::identity())
        })
        .unwrap();
        let a = pure_gauge_component(&grid, None, &Tolerances::default()).unwrap();
        let c = structure_constants_commutator();
        let zero = vec![Coords::zeros(); grid.len()];
        let inc = infinitesimal_gauge_delta(&a, &zero, H, &c).unwrap();
        assert!(inc.values.iter().flatten().flatten().all(|v| *v == 0.0));

        let constant = vec![Coords::from_element(0.01); grid.len()];
        let inc = infinitesimal_gauge_delta(&GaugeField::zeros(DIMS), &constant, H, &c).unwrap();
        assert!(inc.values.iter().flatten().flatten().all(|v| *v == 0.0));
    }
}
