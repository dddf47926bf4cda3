use proptest::prelude::*;
use xlorentz::algebra::{clifford_project, frobenius, gamma, pauli};
use xlorentz::extended::{compose_extended, distance_mod_cover, extended_matrix, inverse_extended};
use xlorentz::lorentz::{compose_lorentz, levi_civita, lorentz_matrix};
use xlorentz::{
    BoostParams, DiracParams, Error, ExtendedParams, LorentzParams, Matrix4C, RotationParams, Tolerances, C64,
};

fn rotation() -> impl Strategy<Value = RotationParams> {
    prop::array::uniform3(-4.0..4.0f64).prop_map(|[x, y, z]| RotationParams::new(x, y, z))
}

fn boost() -> impl Strategy<Value = BoostParams> {
    prop::array::uniform3(-3.0..3.0f64).prop_map(|[x, y, z]| BoostParams::new(x, y, z))
}

fn dirac() -> impl Strategy<Value = DiracParams> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(|[a, b, c, d]| DiracParams::new(a, b, c, d))
}

fn extended() -> impl Strategy<Value = ExtendedParams> {
    (dirac(), boost(), rotation()).prop_map(|(w, u, t)| ExtendedParams::new(w, u, t))
}

fn rel(a: &Matrix4C, b: &Matrix4C) -> f64 {
    frobenius(&(a - b)) / frobenius(b).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_elements_have_unit_determinant(p in extended()) {
        let det = extended_matrix(&p).unwrap().determinant();
        prop_assert!((det - C64::new(1.0, 0.0)).norm() < 1e-10 * frobenius(&extended_matrix(&p).unwrap()).powi(4).max(1.0));
    }

    #[test]
    fn lorentz_composition_is_closed(p2 in (boost(), rotation()), p1 in (boost(), rotation())) {
        let (p2, p1) = (LorentzParams::new(p2.0, p2.1), LorentzParams::new(p1.0, p1.1));
        let direct = lorentz_matrix(&p2) * lorentz_matrix(&p1);
        prop_assert!(rel(&lorentz_matrix(&compose_lorentz(&p2, &p1)), &direct) < 1e-12);
    }

    #[test]
    fn composition_reproduces_products_or_reports_the_chart(p2 in extended(), p1 in extended()) {
        let tol = Tolerances::default();
        let direct = extended_matrix(&p2).unwrap() * extended_matrix(&p1).unwrap();
        match compose_extended(&p2, &p1, &tol) {
            Ok(p) => prop_assert!(rel(&extended_matrix(&p).unwrap(), &direct) < 1e-9),
            Err(Error::OutsideChart { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e:?}"),
        }
    }

    #[test]
    fn composition_is_associative_where_defined(a in extended(), b in extended(), c in extended()) {
        let tol = Tolerances::default();
        let left = compose_extended(&a, &b, &tol).and_then(|ab| compose_extended(&ab, &c, &tol));
        let right = compose_extended(&b, &c, &tol).and_then(|bc| compose_extended(&a, &bc, &tol));
        if let (Ok(l), Ok(r)) = (left, right) {
            prop_assert!(rel(&extended_matrix(&l).unwrap(), &extended_matrix(&r).unwrap()) < 1e-8);
        }
    }

    #[test]
    fn inverse_round_trips(p in extended()) {
        let tol = Tolerances::default();
        let q = compose_extended(&inverse_extended(&p), &p, &tol).unwrap();
        prop_assert!(distance_mod_cover(&q, &ExtendedParams::identity()) < 1e-9);
    }

    #[test]
    fn canonical_form_is_idempotent_and_keeps_the_matrix(p in extended()) {
        let c = p.canonical();
        prop_assert_eq!(c.canonical(), c);
        prop_assert!(rel(&extended_matrix(&c).unwrap(), &extended_matrix(&p).unwrap()) < 1e-12);
    }

    #[test]
    fn clifford_projection_round_trips(entries in prop::collection::vec(-5.0..5.0f64, 32)) {
        let m = Matrix4C::from_fn(|i, j| C64::new(entries[8 * i + 2 * j], entries[8 * i + 2 * j + 1]));
        prop_assert!(frobenius(&(clifford_project(&m).reconstruct() - m)) < 1e-13);
    }
}

#[test]
fn pauli_products() {
    let i = C64::new(0.0, 1.0);
    for a in 1..=3 {
        for b in 1..=3 {
            let mut expected = if a == b { nalgebra::Matrix2::identity() } else { nalgebra::Matrix2::zeros() };
            for c in 1..=3 {
                expected += pauli(c).unwrap() * (i * levi_civita(a - 1, b - 1, c - 1));
            }
            assert_eq!(pauli(a).unwrap() * pauli(b).unwrap(), expected);
        }
    }
    assert!(pauli(0).is_err() && pauli(4).is_err());
}

#[test]
fn clifford_anticommutator() {
    let eta = [-1.0, 1.0, 1.0, 1.0];
    for mu in 0..4 {
        for nu in 0..4 {
            let anti = gamma(mu) * gamma(nu) + gamma(nu) * gamma(mu);
            let expected = if mu == nu { Matrix4C::identity() * C64::new(-2.0 * eta[mu], 0.0) } else { Matrix4C::zeros() };
            assert_eq!(anti, expected, "mu={mu} nu={nu}");
        }
    }
}
