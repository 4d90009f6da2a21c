//! The theta-function generators at special points and against each other.

use e8jacobi_core::graded_ring::{upper, AB, p165, p165_over_e4_in_ab, sub_upper_to_ab, Poly};
use e8jacobi_oracle::checks::{random_tau, random_z};
use e8jacobi_oracle::complex::relative_residual;
use e8jacobi_oracle::forms::{eval_upper, theta_e8, theta_e8_lattice};
use e8jacobi_oracle::special::{eisenstein, e4_zero};
use e8jacobi_oracle::{eval_ab, eval_AB, eval_poly, ComplexSample, Cx, EvalContext, OracleError, PointEval};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx() -> EvalContext {
    EvalContext::default()
}

#[test]
fn generators_reduce_to_eisenstein_series_at_the_origin() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let s = ComplexSample::at_origin(random_tau(&mut rng, c.bits())).unwrap();
        let e4 = eisenstein(4, &s.tau, &c).unwrap();
        let e6 = eisenstein(6, &s.tau, &c).unwrap();
        for name in ["A1", "A2", "A3", "A4", "A5"] {
            let v = eval_AB(name, &s, &c).unwrap();
            assert!(relative_residual(&v, &e4) < c.tolerance, "{name}: {:?} vs {:?}", v, e4);
        }
        for name in ["B2", "B3", "B4", "B6"] {
            let v = eval_AB(name, &s, &c).unwrap();
            assert!(relative_residual(&v, &e6) < c.tolerance, "{name}: {:?} vs {:?}", v, e6);
        }
    }
}

#[test]
fn theta_product_matches_lattice_sum() {
    let c = ctx();
    let p = c.bits();
    let tau = Cx::from_f64(0.0, 3.0, p);
    let zero: [Cx; 8] = std::array::from_fn(|_| Cx::zero(p));
    let a = theta_e8(&tau, &zero, &c).unwrap();
    let b = theta_e8_lattice(&tau, &zero, 8, &c);
    assert!(relative_residual(&a, &b) < c.tolerance);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let z = random_z(&mut rng, p);
    let a = theta_e8(&tau, &z, &c).unwrap();
    let b = theta_e8_lattice(&tau, &z, 8, &c);
    assert!(relative_residual(&a, &b) < c.tolerance, "{a:?} vs {b:?}");
}

#[test]
fn generators_roundtrip_through_the_meromorphic_basis() {
    // each A_m, B_m rewritten over ab and evaluated there
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..3 {
        let s = ComplexSample::new(random_tau(&mut rng, c.bits()), random_z(&mut rng, c.bits())).unwrap();
        let pe = PointEval::new(&s, &c);
        for i in 0..11 {
            let direct = pe.upper(i).unwrap();
            let lowered = sub_upper_to_ab(&Poly::generator(&AB, i)).unwrap();
            let via = pe.poly(&lowered).unwrap();
            assert!(relative_residual(&direct, &via) < c.tolerance, "{}", AB.symbol(i));
        }
        // A1 = -E4 b1 / 4
        let b1 = eval_ab("b1", &s, &c).unwrap();
        let e4 = pe.upper(upper::E4).unwrap();
        let a1 = &(&e4 * &b1) / &Cx::from_i64(-4, c.bits());
        assert!(relative_residual(&a1, &pe.upper(upper::A1).unwrap()) < c.tolerance);
    }
}

#[test]
fn b1_at_the_origin_is_minus_four() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let s = ComplexSample::at_origin(random_tau(&mut rng, c.bits())).unwrap();
    let v = eval_ab("b1", &s, &c).unwrap();
    assert!(relative_residual(&v, &Cx::from_i64(-4, c.bits())) < c.tolerance);
}

#[test]
fn p165_is_e4_times_its_lower_form() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = ComplexSample::new(random_tau(&mut rng, c.bits()), random_z(&mut rng, c.bits())).unwrap();
    let pe = PointEval::new(&s, &c);
    let lhs = pe.poly(&p165()).unwrap();
    let rhs = &pe.poly(p165_over_e4_in_ab()).unwrap() * &pe.upper(upper::E4).unwrap();
    assert!(relative_residual(&lhs, &rhs) < c.tolerance);
    let e4 = eval_poly(&Poly::generator(&AB, upper::E4), &s, &c).unwrap();
    assert!(relative_residual(&e4, &eisenstein(4, &s.tau, &c).unwrap()) < c.tolerance);
}

#[test]
fn meromorphic_generators_are_singular_at_the_e4_zero() {
    let c = ctx();
    let rho = e4_zero(&c).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s = ComplexSample::new(rho, random_z(&mut rng, c.bits())).unwrap();
    match eval_ab("a2", &s, &c) {
        Err(OracleError::NearSingular { .. }) => {}
        other => panic!("expected a near-singular report, got {other:?}"),
    }
    assert!(eval_upper(upper::A2, &s, &c).is_ok());
}

#[test]
fn delta_polynomial_is_eta_to_the_24() {
    let c = ctx();
    let s = ComplexSample::at_origin(Cx::from_f64(0.0, 2.0, c.bits())).unwrap();
    let d = eval_poly(&e8jacobi_core::graded_ring::delta_polynomial(), &s, &c).unwrap();
    let eta = e8jacobi_oracle::special::eta(&s.tau, &c).unwrap().powi(24);
    assert!(relative_residual(&d, &eta) < 1e-10);
}
