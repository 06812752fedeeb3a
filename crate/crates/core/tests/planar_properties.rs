mod common;

use common::*;
use hhd_core::linear::{is_strictly_orthogonal, solve_2x2};
use hhd_core::planar::{
    complex_potential, defect_from_potential, gauge_difference_z_part, gauge_shift,
    orbital_derivative_w, quadratic_condition, solve_linear_planar, solve_quadratic,
    strict_orthogonality_defect, QuadHomField,
};
use hhd_core::sde::{hhd_to_sde, sde_to_hhd, SdeDecomposition};
use hhd_core::wirtinger::{
    conjugate, d_dz, d_dzbar, field_to_zpoly, integrate_dz, zpoly_to_field, zpoly_to_real_parts,
};
use hhd_core::{RealMatrix, RealPoly2, ZPoly};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zpoly(max_deg: u32) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(
        (0..=max_deg, 0..=max_deg, -5.0..=5.0f64, -5.0..=5.0f64),
        0..12,
    )
    .prop_map(move |terms| {
        ZPoly::from_terms(
            terms
                .into_iter()
                .filter(|&(m, k, _, _)| m + k <= max_deg)
                .map(|(m, k, re, im)| (m, k, Complex64::new(re, im))),
        )
    })
}

fn real_poly(max_deg: u32) -> impl Strategy<Value = RealPoly2> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -5.0..=5.0f64), 0..12).prop_map(move |terms| {
        RealPoly2::from_terms(terms.into_iter().filter(|&(i, j, _)| i + j <= max_deg))
    })
}

fn quad_field() -> impl Strategy<Value = QuadHomField> {
    prop::array::uniform6(-5.0..=5.0f64).prop_map(QuadHomField::new)
}

/// Fields on the condition surface `4|c| = 2|b|`.
fn quad_field_on_surface() -> impl Strategy<Value = QuadHomField> {
    (
        prop::array::uniform4(-3.0..=3.0f64),
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|([ar, ai, br, bi], phase)| {
            let b = Complex64::new(br, bi);
            let c = Complex64::from_polar(b.norm() / 2.0, phase);
            QuadHomField::from_complex_coefficients(Complex64::new(ar, ai), b, c)
        })
}

fn poly_diff(a: &RealPoly2, b: &RealPoly2) -> f64 {
    a.sub(b).max_abs_coeff()
}

proptest! {
    // wirtinger calculus

    #[test]
    fn d_dz_inverts_integration(w in zpoly(6)) {
        // c/(m+1)·(m+1) is exact only up to one rounding per coefficient
        let back = d_dz(&integrate_dz(&w));
        prop_assert!(back.sub(&w).max_abs_coeff() <= 1e-15 * w.max_abs_coeff());
    }

    #[test]
    fn conjugation_is_an_involution(w in zpoly(6)) {
        prop_assert_eq!(conjugate(&conjugate(&w)), w);
    }

    #[test]
    fn conjugate_swaps_wirtinger_derivatives(w in zpoly(6)) {
        prop_assert_eq!(d_dzbar(&conjugate(&w)), conjugate(&d_dz(&w)));
    }

    #[test]
    fn potential_reproduces_its_field(w in zpoly(5)) {
        // f - ig of -∇V + J∇H, built from the real parts, equals ∂W/∂z
        let (v, h) = zpoly_to_real_parts(&w);
        let f = v.d_dx().scale(-1.0).add(&h.d_dy());
        let g = v.d_dy().scale(-1.0).sub(&h.d_dx());
        let (wf, wg) = zpoly_to_field(&d_dz(&w));
        prop_assert!(poly_diff(&f, &wf) <= 1e-10);
        prop_assert!(poly_diff(&g, &wg) <= 1e-10);
    }

    #[test]
    fn harmonic_fields_have_holomorphic_potentials(
        coeffs in prop::collection::vec((-3.0..=3.0f64, -3.0..=3.0f64), 1..6)
    ) {
        let coeffs: Vec<Complex64> = coeffs.into_iter().map(|(r, i)| Complex64::new(r, i)).collect();
        let (re, im) = holomorphic_parts(&coeffs);
        let (f, g) = (re, im.scale(-1.0));
        // oracle sanity: divergence and rotation vanish
        prop_assert!(f.d_dx().add(&g.d_dy()).is_zero(1e-9));
        prop_assert!(g.d_dx().sub(&f.d_dy()).is_zero(1e-9));
        let w = integrate_dz(&field_to_zpoly(&f, &g));
        prop_assert!(w.max_zbar_bearing_coeff() <= 1e-9);
        prop_assert!(complex_potential(&f, &g).w.max_zbar_bearing_coeff() <= 1e-9);
    }

    // planar decompositions

    #[test]
    fn complex_potential_reconstructs((f, g) in (real_poly(5), real_poly(5))) {
        let d = complex_potential(&f, &g);
        prop_assert!(d.reconstruction_error() <= 1e-10);
        // ∇·(J∇H) = H_yx - H_xy = 0
        let div = d.h.d_dy().d_dx().sub(&d.h.d_dx().d_dy());
        prop_assert!(div.is_empty());
    }

    #[test]
    fn defect_routes_agree((f, g) in (real_poly(4), real_poly(4))) {
        let d = complex_potential(&f, &g);
        let direct = strict_orthogonality_defect(&d);
        let via_w = defect_from_potential(&d.w);
        prop_assert!(poly_diff(&direct, &via_w) <= 1e-9 * (1.0 + direct.max_abs_coeff()));
    }

    #[test]
    fn gauge_shift_keeps_field(
        (f, g) in (real_poly(4), real_poly(4)),
        phi in prop::collection::vec((-3.0..=3.0f64, -3.0..=3.0f64), 0..5),
    ) {
        let phi = ZPoly::from_terms(
            phi.into_iter().enumerate().map(|(k, (r, i))| (0, k as u32, Complex64::new(r, i))),
        );
        let d = complex_potential(&f, &g);
        let shifted = gauge_shift(&d, &phi).unwrap();
        prop_assert!(shifted.reconstruction_error() <= 1e-10);
        prop_assert!(gauge_difference_z_part(&shifted.w, &d.w) == 0.0);
    }

    #[test]
    fn gauge_against_real_coordinate_oracle((f, g) in (real_poly(4), real_poly(4))) {
        let (v, h) = real_coordinate_hhd(&f, &g);
        // oracle sanity: it is an HHD of (f, g)
        prop_assert!(poly_diff(&v.d_dx().scale(-1.0).add(&h.d_dy()), &f) <= 1e-9);
        prop_assert!(poly_diff(&v.d_dy().scale(-1.0).sub(&h.d_dx()), &g) <= 1e-9);
        let w_oracle = ZPoly::from_real_imag(&v.scale(-2.0), &h.scale(2.0));
        let w = complex_potential(&f, &g).w;
        prop_assert!(gauge_difference_z_part(&w, &w_oracle) <= 1e-10);
    }

    #[test]
    fn quadratic_success_means_zero_defect(q in quad_field()) {
        if let Ok(d) = solve_quadratic(&q) {
            prop_assert!(strict_orthogonality_defect(&d).max_abs_coeff() <= 1e-9);
            prop_assert!(d.reconstruction_error() <= 1e-10);
        }
    }

    #[test]
    fn condition_surface_is_solvable(q in quad_field_on_surface()) {
        let m = q.coefficients().iter().fold(0.0f64, |a, v| a.max(v.abs()));
        prop_assert!(quadratic_condition(&q).abs() <= 1e-9 * (1.0 + m * m));
        let d = solve_quadratic(&q).unwrap();
        prop_assert!(strict_orthogonality_defect(&d).max_abs_coeff() <= 1e-9 * (1.0 + m * m));
        prop_assert!(d.reconstruction_error() <= 1e-10 * (1.0 + m));
    }

    #[test]
    fn orbital_derivative_matches_finite_differences(
        (f, g) in (real_poly(3), real_poly(3)),
        x in -1.0..=1.0f64,
        y in -1.0..=1.0f64,
    ) {
        let d = complex_potential(&f, &g);
        let z = Complex64::new(x, y);
        let zdot = Complex64::new(f.evaluate(x, y), g.evaluate(x, y));
        let h = 1e-5;
        let fd = (d.w.evaluate(z + zdot * h) - d.w.evaluate(z - zdot * h)) / (2.0 * h);
        let exact = orbital_derivative_w(&d, z);
        prop_assert!((fd - exact).norm() <= 1e-6 * (1.0 + exact.norm()));
    }

    #[test]
    fn linear_planar_agrees_with_matrix_route(
        [ar, ai, br, bi] in prop::array::uniform4(-3.0..=3.0f64)
    ) {
        // f - ig = az + bz̄ as a matrix field
        let a_mat = mat(&[&[ar + br, bi - ai], &[-(ai + bi), br - ar]]);
        prop_assume!((a_mat[(0, 0)] + a_mat[(1, 1)]).abs() > 0.1);
        prop_assume!((a_mat[(0, 1)] - a_mat[(1, 0)]).abs() > 0.1);
        let planar = solve_linear_planar(Complex64::new(ar, ai), Complex64::new(br, bi));
        let (f, g) = (&planar.f, &planar.g);
        prop_assert!((f.coeff(1, 0) - a_mat[(0, 0)]).abs() < 1e-12);
        prop_assert!((g.coeff(0, 1) - a_mat[(1, 1)]).abs() < 1e-12);
        prop_assert!(strict_orthogonality_defect(&planar).is_zero(1e-9));
        let p = solve_2x2(&a_mat).unwrap().p;
        let v = RealPoly2::from_terms([
            (2, 0, 0.5 * p[(0, 0)]),
            (1, 1, p[(0, 1)]),
            (0, 2, 0.5 * p[(1, 1)]),
        ]);
        prop_assert!(poly_diff(&planar.v, &v) <= 1e-9);
    }

    // sde bridge

    #[test]
    fn sde_round_trip(seed in any::<u64>(), n in 2usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = loop {
            let u = random_symmetric(&mut rng, n, 3.0);
            if u.condition_number() < 1e6 {
                break u;
            }
        };
        let q = random_skew(&mut rng, n, 3.0);
        let s = SdeDecomposition::new(RealMatrix::identity(n), q, u).unwrap();
        prop_assert!(s.trace_qu().abs() <= 1e-12 * (1.0 + s.q.max_abs() * s.u.max_abs()));
        let d = sde_to_hhd(&s).unwrap();
        prop_assert!(is_strictly_orthogonal(&d, 1e-8 * (1.0 + d.a.max_abs().powi(2))));
        let back = sde_to_hhd(&hhd_to_sde(&d).unwrap()).unwrap();
        prop_assert!(back.p.distance(&d.p) <= 1e-8 * (1.0 + d.p.max_abs()));
        prop_assert!(back.h.distance(&d.h) <= 1e-8 * (1.0 + d.h.max_abs()));
    }

    #[test]
    fn trace_qu_vanishes(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_spd(&mut rng, n);
        let q = random_skew(&mut rng, n, 4.0);
        let u = random_symmetric(&mut rng, n, 4.0);
        let s = SdeDecomposition::new(d, q, u).unwrap();
        prop_assert!(s.trace_qu().abs() <= 1e-12 * 100.0);
    }
}

#[test]
fn random_degree_four_fields_gauge_consistently() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let deg = rng.gen_range(1..=4);
        let f = random_real_poly(&mut rng, deg, 3.0);
        let g = random_real_poly(&mut rng, deg, 3.0);
        let (v, h) = real_coordinate_hhd(&f, &g);
        let w_oracle = ZPoly::from_real_imag(&v.scale(-2.0), &h.scale(2.0));
        let w = complex_potential(&f, &g).w;
        assert!(gauge_difference_z_part(&w, &w_oracle) <= 1e-10);
    }
}
