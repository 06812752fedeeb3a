//! Complex potentials of planar polynomial fields.
//!
//! A planar HHD `F = -∇V + J∇H` is encoded as `W = 2(-V + iH)`, which
//! satisfies `dz̄/dt = ∂W/∂z`. Any two potentials of the same field differ by
//! a polynomial in `z̄` alone, and the HHD is strictly orthogonal iff
//! `|∂W/∂z|² = |∂W/∂z̄|²`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::wirtinger::{
    d_dz, d_dzbar, field_to_zpoly, integrate_dz, mod_squared_diff, zpoly_to_field,
    zpoly_to_real_parts, RealPoly2, ZPoly, ZERO_POLY_TOL,
};

/// Below this modulus `b` is treated as zero in the quadratic construction.
const B_ZERO_TOL: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarHhd {
    pub v: RealPoly2,
    pub h: RealPoly2,
    pub w: ZPoly,
    pub f: RealPoly2,
    pub g: RealPoly2,
}

impl PlanarHhd {
    /// Decomposition of `(f, g)` described by the complex potential `w`.
    pub fn from_potential(w: ZPoly, f: RealPoly2, g: RealPoly2) -> Self {
        let (v, h) = zpoly_to_real_parts(&w);
        Self { v, h, w, f, g }
    }

    /// `-∇V + J∇H` with `J∇H = (∂H/∂y, -∂H/∂x)`.
    pub fn reconstruct(&self) -> (RealPoly2, RealPoly2) {
        let f = self.v.d_dx().scale(-1.0).add(&self.h.d_dy());
        let g = self.v.d_dy().scale(-1.0).sub(&self.h.d_dx());
        (f, g)
    }

    /// Max coefficient error of the reconstructed field.
    pub fn reconstruction_error(&self) -> f64 {
        let (f, g) = self.reconstruct();
        f.sub(&self.f)
            .max_abs_coeff()
            .max(g.sub(&self.g).max_abs_coeff())
    }
}

/// Homogeneous quadratic field `f = p₁x² + q₁xy + r₁y²`, `g = p₂x² + q₂xy + r₂y²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadHomField {
    pub p1: f64,
    pub q1: f64,
    pub r1: f64,
    pub p2: f64,
    pub q2: f64,
    pub r2: f64,
}

impl QuadHomField {
    pub fn new(coeffs: [f64; 6]) -> Self {
        let [p1, q1, r1, p2, q2, r2] = coeffs;
        Self {
            p1,
            q1,
            r1,
            p2,
            q2,
            r2,
        }
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.p1, self.q1, self.r1, self.p2, self.q2, self.r2]
    }

    pub fn to_polys(&self) -> (RealPoly2, RealPoly2) {
        (
            RealPoly2::from_terms([(2, 0, self.p1), (1, 1, self.q1), (0, 2, self.r1)]),
            RealPoly2::from_terms([(2, 0, self.p2), (1, 1, self.q2), (0, 2, self.r2)]),
        )
    }

    /// `(a, b, c)` with `az² + b|z|² + cz̄² = f - ig`.
    pub fn complex_coefficients(&self) -> (Complex64, Complex64, Complex64) {
        let Self {
            p1,
            q1,
            r1,
            p2,
            q2,
            r2,
        } = *self;
        let a = Complex64::new(p1 - q2 - r1, -p2 - q1 + r2) / 4.0;
        let b = Complex64::new(p1 + r1, -(p2 + r2)) / 2.0;
        let c = Complex64::new(p1 + q2 - r1, -p2 + q1 + r2) / 4.0;
        (a, b, c)
    }

    /// Inverse of [`Self::complex_coefficients`].
    pub fn from_complex_coefficients(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self {
            p1: a.re + b.re + c.re,
            q1: 2.0 * (c.im - a.im),
            r1: -a.re + b.re - c.re,
            p2: -(a.im + b.im + c.im),
            q2: -2.0 * (a.re - c.re),
            r2: a.im - b.im + c.im,
        }
    }

    fn max_coeff(&self) -> f64 {
        self.coefficients().iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `W₀ = ∫ (f - ig) dz`; an HHD, not necessarily strictly orthogonal.
pub fn complex_potential(f: &RealPoly2, g: &RealPoly2) -> PlanarHhd {
    let w = integrate_dz(&field_to_zpoly(f, g));
    PlanarHhd::from_potential(w, f.clone(), g.clone())
}

/// `W + φ(z̄)`; `phi` must not contain `z`.
pub fn gauge_shift(d: &PlanarHhd, phi: &ZPoly) -> Result<PlanarHhd> {
    if let Some((m, k, _)) = phi.terms().find(|&(m, _, _)| m > 0) {
        return Err(Error::NotAntiholomorphic { m, k });
    }
    Ok(PlanarHhd::from_potential(
        d.w.add(phi),
        d.f.clone(),
        d.g.clone(),
    ))
}

/// `∇V · J∇H = V_x H_y - V_y H_x`; the zero polynomial iff strictly orthogonal.
pub fn strict_orthogonality_defect(d: &PlanarHhd) -> RealPoly2 {
    d.v.d_dx()
        .mul(&d.h.d_dy())
        .sub(&d.v.d_dy().mul(&d.h.d_dx()))
}

/// Same polynomial as [`strict_orthogonality_defect`], computed as
/// `(|∂W/∂z̄|² - |∂W/∂z|²)/4`.
pub fn defect_from_potential(w: &ZPoly) -> RealPoly2 {
    let (re, _) = mod_squared_diff(w)
        .scale(Complex64::new(-0.25, 0.0))
        .to_real_imag();
    re
}

/// Strictly orthogonal HHD of the linear field `f - ig = az + bz̄`.
pub fn solve_linear_planar(a: Complex64, b: Complex64) -> PlanarHhd {
    let field = ZPoly::from_terms([(1, 0, a), (0, 1, b)]);
    let w0 = integrate_dz(&field);
    let phi_coeff = if b.norm() <= B_ZERO_TOL {
        a / 2.0
    } else {
        a.conj() * b / (2.0 * b.conj())
    };
    let w = w0.add(&ZPoly::monomial(0, 2, phi_coeff));
    let (f, g) = zpoly_to_field(&field);
    PlanarHhd::from_potential(w, f, g)
}

/// `q₁² - 2(p₂-r₂)q₁ - 4p₂r₂ + q₂² + 2(p₁-r₁)q₂ - 4p₁r₁`; equals `16|c|² - 4|b|²`.
pub fn quadratic_condition(q: &QuadHomField) -> f64 {
    let QuadHomField {
        p1,
        q1,
        r1,
        p2,
        q2,
        r2,
    } = *q;
    q1 * q1 - 2.0 * (p2 - r2) * q1 - 4.0 * p2 * r2 + q2 * q2 + 2.0 * (p1 - r1) * q2 - 4.0 * p1 * r1
}

/// Scale-aware test `|condition| ≤ 1e-9·(1 + max|coeff|²)`.
pub fn quadratic_condition_holds(q: &QuadHomField) -> bool {
    let m = q.max_coeff();
    quadratic_condition(q).abs() <= 1e-9 * (1.0 + m * m)
}

/// Strictly orthogonal HHD of a homogeneous quadratic field via the cubic
/// ansatz `W = W₀ + C z̄³`.
pub fn solve_quadratic(q: &QuadHomField) -> Result<PlanarHhd> {
    let value = quadratic_condition(q);
    if !quadratic_condition_holds(q) {
        return Err(Error::QuadraticCondition { value });
    }
    let (a, b, c) = q.complex_coefficients();
    let (f, g) = q.to_polys();
    let w0 = ZPoly::from_terms([(3, 0, a / 3.0), (2, 1, b / 2.0), (1, 2, c)]);
    let big_c = if b.norm() > B_ZERO_TOL * (1.0 + q.max_coeff()) {
        2.0 * a.conj() * c / (3.0 * b.conj())
    } else {
        // |az² + cz̄²| = |2c|z|² + 3Cz̄²| forces c = 0 and |C| = |a|/3
        if c.norm() > ZERO_POLY_TOL * (1.0 + q.max_coeff()) {
            return Err(Error::QuadraticDegenerate { c_abs: c.norm() });
        }
        a.conj() / 3.0
    };
    let w = w0.add(&ZPoly::monomial(0, 3, big_c));
    Ok(PlanarHhd::from_potential(w, f, g))
}

/// `Ẇ = |∂W/∂z|² + ∂W/∂z̄ · ∂W/∂z` at `z`.
pub fn orbital_derivative_w(d: &PlanarHhd, z: Complex64) -> Complex64 {
    let wz = d_dz(&d.w).evaluate(z);
    let wzb = d_dzbar(&d.w).evaluate(z);
    wz.norm_sqr() + wzb * wz
}

/// `W₁ - W₂` restricted to terms containing `z`; empty iff the two
/// potentials differ by an antiholomorphic gauge.
pub fn gauge_difference_z_part(w1: &ZPoly, w2: &ZPoly) -> f64 {
    w1.sub(w2).max_z_bearing_coeff()
}
