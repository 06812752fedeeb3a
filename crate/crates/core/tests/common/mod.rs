//! Generators and independent oracles shared by the integration tests.
//!
//! Nothing here calls into the decomposition routines under test; matrix
//! products and polynomial calculus are redone with plain loops.

#![allow(dead_code)]

use hhd_core::{RealMatrix, RealPoly2};
use num_complex::Complex64;
use rand::Rng;

pub fn mat(rows: &[&[f64]]) -> RealMatrix {
    RealMatrix::from_rows(rows).unwrap()
}

pub fn matmul(a: &RealMatrix, b: &RealMatrix) -> RealMatrix {
    let n = a.dim();
    RealMatrix::from_fn(n, |i, j| (0..n).map(|k| a[(i, k)] * b[(k, j)]).sum())
}

pub fn transpose(a: &RealMatrix) -> RealMatrix {
    RealMatrix::from_fn(a.dim(), |i, j| a[(j, i)])
}

pub fn max_abs_diff(a: &RealMatrix, b: &RealMatrix) -> f64 {
    a.entries()
        .iter()
        .zip(b.entries())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn random_matrix(rng: &mut impl Rng, n: usize, range: f64) -> RealMatrix {
    RealMatrix::from_fn(n, |_, _| rng.gen_range(-range..=range))
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize, range: f64) -> RealMatrix {
    let m = random_matrix(rng, n, range);
    RealMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

pub fn random_skew(rng: &mut impl Rng, n: usize, range: f64) -> RealMatrix {
    let m = random_matrix(rng, n, range);
    RealMatrix::from_fn(n, |i, j| 0.5 * (m[(i, j)] - m[(j, i)]))
}

/// `MMᵀ + n·I`: symmetric positive definite and well conditioned.
pub fn random_spd(rng: &mut impl Rng, n: usize) -> RealMatrix {
    let m = random_matrix(rng, n, 1.0);
    let mut s = matmul(&m, &transpose(&m));
    for i in 0..n {
        s[(i, i)] += n as f64;
    }
    s
}

/// Modified Gram–Schmidt on the columns of a random matrix.
pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> RealMatrix {
    loop {
        let m = random_matrix(rng, n, 1.0);
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|j| (0..n).map(|i| m[(i, j)]).collect())
            .collect();
        let mut ok = true;
        for j in 0..n {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let (cj, ck) = (&mut rest[0], &done[k]);
                let d: f64 = cj.iter().zip(ck).map(|(a, b)| a * b).sum();
                cj.iter_mut().zip(ck).for_each(|(a, b)| *a -= d * b);
            }
            let norm = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 1e-3 {
                ok = false;
                break;
            }
            cols[j].iter_mut().for_each(|v| *v /= norm);
        }
        if ok {
            return RealMatrix::from_fn(n, |i, j| cols[j][i]);
        }
    }
}

/// `S B Sᵀ` with `B` block diagonal: 1×1 real blocks and 2×2 blocks
/// `[[a, b], [-b, a]]`. Always normal.
pub fn random_normal(rng: &mut impl Rng, n: usize, range: f64) -> RealMatrix {
    let mut b = RealMatrix::zeros(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && rng.gen_bool(0.6) {
            let (re, im) = (rng.gen_range(-range..=range), rng.gen_range(-range..=range));
            b[(i, i)] = re;
            b[(i + 1, i + 1)] = re;
            b[(i, i + 1)] = im;
            b[(i + 1, i)] = -im;
            i += 2;
        } else {
            b[(i, i)] = rng.gen_range(-range..=range);
            i += 1;
        }
    }
    let s = random_orthogonal(rng, n);
    matmul(&matmul(&s, &b), &transpose(&s))
}

/// `‖AᵀA - AAᵀ‖_max` computed directly.
pub fn normality_defect(a: &RealMatrix) -> f64 {
    let at = transpose(a);
    max_abs_diff(&matmul(&at, a), &matmul(a, &at))
}

/// Random real polynomial with every monomial of total degree ≤ `deg`.
pub fn random_real_poly(rng: &mut impl Rng, deg: u32, range: f64) -> RealPoly2 {
    let mut terms = Vec::new();
    for d in 0..=deg {
        for i in 0..=d {
            terms.push((i, d - i, rng.gen_range(-range..=range)));
        }
    }
    RealPoly2::from_terms(terms)
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Real and imaginary parts of `Σ a_k (x + iy)^k` by binomial expansion.
pub fn holomorphic_parts(coeffs: &[Complex64]) -> (RealPoly2, RealPoly2) {
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (k, a) in coeffs.iter().enumerate() {
        let k = k as u32;
        for j in 0..=k {
            // C(k,j) x^{k-j} (iy)^j, i^j cycles through 1, i, -1, -i
            let c = binomial(k, j);
            let ij = match j % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            let t = a * ij * c;
            re.push((k - j, j, t.re));
            im.push((k - j, j, t.im));
        }
    }
    (RealPoly2::from_terms(re), RealPoly2::from_terms(im))
}

/// `∫₀ˣ p(t, y) dt`.
pub fn integrate_x(p: &RealPoly2) -> RealPoly2 {
    RealPoly2::from_terms(p.terms().map(|(i, j, c)| (i + 1, j, c / (i + 1) as f64)))
}

/// `∫₀ʸ p(x, s) ds`.
pub fn integrate_y(p: &RealPoly2) -> RealPoly2 {
    RealPoly2::from_terms(p.terms().map(|(i, j, c)| (i, j + 1, c / (j + 1) as f64)))
}

/// Polynomial `u` with `Δu = r`: `Σ_k (-1)^k (I_x² ∂_y²)^k I_x² r`, which
/// terminates because each pass lowers the y-degree by two.
pub fn poisson_particular(r: &RealPoly2) -> RealPoly2 {
    let mut term = integrate_x(&integrate_x(r));
    let mut total = RealPoly2::zero();
    let mut sign = 1.0;
    while !term.is_empty() {
        total = total.add(&term.scale(sign));
        term = integrate_x(&integrate_x(&term.d_dy().d_dy()));
        sign = -sign;
    }
    total
}

/// An HHD `(V, H)` of `(f, g)` built in real coordinates only:
/// `ΔH = f_y - g_x`, then `V` is the line integral of `(H_y - f, -H_x - g)`
/// from the origin along the axes.
pub fn real_coordinate_hhd(f: &RealPoly2, g: &RealPoly2) -> (RealPoly2, RealPoly2) {
    let h = poisson_particular(&f.d_dy().sub(&g.d_dx()));
    let vx = h.d_dy().sub(f);
    let vy = h.d_dx().scale(-1.0).sub(g);
    // V(x, y) = ∫₀ˣ V_x(t, 0) dt + ∫₀ʸ V_y(x, s) ds
    let vx_on_axis = RealPoly2::from_terms(vx.terms().filter(|&(_, j, _)| j == 0));
    let v = integrate_x(&vx_on_axis).add(&integrate_y(&vy));
    (v, h)
}
