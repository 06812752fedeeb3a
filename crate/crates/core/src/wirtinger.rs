//! Polynomials in `z`, `z̄` with complex coefficients, and real bivariate
//! polynomials in `x`, `y`.
//!
//! On polynomials the Wirtinger derivatives are formal partial derivatives
//! that treat `z` and `z̄` as independent variables. Conversions between the
//! two coordinate systems use `x = (z + z̄)/2`, `y = (z - z̄)/(2i)` and
//! `z = x + iy`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients with modulus at or below this are dropped.
pub const PRUNE_TOL: f64 = 1e-14;

/// Max-abs coefficient threshold for "is the zero polynomial".
pub const ZERO_POLY_TOL: f64 = 1e-10;

type Key = (u32, u32);
type CMap = BTreeMap<Key, Complex64>;

fn insert_c(map: &mut CMap, key: Key, c: Complex64) {
    let entry = map.entry(key).or_insert(Complex64::new(0.0, 0.0));
    *entry += c;
    if entry.norm() <= PRUNE_TOL {
        map.remove(&key);
    }
}

fn mul_c(a: &CMap, b: &CMap) -> CMap {
    let mut out = CMap::new();
    for (&(i1, j1), &c1) in a {
        for (&(i2, j2), &c2) in b {
            insert_c(&mut out, (i1 + i2, j1 + j2), c1 * c2);
        }
    }
    out
}

fn pow_c(base: &CMap, e: u32) -> CMap {
    let mut out = CMap::from([((0, 0), Complex64::new(1.0, 0.0))]);
    for _ in 0..e {
        out = mul_c(&out, base);
    }
    out
}

fn parse_key(key: &str) -> Result<Key> {
    let (a, b) = key
        .split_once(',')
        .ok_or_else(|| Error::InvalidSpec(format!("monomial key {key:?} is not \"i,j\"")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| Error::InvalidSpec(format!("bad exponent in monomial key {key:?}")))
    };
    Ok((parse(a)?, parse(b)?))
}

fn graded_order(keys: impl Iterator<Item = Key>) -> Vec<Key> {
    let mut keys: Vec<Key> = keys.collect();
    keys.sort_by_key(|&(m, k)| (Reverse(m + k), Reverse(m)));
    keys
}

/// Finitely supported map `(m, k) ↦ c` representing `Σ c zᵐ z̄ᵏ`.
#[derive(Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "BTreeMap<String, [f64; 2]>",
    into = "BTreeMap<String, [f64; 2]>"
)]
pub struct ZPoly {
    terms: CMap,
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: u32, k: u32, c: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, k, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Complex64)>) -> Self {
        let mut p = Self::zero();
        for (m, k, c) in terms {
            p.add_term(m, k, c);
        }
        p
    }

    pub fn add_term(&mut self, m: u32, k: u32, c: Complex64) {
        insert_c(&mut self.terms, (m, k), c);
    }

    pub fn coeff(&self, m: u32, k: u32) -> Complex64 {
        self.terms.get(&(m, k)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, Complex64)> + '_ {
        self.terms.iter().map(|(&(m, k), &c)| (m, k, c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs_coeff() <= tol
    }

    /// Largest coefficient modulus on terms containing `z` (`m ≥ 1`).
    pub fn max_z_bearing_coeff(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(&(m, _), _)| m >= 1)
            .fold(0.0, |acc, (_, c)| acc.max(c.norm()))
    }

    /// Largest coefficient modulus on terms containing `z̄` (`k ≥ 1`).
    pub fn max_zbar_bearing_coeff(&self) -> f64 {
        self.terms
            .iter()
            .filter(|(&(_, k), _)| k >= 1)
            .fold(0.0, |acc, (_, c)| acc.max(c.norm()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(m, k, c)| (m, k, c * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, k, c) in other.terms() {
            out.add_term(m, k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            terms: mul_c(&self.terms, &other.terms),
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let zb = z.conj();
        self.terms()
            .map(|(m, k, c)| c * z.powu(m) * zb.powu(k))
            .sum()
    }

    /// Expands into a complex-coefficient polynomial in `x`, `y` via `z = x + iy`.
    fn to_xy(&self) -> CMap {
        let z = CMap::from([
            ((1, 0), Complex64::new(1.0, 0.0)),
            ((0, 1), Complex64::new(0.0, 1.0)),
        ]);
        let zb = CMap::from([
            ((1, 0), Complex64::new(1.0, 0.0)),
            ((0, 1), Complex64::new(0.0, -1.0)),
        ]);
        let mut out = CMap::new();
        for (m, k, c) in self.terms() {
            let term = mul_c(&pow_c(&z, m), &pow_c(&zb, k));
            for (key, v) in term {
                insert_c(&mut out, key, c * v);
            }
        }
        out
    }

    /// Rewrites a complex polynomial in `x`, `y` as a polynomial in `z`, `z̄`.
    fn from_xy(xy: &CMap) -> Self {
        let half = Complex64::new(0.5, 0.0);
        let x = CMap::from([((1, 0), half), ((0, 1), half)]);
        let y = CMap::from([
            ((1, 0), Complex64::new(0.0, -0.5)),
            ((0, 1), Complex64::new(0.0, 0.5)),
        ]);
        let mut out = Self::zero();
        for (&(i, j), &c) in xy {
            let term = mul_c(&pow_c(&x, i), &pow_c(&y, j));
            for ((m, k), v) in term {
                out.add_term(m, k, c * v);
            }
        }
        out
    }

    /// Real and imaginary parts in `(x, y)`.
    pub fn to_real_imag(&self) -> (RealPoly2, RealPoly2) {
        let xy = self.to_xy();
        let re = RealPoly2::from_terms(xy.iter().map(|(&(i, j), c)| (i, j, c.re)));
        let im = RealPoly2::from_terms(xy.iter().map(|(&(i, j), c)| (i, j, c.im)));
        (re, im)
    }

    /// `re + i·im` rewritten in `z`, `z̄`.
    pub fn from_real_imag(re: &RealPoly2, im: &RealPoly2) -> Self {
        let mut xy = CMap::new();
        for (i, j, c) in re.terms() {
            insert_c(&mut xy, (i, j), Complex64::new(c, 0.0));
        }
        for (i, j, c) in im.terms() {
            insert_c(&mut xy, (i, j), Complex64::new(0.0, c));
        }
        Self::from_xy(&xy)
    }
}

/// Finitely supported map `(i, j) ↦ c` representing `Σ c xⁱ yʲ`.
#[derive(Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, f64>", into = "BTreeMap<String, f64>")]
pub struct RealPoly2 {
    terms: BTreeMap<Key, f64>,
}

impl RealPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, f64)>) -> Self {
        let mut p = Self::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        let entry = self.terms.entry((i, j)).or_insert(0.0);
        *entry += c;
        if entry.abs() <= PRUNE_TOL {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, f64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs_coeff() <= tol
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_terms(self.terms().map(|(i, j, c)| (i, j, c * s)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i1, j1, c1) in self.terms() {
            for (i2, j2, c2) in other.terms() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    pub fn d_dx(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(i, _, _)| i > 0)
                .map(|(i, j, c)| (i - 1, j, c * f64::from(i))),
        )
    }

    pub fn d_dy(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&(_, j, _)| j > 0)
                .map(|(i, j, c)| (i, j - 1, c * f64::from(j))),
        )
    }

    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.terms()
            .map(|(i, j, c)| c * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }
}

/// `F(z, z̄) = f - ig` for the planar field `(f, g)`.
pub fn field_to_zpoly(f: &RealPoly2, g: &RealPoly2) -> ZPoly {
    ZPoly::from_real_imag(f, &g.scale(-1.0))
}

/// Inverse of [`field_to_zpoly`]: `f = Re F`, `g = -Im F`.
pub fn zpoly_to_field(w: &ZPoly) -> (RealPoly2, RealPoly2) {
    let (re, im) = w.to_real_imag();
    (re, im.scale(-1.0))
}

/// `∂/∂z`: `c zᵐ z̄ᵏ ↦ m c zᵐ⁻¹ z̄ᵏ`.
pub fn d_dz(w: &ZPoly) -> ZPoly {
    ZPoly::from_terms(
        w.terms()
            .filter(|&(m, _, _)| m > 0)
            .map(|(m, k, c)| (m - 1, k, c * f64::from(m))),
    )
}

/// `∂/∂z̄`: `c zᵐ z̄ᵏ ↦ k c zᵐ z̄ᵏ⁻¹`.
pub fn d_dzbar(w: &ZPoly) -> ZPoly {
    ZPoly::from_terms(
        w.terms()
            .filter(|&(_, k, _)| k > 0)
            .map(|(m, k, c)| (m, k - 1, c * f64::from(k))),
    )
}

/// Antiderivative in `z` with zero constant: `c zᵐ z̄ᵏ ↦ c/(m+1) zᵐ⁺¹ z̄ᵏ`.
pub fn integrate_dz(f: &ZPoly) -> ZPoly {
    ZPoly::from_terms(f.terms().map(|(m, k, c)| (m + 1, k, c / f64::from(m + 1))))
}

/// Complex conjugate of the function: `c zᵐ z̄ᵏ ↦ c̄ zᵏ z̄ᵐ`.
pub fn conjugate(w: &ZPoly) -> ZPoly {
    ZPoly::from_terms(w.terms().map(|(m, k, c)| (k, m, c.conj())))
}

/// `V = -(W + W̄)/4` and `H = (W - W̄)/(4i)` in `(x, y)`, for `W = 2(-V + iH)`.
pub fn zpoly_to_real_parts(w: &ZPoly) -> (RealPoly2, RealPoly2) {
    let wbar = conjugate(w);
    let v = w.add(&wbar).scale(Complex64::new(-0.25, 0.0));
    let h = w.sub(&wbar).scale(Complex64::new(0.0, -0.25));
    (real_part_checked(&v), real_part_checked(&h))
}

fn real_part_checked(p: &ZPoly) -> RealPoly2 {
    let (re, im) = p.to_real_imag();
    debug_assert!(im.max_abs_coeff() <= 1e-12 * (1.0 + re.max_abs_coeff()));
    re
}

/// `|∂W/∂z|² - |∂W/∂z̄|²` as a polynomial; zero iff the HHD is strictly orthogonal.
pub fn mod_squared_diff(w: &ZPoly) -> ZPoly {
    let wz = d_dz(w);
    let wzb = d_dzbar(w);
    wz.mul(&conjugate(&wz)).sub(&wzb.mul(&conjugate(&wzb)))
}

pub fn evaluate(w: &ZPoly, z: Complex64) -> Complex64 {
    w.evaluate(z)
}

fn fmt_complex(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        let sign = if c.im < 0.0 { '-' } else { '+' };
        format!("({}{}{}i)", c.re, sign, c.im.abs())
    }
}

fn fmt_monomial(var_a: &str, a: u32, var_b: &str, b: u32) -> String {
    let mut parts = Vec::new();
    for (v, e) in [(var_a, a), (var_b, b)] {
        match e {
            0 => {}
            1 => parts.push(v.to_string()),
            _ => parts.push(format!("{v}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = graded_order(self.terms.keys().copied())
            .into_iter()
            .map(|(m, k)| {
                let mono = fmt_monomial("z", m, "zb", k);
                let c = fmt_complex(self.terms[&(m, k)]);
                if mono.is_empty() {
                    c
                } else {
                    format!("{c}*{mono}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly({self})")
    }
}

impl fmt::Display for RealPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (n, (i, j)) in graded_order(self.terms.keys().copied())
            .into_iter()
            .enumerate()
        {
            let c = self.terms[&(i, j)];
            let mono = fmt_monomial("x", i, "y", j);
            let mag = c.abs();
            let body = if mono.is_empty() {
                format!("{mag}")
            } else {
                format!("{mag}*{mono}")
            };
            match (n, c < 0.0) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for RealPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealPoly2({self})")
    }
}

impl TryFrom<BTreeMap<String, [f64; 2]>> for ZPoly {
    type Error = Error;

    fn try_from(map: BTreeMap<String, [f64; 2]>) -> Result<Self> {
        let mut p = Self::zero();
        for (key, [re, im]) in map {
            let (m, k) = parse_key(&key)?;
            p.add_term(m, k, Complex64::new(re, im));
        }
        Ok(p)
    }
}

impl From<ZPoly> for BTreeMap<String, [f64; 2]> {
    fn from(p: ZPoly) -> Self {
        p.terms()
            .map(|(m, k, c)| (format!("{m},{k}"), [c.re, c.im]))
            .collect()
    }
}

impl TryFrom<BTreeMap<String, f64>> for RealPoly2 {
    type Error = Error;

    fn try_from(map: BTreeMap<String, f64>) -> Result<Self> {
        let mut p = Self::zero();
        for (key, c) in map {
            if !c.is_finite() {
                return Err(Error::InvalidSpec(format!(
                    "non-finite coefficient at {key:?}"
                )));
            }
            let (i, j) = parse_key(&key)?;
            p.add_term(i, j, c);
        }
        Ok(p)
    }
}

impl From<RealPoly2> for BTreeMap<String, f64> {
    fn from(p: RealPoly2) -> Self {
        p.terms().map(|(i, j, c)| (format!("{i},{j}"), c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_zpoly_close(a: &ZPoly, b: &ZPoly, tol: f64) {
        let diff = a.sub(b).max_abs_coeff();
        assert!(diff <= tol, "{a} vs {b} (diff {diff:e})");
    }

    fn assert_real_close(a: &RealPoly2, b: &RealPoly2, tol: f64) {
        let diff = a.sub(b).max_abs_coeff();
        assert!(diff <= tol, "{a} vs {b} (diff {diff:e})");
    }

    fn worked_field() -> (RealPoly2, RealPoly2) {
        (
            RealPoly2::from_terms([(2, 0, -1.0), (0, 1, 2.0)]),
            RealPoly2::from_terms([(0, 2, -1.0), (1, 0, 1.0)]),
        )
    }

    fn worked_potential() -> ZPoly {
        ZPoly::from_terms([
            (3, 0, c(-1.0, -1.0) / 12.0),
            (2, 1, c(-1.0, 1.0) / 4.0),
            (1, 2, c(-1.0, -1.0) / 4.0),
            (2, 0, c(0.0, -0.75)),
            (1, 1, c(0.0, 0.5)),
        ])
    }

    #[test]
    fn field_to_zpoly_worked_example() {
        let (f, g) = worked_field();
        let expected = ZPoly::from_terms([
            (2, 0, c(-0.25, -0.25)),
            (1, 1, c(-0.5, 0.5)),
            (0, 2, c(-0.25, -0.25)),
            (1, 0, c(0.0, -1.5)),
            (0, 1, c(0.0, 0.5)),
        ]);
        assert_zpoly_close(&field_to_zpoly(&f, &g), &expected, 1e-15);
    }

    #[test]
    fn field_to_zpoly_identity_field() {
        let f = RealPoly2::from_terms([(1, 0, 1.0)]);
        let g = RealPoly2::from_terms([(0, 1, 1.0)]);
        assert_zpoly_close(
            &field_to_zpoly(&f, &g),
            &ZPoly::monomial(0, 1, c(1.0, 0.0)),
            1e-15,
        );
    }

    #[test]
    fn field_to_zpoly_quadratic_coefficients() {
        let (p1, q1, r1, p2, q2, r2) = (0.7, -1.3, 2.1, 0.4, 1.9, -0.6);
        let f = RealPoly2::from_terms([(2, 0, p1), (1, 1, q1), (0, 2, r1)]);
        let g = RealPoly2::from_terms([(2, 0, p2), (1, 1, q2), (0, 2, r2)]);
        let a = c(p1 - q2 - r1, -p2 - q1 + r2) / 4.0;
        let b = c(p1 + r1, -(p2 + r2)) / 2.0;
        let cc = c(p1 + q2 - r1, -p2 + q1 + r2) / 4.0;
        let expected = ZPoly::from_terms([(2, 0, a), (1, 1, b), (0, 2, cc)]);
        assert_zpoly_close(&field_to_zpoly(&f, &g), &expected, 1e-15);
    }

    #[test]
    fn wirtinger_derivatives() {
        assert_eq!(
            d_dz(&ZPoly::monomial(3, 0, c(1.0, 0.0))),
            ZPoly::monomial(2, 0, c(3.0, 0.0))
        );
        assert!(d_dz(&ZPoly::monomial(0, 2, c(1.0, 0.0))).is_empty());
        assert_eq!(
            d_dzbar(&ZPoly::monomial(0, 3, c(1.0, 0.0))),
            ZPoly::monomial(0, 2, c(3.0, 0.0))
        );
        assert!(d_dzbar(&ZPoly::monomial(2, 0, c(1.0, 0.0))).is_empty());

        let (a, b, cc) = (c(0.5, -1.0), c(2.0, 0.25), c(-1.0, 3.0));
        let w0 = ZPoly::from_terms([(3, 0, a / 3.0), (2, 1, b / 2.0), (1, 2, cc)]);
        let expected = ZPoly::from_terms([(2, 0, a), (1, 1, b), (0, 2, cc)]);
        assert_zpoly_close(&d_dz(&w0), &expected, 1e-15);
        let expected = ZPoly::from_terms([(2, 0, b / 2.0), (1, 1, cc * 2.0)]);
        assert_zpoly_close(&d_dzbar(&w0), &expected, 1e-15);
    }

    #[test]
    fn integration_examples() {
        let (a, b, cc) = (c(1.0, 2.0), c(-0.5, 0.5), c(3.0, -1.0));
        let lin = ZPoly::from_terms([(1, 0, a), (0, 1, b)]);
        let expected = ZPoly::from_terms([(2, 0, a / 2.0), (1, 1, b)]);
        assert_zpoly_close(&integrate_dz(&lin), &expected, 1e-15);

        let quad = ZPoly::from_terms([(2, 0, a), (1, 1, b), (0, 2, cc)]);
        let expected = ZPoly::from_terms([(3, 0, a / 3.0), (2, 1, b / 2.0), (1, 2, cc)]);
        assert_zpoly_close(&integrate_dz(&quad), &expected, 1e-15);

        assert!(integrate_dz(&ZPoly::zero()).is_empty());
    }

    #[test]
    fn worked_example_integrates_to_reference_potential() {
        let (f, g) = worked_field();
        let w = integrate_dz(&field_to_zpoly(&f, &g));
        assert_zpoly_close(&w, &worked_potential(), 1e-15);
    }

    #[test]
    fn real_parts_worked_example() {
        let (v, h) = zpoly_to_real_parts(&worked_potential());
        let v_expected = RealPoly2::from_terms([
            (3, 0, 7.0 / 24.0),
            (2, 1, 1.0 / 8.0),
            (1, 2, 1.0 / 8.0),
            (1, 1, -3.0 / 4.0),
            (0, 3, 7.0 / 24.0),
        ]);
        let h_expected = RealPoly2::from_terms([
            (3, 0, -1.0 / 24.0),
            (2, 1, -1.0 / 8.0),
            (2, 0, -1.0 / 8.0),
            (1, 2, 1.0 / 8.0),
            (0, 3, 1.0 / 24.0),
            (0, 2, 5.0 / 8.0),
        ]);
        assert_real_close(&v, &v_expected, 1e-15);
        assert_real_close(&h, &h_expected, 1e-15);

        let (v, h) = zpoly_to_real_parts(&ZPoly::zero());
        assert!(v.is_empty() && h.is_empty());
    }

    #[test]
    fn real_parts_second_quadratic_example() {
        let w = ZPoly::from_terms([
            (3, 0, c(1.0 / 6.0, 0.0)),
            (2, 1, c(2.0, -3.0) / 2.0),
            (1, 2, -c(3.0, 2.0) / 2.0),
            (0, 3, -(c(3.0, 2.0) / c(2.0, 3.0)) / 6.0),
        ]);
        // the published (x, y) form is W itself
        let (re, im) = w.to_real_imag();
        let re_expected = RealPoly2::from_terms([
            (3, 0, -19.0 / 39.0),
            (2, 1, 9.0 / 13.0),
            (0, 3, 17.0 / 39.0),
            (1, 2, -7.0 / 13.0),
        ]);
        let im_expected = RealPoly2::from_terms([
            (3, 0, -95.0 / 39.0),
            (2, 1, 45.0 / 13.0),
            (1, 2, -35.0 / 13.0),
            (0, 3, 85.0 / 39.0),
        ]);
        assert_real_close(&re, &re_expected, 1e-14);
        assert_real_close(&im, &im_expected, 1e-14);

        let (v, h) = zpoly_to_real_parts(&w);
        assert_real_close(&v, &re_expected.scale(-0.5), 1e-14);
        assert_real_close(&h, &im_expected.scale(0.5), 1e-14);
        assert!((v.coeff(3, 0) - 19.0 / 78.0).abs() < 1e-15);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(
            conjugate(&ZPoly::monomial(2, 0, c(1.0, 0.0))),
            ZPoly::monomial(0, 2, c(1.0, 0.0))
        );
        assert_eq!(
            conjugate(&ZPoly::monomial(1, 1, c(0.0, 1.0))),
            ZPoly::monomial(1, 1, c(0.0, -1.0))
        );
        let (a, b) = (c(1.0, 2.0), c(-3.0, 0.5));
        let w = ZPoly::from_terms([(2, 0, a), (1, 1, b)]);
        let expected = ZPoly::from_terms([(0, 2, a.conj()), (1, 1, b.conj())]);
        assert_eq!(conjugate(&w), expected);
    }

    #[test]
    fn mod_squared_diff_examples() {
        let w = ZPoly::monomial(3, 0, c(1.0, 0.0));
        assert_eq!(mod_squared_diff(&w), ZPoly::monomial(2, 2, c(9.0, 0.0)));

        let (a, b) = (c(1.0, 1.0), c(2.0, 0.0));
        let w = ZPoly::from_terms([
            (2, 0, a / 2.0),
            (1, 1, b),
            (0, 2, a.conj() * b / (2.0 * b.conj())),
        ]);
        assert!(mod_squared_diff(&w).is_zero(ZERO_POLY_TOL));

        assert!(mod_squared_diff(&ZPoly::zero()).is_empty());
    }

    #[test]
    fn evaluate_examples() {
        let zzb = ZPoly::monomial(1, 1, c(1.0, 0.0));
        assert_eq!(evaluate(&zzb, c(3.0, 4.0)), c(25.0, 0.0));
        let z2 = ZPoly::monomial(2, 0, c(1.0, 0.0));
        assert!((evaluate(&z2, c(0.0, 1.0)) - c(-1.0, 0.0)).norm() < 1e-15);
        assert_eq!(evaluate(&worked_potential(), c(0.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn pruning_drops_tiny_coefficients() {
        let mut p = ZPoly::monomial(1, 0, c(1.0, 0.0));
        p.add_term(1, 0, c(-1.0, 1e-15));
        assert!(p.is_empty());
        let r = RealPoly2::from_terms([(0, 0, 1e-16)]);
        assert!(r.is_empty());
    }

    #[test]
    fn display_is_graded() {
        let w = ZPoly::from_terms([
            (0, 1, c(1.0, 0.0)),
            (2, 1, c(0.5, -1.0)),
            (3, 0, c(2.0, 0.0)),
        ]);
        assert_eq!(w.to_string(), "2*z^3 + (0.5-1i)*z^2*zb + 1*zb");
        let r = RealPoly2::from_terms([(1, 1, -0.75), (3, 0, 0.5), (0, 0, 2.0)]);
        assert_eq!(r.to_string(), "0.5*x^3 - 0.75*x*y + 2");
    }

    #[test]
    fn serde_uses_monomial_keys() {
        let r = RealPoly2::from_terms([(2, 0, -1.0), (0, 1, 2.0)]);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"0,1":2.0,"2,0":-1.0}"#);
        assert_eq!(serde_json::from_str::<RealPoly2>(&json).unwrap(), r);
        assert!(serde_json::from_str::<RealPoly2>(r#"{"2":1.0}"#).is_err());
        let w = worked_potential();
        let back: ZPoly = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
    }
}
