//! Lyapunov-style sampling: level sets, sign maps and the Van der Pol strip.
//!
//! For `ẋ = y`, `ẏ = μ(1 - x²)y - x` the linear part `[[0, 1], [-1, μ]]`
//! has a closed-form strictly orthogonal gradient part `P(μ)`. The quadratic
//! form `W = ½xᵀPx` is then studied along the *full* nonlinear field: the
//! curve `y = γ(x)` where `Ẇ` vanishes, and the y-nullcline below it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::QuadraticForm;
use crate::matrix::RealMatrix;

/// Cap on safeguarded Newton steps per contour vertex; bisection alone
/// shrinks the edge bracket to machine precision well within this.
pub const REFINE_STEPS: usize = 100;

/// Distance from the `x = ±1` poles below which the nullcline is undefined.
const POLE_TOL: f64 = 1e-12;

pub type Point = [f64; 2];

/// Linearization `[[0, 1], [-1, μ]]` at the origin.
pub fn vdp_linear_part(mu: f64) -> RealMatrix {
    RealMatrix::from_rows(&[&[0.0, 1.0], &[-1.0, mu]]).expect("2x2")
}

pub fn vdp_field(mu: f64, p: Point) -> Point {
    let [x, y] = p;
    [y, mu * (1.0 - x * x) * y - x]
}

/// `P(μ) = -(μ/(μ²+4)) [[2, -μ], [-μ, μ²+2]]`.
pub fn vdp_p(mu: f64) -> RealMatrix {
    let k = -mu / (mu * mu + 4.0);
    RealMatrix::from_rows(&[&[2.0 * k, -mu * k], &[-mu * k, (mu * mu + 2.0) * k]]).expect("2x2")
}

/// `sqrt((1+μ²)/(2+μ²))`, the zero of the denominator of `γ`.
pub fn c0(mu: f64) -> f64 {
    let m2 = mu * mu;
    ((1.0 + m2) / (2.0 + m2)).sqrt()
}

/// `γ(x) = (-2μx + μx³ - x√(-4 + 8x² + μ²x⁴)) / (2((2+μ²)x² - (μ²+1)))`.
pub fn gamma_curve(mu: f64, x: f64) -> Result<f64> {
    let m2 = mu * mu;
    if !(x > c0(mu)) {
        return Err(Error::Domain(format!(
            "gamma requires x > c0 = {}, got {x}",
            c0(mu)
        )));
    }
    let x2 = x * x;
    let radicand = -4.0 + 8.0 * x2 + m2 * x2 * x2;
    if radicand < 0.0 {
        return Err(Error::Domain(format!(
            "negative radicand {radicand} at x = {x}"
        )));
    }
    let num = -2.0 * mu * x + mu * x * x2 - x * radicand.sqrt();
    let den = 2.0 * ((2.0 + m2) * x2 - (m2 + 1.0));
    Ok(num / den)
}

/// `y = x / (μ(1 - x²))`, where `ẏ` vanishes.
pub fn y_nullcline(mu: f64, x: f64) -> Result<f64> {
    if mu == 0.0 {
        return Err(Error::Domain("nullcline undefined for mu = 0".into()));
    }
    let gap = 1.0 - x * x;
    if gap.abs() <= POLE_TOL {
        return Err(Error::Domain(format!("nullcline pole at x = {x}")));
    }
    Ok(x / (mu * gap))
}

/// `(nullcline(x), γ(x))` for `μ > 0`, `x > 1`, checked to be ordered.
pub fn strip_bounds(mu: f64, x: f64) -> Result<(f64, f64)> {
    if !(mu > 0.0 && x > 1.0) {
        return Err(Error::Domain(format!(
            "strip requires mu > 0 and x > 1, got mu = {mu}, x = {x}"
        )));
    }
    let lower = y_nullcline(mu, x)?;
    let upper = gamma_curve(mu, x)?;
    if !(lower < upper) {
        return Err(Error::Domain(format!(
            "strip ordering violated at x = {x}: {lower} >= {upper}"
        )));
    }
    Ok((lower, upper))
}

/// `∇W(x)·field(x)`.
pub fn orbital_derivative_field<F>(w: &QuadraticForm, field: F, x: Point) -> f64
where
    F: Fn(Point) -> Point,
{
    let g = w.gradient(&x);
    let f = field(x);
    g[0] * f[0] + g[1] * f[1]
}

/// A smooth scalar function on the plane.
pub trait ScalarField2 {
    fn value(&self, p: Point) -> f64;
    fn gradient(&self, p: Point) -> Point;
}

impl ScalarField2 for QuadraticForm {
    fn value(&self, p: Point) -> f64 {
        QuadraticForm::value(self, &p)
    }

    fn gradient(&self, p: Point) -> Point {
        let g = QuadraticForm::gradient(self, &p);
        [g[0], g[1]]
    }
}

/// `Ẇ = (Px)·F(x)` along the full Van der Pol field.
#[derive(Debug, Clone, PartialEq)]
pub struct VdpWdot {
    pub mu: f64,
    pub p: RealMatrix,
}

impl VdpWdot {
    pub fn new(mu: f64) -> Self {
        Self { mu, p: vdp_p(mu) }
    }
}

impl ScalarField2 for VdpWdot {
    fn value(&self, p: Point) -> f64 {
        let px = self.p.mul_vec(&p);
        let f = vdp_field(self.mu, p);
        px[0] * f[0] + px[1] * f[1]
    }

    // P F + J_Fᵀ P x
    fn gradient(&self, p: Point) -> Point {
        let [x, y] = p;
        let mu = self.mu;
        let px = self.p.mul_vec(&p);
        let f = vdp_field(mu, p);
        let pf = self.p.mul_vec(&f);
        let j = [[0.0, 1.0], [-1.0 - 2.0 * mu * x * y, mu * (1.0 - x * x)]];
        [
            pf[0] + j[0][0] * px[0] + j[1][0] * px[1],
            pf[1] + j[0][1] * px[0] + j[1][1] * px[1],
        ]
    }
}

/// Uniform sampling rectangle with `nx × ny` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64, nx: usize, ny: usize) -> Result<Self> {
        let g = Self {
            xmin,
            xmax,
            ymin,
            ymax,
            nx,
            ny,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.xmin, self.xmax, self.ymin, self.ymax]
            .iter()
            .all(|v| v.is_finite());
        if self.nx < 2 || self.ny < 2 || !finite || self.xmin >= self.xmax || self.ymin >= self.ymax
        {
            return Err(Error::EmptyGrid);
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.xmin + (self.xmax - self.xmin) * i as f64 / (self.nx - 1) as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        self.ymin + (self.ymax - self.ymin) * j as f64 / (self.ny - 1) as f64
    }

    pub fn node(&self, i: usize, j: usize) -> Point {
        [self.x(i), self.y(j)]
    }

    pub fn contains(&self, p: Point) -> bool {
        (self.xmin..=self.xmax).contains(&p[0]) && (self.ymin..=self.ymax).contains(&p[1])
    }
}

/// Node values of a scalar field, stored row by row (`j` outer, `i` inner).
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGrid {
    pub grid: Grid,
    pub values: Vec<f64>,
}

impl SampledGrid {
    pub fn sample(field: &impl ScalarField2, grid: Grid) -> Result<Self> {
        grid.validate()?;
        let values = (0..grid.ny)
            .flat_map(|j| (0..grid.nx).map(move |i| (i, j)))
            .map(|(i, j)| field.value(grid.node(i, j)))
            .collect();
        Ok(Self { grid, values })
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[j * self.grid.nx + i]
    }

    /// `-1`, `0` or `1` per node.
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        let v = self.at(i, j);
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    }
}

pub fn sign_grid(field: &impl ScalarField2, grid: Grid) -> Result<SampledGrid> {
    SampledGrid::sample(field, grid)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub points: Vec<Point>,
    /// Closed loops do not repeat their first point.
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelSet {
    pub level: f64,
    pub polylines: Vec<Polyline>,
}

/// Marching-squares contours of `field` at each level, one [`LevelSet`] per
/// level in input order. Each vertex is refined along its cell edge by Newton
/// steps kept inside the sign-change bracket, so it lands on the level.
pub fn sample_level_sets(
    field: &impl ScalarField2,
    levels: &[f64],
    grid: Grid,
) -> Result<Vec<LevelSet>> {
    let sampled = SampledGrid::sample(field, grid)?;
    Ok(levels
        .iter()
        .map(|&level| LevelSet {
            level,
            polylines: contour(field, &sampled, level),
        })
        .collect())
}

/// Horizontal edge `(i,j)-(i+1,j)` is `2k`, vertical `(i,j)-(i,j+1)` is `2k+1`,
/// with `k = j·nx + i`.
fn edge_id(grid: &Grid, i: usize, j: usize, vertical: bool) -> usize {
    2 * (j * grid.nx + i) + usize::from(vertical)
}

fn contour(field: &impl ScalarField2, s: &SampledGrid, level: f64) -> Vec<Polyline> {
    let g = &s.grid;
    let above = |i, j| s.at(i, j) > level;
    let mut points: BTreeMap<usize, Point> = BTreeMap::new();
    let mut segments: Vec<(usize, usize)> = Vec::new();

    for j in 0..g.ny - 1 {
        for i in 0..g.nx - 1 {
            // corners counter-clockwise from bottom-left
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let state = corners.map(|(a, b)| above(a, b));
            // edge k joins corner k and corner k+1
            let edges = [
                edge_id(g, i, j, false),
                edge_id(g, i + 1, j, true),
                edge_id(g, i, j + 1, false),
                edge_id(g, i, j, true),
            ];
            let crossing: Vec<usize> = (0..4).filter(|&k| state[k] != state[(k + 1) % 4]).collect();
            for &k in &crossing {
                let (p0, p1) = (corners[k], corners[(k + 1) % 4]);
                points
                    .entry(edges[k])
                    .or_insert_with(|| interpolate(field, s, p0, p1, level));
            }
            match crossing.len() {
                2 => segments.push((edges[crossing[0]], edges[crossing[1]])),
                4 => {
                    let center = corners.iter().map(|&(a, b)| s.at(a, b)).sum::<f64>() / 4.0;
                    if (center > level) == state[0] {
                        // corners 0 and 2 joined through the centre
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }
    join_segments(&segments, &points)
}

fn interpolate(
    field: &impl ScalarField2,
    s: &SampledGrid,
    (i0, j0): (usize, usize),
    (i1, j1): (usize, usize),
    level: f64,
) -> Point {
    let (v0, v1) = (s.at(i0, j0), s.at(i1, j1));
    let t = ((level - v0) / (v1 - v0)).clamp(0.0, 1.0);
    let (a, b) = (s.grid.node(i0, j0), s.grid.node(i1, j1));
    refine(field, a, b, t, v0 - level, level)
}

/// Root of `W(a + t(b - a)) = level` on `t ∈ [0, 1]`, starting from the
/// linear estimate `t`. `r0` is the residual at `t = 0`; the endpoints
/// straddle the level, so out-of-bracket Newton steps fall back to bisection.
fn refine(field: &impl ScalarField2, a: Point, b: Point, mut t: f64, r0: f64, level: f64) -> Point {
    let tol = 1e-13 * (1.0 + level.abs());
    let d = [b[0] - a[0], b[1] - a[1]];
    let at = |t: f64| [a[0] + t * d[0], a[1] + t * d[1]];
    let (mut lo, mut hi) = (0.0, 1.0);
    let lo_sign = r0 < 0.0;
    for _ in 0..REFINE_STEPS {
        let p = at(t);
        let r = field.value(p) - level;
        if r.abs() <= tol || !r.is_finite() {
            break;
        }
        if (r < 0.0) == lo_sign {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
        let g = field.gradient(p);
        let slope = g[0] * d[0] + g[1] * d[1];
        let newton = t - r / slope;
        t = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    at(t)
}

/// Chains segments sharing an edge. Open chains start from edges of degree
/// one (in id order); what remains is closed loops.
fn join_segments(segments: &[(usize, usize)], points: &BTreeMap<usize, Point>) -> Vec<Polyline> {
    let mut incident: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, &(a, b)) in segments.iter().enumerate() {
        incident.entry(a).or_default().push(k);
        incident.entry(b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start: usize, used: &mut Vec<bool>| -> Vec<usize> {
        let mut chain = vec![start];
        let mut edge = start;
        while let Some(&k) = incident[&edge].iter().find(|&&k| !used[k]) {
            used[k] = true;
            let (a, b) = segments[k];
            edge = if a == edge { b } else { a };
            chain.push(edge);
        }
        chain
    };

    let open_starts: Vec<usize> = incident
        .iter()
        .filter(|(_, ks)| ks.len() == 1)
        .map(|(&e, _)| e)
        .collect();
    for e in open_starts {
        if incident[&e].iter().all(|&k| used[k]) {
            continue;
        }
        let chain = walk(e, &mut used);
        out.push(Polyline {
            points: chain.iter().map(|e| points[e]).collect(),
            closed: false,
        });
    }
    for k in 0..segments.len() {
        if used[k] {
            continue;
        }
        let mut chain = walk(segments[k].0, &mut used);
        chain.pop();
        out.push(Polyline {
            points: chain.iter().map(|e| points[e]).collect(),
            closed: true,
        });
    }
    out
}

/// Everything needed to reproduce the Van der Pol pictures for one `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct VdpCaseStudy {
    pub mu: f64,
    pub p: RealMatrix,
    pub w: QuadraticForm,
    pub c0: f64,
    pub grid: Grid,
}

impl VdpCaseStudy {
    pub fn new(mu: f64, grid: Grid) -> Result<Self> {
        if !mu.is_finite() {
            return Err(Error::Domain(format!("mu must be finite, got {mu}")));
        }
        grid.validate()?;
        let p = vdp_p(mu);
        Ok(Self {
            mu,
            w: QuadraticForm { p: p.clone() },
            p,
            c0: c0(mu),
            grid,
        })
    }

    pub fn wdot(&self, x: Point) -> f64 {
        orbital_derivative_field(&self.w, |q| vdp_field(self.mu, q), x)
    }

    /// `Ẇ` along the linearization only.
    pub fn wdot_linear(&self, x: Point) -> f64 {
        let a = vdp_linear_part(self.mu);
        orbital_derivative_field(
            &self.w,
            |q| {
                let v = a.mul_vec(&q);
                [v[0], v[1]]
            },
            x,
        )
    }

    pub fn level_sets(&self, levels: &[f64]) -> Result<Vec<LevelSet>> {
        sample_level_sets(&self.w, levels, self.grid)
    }

    /// The set `{Ẇ = 0}` over the grid.
    pub fn wdot_zero_set(&self) -> Result<LevelSet> {
        let mut sets = sample_level_sets(&VdpWdot::new(self.mu), &[0.0], self.grid)?;
        Ok(sets.remove(0))
    }

    pub fn wdot_signs(&self) -> Result<SampledGrid> {
        sign_grid(&VdpWdot::new(self.mu), self.grid)
    }

    /// `(x, γ(x))` at `n` evenly spaced `x` in `(c₀, xmax]`, skipping points
    /// outside the domain of `γ`.
    pub fn gamma_samples(&self, n: usize) -> Vec<Point> {
        let lo = self.c0;
        let hi = self.grid.xmax;
        if n == 0 || !(hi > lo) {
            return Vec::new();
        }
        (1..=n)
            .filter_map(|k| {
                let x = lo + (hi - lo) * k as f64 / n as f64;
                gamma_curve(self.mu, x).ok().map(|y| [x, y])
            })
            .collect()
    }

    /// `(x, nullcline(x))` at `n` evenly spaced grid abscissae, skipping poles.
    pub fn nullcline_samples(&self, n: usize) -> Vec<Point> {
        if n < 2 {
            return Vec::new();
        }
        let (lo, hi) = (self.grid.xmin, self.grid.xmax);
        (0..n)
            .filter_map(|k| {
                let x = lo + (hi - lo) * k as f64 / (n - 1) as f64;
                y_nullcline(self.mu, x).ok().map(|y| [x, y])
            })
            .collect()
    }
}
