//! Helmholtz–Hodge decompositions of matrices.
//!
//! A linear field `F(x) = Ax` splits as `A = -P + H` with `P` symmetric and
//! `tr(P) = -tr(A)`; the potential is `V(x) = ½xᵀPx` and the divergence-free
//! part is `u(x) = Hx`. The split is strictly orthogonal when
//! `PH + HᵀP = O`, which for `H = A + P` is the Riccati equation
//! `2P² + AᵀP + PA = O`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{least_squares, RealMatrix, DEFAULT_TOL};

/// Branch threshold for the degenerate 2×2 cases `b - c = 0` and `a + d = 0`.
pub const DEGENERATE_2X2_TOL: f64 = 1e-9;

/// A matrix HHD `a = -p + h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearHhd {
    pub p: RealMatrix,
    pub h: RealMatrix,
    pub a: RealMatrix,
}

impl LinearHhd {
    /// Builds the decomposition of `a` with gradient part `p`; `h = a + p`.
    pub fn from_gradient_part(a: RealMatrix, p: RealMatrix) -> Result<Self> {
        a.check_dim(&p)?;
        let h = &a + &p;
        Ok(Self { p, h, a })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Max-abs entry of `PH + HᵀP`.
    pub fn orthogonality_norm(&self) -> f64 {
        let ph = &self.p * &self.h;
        (&ph + &ph.transpose()).max_abs()
    }

    /// Largest violation of `a = -p + h`, `p = pᵀ` and `tr(p) = -tr(a)`.
    pub fn invariant_violation(&self) -> f64 {
        let recon = (&self.h - &self.p).distance(&self.a);
        let trace_gap = (self.p.trace() + self.a.trace()).abs();
        recon.max(self.p.asymmetry()).max(trace_gap)
    }

    pub fn is_valid(&self, tol: f64) -> bool {
        self.invariant_violation() <= tol
    }

    pub fn lyapunov_candidate(&self) -> QuadraticForm {
        QuadraticForm { p: self.p.clone() }
    }
}

/// `V(x) = ½ xᵀ P x` with gradient `Px`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub p: RealMatrix,
}

impl QuadraticForm {
    pub fn value(&self, x: &[f64]) -> f64 {
        let px = self.p.mul_vec(x);
        0.5 * dot(x, &px)
    }

    pub fn gradient(&self, x: &[f64]) -> Vec<f64> {
        self.p.mul_vec(x)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Diagnostics for a Riccati solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiccatiReport {
    /// Max-abs of `2P² + AᵀP + PA`.
    pub residual_norm: f64,
    /// `|tr(P) + tr(A)|`.
    pub trace_gap: f64,
    /// Max-abs of `PH + HᵀP`.
    pub orthogonality_norm: f64,
    /// Newton iterations; 0 for closed-form routes.
    pub iterations: usize,
}

impl RiccatiReport {
    pub fn evaluate(d: &LinearHhd, iterations: usize) -> Self {
        Self {
            residual_norm: riccati_residual_unchecked(&d.a, &d.p).max_abs(),
            trace_gap: (d.p.trace() + d.a.trace()).abs(),
            orthogonality_norm: d.orthogonality_norm(),
            iterations,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverRoute {
    ClosedForm2x2,
    NormalShortcut,
    Newton,
}

/// Starting point for the Newton route.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum InitialGuess {
    /// `P₀ = -(A + Aᵀ)/2`; also enables the closed-form routes.
    #[default]
    SymmetricSplit,
    /// `P₀ = s·I`.
    Scalar(f64),
    /// Explicit `P₀` (symmetrized before use).
    Matrix(RealMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub max_iterations: usize,
    /// Residual acceptance, scaled by `max(1, max|a_ij|²)`.
    pub residual_tol: f64,
    /// Trace acceptance, scaled by `max(1, max|a_ij|)`.
    pub trace_tol: f64,
    pub initial_guess: InitialGuess,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            max_iterations: 100,
            residual_tol: 1e-10,
            trace_tol: 1e-8,
            initial_guess: InitialGuess::SymmetricSplit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiccatiSolution {
    pub hhd: LinearHhd,
    pub report: RiccatiReport,
    pub route: SolverRoute,
}

/// `P = -(A + Aᵀ)/2`, `H = (A - Aᵀ)/2`. Always an HHD; strictly orthogonal iff `A` is normal.
pub fn symmetric_split(a: &RealMatrix) -> LinearHhd {
    let at = a.transpose();
    LinearHhd {
        p: (a + &at).scale(-0.5),
        h: (a - &at).scale(0.5),
        a: a.clone(),
    }
}

/// `2P² + AᵀP + PA`.
pub fn riccati_residual(a: &RealMatrix, p: &RealMatrix) -> Result<RealMatrix> {
    a.check_dim(p)?;
    Ok(riccati_residual_unchecked(a, p))
}

fn riccati_residual_unchecked(a: &RealMatrix, p: &RealMatrix) -> RealMatrix {
    let pp = (p * p).scale(2.0);
    let atp = &a.transpose() * p;
    let pa = p * a;
    &(&pp + &atp) + &pa
}

pub fn is_strictly_orthogonal(d: &LinearHhd, tol: f64) -> bool {
    d.orthogonality_norm() <= tol
}

/// Closed-form strictly orthogonal HHD of a 2×2 matrix.
pub fn solve_2x2(a: &RealMatrix) -> Result<LinearHhd> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: 2,
        });
    }
    let (a11, b, c, d) = (a[(0, 0)], a[(0, 1)], a[(1, 0)], a[(1, 1)]);
    let tr = a11 + d;
    let skew = b - c;
    if skew.abs() <= DEGENERATE_2X2_TOL {
        return LinearHhd::from_gradient_part(a.clone(), a.scale(-1.0));
    }
    if tr.abs() <= DEGENERATE_2X2_TOL {
        return LinearHhd::from_gradient_part(a.clone(), RealMatrix::zeros(2));
    }
    let k = tr / (tr * tr + skew * skew);
    let alpha = k * (a11 * tr - c * skew);
    let beta = k * (c * tr + a11 * skew);
    let p = RealMatrix::from_rows(&[[-alpha, -beta], [-beta, alpha - tr]])?;
    LinearHhd::from_gradient_part(a.clone(), p)
}

/// Finds a strictly orthogonal HHD of `a`, i.e. a symmetric solution of the
/// Riccati equation with `tr(P) = -tr(A)`.
///
/// With the default guess the 2×2 closed form and the normal-matrix shortcut
/// are tried first; an explicit guess always runs the Newton route.
pub fn solve_riccati(a: &RealMatrix, opts: &SolverOptions) -> Result<RiccatiSolution> {
    let scale = a.max_abs().max(1.0);
    let (seed, closed_forms) = match &opts.initial_guess {
        InitialGuess::SymmetricSplit => (symmetric_split(a).p, true),
        InitialGuess::Scalar(s) => (RealMatrix::identity(a.dim()).scale(*s), false),
        InitialGuess::Matrix(m) => {
            a.check_dim(m)?;
            (m.symmetrize(), false)
        }
    };
    if closed_forms {
        if a.dim() == 2 {
            let hhd = solve_2x2(a)?;
            let report = RiccatiReport::evaluate(&hhd, 0);
            return Ok(RiccatiSolution {
                hhd,
                report,
                route: SolverRoute::ClosedForm2x2,
            });
        }
        if a.is_normal(DEFAULT_TOL * scale * scale) {
            let hhd = symmetric_split(a);
            let report = RiccatiReport::evaluate(&hhd, 0);
            return Ok(RiccatiSolution {
                hhd,
                report,
                route: SolverRoute::NormalShortcut,
            });
        }
    }
    newton_riccati(a, &seed, opts)
}

/// Gauss–Newton iteration for `R(P) = 2P² + AᵀP + PA = O` together with
/// `tr(P) + tr(A) = 0`, over symmetric `P`.
///
/// Each step solves the linearization `(2P + Aᵀ)ΔP + ΔP(2P + A) = -R(P)`,
/// augmented by the trace row, in the least-squares sense.
pub fn newton_riccati(
    a: &RealMatrix,
    seed: &RealMatrix,
    opts: &SolverOptions,
) -> Result<RiccatiSolution> {
    a.check_dim(seed)?;
    let n = a.dim();
    let scale = a.max_abs().max(1.0);
    let residual_tol = opts.residual_tol * scale * scale;
    let trace_tol = opts.trace_tol * scale;
    let basis: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let m = basis.len();
    let target_trace = -a.trace();

    let mut p = seed.symmetrize();
    let mut residual = riccati_residual_unchecked(a, &p);
    for iteration in 0..=opts.max_iterations {
        let res_norm = residual.max_abs();
        let trace_gap = (p.trace() - target_trace).abs();
        if res_norm <= residual_tol && trace_gap <= trace_tol {
            let hhd = LinearHhd::from_gradient_part(a.clone(), p)?;
            let report = RiccatiReport::evaluate(&hhd, iteration);
            return Ok(RiccatiSolution {
                hhd,
                report,
                route: SolverRoute::Newton,
            });
        }
        if iteration == opts.max_iterations {
            break;
        }

        let lin = &p.scale(2.0) + a;
        let lin_t = lin.transpose();
        let mut jac = DMatrix::<f64>::zeros(m + 1, m);
        for (col, &(k, l)) in basis.iter().enumerate() {
            let e = unit_symmetric(n, k, l);
            let image = &(&lin_t * &e) + &(&e * &lin);
            for (row, &(i, j)) in basis.iter().enumerate() {
                jac[(row, col)] = image[(i, j)];
            }
            if k == l {
                jac[(m, col)] = 1.0;
            }
        }
        let mut rhs: Vec<f64> = basis.iter().map(|&(i, j)| -residual[(i, j)]).collect();
        rhs.push(target_trace - p.trace());
        let step = least_squares(jac, &rhs)?;

        let mut delta = RealMatrix::zeros(n);
        for (&(k, l), s) in basis.iter().zip(&step) {
            delta[(k, l)] = *s;
            delta[(l, k)] = *s;
        }
        p = (&p + &delta).symmetrize();
        if p.entries().iter().any(|v| !v.is_finite()) {
            break;
        }
        residual = riccati_residual_unchecked(a, &p);
        if delta.max_abs() <= 1e-15 * scale {
            // stagnated: the augmented system has no exact zero here
            break;
        }
    }

    let res_norm = residual.max_abs();
    let trace_gap = (p.trace() - target_trace).abs();
    if res_norm <= residual_tol && res_norm.is_finite() {
        Err(Error::TraceViolation {
            trace_gap,
            residual: res_norm,
        })
    } else {
        Err(Error::NonConvergence {
            iterations: opts.max_iterations,
            residual: res_norm,
        })
    }
}

fn unit_symmetric(n: usize, k: usize, l: usize) -> RealMatrix {
    let mut e = RealMatrix::zeros(n);
    e[(k, l)] = 1.0;
    e[(l, k)] = 1.0;
    e
}

/// HHD of `B = SASᵀ` with parts `SPSᵀ`, `SHSᵀ`.
pub fn orthogonal_conjugate(d: &LinearHhd, s: &RealMatrix) -> Result<LinearHhd> {
    d.a.check_dim(s)?;
    let deviation = s.orthogonality_defect();
    if deviation > DEFAULT_TOL {
        return Err(Error::NotOrthogonal { deviation });
    }
    let st = s.transpose();
    let conj = |m: &RealMatrix| &(s * m) * &st;
    Ok(LinearHhd {
        p: conj(&d.p),
        h: conj(&d.h),
        a: conj(&d.a),
    })
}

pub fn lyapunov_candidate(d: &LinearHhd) -> QuadraticForm {
    d.lyapunov_candidate()
}

/// `∇V(x)·F(x) = (Px)·(Ax)`; equals `-‖Px‖²` for strictly orthogonal `d`.
pub fn orbital_derivative_linear(d: &LinearHhd, x: &[f64]) -> f64 {
    dot(&d.p.mul_vec(x), &d.a.mul_vec(x))
}
