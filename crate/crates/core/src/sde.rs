//! Correspondence between strictly orthogonal matrix HHDs and SDE
//! decompositions `F = -(D + Q)U` (`D`, `U` symmetric, `Q` skew).
//!
//! Via `P = DU`, `H = -QU`, an SDE decomposition with `D = I` is the same
//! thing as a strictly orthogonal HHD with invertible `P`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::LinearHhd;
use crate::matrix::{least_squares, RealMatrix, DEFAULT_TOL};

/// Condition-number cutoff above which `P` is treated as singular.
pub const SINGULAR_CONDITION: f64 = 1e12;

/// Residual acceptance for the skew solution of `QP + HD = O`.
pub const EQUIVALENCE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdeDecomposition {
    pub d: RealMatrix,
    pub q: RealMatrix,
    pub u: RealMatrix,
    pub f: RealMatrix,
}

impl SdeDecomposition {
    /// Assembles `f = -(d + q)u` after checking the symmetry requirements.
    pub fn new(d: RealMatrix, q: RealMatrix, u: RealMatrix) -> Result<Self> {
        d.check_dim(&q)?;
        d.check_dim(&u)?;
        if !d.is_symmetric(DEFAULT_TOL) {
            return Err(Error::InvalidMatrix("D must be symmetric".into()));
        }
        if !u.is_symmetric(DEFAULT_TOL) {
            return Err(Error::InvalidMatrix("U must be symmetric".into()));
        }
        if !q.is_skew_symmetric(DEFAULT_TOL) {
            return Err(Error::InvalidMatrix("Q must be skew-symmetric".into()));
        }
        let f = -&(&(&d + &q) * &u);
        Ok(Self { d, q, u, f })
    }

    /// `tr(QU)`; vanishes for skew `Q` and symmetric `U`.
    pub fn trace_qu(&self) -> f64 {
        (&self.q * &self.u).trace()
    }
}

/// `P = DU`, `H = -QU`, provided `DU` is symmetric.
pub fn sde_to_hhd(s: &SdeDecomposition) -> Result<LinearHhd> {
    let du = &s.d * &s.u;
    let scale = du.max_abs().max(1.0);
    let asymmetry = du.asymmetry();
    if asymmetry > DEFAULT_TOL * scale {
        return Err(Error::AsymmetricDu { asymmetry });
    }
    Ok(LinearHhd {
        p: du.symmetrize(),
        h: -&(&s.q * &s.u),
        a: s.f.clone(),
    })
}

/// `D = I`, `U = P`, `Q = -HP⁻¹`.
pub fn hhd_to_sde(d: &LinearHhd) -> Result<SdeDecomposition> {
    let condition = d.p.condition_number();
    if !(condition <= SINGULAR_CONDITION) {
        return Err(Error::SingularGradient { condition });
    }
    let q = -&(&d.h * &d.p.inverse()?);
    let scale = q.max_abs().max(1.0);
    let skew_defect = (&q + &q.transpose()).max_abs();
    if skew_defect > EQUIVALENCE_TOL * scale {
        // only happens when d is not strictly orthogonal
        return Err(Error::NoSkewSolution {
            residual: skew_defect,
        });
    }
    let q = (&q - &q.transpose()).scale(0.5);
    let n = d.dim();
    let mut s = SdeDecomposition::new(RealMatrix::identity(n), q, d.p.clone())?;
    s.f = d.a.clone();
    Ok(s)
}

/// Searches for a skew-symmetric `Q` with `QP + HD = O`, given that `D`
/// commutes with `P`. Least squares over the strictly upper entries of `Q`.
pub fn equivalence_condition(dmat: &RealMatrix, d: &LinearHhd) -> Result<RealMatrix> {
    dmat.check_dim(&d.p)?;
    if !dmat.is_symmetric(DEFAULT_TOL) {
        return Err(Error::InvalidMatrix("D must be symmetric".into()));
    }
    if !(dmat.condition_number() <= SINGULAR_CONDITION) {
        return Err(Error::InvalidMatrix("D must be regular".into()));
    }
    let commutator = (&(dmat * &d.p) - &(&d.p * dmat)).max_abs();
    let scale = (dmat.max_abs() * d.p.max_abs()).max(1.0);
    if commutator > EQUIVALENCE_TOL * scale {
        return Err(Error::NonCommuting { commutator });
    }

    let n = d.dim();
    let hd = &d.h * dmat;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut q = RealMatrix::zeros(n);
    if !pairs.is_empty() {
        let mut sys = DMatrix::<f64>::zeros(n * n, pairs.len());
        for (col, &(i, j)) in pairs.iter().enumerate() {
            let mut basis = RealMatrix::zeros(n);
            basis[(i, j)] = 1.0;
            basis[(j, i)] = -1.0;
            let image = &basis * &d.p;
            for (row, v) in image.entries().iter().enumerate() {
                sys[(row, col)] = *v;
            }
        }
        let rhs: Vec<f64> = hd.entries().iter().map(|v| -v).collect();
        let sol = least_squares(sys, &rhs)?;
        for (&(i, j), v) in pairs.iter().zip(sol) {
            q[(i, j)] = v;
            q[(j, i)] = -v;
        }
    }
    let residual = (&(&q * &d.p) + &hd).max_abs();
    let res_scale = (d.h.max_abs() * dmat.max_abs()).max(1.0);
    if residual > EQUIVALENCE_TOL * res_scale {
        return Err(Error::NoSkewSolution { residual });
    }
    Ok(q)
}
