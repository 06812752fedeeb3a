//! Field specifications, report assembly and plot-data emission for `hhd-kit`.
//!
//! Everything here is pure: commands return values (and an exit code); only
//! [`CaseStudyFiles::write_to`] touches the filesystem.

use std::fmt::{self, Write as _};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linear::{
    solve_riccati, symmetric_split, InitialGuess, LinearHhd, RiccatiReport, SolverOptions,
    SolverRoute,
};
use crate::matrix::RealMatrix;
use crate::planar::{
    complex_potential, quadratic_condition, solve_quadratic, strict_orthogonality_defect,
    PlanarHhd, QuadHomField,
};
use crate::sde::{equivalence_condition, hhd_to_sde, sde_to_hhd, SdeDecomposition};
use crate::stability::{vdp_linear_part, Grid, LevelSet, Point, SampledGrid, VdpCaseStudy};
use crate::wirtinger::{RealPoly2, ZPoly};

/// Default tolerance for classifying a decomposition as strictly orthogonal.
pub const DEFAULT_STRICT_TOL: f64 = 1e-8;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NONEXISTENCE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Linear,
    PlanarPoly,
    QuadHomogeneous,
    Vdp,
}

/// Input document. `f_terms`/`g_terms` map `"i,j"` to the coefficient of `xⁱyʲ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub kind: FieldKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<RealMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_terms: Option<RealPoly2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_terms: Option<RealPoly2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
}

impl FieldSpec {
    pub fn linear(matrix: RealMatrix) -> Self {
        Self {
            kind: FieldKind::Linear,
            matrix: Some(matrix),
            f_terms: None,
            g_terms: None,
            mu: None,
        }
    }

    pub fn planar(kind: FieldKind, f: RealPoly2, g: RealPoly2) -> Self {
        Self {
            kind,
            matrix: None,
            f_terms: Some(f),
            g_terms: Some(g),
            mu: None,
        }
    }

    pub fn vdp(mu: f64) -> Self {
        Self {
            kind: FieldKind::Vdp,
            matrix: None,
            f_terms: None,
            g_terms: None,
            mu: Some(mu),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: Self =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Exactly the fields required by `kind` must be present.
    pub fn validate(&self) -> Result<()> {
        let present = [
            ("matrix", self.matrix.is_some()),
            ("f_terms", self.f_terms.is_some()),
            ("g_terms", self.g_terms.is_some()),
            ("mu", self.mu.is_some()),
        ];
        let required: &[&str] = match self.kind {
            FieldKind::Linear => &["matrix"],
            FieldKind::PlanarPoly | FieldKind::QuadHomogeneous => &["f_terms", "g_terms"],
            FieldKind::Vdp => &["mu"],
        };
        for (name, is_present) in present {
            let needed = required.contains(&name);
            if needed && !is_present {
                return Err(Error::InvalidSpec(format!(
                    "{:?} field requires `{name}`",
                    self.kind
                )));
            }
            if !needed && is_present {
                return Err(Error::InvalidSpec(format!(
                    "`{name}` is not allowed for {:?} fields",
                    self.kind
                )));
            }
        }
        let finite_poly = |p: &RealPoly2| p.terms().all(|(_, _, c)| c.is_finite());
        match self.kind {
            FieldKind::Linear => {
                let m = self.matrix.as_ref().expect("validated");
                if m.dim() == 0 || !m.entries().iter().all(|v| v.is_finite()) {
                    return Err(Error::InvalidSpec(
                        "matrix must be non-empty and finite".into(),
                    ));
                }
            }
            FieldKind::PlanarPoly | FieldKind::QuadHomogeneous => {
                let (f, g) = (
                    self.f_terms.as_ref().unwrap(),
                    self.g_terms.as_ref().unwrap(),
                );
                if !finite_poly(f) || !finite_poly(g) {
                    return Err(Error::InvalidSpec("coefficients must be finite".into()));
                }
                if self.kind == FieldKind::QuadHomogeneous {
                    for (i, j, _) in f.terms().chain(g.terms()) {
                        if i + j != 2 {
                            return Err(Error::InvalidSpec(format!(
                                "quad_homogeneous admits only degree-2 monomials, got \"{i},{j}\""
                            )));
                        }
                    }
                }
            }
            FieldKind::Vdp => {
                if !self.mu.unwrap().is_finite() {
                    return Err(Error::InvalidSpec("mu must be finite".into()));
                }
            }
        }
        Ok(())
    }

    /// The matrix of a linear field; for `vdp`, its linearization at the origin.
    pub fn linear_matrix(&self) -> Result<RealMatrix> {
        match self.kind {
            FieldKind::Linear => Ok(self.matrix.clone().expect("validated")),
            FieldKind::Vdp => Ok(vdp_linear_part(self.mu.expect("validated"))),
            _ => Err(Error::InvalidSpec(format!(
                "{:?} field has no matrix form",
                self.kind
            ))),
        }
    }

    fn quad_field(&self) -> QuadHomField {
        let (f, g) = (
            self.f_terms.as_ref().unwrap(),
            self.g_terms.as_ref().unwrap(),
        );
        QuadHomField::new([
            f.coeff(2, 0),
            f.coeff(1, 1),
            f.coeff(0, 2),
            g.coeff(2, 0),
            g.coeff(1, 1),
            g.coeff(0, 2),
        ])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecomposeOptions {
    /// Threshold on the orthogonality diagnostic for `strictly_orthogonal`.
    pub tol: f64,
    pub seed: InitialGuess,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self::new()
    }
}

impl DecomposeOptions {
    pub fn new() -> Self {
        Self {
            tol: DEFAULT_STRICT_TOL,
            seed: InitialGuess::SymmetricSplit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DecompositionParts {
    Linear {
        p: RealMatrix,
        h: RealMatrix,
        riccati: RiccatiReport,
        /// `None` when the solver failed and the symmetric split is shown.
        route: Option<SolverRoute>,
    },
    Planar {
        v: RealPoly2,
        h: RealPoly2,
        w: ZPoly,
        /// `V_x H_y - V_y H_x`.
        defect: RealPoly2,
        defect_norm: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        condition_value: Option<f64>,
    },
}

impl DecompositionParts {
    /// The orthogonality diagnostic the `strictly_orthogonal` flag is based on.
    pub fn orthogonality_norm(&self) -> f64 {
        match self {
            Self::Linear { riccati, .. } => riccati.orthogonality_norm,
            Self::Planar { defect_norm, .. } => *defect_norm,
        }
    }

    fn linear(d: &LinearHhd, riccati: RiccatiReport, route: Option<SolverRoute>) -> Self {
        Self::Linear {
            p: d.p.clone(),
            h: d.h.clone(),
            riccati,
            route,
        }
    }

    fn planar(d: &PlanarHhd, condition_value: Option<f64>) -> Self {
        let defect = strict_orthogonality_defect(d);
        Self::Planar {
            v: d.v.clone(),
            h: d.h.clone(),
            w: d.w.clone(),
            defect_norm: defect.max_abs_coeff(),
            defect,
            condition_value,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub input: FieldSpec,
    pub parts: DecompositionParts,
    pub strictly_orthogonal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<String>,
}

impl DecompositionReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }
}

/// A report plus the process exit code it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome<R> {
    pub report: R,
    pub exit_code: i32,
}

/// Routes a spec to the matching decomposition. Errors are input errors;
/// nonexistence of a strict decomposition is reported with exit code 2 and
/// a fallback (non-strict) decomposition.
pub fn cmd_decompose(
    spec: &FieldSpec,
    opts: &DecomposeOptions,
) -> Result<Outcome<DecompositionReport>> {
    spec.validate()?;
    let strict = |parts: &DecompositionParts| parts.orthogonality_norm() <= opts.tol;
    let (parts, failure_reason) = match spec.kind {
        FieldKind::Linear | FieldKind::Vdp => {
            let a = spec.linear_matrix()?;
            let solver = SolverOptions {
                initial_guess: opts.seed.clone(),
                ..SolverOptions::default()
            };
            if let InitialGuess::Matrix(m) = &opts.seed {
                a.check_dim(m)?;
            }
            match solve_riccati(&a, &solver) {
                Ok(sol) => (
                    DecompositionParts::linear(&sol.hhd, sol.report, Some(sol.route)),
                    None,
                ),
                Err(e) => {
                    let d = symmetric_split(&a);
                    let report = RiccatiReport::evaluate(&d, 0);
                    (
                        DecompositionParts::linear(&d, report, None),
                        Some(format!("{e}; showing the symmetric split instead")),
                    )
                }
            }
        }
        FieldKind::PlanarPoly => {
            let d = complex_potential(
                spec.f_terms.as_ref().unwrap(),
                spec.g_terms.as_ref().unwrap(),
            );
            (DecompositionParts::planar(&d, None), None)
        }
        FieldKind::QuadHomogeneous => {
            let q = spec.quad_field();
            let value = Some(quadratic_condition(&q));
            match solve_quadratic(&q) {
                Ok(d) => (DecompositionParts::planar(&d, value), None),
                Err(e) => {
                    let (f, g) = q.to_polys();
                    let d = complex_potential(&f, &g);
                    (
                        DecompositionParts::planar(&d, value),
                        Some(format!("{e}; showing the plain complex potential instead")),
                    )
                }
            }
        }
    };
    let strictly_orthogonal = failure_reason.is_none() && strict(&parts);
    let exit_code = if failure_reason.is_some() {
        EXIT_NONEXISTENCE
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        report: DecompositionReport {
            input: spec.clone(),
            parts,
            strictly_orthogonal,
            failure_reason,
        },
        exit_code,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdeReport {
    pub input: FieldSpec,
    pub d: RealMatrix,
    /// The HHD the bridge was applied to.
    pub p: RealMatrix,
    pub h: RealMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<RealMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<RealMatrix>,
    /// Max-abs error of `F = -(D + Q)U` against the input matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruction_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<String>,
}

impl SdeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Looks for an SDE decomposition with diffusion `d` (default `I`).
///
/// With `gradient = Some(P)` the HHD `A = -P + H` is taken as given (it
/// need not be strictly orthogonal); otherwise the Riccati solver picks a
/// strictly orthogonal one.
pub fn cmd_sde(
    spec: &FieldSpec,
    d: Option<&RealMatrix>,
    gradient: Option<&RealMatrix>,
    opts: &DecomposeOptions,
) -> Result<Outcome<SdeReport>> {
    spec.validate()?;
    let a = spec.linear_matrix()?;
    let n = a.dim();
    let dmat = d.cloned().unwrap_or_else(|| RealMatrix::identity(n));
    a.check_dim(&dmat)?;
    if !dmat.is_symmetric(crate::matrix::DEFAULT_TOL) {
        return Err(Error::InvalidMatrix("D must be symmetric".into()));
    }

    let fail = |p: RealMatrix, h: RealMatrix, reason: String| Outcome {
        report: SdeReport {
            input: spec.clone(),
            d: dmat.clone(),
            p,
            h,
            q: None,
            u: None,
            reconstruction_error: None,
            failure_reason: Some(reason),
        },
        exit_code: EXIT_NONEXISTENCE,
    };

    let hhd = match gradient {
        Some(p) => {
            a.check_dim(p)?;
            if !p.is_symmetric(crate::matrix::DEFAULT_TOL) {
                return Err(Error::InvalidMatrix(
                    "gradient part must be symmetric".into(),
                ));
            }
            LinearHhd::from_gradient_part(a.clone(), p.clone())?
        }
        None => {
            let solver = SolverOptions {
                initial_guess: opts.seed.clone(),
                ..SolverOptions::default()
            };
            match solve_riccati(&a, &solver) {
                Ok(sol) => sol.hhd,
                Err(e) => {
                    let s = symmetric_split(&a);
                    return Ok(fail(
                        s.p,
                        s.h,
                        format!("no strictly orthogonal HHD found: {e}"),
                    ));
                }
            }
        }
    };

    let identity = dmat == RealMatrix::identity(n);
    let sde = if identity {
        hhd_to_sde(&hhd)
    } else {
        equivalence_condition(&dmat, &hhd).and_then(|q| {
            let u = &dmat.inverse()? * &hhd.p;
            SdeDecomposition::new(dmat.clone(), q, u.symmetrize())
        })
    };
    match sde {
        Ok(s) => {
            let back = sde_to_hhd(&s)?;
            let err = back.p.distance(&hhd.p).max(back.h.distance(&hhd.h));
            let err = err.max(s.f.distance(&a));
            Ok(Outcome {
                report: SdeReport {
                    input: spec.clone(),
                    d: dmat,
                    p: hhd.p,
                    h: hhd.h,
                    q: Some(s.q),
                    u: Some(s.u),
                    reconstruction_error: Some(err),
                    failure_reason: None,
                },
                exit_code: EXIT_OK,
            })
        }
        Err(e) => Ok(fail(
            hhd.p,
            hhd.h,
            format!("no SDE decomposition with this D reproduces the HHD: {e}"),
        )),
    }
}

/// Named text artifacts produced by [`casestudy_vdp`].
#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudyFiles {
    pub files: Vec<(String, String)>,
}

impl CaseStudyFiles {
    pub fn get(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.as_str())
    }

    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        for (name, contents) in &self.files {
            std::fs::write(dir.join(name), contents)?;
        }
        Ok(())
    }
}

/// Samples used for the `γ` and nullcline curves.
pub const CURVE_SAMPLES: usize = 400;

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn polyline_rows(out: &mut String, prefix: &str, set: &LevelSet) {
    for (k, line) in set.polylines.iter().enumerate() {
        for (v, p) in line.points.iter().enumerate() {
            let _ = writeln!(
                out,
                "{prefix}{k},{},{v},{},{}",
                line.closed,
                num(p[0]),
                num(p[1])
            );
        }
    }
}

/// Splits nullcline samples at the poles `x = ±1`.
fn nullcline_branches(points: &[Point]) -> Vec<Vec<Point>> {
    let side = |x: f64| {
        if x < -1.0 {
            0
        } else if x < 1.0 {
            1
        } else {
            2
        }
    };
    let mut out: Vec<Vec<Point>> = Vec::new();
    let mut current = None;
    for p in points {
        let s = side(p[0]);
        if current != Some(s) {
            out.push(Vec::new());
            current = Some(s);
        }
        out.last_mut().unwrap().push(*p);
    }
    out
}

/// CSV plot data plus an SVG overlay for the Van der Pol study. Output is a
/// pure function of the arguments.
pub fn casestudy_vdp(mu: f64, grid: Grid, levels: &[f64]) -> Result<CaseStudyFiles> {
    let cs = VdpCaseStudy::new(mu, grid)?;
    let level_sets = cs.level_sets(levels)?;
    let zero = cs.wdot_zero_set()?;
    let signs = cs.wdot_signs()?;
    let gamma = cs.gamma_samples(CURVE_SAMPLES);
    let nullcline = nullcline_branches(&cs.nullcline_samples(CURVE_SAMPLES + 1));

    let mut level_csv = String::from("level,polyline,closed,vertex,x,y\n");
    for set in &level_sets {
        polyline_rows(&mut level_csv, &format!("{},", num(set.level)), set);
    }
    let mut zero_csv = String::from("polyline,closed,vertex,x,y\n");
    polyline_rows(&mut zero_csv, "", &zero);

    let mut gamma_csv = String::from("x,y\n");
    for p in &gamma {
        let _ = writeln!(gamma_csv, "{},{}", num(p[0]), num(p[1]));
    }
    let mut null_csv = String::from("branch,x,y\n");
    for (b, branch) in nullcline.iter().enumerate() {
        for p in branch {
            let _ = writeln!(null_csv, "{b},{},{}", num(p[0]), num(p[1]));
        }
    }
    let mut sign_csv = String::from("i,j,x,y,wdot,sign\n");
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let [x, y] = grid.node(i, j);
            let _ = writeln!(
                sign_csv,
                "{i},{j},{},{},{},{}",
                num(x),
                num(y),
                num(signs.at(i, j)),
                signs.sign(i, j)
            );
        }
    }
    let svg = overlay_svg(&cs, &level_sets, &zero, &gamma, &nullcline, &signs);
    Ok(CaseStudyFiles {
        files: vec![
            ("level_sets.csv".into(), level_csv),
            ("wdot_zero.csv".into(), zero_csv),
            ("gamma.csv".into(), gamma_csv),
            ("nullcline.csv".into(), null_csv),
            ("wdot_sign.csv".into(), sign_csv),
            ("overlay.svg".into(), svg),
        ],
    })
}

const SVG_SIZE: f64 = 600.0;

fn overlay_svg(
    cs: &VdpCaseStudy,
    level_sets: &[LevelSet],
    zero: &LevelSet,
    gamma: &[Point],
    nullcline: &[Vec<Point>],
    signs: &SampledGrid,
) -> String {
    let g = cs.grid;
    let to_px = |p: Point| {
        (
            (p[0] - g.xmin) / (g.xmax - g.xmin) * SVG_SIZE,
            (g.ymax - p[1]) / (g.ymax - g.ymin) * SVG_SIZE,
        )
    };
    // curves leaving the window are cut into pieces
    let path = |points: &[Point], closed: bool| -> String {
        let mut d = String::new();
        let mut pen_down = false;
        for p in points {
            if !g.contains(*p) {
                pen_down = false;
                continue;
            }
            let (x, y) = to_px(*p);
            let _ = write!(d, "{}{x:.2},{y:.2} ", if pen_down { "L" } else { "M" });
            pen_down = true;
        }
        if closed && !d.is_empty() && points.iter().all(|p| g.contains(*p)) {
            d.push('Z');
        }
        d
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    // shade nodes where Ẇ > 0
    let (cw, ch) = (SVG_SIZE / (g.nx - 1) as f64, SVG_SIZE / (g.ny - 1) as f64);
    let _ = writeln!(s, r##"<g fill="#fde0c5" stroke="none">"##);
    for j in 0..g.ny {
        for i in 0..g.nx {
            if signs.sign(i, j) > 0 {
                let (x, y) = to_px(g.node(i, j));
                let _ = writeln!(
                    s,
                    r#"<rect x="{:.2}" y="{:.2}" width="{cw:.2}" height="{ch:.2}"/>"#,
                    x - cw / 2.0,
                    y - ch / 2.0
                );
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let (ox, oy) = to_px([0.0, 0.0]);
    let _ = writeln!(
        s,
        r##"<g stroke="#999" stroke-width="1"><line x1="0" y1="{oy:.2}" x2="{SVG_SIZE}" y2="{oy:.2}"/><line x1="{ox:.2}" y1="0" x2="{ox:.2}" y2="{SVG_SIZE}"/></g>"##
    );
    let mut group = |name: &str, color: &str, width: f64, dash: &str, paths: Vec<String>| {
        let _ = writeln!(
            s,
            r#"<g id="{name}" fill="none" stroke="{color}" stroke-width="{width}"{dash}>"#
        );
        for d in paths.into_iter().filter(|d| !d.is_empty()) {
            let _ = writeln!(s, r#"<path d="{}"/>"#, d.trim_end());
        }
        let _ = writeln!(s, "</g>");
    };
    group(
        "level-sets",
        "#1f77b4",
        1.5,
        "",
        level_sets
            .iter()
            .flat_map(|set| &set.polylines)
            .map(|l| path(&l.points, l.closed))
            .collect(),
    );
    group(
        "wdot-zero",
        "#d62728",
        1.5,
        "",
        zero.polylines
            .iter()
            .map(|l| path(&l.points, l.closed))
            .collect(),
    );
    group(
        "gamma",
        "#2ca02c",
        2.0,
        r#" stroke-dasharray="6 3""#,
        vec![path(gamma, false)],
    );
    group(
        "nullcline",
        "#9467bd",
        1.5,
        r#" stroke-dasharray="2 2""#,
        nullcline.iter().map(|b| path(b, false)).collect(),
    );
    let _ = writeln!(
        s,
        r#"<text x="8" y="18" font-family="sans-serif" font-size="13">mu = {}</text>"#,
        cs.mu
    );
    s.push_str("</svg>\n");
    s
}

/// `"a,b,c"` → levels; empty string → no levels.
pub fn parse_levels(text: &str) -> Result<Vec<f64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::InvalidSpec(format!("bad level `{t}`")))
        })
        .collect()
}

/// `"xmin,xmax,ymin,ymax,nx,ny"`.
pub fn parse_grid(text: &str) -> Result<Grid> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || {
        Error::InvalidSpec(format!(
            "grid must be xmin,xmax,ymin,ymax,nx,ny; got `{text}`"
        ))
    };
    if parts.len() != 6 {
        return Err(bad());
    }
    let r: Vec<f64> = parts[..4]
        .iter()
        .map(|t| t.parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let nx = parts[4].parse::<usize>().map_err(|_| bad())?;
    let ny = parts[5].parse::<usize>().map_err(|_| bad())?;
    Grid::new(r[0], r[1], r[2], r[3], nx, ny)
}

/// A JSON matrix (`[[..],[..]]`) or a real scalar `s`, meaning `P₀ = s·I`.
pub fn parse_seed(text: &str) -> Result<InitialGuess> {
    let t = text.trim();
    if let Ok(s) = t.parse::<f64>() {
        if !s.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "seed must be finite, got `{t}`"
            )));
        }
        return Ok(InitialGuess::Scalar(s));
    }
    parse_matrix(t).map(InitialGuess::Matrix)
}

pub fn parse_matrix(text: &str) -> Result<RealMatrix> {
    serde_json::from_str(text.trim())
        .map_err(|e| Error::InvalidSpec(format!("bad matrix `{}`: {e}", text.trim())))
}

fn fmt_matrix(f: &mut fmt::Formatter<'_>, name: &str, m: &RealMatrix) -> fmt::Result {
    writeln!(f, "{name} =")?;
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>24.16e}")).collect();
        writeln!(f, "  [{}]", cells.join(" "))?;
    }
    Ok(())
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field kind: {:?}", self.input.kind)?;
        match &self.parts {
            DecompositionParts::Linear {
                p,
                h,
                riccati,
                route,
            } => {
                fmt_matrix(f, "P", p)?;
                fmt_matrix(f, "H", h)?;
                match route {
                    Some(r) => writeln!(f, "route: {r:?}")?,
                    None => writeln!(f, "route: fallback symmetric split")?,
                }
                writeln!(f, "Riccati residual: {:e}", riccati.residual_norm)?;
                writeln!(f, "trace gap: {:e}", riccati.trace_gap)?;
                writeln!(f, "|PH + H^T P|: {:e}", riccati.orthogonality_norm)?;
                writeln!(f, "iterations: {}", riccati.iterations)?;
            }
            DecompositionParts::Planar {
                v,
                h,
                w,
                defect,
                defect_norm,
                condition_value,
            } => {
                writeln!(f, "V = {v}")?;
                writeln!(f, "H = {h}")?;
                writeln!(f, "W = {w}")?;
                if let Some(c) = condition_value {
                    writeln!(f, "condition value: {c:e}")?;
                }
                writeln!(f, "orthogonality defect: {defect}")?;
                writeln!(f, "defect max coefficient: {defect_norm:e}")?;
            }
        }
        writeln!(f, "strictly orthogonal: {}", self.strictly_orthogonal)?;
        if let Some(r) = &self.failure_reason {
            writeln!(f, "failure: {r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SdeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_matrix(f, "D", &self.d)?;
        fmt_matrix(f, "P", &self.p)?;
        fmt_matrix(f, "H", &self.h)?;
        if let Some(q) = &self.q {
            fmt_matrix(f, "Q", q)?;
        }
        if let Some(u) = &self.u {
            fmt_matrix(f, "U", u)?;
        }
        if let Some(e) = self.reconstruction_error {
            writeln!(f, "reconstruction error: {e:e}")?;
        }
        if let Some(r) = &self.failure_reason {
            writeln!(f, "failure: {r}")?;
        }
        Ok(())
    }
}
