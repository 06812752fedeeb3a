//! Fixed inputs for the decomposition benchmarks.

use hhd_core::planar::QuadHomField;
use hhd_core::stability::Grid;
use hhd_core::{RealMatrix, RealPoly2};

/// The 3×3 normal matrix with `P = diag(-3, 1, -3)`.
pub fn normal_3x3() -> RealMatrix {
    RealMatrix::from_rows(&[[3.0, 0.0, -4.0], [0.0, -1.0, 0.0], [4.0, 0.0, 3.0]]).unwrap()
}

pub fn generic_2x2() -> RealMatrix {
    RealMatrix::from_rows(&[[1.3, -2.1], [0.4, -3.7]]).unwrap()
}

/// `-(I + Q)U` with symmetric `U` and skew `Q`: has a strict HHD but is not normal.
pub fn strict_non_normal(n: usize) -> RealMatrix {
    let u = RealMatrix::from_fn(n, |i, j| {
        if i == j {
            -(2.0 + i as f64)
        } else {
            0.3 / (1.0 + (i + j) as f64)
        }
    });
    let q = RealMatrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => 0.5 + 0.1 * j as f64,
        std::cmp::Ordering::Greater => -(0.5 + 0.1 * i as f64),
        std::cmp::Ordering::Equal => 0.0,
    });
    -&(&(&RealMatrix::identity(n) + &q) * &u)
}

/// A dense planar field of total degree `deg`.
pub fn planar_field(deg: u32) -> (RealPoly2, RealPoly2) {
    let mut f = RealPoly2::zero();
    let mut g = RealPoly2::zero();
    for d in 0..=deg {
        for i in 0..=d {
            let j = d - i;
            f.add_term(i, j, 1.0 + 0.25 * i as f64 - 0.5 * j as f64);
            g.add_term(i, j, -0.75 + 0.5 * i as f64 * j as f64);
        }
    }
    (f, g)
}

/// The second homogeneous quadratic example, which satisfies the condition.
pub fn solvable_quadratic() -> QuadHomField {
    QuadHomField::new([1.0, -2.0, 3.0, 4.0, -4.0, 2.0])
}

pub fn vdp_grid(n: usize) -> Grid {
    Grid::new(-4.0, 4.0, -4.0, 4.0, n, n).unwrap()
}
