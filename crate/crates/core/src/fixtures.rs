//! Hand-checked reference matrices used by tests, the acceptance suite and
//! the `paper-suite` CLI command. Indices in winners are 0-based here.

use crate::commutant::Winner;
use crate::Matrix;

/// Strictly normal 4×4 matrix that commutes with [`strict4_b`].
pub fn strict4_a() -> Matrix {
    Matrix::from_int_rows(&[[0, -4, -6, -3], [-6, 0, -4, -3], [-3, -6, 0, -3], [-6, -3, -3, 0]])
}

pub fn strict4_b() -> Matrix {
    Matrix::from_int_rows(&[[0, -4, -4, -6], [-2, 0, -3, -4], [-5, -6, 0, -5], [-6, -5, -2, 0]])
}

/// `AB = BA` for the pair above.
pub fn strict4_product() -> Matrix {
    Matrix::from_int_rows(&[[0, -4, -4, -3], [-2, 0, -3, -3], [-3, -6, 0, -3], [-5, -3, -2, 0]])
}

/// One winner certifying `B ∈ Ω_w(A)` for the 4×4 pair (1-based pairs).
pub fn strict4_winner() -> Winner {
    let expected: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 1), (1, 3), (4, 1)],
        [(2, 1), (0, 0), (2, 3), (4, 2)],
        [(1, 3), (2, 2), (0, 0), (4, 3)],
        [(2, 3), (2, 4), (4, 3), (0, 0)],
    ];
    let mut w = Winner::identity(4);
    for (i, row) in expected.iter().enumerate() {
        for (j, &(a, b)) in row.iter().enumerate() {
            if i != j {
                w.set(i, j, (a - 1, b - 1)).expect("valid winner");
            }
        }
    }
    w
}

/// `A ⊕ B` for the 4×4 pair; not idempotent.
pub fn strict4_sum() -> Matrix {
    strict4_a().mat_add(&strict4_b()).expect("same shape")
}

/// The 3×3 border matrix used throughout the bar/overline examples.
pub fn border3() -> Matrix {
    Matrix::from_int_rows(&[[0, -3, -1], [-4, 0, -6], [-5, 0, 0]])
}

pub fn border3_underline() -> Matrix {
    Matrix::from_int_rows(&[[0, -3, -3], [-5, 0, -6], [-5, -2, 0]])
}

pub fn border3_overline() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -1], [-4, 0, -5], [-4, 0, 0]])
}

/// Order-7 bound matrix of `{X : border3 ≤ underline(X)}` under the row-major relabeling.
pub fn border3_upper_h() -> Matrix {
    crate::io::parse_matrix(
        "7 7
         0 0 -inf -inf -inf -1 -3
         -6 0 -inf -3 -inf -inf -1
         -inf -inf 0 -5 -6 -inf -4
         -inf -4 -1 0 -inf -inf -6
         -inf -inf 0 -inf 0 -4 -5
         -5 -inf -inf -inf -3 0 0
         0 0 0 0 0 0 0",
    )
    .expect("well-formed literal")
}

pub fn border3_upper_h_star() -> Matrix {
    Matrix::from_int_rows(&[
        [0, 0, -1, -1, -1, -1, -1],
        [-1, 0, -1, -1, -1, -1, -1],
        [-4, -4, 0, -4, -4, -4, -4],
        [-5, -4, -1, 0, -5, -5, -5],
        [-4, -4, 0, -4, 0, -4, -4],
        [0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0],
    ])
}

/// A₀ of the three bar matrices: (underline, border3, overline).
pub fn border3_a0_triple() -> [Matrix; 3] {
    [
        Matrix::from_int_rows(&[[5, -1, -3], [0, 2, -6], [0, 0, 0]]),
        Matrix::from_int_rows(&[[5, -3, -1], [1, 0, -6], [0, 0, 0]]),
        Matrix::from_int_rows(&[[4, -1, -1], [0, 0, -5], [0, 0, 0]]),
    ]
}

/// Lies between underline and overline of [`border3`] yet does not commute with it.
pub fn bars_gap_x() -> Matrix {
    Matrix::from_int_rows(&[[0, -2, -2], [-4, 0, -5], [-4, 0, 0]])
}

/// `X·border3` for [`bars_gap_x`]; `border3·X` equals the overline.
pub fn bars_gap_xb() -> Matrix {
    Matrix::from_int_rows(&[[0, -2, -1], [-4, 0, -5], [-4, 0, 0]])
}

/// Lies between the Kleene star of [`border3`] and zero yet does not commute with it.
/// The reference display lists this matrix and `border3·X` the other way round;
/// the matrix shown there as `X` commutes with `border3`.
pub fn star_gap_x() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -1], [0, 0, -1], [-1, 0, 0]])
}

/// `border3·X` for [`star_gap_x`]; `X·border3 = X`.
pub fn star_gap_bx() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -1], [0, 0, -1], [0, 0, 0]])
}

/// `P(−(4,3,5), −2)` and `P(−(4,3,5), −1)`.
pub fn band_pair() -> (Matrix, Matrix) {
    (
        Matrix::from_int_rows(&[[0, -2, -5], [-4, 0, -2], [-2, -3, 0]]),
        Matrix::from_int_rows(&[[0, -1, -5], [-4, 0, -1], [-1, -3, 0]]),
    )
}

/// Product of [`band_pair`] in either order, `P(−(3,3,3), −1)`.
pub fn band_product() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -3], [-3, 0, -1], [-1, -3, 0]])
}

/// A₀ for (first band matrix, `P(−p, 0)`, second band matrix, product).
pub fn band_a0_quadruple() -> [Matrix; 4] {
    [
        Matrix::from_int_rows(&[[2, 1, -5], [-2, 3, -2], [0, 0, 0]]),
        Matrix::from_int_rows(&[[0, 3, -5], [-4, 3, 0], [0, 0, 0]]),
        Matrix::from_int_rows(&[[1, 2, -5], [-3, 3, -1], [0, 0, 0]]),
        Matrix::from_int_rows(&[[1, 2, -3], [-2, 3, -1], [0, 0, 0]]),
    ]
}

/// `A ≤ B` with `B` not idempotent; the pair does not commute.
pub fn nested_a() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -3], [0, 0, -4], [0, 0, 0]])
}

pub fn nested_b() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -2], [0, 0, -4], [0, 0, 0]])
}

pub fn nested_ab() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -2], [0, 0, -2], [0, 0, 0]])
}

pub fn nested_ba() -> Matrix {
    Matrix::from_int_rows(&[[0, -1, -2], [0, 0, -3], [0, 0, 0]])
}
