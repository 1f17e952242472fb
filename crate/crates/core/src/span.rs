//! Tropical column spans: membership by residuation, and containment.

use crate::error::{Error, Result};
use crate::matrix::TropMatrix;
use crate::scalar::Scalar;

/// Residuation result for `x` against the columns of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanMembership<T> {
    pub member: bool,
    /// Greatest `λ` with `A ⊙ λ ≤ x`.
    pub certificate: Vec<T>,
    /// `A ⊙ λ`.
    pub image: Vec<T>,
}

/// Decides `x ∈ span(A)`: with `λ_j = min_i (x_i − a_ij)`, membership holds iff `A ⊙ λ = x`.
pub fn span_member<T: Scalar>(a: &TropMatrix<T>, x: &[T]) -> Result<SpanMembership<T>> {
    a.ensure_real()?;
    if x.len() != a.rows() {
        return Err(Error::EntryCount { expected: a.rows(), got: x.len() });
    }
    if a.rows() == 0 || a.cols() == 0 {
        return Err(Error::Precondition("span of an empty matrix".into()));
    }
    let (n, m) = (a.rows(), a.cols());
    let certificate: Vec<T> = (0..m)
        .map(|j| {
            (0..n)
                .map(|i| x[i].clone() - a.real(i, j).clone())
                .reduce(|acc, v| if v < acc { v } else { acc })
                .expect("nonempty column")
        })
        .collect();
    let image: Vec<T> = (0..n)
        .map(|i| {
            (0..m)
                .map(|j| a.real(i, j).clone() + certificate[j].clone())
                .reduce(|acc, v| if v > acc { v } else { acc })
                .expect("nonempty row")
        })
        .collect();
    let member = image.iter().zip(x).all(|(u, v)| u == v);
    Ok(SpanMembership { member, certificate, image })
}

/// Outcome of [`span_contains`]; `failing_column` is the first column of `B` outside `span(A)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanContainment {
    pub contains: bool,
    pub failing_column: Option<usize>,
}

/// `span(A) ⊇ span(B)`, decided column by column.
pub fn span_contains<T: Scalar>(a: &TropMatrix<T>, b: &TropMatrix<T>) -> Result<SpanContainment> {
    b.ensure_real()?;
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch {
            left_rows: a.rows(),
            left_cols: a.cols(),
            right_rows: b.rows(),
            right_cols: b.cols(),
        });
    }
    for j in 0..b.cols() {
        let col: Vec<T> = (0..b.rows()).map(|i| b.real(i, j).clone()).collect();
        if !span_member(a, &col)?.member {
            return Ok(SpanContainment { contains: false, failing_column: Some(j) });
        }
    }
    Ok(SpanContainment { contains: true, failing_column: None })
}
