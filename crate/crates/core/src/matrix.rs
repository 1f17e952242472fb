//! Dense max-plus matrices and the normal-matrix toolkit built on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::ext::{Bottom, ExtReal, Finite};
use crate::scalar::Scalar;

/// Dense row-major matrix over `T ∪ {−∞}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<ExtReal<T>>,
}

impl<T: Scalar> TropMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExtReal<T>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount { expected: rows * cols, got: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn filled(rows: usize, cols: usize, value: ExtReal<T>) -> Self {
        Self { rows, cols, entries: vec![value; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<ExtReal<T>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::EntryCount { expected: ncols, got: row.len() });
            }
            entries.extend(row);
        }
        Self::new(nrows, ncols, entries)
    }

    /// Real matrix from integer rows. Panics on ragged input.
    pub fn from_int_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let data = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| ExtReal::int(v)).collect())
            .collect();
        Self::from_rows(data).expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn entries(&self) -> &[ExtReal<T>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &ExtReal<T> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExtReal<T>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[ExtReal<T>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<ExtReal<T>> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Finite value at `(i, j)`; callers must have checked [`Self::is_real`].
    pub(crate) fn real(&self, i: usize, j: usize) -> &T {
        self.get(i, j).finite().expect("real matrix entry")
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&ExtReal<T>, &ExtReal<T>) -> ExtReal<T>) -> Result<Self> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    /// Tropical product `(AB)_ij = max_k a_ik + b_kj`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::filled(self.rows, other.cols, Bottom);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_bottom() {
                    continue;
                }
                for j in 0..other.cols {
                    let cand = a.otimes(other.get(k, j));
                    let slot = &mut out.entries[i * other.cols + j];
                    if cand > *slot {
                        *slot = cand;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise max.
    pub fn mat_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, ExtReal::oplus)
    }

    /// Entrywise min.
    pub fn mat_min(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, ExtReal::min_with)
    }

    /// Entrywise `≤`.
    pub fn mat_le(&self, other: &Self) -> Result<bool> {
        self.same_shape(other)?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    /// `λ ⊙ A`: λ added to every entry.
    pub fn scalar_mul(&self, lambda: &ExtReal<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.otimes(lambda)).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::filled(n, n, Bottom);
        for i in 0..n {
            m.set(i, i, ExtReal::zero());
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        Self::filled(n, n, ExtReal::zero())
    }

    /// `K(r)`: zero diagonal, `r` elsewhere.
    pub fn const_matrix(r: ExtReal<T>, n: usize) -> Result<Self> {
        if r > ExtReal::zero() {
            return Err(Error::PositiveEntry(r.to_exact_string()));
        }
        let mut m = Self::filled(n, n, r);
        for i in 0..n {
            m.set(i, i, ExtReal::zero());
        }
        Ok(m)
    }

    /// `E_ij(r)`: `r` at `(i, j)` (0-based), zero elsewhere.
    pub fn unit_perturbation(n: usize, i: usize, j: usize, r: ExtReal<T>) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange(format!("({i}, {j}) for order {n}")));
        }
        if i == j {
            return Err(Error::DiagonalPosition(i));
        }
        if r > ExtReal::zero() {
            return Err(Error::PositiveEntry(r.to_exact_string()));
        }
        let mut m = Self::zero(n);
        m.set(i, j, r);
        Ok(m)
    }

    pub fn diag(d: &[ExtReal<T>]) -> Self {
        let mut m = Self::filled(d.len(), d.len(), Bottom);
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(ExtReal::is_finite)
    }

    /// `I ≤ A ≤ 0`.
    pub fn is_normal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        *v == ExtReal::zero()
                    } else {
                        *v <= ExtReal::zero()
                    }
                })
            })
    }

    pub fn is_strictly_normal(&self) -> bool {
        self.is_normal() && self.off_diagonal().all(|(_, _, v)| *v < ExtReal::zero())
    }

    /// Normal with some off-diagonal entry equal to `0` or `−∞`.
    pub fn is_border(&self) -> bool {
        self.is_normal() && self.off_diagonal().any(|(_, _, v)| v.is_bottom() || *v == ExtReal::zero())
    }

    pub fn is_idempotent(&self) -> bool {
        self.mat_mul(self).map(|sq| sq == *self).unwrap_or(false)
    }

    pub fn off_diagonal(&self) -> impl Iterator<Item = (usize, usize, &ExtReal<T>)> + '_ {
        (0..self.rows)
            .flat_map(move |i| (0..self.cols).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(move |(i, j)| (i, j, self.get(i, j)))
    }

    pub fn ensure_normal(&self) -> Result<usize> {
        let n = self.order()?;
        if !self.is_normal() {
            let culprit = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| {
                    let v = self.get(i, j);
                    if i == j {
                        *v != ExtReal::zero()
                    } else {
                        *v > ExtReal::zero()
                    }
                })
                .map(|(i, j)| format!("entry ({}, {}) = {}", i + 1, j + 1, self.get(i, j)))
                .unwrap_or_default();
            return Err(Error::NotNormal(culprit));
        }
        Ok(n)
    }

    pub fn ensure_real(&self) -> Result<()> {
        match self.entries.iter().position(ExtReal::is_bottom) {
            Some(p) => Err(Error::NotReal { row: p / self.cols + 1, col: p % self.cols + 1 }),
            None => Ok(()),
        }
    }

    pub fn ensure_real_normal(&self) -> Result<usize> {
        let n = self.ensure_normal()?;
        self.ensure_real()?;
        Ok(n)
    }

    /// `A^k` for a normal matrix, by binary exponentiation. `A^0 = I`.
    pub fn mat_pow(&self, k: usize) -> Result<Self> {
        let n = self.ensure_normal()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mat_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mat_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `A* = A^(n−1)`, by repeated squaring. The chain `A ≤ A² ≤ …` is
    /// monotone and stabilises at `n − 1`, so overshooting is harmless.
    pub fn kleene_star(&self) -> Result<Self> {
        let n = self.ensure_normal()?;
        let mut star = self.clone();
        let mut reached = 1usize;
        if n <= 1 {
            return Ok(Self::identity(n));
        }
        while reached < n - 1 {
            star = star.mat_mul(&star)?;
            reached *= 2;
        }
        Ok(star)
    }

    /// `A₀ = A ⊙ diag(−row(A, n))`: every column shifted so the last row is zero.
    pub fn normalize_a0(&self) -> Result<Self> {
        if self.rows == 0 {
            return Ok(self.clone());
        }
        let last = self.rows - 1;
        let mut shift = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            match self.get(last, j) {
                Finite(v) => shift.push(Finite(-v.clone())),
                Bottom => return Err(Error::NotReal { row: last + 1, col: j + 1 }),
            }
        }
        self.mat_mul(&Self::diag(&shift))
    }

    /// `m(A)`: the smallest entry of a real normal matrix.
    pub fn min_offdiag(&self) -> Result<T> {
        let n = self.ensure_real_normal()?;
        if n < 2 {
            return Ok(T::zero());
        }
        let mut best = self.real(0, 1).clone();
        for (i, j, _) in self.off_diagonal() {
            let v = self.real(i, j);
            if *v < best {
                best = v.clone();
            }
        }
        Ok(best)
    }

    /// `M(A)`: the largest off-diagonal entry of a real normal matrix.
    pub fn max_offdiag(&self) -> Result<T> {
        let n = self.ensure_real_normal()?;
        if n < 2 {
            return Ok(T::zero());
        }
        let mut best = self.real(0, 1).clone();
        for (i, j, _) in self.off_diagonal() {
            let v = self.real(i, j);
            if *v > best {
                best = v.clone();
            }
        }
        Ok(best)
    }
}

impl<T: Scalar> fmt::Display for TropMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ExtReal::to_exact_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for i in 0..self.rows {
            let line: Vec<String> =
                (0..self.cols).map(|j| format!("{:>width$}", cells[i * self.cols + j])).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Free-function form of [`TropMatrix::mat_mul`].
pub fn mat_mul<T: Scalar>(a: &TropMatrix<T>, b: &TropMatrix<T>) -> Result<TropMatrix<T>> {
    a.mat_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Matrix;

    #[test]
    fn identity_is_neutral() {
        let a = fixtures::strict4_a();
        assert_eq!(Matrix::identity(4).mat_mul(&a).unwrap(), a);
        assert_eq!(a.mat_mul(&Matrix::identity(4)).unwrap(), a);
    }

    #[test]
    fn dimension_mismatch() {
        let a = Matrix::zero(3);
        let b = Matrix::zero(2);
        assert!(matches!(a.mat_mul(&b), Err(Error::ShapeMismatch { .. })));
        assert!(a.mat_add(&b).is_err());
        assert!(a.mat_le(&b).is_err());
    }

    #[test]
    fn four_by_four_commuting_product() {
        let (a, b) = (fixtures::strict4_a(), fixtures::strict4_b());
        let ab = a.mat_mul(&b).unwrap();
        assert_eq!(ab, fixtures::strict4_product());
        assert_eq!(b.mat_mul(&a).unwrap(), ab);
    }

    #[test]
    fn non_commuting_pair_products() {
        let (a, b) = (fixtures::nested_a(), fixtures::nested_b());
        let ab = a.mat_mul(&b).unwrap();
        let ba = b.mat_mul(&a).unwrap();
        assert_eq!(*ab.get(1, 2), ExtReal::int(-2));
        assert_eq!(*ba.get(1, 2), ExtReal::int(-3));
        assert_eq!(ab, fixtures::nested_ab());
        assert_eq!(ba, fixtures::nested_ba());
    }

    #[test]
    fn entrywise_ops() {
        let a = fixtures::border3();
        assert_eq!(a.mat_min(&a).unwrap(), a);
        assert!(Matrix::identity(3).mat_le(&a).unwrap());
        assert!(a.mat_le(&Matrix::zero(3)).unwrap());
        let t = a.transpose();
        assert_eq!(*t.get(0, 1), *a.get(1, 0));
        assert_eq!(a.scalar_mul(&ExtReal::int(1)).get(0, 0), &ExtReal::int(1));
        assert_eq!(a.scalar_mul(&Bottom), Matrix::filled(3, 3, Bottom));
    }

    #[test]
    fn constructors() {
        assert_eq!(Matrix::const_matrix(Bottom, 3).unwrap(), Matrix::identity(3));
        assert_eq!(Matrix::const_matrix(ExtReal::zero(), 3).unwrap(), Matrix::zero(3));
        assert!(Matrix::const_matrix(ExtReal::int(1), 3).is_err());
        let e = Matrix::unit_perturbation(3, 0, 1, ExtReal::int(-1)).unwrap();
        assert_eq!(e.off_diagonal().filter(|(_, _, v)| **v != ExtReal::zero()).count(), 1);
        assert!(matches!(
            Matrix::unit_perturbation(3, 1, 1, ExtReal::int(-1)),
            Err(Error::DiagonalPosition(1))
        ));
        assert!(Matrix::unit_perturbation(3, 0, 1, ExtReal::int(2)).is_err());
        let d = Matrix::diag(&[ExtReal::int(-4), ExtReal::int(-3)]);
        assert_eq!(*d.get(0, 1), Bottom);
        assert_eq!(*d.get(1, 1), ExtReal::int(-3));
    }

    #[test]
    fn normality_predicates() {
        let b = fixtures::border3();
        assert!(b.is_normal());
        assert!(!b.is_strictly_normal());
        assert!(b.is_border());
        assert!(fixtures::strict4_a().is_strictly_normal());
        assert!(!fixtures::strict4_a().is_border());
        assert!(Matrix::identity(3).is_border());
        let bad = Matrix::from_int_rows(&[[0, 1], [0, 0]]);
        assert!(!bad.is_normal());
        assert!(matches!(bad.kleene_star(), Err(Error::NotNormal(_))));
        assert!(matches!(bad.mat_pow(2), Err(Error::NotNormal(_))));
    }

    #[test]
    fn kleene_star_of_reference_matrix() {
        let b = fixtures::border3();
        assert_eq!(b.kleene_star().unwrap(), Matrix::from_int_rows(&[[0, -1, -1], [-4, 0, -5], [-4, 0, 0]]));
        assert_eq!(Matrix::identity(5).kleene_star().unwrap(), Matrix::identity(5));
        assert_eq!(b.mat_pow(0).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn a0_normalization() {
        let b0 = fixtures::border3().normalize_a0().unwrap();
        assert_eq!(b0, Matrix::from_int_rows(&[[5, -3, -1], [1, 0, -6], [0, 0, 0]]));
        let c = fixtures::band_pair().0.mat_mul(&fixtures::band_pair().1).unwrap();
        assert_eq!(c.normalize_a0().unwrap(), Matrix::from_int_rows(&[[1, 2, -3], [-2, 3, -1], [0, 0, 0]]));
        let z = Matrix::from_int_rows(&[[1, -2], [0, 0]]);
        assert_eq!(z.normalize_a0().unwrap(), z);
        let mut with_bottom = Matrix::zero(2);
        with_bottom.set(1, 0, Bottom);
        assert!(with_bottom.normalize_a0().is_err());
    }

    #[test]
    fn a0_via_diag_product() {
        let b = fixtures::border3();
        let shift: Vec<_> = b.row(2).iter().map(|v| Finite(-v.finite().unwrap().clone())).collect();
        let via_diag = b.mat_mul(&Matrix::diag(&shift)).unwrap();
        assert_eq!(via_diag, b.normalize_a0().unwrap());
        let c = fixtures::band_product();
        let shift: Vec<_> = c.row(2).iter().map(|v| Finite(-v.finite().unwrap().clone())).collect();
        assert_eq!(*Matrix::diag(&shift).get(0, 0), ExtReal::int(1));
    }

    #[test]
    fn extreme_offdiagonal_entries() {
        let a = fixtures::strict4_a();
        assert_eq!(a.min_offdiag().unwrap(), crate::scalar::int(-6));
        assert_eq!(a.max_offdiag().unwrap(), crate::scalar::int(-3));
        let b = fixtures::border3();
        assert_eq!(b.min_offdiag().unwrap(), crate::scalar::int(-6));
        assert_eq!(b.max_offdiag().unwrap(), crate::scalar::int(0));
        assert_eq!(Matrix::zero(4).min_offdiag().unwrap(), crate::scalar::int(0));
        assert!(Matrix::identity(3).min_offdiag().is_err());
    }

    #[test]
    fn order_seven_star_stabilises_at_cube() {
        let h = fixtures::border3_upper_h();
        let h3 = h.mat_pow(3).unwrap();
        assert_eq!(h3, h.mat_pow(4).unwrap());
        assert_eq!(h3, fixtures::border3_upper_h_star());
        assert_eq!(h.kleene_star().unwrap(), h3);
    }

    #[test]
    fn float_carrier_agrees_on_small_integers() {
        let b: TropMatrix<f64> = TropMatrix::from_int_rows(&[[0, -3, -1], [-4, 0, -6], [-5, 0, 0]]);
        let star = b.kleene_star().unwrap();
        assert_eq!(star, TropMatrix::from_int_rows(&[[0, -1, -1], [-4, 0, -5], [-4, 0, 0]]));
    }
}
