//! Commutation tests against a fixed real normal matrix `A`, winner
//! witnesses, and the per-winner constraint systems `Ω_w(A)`.

use crate::error::{Error, Result};
use crate::ext::{Bottom, ExtReal, Finite};
use crate::matrix::TropMatrix;
use crate::polytope::{DiffConstraintSystem, Relabeling};
use crate::scalar::Scalar;

/// Default cap on lazy witness expansion.
pub const DEFAULT_EXPANSION_CAP: usize = 10_000;

/// A winning position: for each off-diagonal `(i, j)` a pair `(w₁, w₂)`
/// telling where the maxima of `(AX)_ij` and `(XA)_ij` are attained.
/// All indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Winner {
    n: usize,
    entries: Vec<(usize, usize)>,
}

impl Winner {
    /// `w(i, j) = (i, j)`.
    pub fn identity(n: usize) -> Self {
        let entries = (0..n * n).map(|p| (p / n, p % n)).collect();
        Self { n, entries }
    }

    /// `w(i, j) = (j, i)`.
    pub fn transposition(n: usize) -> Self {
        let entries = (0..n * n).map(|p| (p % n, p / n)).collect();
        Self { n, entries }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> (usize, usize) {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: (usize, usize)) -> Result<()> {
        let n = self.n;
        if i >= n || j >= n || i == j {
            return Err(Error::InvalidWinner(format!("position ({}, {}) is not off-diagonal", i + 1, j + 1)));
        }
        if value.0 >= n || value.1 >= n {
            return Err(Error::InvalidWinner(format!(
                "value ({}, {}) out of range for order {n}",
                value.0 + 1,
                value.1 + 1
            )));
        }
        self.entries[i * n + j] = value;
        Ok(())
    }

    /// Off-diagonal positions in row-major order with their values.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        let n = self.n;
        (0..n * n).filter(move |p| p / n != p % n).map(move |p| ((p / n, p % n), self.entries[p]))
    }

    /// Whether `w(i, j) ∈ {(i, j), (j, i)}`; then the matching equality is a tautology.
    pub fn is_trivial_at(&self, i: usize, j: usize) -> bool {
        let w = self.get(i, j);
        w == (i, j) || w == (j, i)
    }
}

/// Witness winners of a commuting pair in factored form: for every
/// off-diagonal position, the argmax index sets of `(AX)_ij` and `(XA)_ij`.
/// A winner is a witness iff it picks one element from each set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    n: usize,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl WitnessSet {
    pub fn order(&self) -> usize {
        self.n
    }

    /// Argmax sets `(K₁, K₂)` at `(i, j)`.
    pub fn choices(&self, i: usize, j: usize) -> (&[usize], &[usize]) {
        let p = i * self.n + j;
        (&self.left[p], &self.right[p])
    }

    pub fn contains(&self, w: &Winner) -> bool {
        w.order() == self.n
            && w.iter().all(|((i, j), (a, b))| {
                let (k1, k2) = self.choices(i, j);
                k1.contains(&a) && k2.contains(&b)
            })
    }

    /// Number of witnesses, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        let mut total: u128 = 1;
        for p in self.positions() {
            let c = (self.left[p].len() * self.right[p].len()) as u128;
            total = total.saturating_mul(c);
        }
        total
    }

    fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        (0..n * n).filter(move |p| p / n != p % n)
    }

    /// The witness choosing the smallest index everywhere.
    pub fn first(&self) -> Winner {
        let mut w = Winner::identity(self.n);
        for p in self.positions() {
            w.entries[p] = (self.left[p][0], self.right[p][0]);
        }
        w
    }

    /// All witnesses, or [`Error::CapExceeded`] if there are more than `cap`.
    pub fn expand(&self, cap: usize) -> Result<Vec<Winner>> {
        if self.count() > cap as u128 {
            return Err(Error::CapExceeded { cap });
        }
        let mut out = vec![Winner::identity(self.n)];
        for p in self.positions() {
            let mut next = Vec::with_capacity(out.len() * self.left[p].len() * self.right[p].len());
            for w in &out {
                for &a in &self.left[p] {
                    for &b in &self.right[p] {
                        let mut w2 = w.clone();
                        w2.entries[p] = (a, b);
                        next.push(w2);
                    }
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Outcome of [`commutes`].
#[derive(Clone, Debug)]
pub struct CommutationReport<T> {
    pub commutes: bool,
    /// `S = AX = XA` when the pair commutes.
    pub product: Option<TropMatrix<T>>,
    /// `S = A`.
    pub in_omega_a: bool,
    /// `S = X`.
    pub in_omega_prime: bool,
    pub witnesses: Option<WitnessSet>,
}

fn check_pair<T: Scalar>(a: &TropMatrix<T>, x: &TropMatrix<T>) -> Result<usize> {
    let n = a.ensure_real_normal()?;
    let m = x.ensure_normal()?;
    if n != m {
        return Err(Error::ShapeMismatch { left_rows: n, left_cols: n, right_rows: m, right_cols: m });
    }
    Ok(n)
}

fn argmax_set<T: Scalar>(terms: impl Iterator<Item = ExtReal<T>>) -> Vec<usize> {
    let terms: Vec<_> = terms.collect();
    let best = terms.iter().fold(Bottom, |acc: ExtReal<T>, t| acc.oplus(t));
    terms.iter().enumerate().filter(|(_, t)| **t == best).map(|(k, _)| k).collect()
}

fn witnesses_of<T: Scalar>(a: &TropMatrix<T>, x: &TropMatrix<T>, n: usize) -> WitnessSet {
    let mut left = vec![Vec::new(); n * n];
    let mut right = vec![Vec::new(); n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            left[i * n + j] = argmax_set((0..n).map(|k| a.get(i, k).otimes(x.get(k, j))));
            right[i * n + j] = argmax_set((0..n).map(|k| x.get(i, k).otimes(a.get(k, j))));
        }
    }
    WitnessSet { n, left, right }
}

/// Exact test `AX = XA` with the `Ω^A` / `Ω'` classification and witnesses.
pub fn commutes<T: Scalar>(a: &TropMatrix<T>, x: &TropMatrix<T>) -> Result<CommutationReport<T>> {
    let n = check_pair(a, x)?;
    let ax = a.mat_mul(x)?;
    let xa = x.mat_mul(a)?;
    if ax != xa {
        return Ok(CommutationReport {
            commutes: false,
            product: None,
            in_omega_a: false,
            in_omega_prime: false,
            witnesses: None,
        });
    }
    let witnesses = witnesses_of(a, x, n);
    Ok(CommutationReport {
        commutes: true,
        in_omega_a: ax == *a,
        in_omega_prime: ax == *x,
        product: Some(ax),
        witnesses: Some(witnesses),
    })
}

/// Witness winners of a commuting pair; `None` when `AX ≠ XA`.
pub fn witness_winners<T: Scalar>(a: &TropMatrix<T>, x: &TropMatrix<T>) -> Result<Option<WitnessSet>> {
    Ok(commutes(a, x)?.witnesses)
}

fn check_winner<T: Scalar>(a: &TropMatrix<T>, w: &Winner) -> Result<usize> {
    let n = a.ensure_real_normal()?;
    if w.order() != n {
        return Err(Error::InvalidWinner(format!("winner of order {} for matrix of order {n}", w.order())));
    }
    Ok(n)
}

/// Constraint system of `Ω_w(A)` over the off-diagonal entries of `X`
/// (row-major relabeling), each variable in `[−∞, 0]`.
pub fn omega_w_system<T: Scalar>(a: &TropMatrix<T>, w: &Winner) -> Result<DiffConstraintSystem<T>> {
    let n = check_winner(a, w)?;
    let relabel = Relabeling::row_major(n);
    let mut sys = DiffConstraintSystem::unconstrained(relabel.names());
    for k in 0..sys.nvars() {
        sys.require_upper(k, T::zero());
    }
    // Entry x_pq as a system term; diagonal entries are the constant 0.
    let term = |p: usize, q: usize| if p == q { None } else { Some(relabel.index_of(p, q)) };
    let val = |p: usize, q: usize| a.real(p, q).clone();
    for ((i, j), (w1, w2)) in w.iter() {
        let left = term(w1, j);
        let right = term(i, w2);
        if !w.is_trivial_at(i, j) {
            let c = val(i, w1) - val(w2, j);
            // a_{i,w1} + x_{w1,j} = x_{i,w2} + a_{w2,j}
            sys.require(left, c.clone(), right);
            sys.require(right, -c, left);
        }
        for s in (0..n).filter(|&s| s != w1) {
            sys.require(term(s, j), val(i, s) - val(i, w1), left);
        }
        for t in (0..n).filter(|&t| t != w2) {
            sys.require(term(i, t), val(t, j) - val(w2, j), right);
        }
    }
    Ok(sys)
}

/// One-sided emptiness test: a pair of positions whose winners point at
/// each other and force two parallel, distinct hyperplanes.
pub fn omega_w_empty_quick<T: Scalar>(a: &TropMatrix<T>, w: &Winner) -> Result<bool> {
    check_winner(a, w)?;
    for ((i, j), (s, t)) in w.iter() {
        if s == t || (s, t) == (i, j) || (s, t) == (j, i) {
            continue;
        }
        if w.get(s, t) != (i, j) {
            continue;
        }
        let lhs = a.real(i, s).clone() + a.real(s, i).clone();
        let rhs = a.real(j, t).clone() + a.real(t, j).clone();
        if lhs != rhs {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `n² − n − #{(i, j) : w(i, j) ∉ {(i, j), (j, i)}}`.
pub fn omega_w_dim_bound(w: &Winner) -> usize {
    let n = w.order();
    let nontrivial = w.iter().filter(|&((i, j), _)| !w.is_trivial_at(i, j)).count();
    n * n - n - nontrivial
}

/// Box `I ≤ X ≤ K(m(A))`, contained in `Ω^A(A)`.
pub fn neigh_identity_box<T: Scalar>(a: &TropMatrix<T>) -> Result<(TropMatrix<T>, TropMatrix<T>)> {
    let n = a.ensure_real_normal()?;
    let m = a.min_offdiag()?;
    Ok((TropMatrix::identity(n), TropMatrix::const_matrix(Finite(m), n)?))
}

/// Box `K(M(A)) ≤ X ≤ 0`, contained in `Ω'(A)`; needs `A` strictly normal.
pub fn neigh_zero_box<T: Scalar>(a: &TropMatrix<T>) -> Result<(TropMatrix<T>, TropMatrix<T>)> {
    let n = a.ensure_real_normal()?;
    if !a.is_strictly_normal() {
        return Err(Error::NotStrictlyNormal);
    }
    let big = a.max_offdiag()?;
    Ok((TropMatrix::const_matrix(Finite(big), n)?, TropMatrix::zero(n)))
}

/// `A^(n−2) ≤ B ≤ A*`; when true, `AB = BA = A*`.
pub fn between_powers_check<T: Scalar>(a: &TropMatrix<T>, b: &TropMatrix<T>) -> Result<bool> {
    let n = check_pair(a, b)?;
    let low = a.mat_pow(n.saturating_sub(2))?;
    let star = a.kleene_star()?;
    Ok(low.mat_le(b)? && b.mat_le(&star)?)
}

/// `a_ik + b_kj ≤ (A ⊕ B)_ij` for all `i, j, k`; when true, `AB = BA = A ⊕ B`.
pub fn max_product_criterion<T: Scalar>(a: &TropMatrix<T>, b: &TropMatrix<T>) -> Result<bool> {
    let n = a.ensure_normal()?;
    let m = b.ensure_normal()?;
    if n != m {
        return Err(Error::ShapeMismatch { left_rows: n, left_cols: n, right_rows: m, right_cols: m });
    }
    let sum = a.mat_add(b)?;
    for i in 0..n {
        for j in 0..n {
            let cap = sum.get(i, j);
            for k in 0..n {
                if a.get(i, k).otimes(b.get(k, j)) > *cap || b.get(i, k).otimes(a.get(k, j)) > *cap {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Some `(i, j, ε)` with `ε > 0` and `E_ij(−ε) ∈ Ω(A)`, checked before returning.
pub fn find_unit_commuter<T: Scalar>(a: &TropMatrix<T>) -> Result<(usize, usize, T)> {
    let n = a.ensure_real_normal()?;
    if n < 2 {
        return Err(Error::Precondition("order must be at least 2".into()));
    }
    let (i, j, eps) = match a.off_diagonal().find(|(_, _, v)| **v == ExtReal::zero()) {
        Some((i, j, _)) => (i, j, T::one()),
        None => (0, 1, (-a.max_offdiag()?).half()),
    };
    let e = TropMatrix::unit_perturbation(n, i, j, Finite(-eps.clone()))?;
    if a.mat_mul(&e)? != e.mat_mul(a)? {
        return Err(Error::Precondition(format!(
            "E_{}{}(-{}) does not commute with A",
            i + 1,
            j + 1,
            eps.to_exact_string()
        )));
    }
    Ok((i, j, eps))
}
