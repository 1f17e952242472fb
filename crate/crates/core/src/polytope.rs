//! Alcoved polytopes as difference-constraint systems, and the bounding
//! matrices `underline(A)` and `overline(A)`.
//!
//! A system over `N` variables is stored as a bound matrix `H` of order
//! `N + 1`: entry `h_ik` is a lower bound on `y_i − y_k`, with the last
//! index standing for the constant `0`. So `h_{i,N}` bounds `y_i` from
//! below, `−h_{N,i}` bounds it from above, and `−∞` means "no bound". For a
//! normal `H` this is exactly the polytope `C_H`, and `C_H = C_{H*}`.
//!
//! Points may carry `−∞` coordinates (matrix entries of `X` can be `−∞`).
//! Membership is read tropically, `H ⊙ y ≤ y`, which agrees with the
//! classical inequalities on real points. Emptiness refers to real points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::{Bottom, ExtReal, Finite};
use crate::matrix::TropMatrix;
use crate::scalar::Scalar;

/// Bijection between off-diagonal positions `(i, j)` and variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    n: usize,
    positions: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
}

impl Relabeling {
    /// `(1,2), (1,3), …, (2,1), (2,3), …`
    pub fn row_major(n: usize) -> Self {
        let positions = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
        Self::from_positions(n, positions).expect("row-major order is a bijection")
    }

    pub fn from_positions(n: usize, positions: Vec<(usize, usize)>) -> Result<Self> {
        let mut index = vec![None; n * n];
        for (k, &(i, j)) in positions.iter().enumerate() {
            if i >= n || j >= n || i == j {
                return Err(Error::Precondition(format!("({i}, {j}) is not an off-diagonal position")));
            }
            if index[i * n + j].replace(k).is_some() {
                return Err(Error::Precondition(format!("({i}, {j}) listed twice")));
            }
        }
        if positions.len() != n * n - n {
            return Err(Error::Precondition("relabeling must cover every off-diagonal position".into()));
        }
        Ok(Self { n, positions, index })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn index_of(&self, i: usize, j: usize) -> usize {
        self.index[i * self.n + j].expect("off-diagonal position")
    }

    pub fn position(&self, k: usize) -> (usize, usize) {
        self.positions[k]
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn names(&self) -> Vec<String> {
        let sep = if self.n >= 10 { "," } else { "" };
        self.positions.iter().map(|(i, j)| format!("x_{}{sep}{}", i + 1, j + 1)).collect()
    }

    /// Off-diagonal entries of `x` as a point, in this variable order.
    pub fn point_of<T: Scalar>(&self, x: &TropMatrix<T>) -> Vec<ExtReal<T>> {
        self.positions.iter().map(|&(i, j)| x.get(i, j).clone()).collect()
    }

    /// Inverse of [`Self::point_of`]; the diagonal is set to zero.
    pub fn matrix_of<T: Scalar>(&self, point: &[ExtReal<T>]) -> TropMatrix<T> {
        let mut x = TropMatrix::zero(self.n);
        for (k, &(i, j)) in self.positions.iter().enumerate() {
            x.set(i, j, point[k].clone());
        }
        x
    }
}

/// Bounds `c_i ≤ y_i ≤ b_i` and `c_ik ≤ y_i − y_k ≤ b_ik`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffConstraintSystem<T> {
    names: Vec<String>,
    bounds: TropMatrix<T>,
}

impl<T: Scalar> DiffConstraintSystem<T> {
    /// All of `ℝ^N`.
    pub fn unconstrained(names: Vec<String>) -> Self {
        let order = names.len() + 1;
        let mut bounds = TropMatrix::filled(order, order, Bottom);
        for i in 0..order {
            bounds.set(i, i, ExtReal::zero());
        }
        Self { names, bounds }
    }

    /// Reads a bound matrix of order `N + 1`; variables are named `y_1 … y_N`.
    pub fn from_matrix(h: TropMatrix<T>) -> Result<Self> {
        let order = h.order()?;
        if order == 0 {
            return Err(Error::Precondition("bound matrix needs the affine index".into()));
        }
        let names = (1..order).map(|k| format!("y_{k}")).collect();
        Ok(Self { names, bounds: h })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.nvars() {
            return Err(Error::EntryCount { expected: self.nvars(), got: names.len() });
        }
        self.names = names;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The bound matrix `H` (order `N + 1`).
    pub fn matrix(&self) -> &TropMatrix<T> {
        &self.bounds
    }

    fn slot(&self, v: Option<usize>) -> usize {
        v.unwrap_or(self.nvars())
    }

    /// Adds `c + y_lhs ≤ y_rhs`; `None` stands for the constant 0.
    pub fn require(&mut self, lhs: Option<usize>, c: T, rhs: Option<usize>) {
        let (i, k) = (self.slot(rhs), self.slot(lhs));
        let cand = Finite(c);
        if cand > *self.bounds.get(i, k) {
            self.bounds.set(i, k, cand);
        }
    }

    pub fn require_lower(&mut self, var: usize, lo: T) {
        self.require(None, lo, Some(var));
    }

    pub fn require_upper(&mut self, var: usize, hi: T) {
        self.require(Some(var), -hi, None);
    }

    /// `y_i − y_k ≥ lo`.
    pub fn require_diff_lower(&mut self, i: usize, k: usize, lo: T) {
        self.require(Some(k), lo, Some(i));
    }

    /// `y_i − y_k ≤ hi`.
    pub fn require_diff_upper(&mut self, i: usize, k: usize, hi: T) {
        self.require(Some(i), -hi, Some(k));
    }

    fn upper_from(slot: &ExtReal<T>) -> Option<T> {
        slot.finite().map(|v| -v.clone())
    }

    /// `(lower, upper)` for `y_k`; `upper = None` means unbounded above.
    pub fn box_bounds(&self, k: usize) -> (ExtReal<T>, Option<T>) {
        let a = self.nvars();
        (self.bounds.get(k, a).clone(), Self::upper_from(self.bounds.get(a, k)))
    }

    /// `(lower, upper)` for `y_i − y_k`.
    pub fn diff_bounds(&self, i: usize, k: usize) -> (ExtReal<T>, Option<T>) {
        (self.bounds.get(i, k).clone(), Self::upper_from(self.bounds.get(k, i)))
    }

    /// Membership `H ⊙ (y, 0) ≤ (y, 0)`.
    pub fn contains(&self, point: &[ExtReal<T>]) -> bool {
        let n = self.nvars();
        if point.len() != n {
            return false;
        }
        let y = |k: usize| if k == n { ExtReal::zero() } else { point[k].clone() };
        (0..=n).all(|i| {
            let yi = y(i);
            (0..=n).all(|k| self.bounds.get(i, k).otimes(&y(k)) <= yi)
        })
    }

    /// Tight description via the max-plus Floyd–Warshall closure of `H`.
    pub fn tighten(&self) -> Result<Self> {
        let order = self.bounds.rows();
        let mut h = self.bounds.clone();
        for i in 0..order {
            let d = h.get(i, i);
            if *d > ExtReal::zero() {
                return Err(Error::Infeasible);
            }
            h.set(i, i, ExtReal::zero());
        }
        for k in 0..order {
            for i in 0..order {
                let hik = h.get(i, k).clone();
                if hik.is_bottom() {
                    continue;
                }
                for j in 0..order {
                    let cand = hik.otimes(h.get(k, j));
                    if cand > *h.get(i, j) {
                        h.set(i, j, cand);
                    }
                }
                if *h.get(i, i) > ExtReal::zero() {
                    return Err(Error::Infeasible);
                }
            }
        }
        Ok(Self { names: self.names.clone(), bounds: h })
    }

    /// No real point satisfies the system.
    pub fn is_empty(&self) -> bool {
        matches!(self.tighten(), Err(Error::Infeasible))
    }

    /// The point of lower bounds read off the last column of `H*`.
    pub fn anchor_point(&self) -> Option<Vec<ExtReal<T>>> {
        let tight = self.tighten().ok()?;
        let a = tight.nvars();
        Some((0..a).map(|k| tight.bounds.get(k, a).clone()).collect())
    }

    /// A seeded real point of the system, or `None` when it is empty.
    /// Coordinates are fixed one at a time inside their current tight
    /// interval, on a grid of step `1/256` of the interval width.
    pub fn sample_point(&self, seed: u64) -> Option<Vec<T>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sys = self.tighten().ok()?;
        let mut point = Vec::with_capacity(self.nvars());
        for k in 0..self.nvars() {
            let (lo, hi) = sys.box_bounds(k);
            let step = T::from_ratio(rng.gen_range(0..=256), 256);
            let value = match (lo, hi) {
                (Finite(lo), Some(hi)) => lo.clone() + (hi - lo) * step,
                (Finite(lo), None) => lo + step * crate::scalar::int(4),
                (Bottom, Some(hi)) => hi - step * crate::scalar::int(4),
                (Bottom, None) => step - crate::scalar::int(2),
            };
            sys.require_lower(k, value.clone());
            sys.require_upper(k, value.clone());
            sys = sys.tighten().ok()?;
            point.push(value);
        }
        Some(point)
    }
}

/// Tight form of `s`.
pub fn tighten<T: Scalar>(s: &DiffConstraintSystem<T>) -> Result<DiffConstraintSystem<T>> {
    s.tighten()
}

pub fn is_empty<T: Scalar>(s: &DiffConstraintSystem<T>) -> bool {
    s.is_empty()
}

pub fn sample_point<T: Scalar>(s: &DiffConstraintSystem<T>, seed: u64) -> Option<Vec<T>> {
    s.sample_point(seed)
}

/// Dimension of the tight polytope: variables minus the number of forced
/// equalities. Two indices are glued when `h*_ik + h*_ki = 0` (for a normal
/// `H*`, both entries are zero); the dimension is the number of glued
/// classes among the `N + 1` indices, minus the affine one.
pub fn polytope_dim<T: Scalar>(s: &DiffConstraintSystem<T>) -> Result<usize> {
    let tight = s.tighten()?;
    let order = tight.bounds.rows();
    let mut parent: Vec<usize> = (0..order).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for i in 0..order {
        for k in i + 1..order {
            if let (Finite(a), Finite(b)) = (tight.bounds.get(i, k), tight.bounds.get(k, i)) {
                if (a.clone() + b.clone()).is_zero() {
                    let (ri, rk) = (find(&mut parent, i), find(&mut parent, k));
                    parent[ri] = rk;
                }
            }
        }
    }
    let classes = (0..order).filter(|&x| find(&mut parent, x) == x).count();
    Ok(classes - 1)
}

/// Pairs `i < k` of `H*` with `h*_ik = h*_ki = 0`.
pub fn zero_cycle_pairs<T: Scalar>(s: &DiffConstraintSystem<T>) -> Result<Vec<(usize, usize)>> {
    let tight = s.tighten()?;
    let order = tight.bounds.rows();
    let z = ExtReal::zero();
    Ok((0..order)
        .flat_map(|i| (i + 1..order).map(move |k| (i, k)))
        .filter(|&(i, k)| *tight.bounds.get(i, k) == z && *tight.bounds.get(k, i) == z)
        .collect())
}

/// `underline(A)`: entrywise minimum of `A` with the row- and column-difference bounds.
pub fn compute_underline<T: Scalar>(a: &TropMatrix<T>) -> Result<TropMatrix<T>> {
    let n = a.order()?;
    a.ensure_real()?;
    let mut out = a.clone();
    let min_max = |diffs: Vec<T>| {
        let mut lo = diffs[0].clone();
        let mut hi = diffs[0].clone();
        for d in diffs.into_iter().skip(1) {
            if d < lo {
                lo = d;
            } else if d > hi {
                hi = d;
            }
        }
        (lo, hi)
    };
    for i in 0..n {
        for j in i + 1..n {
            let (mr, big_r) = min_max((0..n).map(|k| a.real(i, k).clone() - a.real(j, k).clone()).collect());
            let (mc, big_c) = min_max((0..n).map(|k| a.real(k, i).clone() - a.real(k, j).clone()).collect());
            let upper = [a.real(i, j).clone(), mr, -big_c];
            let lower = [a.real(j, i).clone(), -big_r, mc];
            out.set(i, j, Finite(min_of(upper)));
            out.set(j, i, Finite(min_of(lower)));
        }
    }
    Ok(out)
}

fn min_of<T: Scalar, const K: usize>(vals: [T; K]) -> T {
    let mut it = vals.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |m, v| if v < m { v } else { m })
}

/// `{X : X ≤ underline(A)}` over the row-major off-diagonal variables.
pub fn lower_box<T: Scalar>(a: &TropMatrix<T>) -> Result<DiffConstraintSystem<T>> {
    let n = a.ensure_real_normal()?;
    let under = compute_underline(a)?;
    let rl = Relabeling::row_major(n);
    let mut sys = DiffConstraintSystem::unconstrained(rl.names());
    for (k, &(i, j)) in rl.positions().iter().enumerate() {
        sys.require_upper(k, under.real(i, j).clone());
    }
    Ok(sys)
}

/// `{X normal : A ≤ underline(X)}` in the variables of `relabeling`.
pub fn upper_set_system<T: Scalar>(a: &TropMatrix<T>, relabeling: &Relabeling) -> Result<DiffConstraintSystem<T>> {
    let n = a.ensure_real_normal()?;
    if relabeling.order() != n {
        return Err(Error::Precondition(format!("relabeling of order {} for matrix of order {n}", relabeling.order())));
    }
    let var = |i: usize, j: usize| relabeling.index_of(i, j);
    let mut sys = DiffConstraintSystem::unconstrained(relabeling.names());
    for (k, j, v) in a.off_diagonal() {
        let bound = v.finite().expect("real").clone();
        sys.require_lower(var(k, j), bound.clone());
        for i in (0..n).filter(|&i| i != k && i != j) {
            sys.require_diff_lower(var(i, j), var(i, k), bound.clone());
            sys.require_diff_lower(var(k, i), var(j, i), bound.clone());
        }
    }
    for v in 0..sys.nvars() {
        sys.require_upper(v, T::zero());
    }
    Ok(sys)
}

/// `overline(A)` read off the last column of the tightened upper-set system.
pub fn compute_overline<T: Scalar>(a: &TropMatrix<T>) -> Result<TropMatrix<T>> {
    let n = a.ensure_real_normal()?;
    compute_overline_with(a, &Relabeling::row_major(n))
}

pub fn compute_overline_with<T: Scalar>(a: &TropMatrix<T>, relabeling: &Relabeling) -> Result<TropMatrix<T>> {
    let tight = upper_set_system(a, relabeling)?.tighten()?;
    let n = relabeling.order();
    let affine = tight.nvars();
    let mut out = TropMatrix::zero(n);
    for (k, &(i, j)) in relabeling.positions().iter().enumerate() {
        out.set(i, j, tight.matrix().get(k, affine).clone());
    }
    Ok(out)
}

/// `underline(A) ≤ A ≤ overline(A)`.
pub fn bars_check<T: Scalar>(a: &TropMatrix<T>) -> Result<bool> {
    let under = compute_underline(a)?;
    let over = compute_overline(a)?;
    Ok(under.mat_le(a)? && a.mat_le(&over)?)
}

/// `C_A` over `n − 1` variables: `a_in ≤ x_i ≤ −a_ni`, `a_ik ≤ x_i − x_k ≤ −a_ki`.
pub fn c_polytope<T: Scalar>(a: &TropMatrix<T>) -> Result<DiffConstraintSystem<T>> {
    let n = a.ensure_normal()?;
    let names = (1..n).map(|k| format!("x_{k}")).collect();
    DiffConstraintSystem::from_matrix(a.clone())?.with_names(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::{ExtRat, Matrix, Rat};

    fn r(v: i64) -> Rat {
        crate::scalar::int(v)
    }

    /// Underline straight from its definition: the entrywise minimum of
    /// `A` with every row-difference matrix `R^i` and column-difference `C^i`.
    fn underline_oracle(a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut out = a.clone();
        for k in 0..n {
            for j in 0..n {
                let mut best = a.real(k, j).clone();
                for i in 0..n {
                    let row = a.real(i, j).clone() - a.real(i, k).clone();
                    let col = a.real(k, i).clone() - a.real(j, i).clone();
                    for c in [row, col] {
                        if c < best {
                            best = c;
                        }
                    }
                }
                out.set(k, j, Finite(best));
            }
        }
        out
    }

    #[test]
    fn underline_of_reference_matrices() {
        assert_eq!(compute_underline(&fixtures::border3()).unwrap(), fixtures::border3_underline());
        assert_eq!(compute_underline(&fixtures::strict4_a()).unwrap(), fixtures::strict4_a());
        assert_eq!(compute_underline(&Matrix::zero(4)).unwrap(), Matrix::zero(4));
        assert_eq!(underline_oracle(&fixtures::border3()), fixtures::border3_underline());
        assert!(compute_underline(&Matrix::identity(3)).is_err());
    }

    #[test]
    fn upper_set_matrix_matches_reference() {
        let sys = upper_set_system(&fixtures::border3(), &Relabeling::row_major(3)).unwrap();
        assert_eq!(*sys.matrix(), fixtures::border3_upper_h());
        assert_eq!(sys.names(), ["x_12", "x_13", "x_21", "x_23", "x_31", "x_32"]);
        assert_eq!(sys.box_bounds(0), (ExtReal::int(-3), Some(r(0))));
        assert_eq!(sys.diff_bounds(0, 1), (ExtReal::int(0), Some(r(6))));
        assert_eq!(sys.diff_bounds(0, 5), (ExtReal::int(-1), Some(r(5))));
        assert_eq!(sys.diff_bounds(4, 5), (ExtReal::int(-4), Some(r(3))));
    }

    #[test]
    fn tightening_reference_system() {
        let sys = upper_set_system(&fixtures::border3(), &Relabeling::row_major(3)).unwrap();
        let tight = sys.tighten().unwrap();
        assert_eq!(*tight.matrix(), fixtures::border3_upper_h_star());
        assert_eq!(tight.tighten().unwrap(), tight);
        assert_eq!(tight.box_bounds(5), (ExtReal::int(0), Some(r(0))));
        assert_eq!(tight.diff_bounds(3, 4), (ExtReal::int(-5), Some(r(4))));
        assert_eq!(polytope_dim(&tight).unwrap(), 5);
        assert_eq!(zero_cycle_pairs(&tight).unwrap(), vec![(5, 6)]);
    }

    #[test]
    fn zero_upper_set_is_a_point() {
        let sys = upper_set_system(&Matrix::zero(3), &Relabeling::row_major(3)).unwrap();
        let tight = sys.tighten().unwrap();
        assert_eq!(polytope_dim(&tight).unwrap(), 0);
        assert!(tight.contains(&vec![ExtReal::zero(); 6]));
        let mut off = vec![ExtReal::zero(); 6];
        off[2] = ExtReal::int(-1);
        assert!(!sys.contains(&off));
    }

    #[test]
    fn empty_interval_is_infeasible() {
        let mut sys = DiffConstraintSystem::<Rat>::unconstrained(vec!["y_1".into()]);
        sys.require_upper(0, r(-1));
        sys.require_lower(0, r(0));
        assert!(matches!(sys.tighten(), Err(Error::Infeasible)));
        assert!(sys.is_empty());
        assert!(sys.anchor_point().is_none());
        assert!(sys.sample_point(1).is_none());
        assert!(polytope_dim(&sys).is_err());
    }

    #[test]
    fn full_dimensional_box() {
        let mut sys = DiffConstraintSystem::<Rat>::unconstrained(vec!["a".into(), "b".into(), "c".into()]);
        for k in 0..3 {
            sys.require_lower(k, r(-2));
            sys.require_upper(k, r(0));
        }
        assert_eq!(polytope_dim(&sys).unwrap(), 3);
    }

    #[test]
    fn overline_of_reference_matrix() {
        let b = fixtures::border3();
        let over = compute_overline(&b).unwrap();
        assert_eq!(over, fixtures::border3_overline());
        assert_eq!(over, b.kleene_star().unwrap());
        assert!(bars_check(&b).unwrap());
        assert!(bars_check(&Matrix::zero(3)).unwrap());
        assert_eq!(compute_overline(&Matrix::zero(3)).unwrap(), Matrix::zero(3));
    }

    #[test]
    fn overline_ignores_relabeling() {
        for a in [fixtures::border3(), fixtures::strict4_a()] {
            let n = a.rows();
            let mut positions = Relabeling::row_major(n).positions().to_vec();
            positions.reverse();
            positions.swap(0, 2);
            let other = Relabeling::from_positions(n, positions).unwrap();
            assert_eq!(compute_overline(&a).unwrap(), compute_overline_with(&a, &other).unwrap());
        }
    }

    #[test]
    fn relabeling_validation() {
        assert!(Relabeling::from_positions(3, vec![(0, 1)]).is_err());
        assert!(Relabeling::from_positions(2, vec![(0, 1), (0, 1)]).is_err());
        assert!(Relabeling::from_positions(2, vec![(0, 0), (1, 0)]).is_err());
        let rl = Relabeling::row_major(3);
        let x = fixtures::border3();
        assert_eq!(rl.matrix_of(&rl.point_of(&x)), x);
    }

    #[test]
    fn boxes_and_samples() {
        let b = fixtures::border3();
        let lb = lower_box(&b).unwrap();
        let rl = Relabeling::row_major(3);
        assert!(lb.contains(&rl.point_of(&Matrix::identity(3))));
        assert!(lb.contains(&rl.point_of(&compute_underline(&b).unwrap())));
        assert!(!lb.contains(&rl.point_of(&b)));
        assert!(!lb.is_empty());
        assert_eq!(polytope_dim(&lb).unwrap(), 6);

        let up = upper_set_system(&b, &rl).unwrap();
        for seed in 0..20 {
            let p = up.sample_point(seed).unwrap();
            let pe: Vec<ExtRat> = p.iter().cloned().map(Finite).collect();
            assert!(up.contains(&pe));
            let x = rl.matrix_of(&pe);
            assert!(b.mat_le(&compute_underline(&x).unwrap()).unwrap());
        }
        let anchor = up.anchor_point().unwrap();
        assert!(up.contains(&anchor));
        assert_eq!(rl.matrix_of(&anchor), fixtures::border3_overline());
    }

    #[test]
    fn c_polytope_contains_origin() {
        for a in [fixtures::border3(), fixtures::strict4_a(), Matrix::identity(4)] {
            let n = a.rows();
            let c = c_polytope(&a).unwrap();
            assert_eq!(c.nvars(), n - 1);
            assert!(c.contains(&vec![ExtReal::zero(); n - 1]));
        }
        let ci = c_polytope(&Matrix::identity(3)).unwrap();
        assert_eq!(ci.box_bounds(0), (Bottom, None));
        assert_eq!(ci.diff_bounds(0, 1), (Bottom, None));
        assert!(ci.contains(&[ExtReal::int(100), ExtReal::int(-1)]));
        let cb = c_polytope(&fixtures::border3()).unwrap();
        assert_eq!(cb.box_bounds(0), (ExtReal::int(-1), Some(r(5))));
        assert!(!cb.contains(&[ExtReal::int(6), ExtReal::int(0)]));
    }
}
