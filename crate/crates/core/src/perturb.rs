//! Commuting families built from entry-range conditions and the cyclic
//! band perturbations `P(−p, −ε)` and `Q(−p, −ε)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::Finite;
use crate::matrix::TropMatrix;
use crate::scalar::Scalar;

/// Grid resolution used by the samplers (`1/256` of the sampled width).
pub const SAMPLE_DENOMINATOR: i64 = 256;

/// Parameters of the band matrices: magnitudes `p`, and two perturbation sizes.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSpec<T> {
    pub p: Vec<T>,
    pub eps: T,
    pub delta: T,
}

impl<T: Scalar> PerturbationSpec<T> {
    pub fn new(p: Vec<T>, eps: T, delta: T) -> Result<Self> {
        if p.iter().any(|v| *v <= T::zero()) {
            return Err(Error::Precondition("every p_i must be positive".into()));
        }
        if eps < T::zero() || delta < T::zero() {
            return Err(Error::Precondition("eps and delta must be nonnegative".into()));
        }
        Ok(Self { p, eps, delta })
    }

    /// `δ + ε ≤ min p_i`.
    pub fn hypothesis_holds(&self) -> bool {
        let sum = self.delta.clone() + self.eps.clone();
        self.p.iter().all(|v| sum <= *v)
    }
}

/// `a` and `b` (with `0 < a ≤ b`) are of the same size when `b ≤ 2a`.
pub fn same_size<T: Scalar>(a: &T, b: &T) -> Result<bool> {
    if *a <= T::zero() || *b <= T::zero() {
        return Err(Error::Precondition("sizes must be positive".into()));
    }
    if a > b {
        return Err(Error::Precondition("expected a <= b".into()));
    }
    Ok(*b <= a.clone() + a.clone())
}

fn sample_in<T: Scalar>(rng: &mut ChaCha8Rng, lo: &T, hi: &T) -> T {
    let k = rng.gen_range(0..=SAMPLE_DENOMINATOR);
    lo.clone() + (hi.clone() - lo.clone()) * T::from_ratio(k, SAMPLE_DENOMINATOR)
}

/// Normal matrix with off-diagonal entries drawn from `[lo, hi]`.
pub fn random_in_interval<T: Scalar>(n: usize, lo: &T, hi: &T, rng: &mut ChaCha8Rng) -> TropMatrix<T> {
    let mut m = TropMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, Finite(sample_in(rng, lo, hi)));
            }
        }
    }
    m
}

/// Two seeded normal matrices with off-diagonal entries in `[2r, r]`.
/// Any such pair satisfies `AB = BA = A ⊕ B`.
pub fn make_box_pair<T: Scalar>(r: &T, n: usize, seed: u64) -> Result<(TropMatrix<T>, TropMatrix<T>)> {
    if *r >= T::zero() {
        return Err(Error::Precondition("r must be negative".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lo = r.clone() + r.clone();
    let a = random_in_interval(n, &lo, r, &mut rng);
    let b = random_in_interval(n, &lo, r, &mut rng);
    Ok((a, b))
}

/// `P(−p, −ε)`: `−p_i` on the cyclic subdiagonal, `−ε` elsewhere off the diagonal.
pub fn make_p<T: Scalar>(p: &[T], eps: &T) -> Result<TropMatrix<T>> {
    let n = p.len();
    if n < 3 {
        return Err(Error::Precondition(format!("P needs n >= 3, got {n}")));
    }
    let mut m = TropMatrix::const_matrix(Finite(-eps.clone()), n)?;
    for (i, pi) in p.iter().enumerate() {
        m.set((i + 1) % n, i, Finite(-pi.clone()));
    }
    Ok(m)
}

/// `Q(−p, −ε)`: `−p_i` at `(i+1, i)`, `−ε` at `(i+2, i)` (cyclically), zero elsewhere.
pub fn make_q<T: Scalar>(p: &[T], eps: &T) -> Result<TropMatrix<T>> {
    let n = p.len();
    if n < 4 {
        return Err(Error::Precondition(format!("Q needs n >= 4, got {n}")));
    }
    if *eps < T::zero() {
        return Err(Error::PositiveEntry((-eps.clone()).to_exact_string()));
    }
    let mut m = TropMatrix::zero(n);
    for (i, pi) in p.iter().enumerate() {
        if *pi < T::zero() {
            return Err(Error::PositiveEntry((-pi.clone()).to_exact_string()));
        }
        m.set((i + 1) % n, i, Finite(-pi.clone()));
        m.set((i + 2) % n, i, Finite(-eps.clone()));
    }
    Ok(m)
}

/// Result of checking one clause of the band-product identities.
#[derive(Clone, Debug)]
pub struct ClauseCheck<T> {
    pub passed: bool,
    pub forward: TropMatrix<T>,
    pub backward: TropMatrix<T>,
    pub expected: TropMatrix<T>,
}

#[derive(Clone, Debug)]
pub enum ClauseOutcome<T> {
    /// Hypothesis unmet, or the matrix family does not exist at this order.
    Skipped(String),
    Checked(ClauseCheck<T>),
}

impl<T> ClauseOutcome<T> {
    pub fn failed(&self) -> bool {
        matches!(self, ClauseOutcome::Checked(c) if !c.passed)
    }

    pub fn passed(&self) -> bool {
        matches!(self, ClauseOutcome::Checked(c) if c.passed)
    }
}

#[derive(Clone, Debug)]
pub struct PqReport<T> {
    pub p_clause: ClauseOutcome<T>,
    pub q_clause: ClauseOutcome<T>,
}

impl<T> PqReport<T> {
    pub fn any_failed(&self) -> bool {
        self.p_clause.failed() || self.q_clause.failed()
    }
}

fn clause<T: Scalar>(x: TropMatrix<T>, y: TropMatrix<T>, expected: TropMatrix<T>) -> Result<ClauseOutcome<T>> {
    let forward = x.mat_mul(&y)?;
    let backward = y.mat_mul(&x)?;
    let passed = forward == expected && backward == expected;
    Ok(ClauseOutcome::Checked(ClauseCheck { passed, forward, backward, expected }))
}

/// Checks `P(−p,−δ)P(−p,−ε) = P(−p,−ε)P(−p,−δ) = P(−(δ+ε,…), −m)` and
/// `Q(−p,−δ)Q(−p,−ε) = Q(−p,−ε)Q(−p,−δ)` with `m = min(δ, ε)`.
///
/// The Q products equal `Q(−(m,…,m), 0)` only for `n = 4`. From `n = 5` on,
/// every entry has an index `k` where both factors vanish, so both products
/// are the zero matrix; that is the value checked there.
pub fn check_pq_theorem<T: Scalar>(spec: &PerturbationSpec<T>) -> Result<PqReport<T>> {
    if !spec.hypothesis_holds() {
        let why = "delta + eps exceeds min p".to_string();
        return Ok(PqReport { p_clause: ClauseOutcome::Skipped(why.clone()), q_clause: ClauseOutcome::Skipped(why) });
    }
    let n = spec.p.len();
    let m = if spec.delta <= spec.eps { spec.delta.clone() } else { spec.eps.clone() };
    let p_clause = if n >= 3 {
        let sum = spec.delta.clone() + spec.eps.clone();
        clause(make_p(&spec.p, &spec.delta)?, make_p(&spec.p, &spec.eps)?, make_p(&vec![sum; n], &m)?)?
    } else {
        ClauseOutcome::Skipped(format!("P needs n >= 3, got {n}"))
    };
    let q_clause = if n >= 4 {
        let expected = if n == 4 { make_q(&vec![m; n], &T::zero())? } else { TropMatrix::zero(n) };
        clause(make_q(&spec.p, &spec.delta)?, make_q(&spec.p, &spec.eps)?, expected)?
    } else {
        ClauseOutcome::Skipped(format!("Q needs n >= 4, got {n}"))
    };
    Ok(PqReport { p_clause, q_clause })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commutant::max_product_criterion;
    use crate::fixtures;
    use crate::{Matrix, Rat};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| crate::scalar::int(x)).collect()
    }

    fn r(v: i64) -> Rat {
        crate::scalar::int(v)
    }

    #[test]
    fn size_relation() {
        assert!(same_size(&r(2), &r(4)).unwrap());
        assert!(!same_size(&r(1), &r(3)).unwrap());
        assert!(same_size(&r(7), &r(7)).unwrap());
        assert!(same_size(&r(3), &r(1)).is_err());
        assert!(same_size(&r(0), &r(1)).is_err());
    }

    #[test]
    fn band_matrices_match_reference() {
        let p = ints(&[4, 3, 5]);
        let (p2, p1) = fixtures::band_pair();
        assert_eq!(make_p(&p, &r(2)).unwrap(), p2);
        assert_eq!(make_p(&p, &r(1)).unwrap(), p1);
        assert!(make_p(&ints(&[1, 2]), &r(0)).is_err());
        assert!(make_q(&p, &r(0)).is_err());
    }

    #[test]
    fn q_band_layout() {
        let q4 = make_q(&ints(&[4, 3, 5, 6]), &r(1)).unwrap();
        assert_eq!(q4, Matrix::from_int_rows(&[[0, 0, -1, -6], [-4, 0, 0, -1], [-1, -3, 0, 0], [0, -1, -5, 0]]));
        let q5 = make_q(&ints(&[4, 3, 5, 6, 7]), &r(2)).unwrap();
        assert_eq!(
            q5,
            Matrix::from_int_rows(&[
                [0, 0, 0, -2, -7],
                [-4, 0, 0, 0, -2],
                [-2, -3, 0, 0, 0],
                [0, -2, -5, 0, 0],
                [0, 0, -2, -6, 0],
            ])
        );
    }

    #[test]
    fn unperturbed_bands_coincide() {
        for n in 4..8 {
            let p: Vec<Rat> = (1..=n as i64).map(|v| r(v + 2)).collect();
            assert_eq!(make_p(&p, &r(0)).unwrap(), make_q(&p, &r(0)).unwrap());
        }
    }

    #[test]
    fn reference_band_product() {
        let spec = PerturbationSpec::new(ints(&[4, 3, 5]), r(1), r(2)).unwrap();
        let report = check_pq_theorem(&spec).unwrap();
        match &report.p_clause {
            ClauseOutcome::Checked(c) => {
                assert!(c.passed);
                assert_eq!(c.forward, fixtures::band_product());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(report.q_clause, ClauseOutcome::Skipped(_)));
    }

    #[test]
    fn zero_perturbations() {
        let spec = PerturbationSpec::new(ints(&[4, 3, 5, 2]), r(0), r(0)).unwrap();
        let report = check_pq_theorem(&spec).unwrap();
        assert!(report.p_clause.passed() && report.q_clause.passed());
        let p0 = make_p(&spec.p, &r(0)).unwrap();
        if let ClauseOutcome::Checked(c) = &report.p_clause {
            assert_eq!(c.forward, p0.mat_mul(&p0).unwrap());
        }
    }

    #[test]
    fn q_products_collapse_from_order_five() {
        let spec4 = PerturbationSpec::new(ints(&[4, 4, 4, 4]), r(2), r(1)).unwrap();
        match check_pq_theorem(&spec4).unwrap().q_clause {
            ClauseOutcome::Checked(c) => {
                assert!(c.passed);
                assert_eq!(c.forward, make_q(&ints(&[1, 1, 1, 1]), &r(0)).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        for n in 5..=7 {
            let p = ints(&vec![4; n]);
            let (x, y) = (make_q(&p, &r(2)).unwrap(), make_q(&p, &r(1)).unwrap());
            assert_eq!(x.mat_mul(&y).unwrap(), Matrix::zero(n));
            assert_eq!(y.mat_mul(&x).unwrap(), Matrix::zero(n));
            let spec = PerturbationSpec::new(p, r(2), r(1)).unwrap();
            assert!(check_pq_theorem(&spec).unwrap().q_clause.passed());
        }
    }

    #[test]
    fn hypothesis_violation_is_skipped() {
        let spec = PerturbationSpec::new(ints(&[2, 3, 5, 4]), r(1), r(2)).unwrap();
        let report = check_pq_theorem(&spec).unwrap();
        assert!(matches!(report.p_clause, ClauseOutcome::Skipped(_)));
        assert!(!report.any_failed());
        assert!(PerturbationSpec::new(ints(&[0, 1, 1]), r(0), r(0)).is_err());
    }

    #[test]
    fn box_pairs_commute() {
        for seed in 0..20 {
            let (a, b) = make_box_pair(&r(-3), 5, seed).unwrap();
            let m = a.mat_add(&b).unwrap();
            assert_eq!(a.mat_mul(&b).unwrap(), m);
            assert_eq!(b.mat_mul(&a).unwrap(), m);
            assert!(a.is_idempotent() && b.is_idempotent() && m.is_idempotent());
            assert!(max_product_criterion(&a, &b).unwrap());
        }
        let k = Matrix::const_matrix(crate::ExtReal::int(-3), 4).unwrap();
        assert_eq!(k.mat_mul(&k).unwrap(), k);
        assert!(make_box_pair(&r(1), 3, 0).is_err());
    }
}
