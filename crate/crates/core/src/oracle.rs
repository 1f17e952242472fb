//! Exhaustive check over all 3×3 normal matrices with off-diagonal entries
//! from a small alphabet.

use crate::commutant::{commutes, omega_w_system, Winner, DEFAULT_EXPANSION_CAP};
use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::matrix::TropMatrix;
use crate::polytope::{compute_overline, compute_underline, Relabeling};
use crate::scalar::Scalar;

/// Default limit on the number of enumerated candidates.
pub const DEFAULT_GRID_CAP: u64 = 10_000_000;

/// The alphabet `{0, −1, −2, ⊥}`.
pub fn default_alphabet<T: Scalar>() -> Vec<ExtReal<T>> {
    vec![ExtReal::int(0), ExtReal::int(-1), ExtReal::int(-2), ExtReal::Bottom]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum InclusionCheck {
    /// `AX = XA = A` implies `X ≤ underline(A)`.
    BelowUnderline,
    /// `AX = XA = X` implies `overline(A) ≤ X`.
    AboveOverline,
    /// A commuting `X` lies in `Ω_w(A)` for each of its witness winners.
    OwnWitness,
    /// `X` commutes iff it lies in some `Ω_w(A)` with `w` collected from the grid.
    UnionOfCells,
}

impl InclusionCheck {
    pub fn name(&self) -> &'static str {
        match self {
            Self::BelowUnderline => "below-underline",
            Self::AboveOverline => "above-overline",
            Self::OwnWitness => "own-witness",
            Self::UnionOfCells => "union-of-cells",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Violation<T> {
    pub check: InclusionCheck,
    pub index: u64,
    pub x: TropMatrix<T>,
}

#[derive(Clone, Debug)]
pub struct GridOracleReport<T> {
    pub a: TropMatrix<T>,
    pub alphabet: Vec<ExtReal<T>>,
    pub candidates: u64,
    pub commuting: u64,
    /// `AX = XA = A`.
    pub omega_a: u64,
    /// `AX = XA = X`.
    pub omega_prime: u64,
    /// Distinct witness winners collected from commuting members.
    pub winners: usize,
    /// Number of times each check was applied.
    pub checked: Vec<(InclusionCheck, u64)>,
    pub zero_commutes: bool,
    pub identity_commutes: bool,
    /// Sorted by candidate index.
    pub violations: Vec<Violation<T>>,
}

impl<T> GridOracleReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn candidate<T: Scalar>(n: usize, alphabet: &[ExtReal<T>], mut index: u64) -> TropMatrix<T> {
    let k = alphabet.len() as u64;
    let mut x = TropMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                x.set(i, j, alphabet[(index % k) as usize].clone());
                index /= k;
            }
        }
    }
    x
}

/// Enumerates all `|alphabet|^(n²−n)` candidates (`n = 3` for a 3×3 `A`) and
/// checks the inclusions of [`InclusionCheck`].
pub fn run_grid_oracle<T: Scalar>(
    a: &TropMatrix<T>,
    alphabet: &[ExtReal<T>],
    cap: u64,
) -> Result<GridOracleReport<T>> {
    let n = a.ensure_real_normal()?;
    if !alphabet.contains(&ExtReal::zero()) {
        return Err(Error::Precondition("alphabet must contain 0".into()));
    }
    if alphabet.iter().any(|v| *v > ExtReal::zero()) {
        return Err(Error::Precondition("alphabet entries must be <= 0".into()));
    }
    let mut alpha = alphabet.to_vec();
    alpha.dedup();
    let slots = (n * n - n) as u32;
    let total = (alpha.len() as u64)
        .checked_pow(slots)
        .filter(|&t| t <= cap)
        .ok_or(Error::CapExceeded { cap: cap.min(usize::MAX as u64) as usize })?;

    let under = compute_underline(a)?;
    let over = compute_overline(a)?;
    let relabel = Relabeling::row_major(n);
    let mut report = GridOracleReport {
        a: a.clone(),
        alphabet: alpha.clone(),
        candidates: total,
        commuting: 0,
        omega_a: 0,
        omega_prime: 0,
        winners: 0,
        checked: Vec::new(),
        zero_commutes: commutes(a, &TropMatrix::zero(n))?.commutes,
        identity_commutes: commutes(a, &TropMatrix::identity(n))?.commutes,
        violations: Vec::new(),
    };
    let mut counts = [0u64; 4];
    let mut flags = Vec::with_capacity(total as usize);
    let mut winners: Vec<Winner> = Vec::new();
    let mut systems = Vec::new();

    for index in 0..total {
        let x = candidate(n, &alpha, index);
        let rep = commutes(a, &x)?;
        flags.push(rep.commutes);
        if !rep.commutes {
            continue;
        }
        report.commuting += 1;
        let mut fail = |check| report.violations.push(Violation { check, index, x: x.clone() });
        if rep.in_omega_a {
            report.omega_a += 1;
            counts[0] += 1;
            if !x.mat_le(&under)? {
                fail(InclusionCheck::BelowUnderline);
            }
        }
        if rep.in_omega_prime {
            report.omega_prime += 1;
            counts[1] += 1;
            if !over.mat_le(&x)? {
                fail(InclusionCheck::AboveOverline);
            }
        }
        let set = rep.witnesses.expect("commuting pairs carry witnesses");
        let ws = match set.expand(DEFAULT_EXPANSION_CAP) {
            Ok(ws) => ws,
            Err(Error::CapExceeded { .. }) => vec![set.first()],
            Err(e) => return Err(e),
        };
        let point = relabel.point_of(&x);
        counts[2] += 1;
        for w in ws {
            if !winners.contains(&w) {
                let sys = omega_w_system(a, &w)?;
                if !sys.contains(&point) {
                    fail(InclusionCheck::OwnWitness);
                }
                winners.push(w);
                systems.push(sys);
            } else {
                let k = winners.iter().position(|v| *v == w).expect("present");
                if !systems[k].contains(&point) {
                    fail(InclusionCheck::OwnWitness);
                }
            }
        }
    }

    for (index, &comm) in flags.iter().enumerate() {
        let x = candidate(n, &alpha, index as u64);
        let point = relabel.point_of(&x);
        let covered = systems.iter().any(|s| s.contains(&point));
        counts[3] += 1;
        if covered != comm {
            report.violations.push(Violation { check: InclusionCheck::UnionOfCells, index: index as u64, x });
        }
    }

    report.winners = winners.len();
    report.checked = vec![
        (InclusionCheck::BelowUnderline, counts[0]),
        (InclusionCheck::AboveOverline, counts[1]),
        (InclusionCheck::OwnWitness, counts[2]),
        (InclusionCheck::UnionOfCells, counts[3]),
    ];
    let mut own: Vec<_> = report.violations.drain(..).collect();
    own.sort_by(|u, v| (u.index, u.check).cmp(&(v.index, v.check)));
    own.dedup_by(|u, v| u.index == v.index && u.check == v.check);
    report.violations = own;
    Ok(report)
}
