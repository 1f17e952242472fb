//! Seeded random inputs for the property suites and the CLI.
//!
//! Values sit on a grid of step `1/4`, so exact arithmetic stays cheap and
//! ties (which matter for winners) show up often.

use rand::Rng;

use crate::commutant::Winner;
use crate::ext::{Bottom, ExtReal, Finite};
use crate::matrix::TropMatrix;
use crate::polytope::DiffConstraintSystem;
use crate::scalar::Scalar;

const STEP: i64 = 4;

/// A grid value in `[lo, hi]` (quarter steps), `lo ≤ hi`.
pub fn grid_value<T: Scalar, R: Rng>(rng: &mut R, lo: i64, hi: i64) -> T {
    T::from_ratio(rng.gen_range(lo * STEP..=hi * STEP), STEP)
}

/// Real normal matrix with off-diagonal entries in `[−spread, 0]`.
pub fn random_normal<T: Scalar, R: Rng>(n: usize, spread: i64, rng: &mut R) -> TropMatrix<T> {
    let mut m = TropMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, Finite(grid_value(rng, -spread, 0)));
            }
        }
    }
    m
}

/// Real strictly normal matrix with off-diagonal entries in `[−spread, −1/4]`.
pub fn random_strictly_normal<T: Scalar, R: Rng>(n: usize, spread: i64, rng: &mut R) -> TropMatrix<T> {
    let mut m = TropMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let k = rng.gen_range(-spread * STEP..=-1);
                m.set(i, j, Finite(T::from_ratio(k, STEP)));
            }
        }
    }
    m
}

/// Entrywise sample of the box `lo ≤ X ≤ hi`. Corners are drawn with
/// probability `1/4` each; a `⊥` lower bound is hit with probability `1/8`,
/// otherwise the value lies within 4 below `hi`.
pub fn sample_box<T: Scalar, R: Rng>(lo: &TropMatrix<T>, hi: &TropMatrix<T>, rng: &mut R) -> TropMatrix<T> {
    let mut out = hi.clone();
    for i in 0..hi.rows() {
        for j in 0..hi.cols() {
            let (l, h) = (lo.get(i, j), hi.get(i, j));
            let value = match (l, h) {
                (_, Bottom) => Bottom,
                (Bottom, Finite(h)) => {
                    if rng.gen_ratio(1, 8) {
                        Bottom
                    } else {
                        let k = rng.gen_range(0..=4 * STEP);
                        Finite(h.clone() - T::from_ratio(k, STEP))
                    }
                }
                (Finite(l), Finite(h)) => match rng.gen_range(0..4) {
                    0 => Finite(l.clone()),
                    1 => Finite(h.clone()),
                    _ => {
                        let t = T::from_ratio(rng.gen_range(0..=256), 256);
                        Finite(l.clone() + (h.clone() - l.clone()) * t)
                    }
                },
            };
            out.set(i, j, value);
        }
    }
    out
}

/// Uniform winner of order `n`.
pub fn random_winner<R: Rng>(n: usize, rng: &mut R) -> Winner {
    let mut w = Winner::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                w.set(i, j, (rng.gen_range(0..n), rng.gen_range(0..n))).expect("indices in range");
            }
        }
    }
    w
}

/// A sparse random difference system on `nvars` variables: each box side
/// and each ordered difference is bounded with probability `1/2`.
pub fn random_system<T: Scalar, R: Rng>(nvars: usize, rng: &mut R) -> DiffConstraintSystem<T> {
    let names = (1..=nvars).map(|k| format!("y_{k}")).collect();
    let mut s = DiffConstraintSystem::unconstrained(names);
    for k in 0..nvars {
        if rng.gen_bool(0.5) {
            s.require_lower(k, grid_value(rng, -6, 0));
        }
        if rng.gen_bool(0.5) {
            s.require_upper(k, grid_value(rng, -3, 3));
        }
    }
    for i in 0..nvars {
        for k in 0..nvars {
            if i != k && rng.gen_bool(0.5) {
                s.require_diff_lower(i, k, grid_value(rng, -4, 2));
            }
        }
    }
    s
}

/// Point with coordinates in `[lo, hi]`, occasionally `⊥` when `allow_bottom`.
pub fn random_point<T: Scalar, R: Rng>(n: usize, lo: i64, hi: i64, allow_bottom: bool, rng: &mut R) -> Vec<ExtReal<T>> {
    (0..n)
        .map(|_| if allow_bottom && rng.gen_ratio(1, 10) { Bottom } else { Finite(grid_value(rng, lo, hi)) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_respect_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..6 {
            assert!(random_normal::<Rat, _>(n, 5, &mut rng).is_normal());
            let s = random_strictly_normal::<Rat, _>(n, 5, &mut rng);
            assert!(s.is_strictly_normal() && s.is_real());
        }
    }

    #[test]
    fn box_samples_stay_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_normal::<Rat, _>(4, 5, &mut rng);
        let (lo, hi) = crate::commutant::neigh_identity_box(&a).unwrap();
        for _ in 0..50 {
            let x = sample_box(&lo, &hi, &mut rng);
            assert!(lo.mat_le(&x).unwrap() && x.mat_le(&hi).unwrap());
        }
    }

    #[test]
    fn seeded_is_deterministic() {
        let a: TropMatrix<Rat> = random_normal(4, 3, &mut ChaCha8Rng::seed_from_u64(11));
        let b: TropMatrix<Rat> = random_normal(4, 3, &mut ChaCha8Rng::seed_from_u64(11));
        assert_eq!(a, b);
    }
}
