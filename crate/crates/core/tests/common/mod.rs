#![allow(dead_code)]

use proptest::prelude::*;
use tropcomm::{ExtRat, Matrix, Rat};

pub fn q(k: i64) -> Rat {
    Rat::new(k.into(), 4.into())
}

fn fill(n: usize, offdiag: &[ExtRat]) -> Matrix {
    let mut m = Matrix::zero(n);
    let mut it = offdiag.iter();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, it.next().expect("enough entries").clone());
            }
        }
    }
    m
}

/// Real normal matrices of order `n`, entries on a quarter grid in `[−4, 0]`.
pub fn normal(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-16i64..=0, n * n - n)
        .prop_map(move |v| fill(n, &v.into_iter().map(|k| ExtRat::Finite(q(k))).collect::<Vec<_>>()))
}

/// Strictly normal real matrices.
pub fn strictly_normal(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-16i64..=-1, n * n - n)
        .prop_map(move |v| fill(n, &v.into_iter().map(|k| ExtRat::Finite(q(k))).collect::<Vec<_>>()))
}

/// Normal matrices that may contain ⊥ off the diagonal.
pub fn normal_ext(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(prop::option::weighted(0.8, -16i64..=0), n * n - n).prop_map(move |v| {
        fill(n, &v.into_iter().map(|k| k.map_or(ExtRat::Bottom, |k| ExtRat::Finite(q(k)))).collect::<Vec<_>>())
    })
}

pub fn any_order_normal() -> impl Strategy<Value = Matrix> {
    (1usize..=5).prop_flat_map(normal)
}

pub fn ext_value() -> impl Strategy<Value = ExtRat> {
    prop::option::weighted(0.85, -40i64..=40).prop_map(|k| k.map_or(ExtRat::Bottom, |k| ExtRat::Finite(q(k))))
}
