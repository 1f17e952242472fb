//! Algebraic laws and the structural results on normal matrices.

mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropcomm::commutant::{between_powers_check, commutes, max_product_criterion, neigh_identity_box, neigh_zero_box};
use tropcomm::perturb::make_box_pair;
use tropcomm::polytope::{bars_check, compute_overline, compute_underline};
use tropcomm::section::{section_complex, sector_check};
use tropcomm::{sample, span_contains, ExtRat, Matrix, Rat};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn semiring_laws(a in ext_value(), b in ext_value(), c in ext_value()) {
        prop_assert_eq!(a.oplus(&b), b.oplus(&a));
        prop_assert_eq!(a.otimes(&b), b.otimes(&a));
        prop_assert_eq!(a.oplus(&b).oplus(&c), a.oplus(&b.oplus(&c)));
        prop_assert_eq!(a.otimes(&b).otimes(&c), a.otimes(&b.otimes(&c)));
        prop_assert_eq!(a.otimes(&b.oplus(&c)), a.otimes(&b).oplus(&a.otimes(&c)));
        prop_assert_eq!(a.oplus(&a), a.clone());
        prop_assert_eq!(a.oplus(&ExtRat::Bottom), a.clone());
        prop_assert_eq!(a.otimes(&ExtRat::zero()), a.clone());
        prop_assert_eq!(a.otimes(&ExtRat::Bottom), ExtRat::Bottom);
    }

    #[test]
    fn product_is_associative((a, b, c) in (1usize..=4).prop_flat_map(|n| (normal_ext(n), normal_ext(n), normal_ext(n)))) {
        let left = a.mat_mul(&b).unwrap().mat_mul(&c).unwrap();
        let right = a.mat_mul(&b.mat_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_is_monotone((a, b, x) in (2usize..=4).prop_flat_map(|n| (normal(n), normal(n), normal(n)))) {
        let lo = a.mat_min(&b).unwrap();
        let hi = a.mat_add(&b).unwrap();
        prop_assert!(lo.mat_mul(&x).unwrap().mat_le(&hi.mat_mul(&x).unwrap()).unwrap());
        prop_assert!(x.mat_mul(&lo).unwrap().mat_le(&x.mat_mul(&hi).unwrap()).unwrap());
    }

    #[test]
    fn powers_form_a_chain_and_stabilise(a in any_order_normal()) {
        let n = a.rows();
        let mut prev = Matrix::identity(n);
        for k in 1..=n {
            let p = a.mat_pow(k).unwrap();
            prop_assert!(prev.mat_le(&p).unwrap());
            prev = p;
        }
        prop_assert!(prev.mat_le(&Matrix::zero(n)).unwrap());
        if n >= 2 {
            prop_assert_eq!(a.mat_pow(n - 1).unwrap(), a.mat_pow(n).unwrap());
        }
        let star = a.kleene_star().unwrap();
        prop_assert_eq!(star.mat_mul(&star).unwrap(), star.clone());
        prop_assert_eq!(star.kleene_star().unwrap(), star);
    }

    #[test]
    fn order_two_always_commutes(a in normal_ext(2), b in normal_ext(2)) {
        prop_assert_eq!(a.mat_mul(&b).unwrap(), b.mat_mul(&a).unwrap());
    }

    #[test]
    fn bars_enclose_the_matrix(a in any_order_normal()) {
        prop_assert!(bars_check(&a).unwrap());
        prop_assert!(compute_underline(&a).unwrap().is_normal());
        prop_assert!(compute_overline(&a).unwrap().is_normal());
    }

    #[test]
    fn star_members_commute(a in (2usize..=4).prop_flat_map(normal)) {
        // I, the powers and the star all commute with A.
        let n = a.rows();
        for k in 0..n {
            let p = a.mat_pow(k).unwrap();
            prop_assert!(commutes(&a, &p).unwrap().commutes);
        }
        prop_assert!(between_powers_check(&a, &a.kleene_star().unwrap()).unwrap());
    }

    #[test]
    fn necessary_conditions_hold_on_powers(a in (2usize..=4).prop_flat_map(normal)) {
        // A* ∈ Ω'(A) and I ∈ Ω^A(A).
        let under = compute_underline(&a).unwrap();
        let over = compute_overline(&a).unwrap();
        let star = a.kleene_star().unwrap();
        let c = commutes(&a, &star).unwrap();
        prop_assert!(c.in_omega_prime);
        prop_assert!(over.mat_le(&star).unwrap());
        let id = Matrix::identity(a.rows());
        prop_assert!(commutes(&a, &id).unwrap().in_omega_a);
        prop_assert!(id.mat_le(&under).unwrap());
    }

    #[test]
    fn identity_box_lies_in_the_commutant(a in (2usize..=5).prop_flat_map(normal), seed in any::<u64>()) {
        let (lo, hi) = neigh_identity_box(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let x = sample::sample_box(&lo, &hi, &mut rng);
            prop_assert_eq!(a.mat_mul(&x).unwrap(), a.clone());
            prop_assert_eq!(x.mat_mul(&a).unwrap(), a.clone());
        }
    }

    #[test]
    fn zero_box_lies_in_the_commutant(a in (2usize..=5).prop_flat_map(strictly_normal), seed in any::<u64>()) {
        let (lo, hi) = neigh_zero_box(&a).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let x = sample::sample_box(&lo, &hi, &mut rng);
            prop_assert_eq!(a.mat_mul(&x).unwrap(), x.clone());
            prop_assert_eq!(x.mat_mul(&a).unwrap(), x);
        }
    }

    #[test]
    fn box_pairs_commute_to_their_sum(n in 1usize..=6, k in 1i64..=12, seed in any::<u64>()) {
        let r = q(-k);
        let (a, b) = make_box_pair(&r, n, seed).unwrap();
        prop_assert!(max_product_criterion(&a, &b).unwrap());
        let sum = a.mat_add(&b).unwrap();
        prop_assert_eq!(a.mat_mul(&b).unwrap(), sum.clone());
        prop_assert_eq!(b.mat_mul(&a).unwrap(), sum.clone());
        prop_assert!(a.is_idempotent() && b.is_idempotent() && sum.is_idempotent());
    }

    #[test]
    fn max_product_criterion_is_sufficient((a, b) in (2usize..=4).prop_flat_map(|n| (normal_ext(n), normal_ext(n)))) {
        if max_product_criterion(&a, &b).unwrap() {
            let sum = a.mat_add(&b).unwrap();
            prop_assert_eq!(a.mat_mul(&b).unwrap(), sum.clone());
            prop_assert_eq!(b.mat_mul(&a).unwrap(), sum);
        }
    }

    #[test]
    fn residuation_is_the_greatest_subsolution(a in (1usize..=4).prop_flat_map(normal), x in prop::collection::vec(-20i64..=20, 4)) {
        let n = a.rows();
        let x: Vec<Rat> = x[..n].iter().map(|&k| q(k)).collect();
        let m = tropcomm::span_member(&a, &x).unwrap();
        for (img, xi) in m.image.iter().zip(&x) {
            prop_assert!(img <= xi);
        }
        // The image is itself a member, with the same image.
        let again = tropcomm::span_member(&a, &m.image).unwrap();
        prop_assert!(again.member);
        prop_assert_eq!(again.image, m.image);
    }

    #[test]
    fn product_spans_nest((a, b) in (1usize..=4).prop_flat_map(|n| (normal(n), normal(n)))) {
        let ab = a.mat_mul(&b).unwrap();
        prop_assert!(span_contains(&a, &ab).unwrap().contains);
    }

    #[test]
    fn sectors_hold_for_normal_3x3(a in normal(3)) {
        prop_assert!(sector_check(&a).unwrap());
    }

    #[test]
    fn sections_are_connected_and_hold_their_generators(a in normal(3)) {
        let s = section_complex(&a).unwrap();
        prop_assert!(s.is_connected());
        for g in &s.generators {
            prop_assert!(s.vertices.contains(g));
        }
        prop_assert!(s.contains(&tropcomm::section::Point::origin()));
    }

    #[test]
    fn star_sections_are_convex(a in normal(3), seed in any::<u64>()) {
        let star = a.kleene_star().unwrap();
        let s = section_complex(&star).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let p = s.sample_point(&mut rng);
            let r = s.sample_point(&mut rng);
            prop_assert!(s.contains(&p) && s.contains(&r));
            let mid = tropcomm::section::Point::new(
                (p.x.clone() + r.x.clone()) / q(8),
                (p.y.clone() + r.y.clone()) / q(8),
            );
            prop_assert!(s.contains(&mid), "midpoint {:?} of {:?} and {:?}", mid, p, r);
        }
    }
}

#[test]
fn non_star_section_is_not_convex() {
    let s = section_complex(&tropcomm::fixtures::border3()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let found = (0..1000).any(|_| {
        let p = s.sample_point(&mut rng);
        let r = s.sample_point(&mut rng);
        let mid = tropcomm::section::Point::new((p.x + r.x) / q(8), (p.y + r.y) / q(8));
        !s.contains(&mid)
    });
    assert!(found);
}
