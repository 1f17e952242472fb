//! Tightening, emptiness and the text/JSON formats.

mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tropcomm::commutant::{omega_w_empty_quick, omega_w_system};
use tropcomm::io::{parse_matrix, system_from_json, system_to_json, write_matrix};
use tropcomm::polytope::polytope_dim;
use tropcomm::{sample, DiffConstraintSystem, ExtRat, Matrix, Rat};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tightening_preserves_points(nvars in 1usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: DiffConstraintSystem<Rat> = sample::random_system(nvars, &mut rng);
        match s.tighten() {
            Ok(t) => {
                prop_assert_eq!(t.tighten().unwrap(), t.clone());
                for _ in 0..50 {
                    let p = sample::random_point::<Rat, _>(nvars, -8, 4, true, &mut rng);
                    prop_assert_eq!(s.contains(&p), t.contains(&p));
                }
                let y = s.sample_point(seed).unwrap();
                let y: Vec<ExtRat> = y.into_iter().map(ExtRat::Finite).collect();
                prop_assert!(s.contains(&y));
                prop_assert!(polytope_dim(&s).unwrap() <= nvars);
            }
            Err(_) => {
                prop_assert!(s.is_empty());
                for _ in 0..50 {
                    let p = sample::random_point::<Rat, _>(nvars, -8, 4, false, &mut rng);
                    prop_assert!(!s.contains(&p));
                }
            }
        }
    }

    #[test]
    fn quick_emptiness_is_sound(a in (2usize..=4).prop_flat_map(normal), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample::random_winner(a.rows(), &mut rng);
        if omega_w_empty_quick(&a, &w).unwrap() {
            prop_assert!(omega_w_system(&a, &w).unwrap().is_empty());
        }
    }

    #[test]
    fn omega_w_members_commute(a in (2usize..=3).prop_flat_map(normal), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = sample::random_winner(a.rows(), &mut rng);
        let sys = omega_w_system(&a, &w).unwrap();
        if let Some(y) = sys.sample_point(seed) {
            let pt: Vec<ExtRat> = y.into_iter().map(ExtRat::Finite).collect();
            let x = tropcomm::Relabeling::row_major(a.rows()).matrix_of(&pt);
            prop_assert_eq!(a.mat_mul(&x).unwrap(), x.mat_mul(&a).unwrap());
        }
    }

    #[test]
    fn matrix_text_round_trip(a in (1usize..=5).prop_flat_map(normal_ext)) {
        let text = write_matrix(&a);
        let back: Matrix = parse_matrix(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn system_json_round_trip(nvars in 1usize..=5, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: DiffConstraintSystem<Rat> = sample::random_system(nvars, &mut rng);
        let v = system_to_json(&s);
        let back: DiffConstraintSystem<Rat> = system_from_json(&v).unwrap();
        // Reading the JSON only keeps the tighter of each pair of mirrored slots.
        prop_assert_eq!(system_to_json(&back), v);
    }
}

#[test]
fn float_scalars_run_the_same_pipeline() {
    let b: tropcomm::TropMatrix<f64> = parse_matrix("3 3\n0 -3 -1\n-4 0 -6\n-5 0 0\n").unwrap();
    let over = tropcomm::compute_overline(&b).unwrap();
    assert_eq!(over, b.kleene_star().unwrap());
    let under = tropcomm::compute_underline(&b).unwrap();
    assert!(under.mat_le(&b).unwrap());
}
