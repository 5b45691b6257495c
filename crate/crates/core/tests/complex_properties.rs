use gentle_hh::complexes::{cohomology_dim, differential, graded_center_dim, pair_basis, Cochain};
use gentle_hh::field::FieldSpec;
use gentle_hh::quiver::{random_gentle, RandomBounds};
use proptest::prelude::*;

fn bounds() -> RandomBounds {
    RandomBounds {
        max_vertices: 5,
        min_degree: -2,
        max_degree: 2,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>()) {
        let a = random_gentle(seed, bounds()).unwrap();
        for n in 0..=5 {
            for d in -6..=6 {
                for p in pair_basis(&a, n, d, Some(8)).unwrap().pairs {
                    let dd = differential(&a, &differential(&a, &Cochain::single(p, 1)));
                    prop_assert!(dd.is_zero(), "seed {seed}, ({n}, {d})");
                }
            }
        }
    }

    #[test]
    fn center_is_degree_zero_cohomology(seed in any::<u64>()) {
        let a = random_gentle(seed, bounds()).unwrap();
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            for d in -3..=3 {
                let (Ok(z), Ok(h)) = (
                    graded_center_dim(&a, field, d, None),
                    cohomology_dim(&a, field, 0, d, None),
                ) else {
                    continue;
                };
                prop_assert_eq!(z.value, h.value, "seed {}, d = {}, {}", seed, d, field);
            }
        }
    }
}
