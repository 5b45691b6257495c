use gentle_hh::complexes::cohomology_dim;
use gentle_hh::field::FieldSpec;
use gentle_hh::hochschild::{basis, identify, representative, HHExpression};
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
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn basis_size_equals_cohomology_dimension(seed in any::<u64>()) {
        let a = random_gentle(seed, bounds()).unwrap();
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            for n in 0..=5 {
                for d in -6..=6 {
                    let (Ok(b), Ok(h)) = (basis(&a, field, n, d, None), cohomology_dim(&a, field, n, d, None)) else {
                        continue;
                    };
                    prop_assert_eq!(b.len(), h.value, "seed {} {} ({}, {})\n{}", seed, field, n, d, a.quiver().to_json());
                }
            }
        }
    }

    #[test]
    fn representatives_round_trip(seed in any::<u64>()) {
        let a = random_gentle(seed, bounds()).unwrap();
        let field = FieldSpec::Rationals;
        for n in 0..=4 {
            for d in -4..=4 {
                let Ok(classes) = basis(&a, field, n, d, None) else { continue };
                for c in classes {
                    let z = representative(&a, &c).unwrap();
                    // neighbouring bidegrees may be infinite; a cap then bounds them
                    let e = identify(&a, field, &z, None)
                        .or_else(|_| identify(&a, field, &z, Some(12)))
                        .unwrap();
                    prop_assert_eq!(e, HHExpression::single(c, field.one()));
                }
            }
        }
    }
}
