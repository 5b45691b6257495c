use gentle_hh::complexes::{differential, pair_basis, Cochain};
use gentle_hh::field::FieldSpec;
use gentle_hh::hochschild::{basis, winding, HHClass, HHExpression};
use gentle_hh::quiver::{random_gentle, GentleAlgebra, RandomBounds};
use gentle_hh::structure::{chain_bracket, chain_cup, Structure};
use gentle_hh::threads::{complete_cycles, CycleKind};
use proptest::prelude::*;

fn bounds() -> RandomBounds {
    RandomBounds {
        max_vertices: 4,
        min_degree: -2,
        max_degree: 2,
        ..Default::default()
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A cochain in bidegree `(n, d)` with coefficients drawn from `coeffs`.
fn cochain(a: &GentleAlgebra, n: usize, d: i64, coeffs: &[i64]) -> Option<Cochain> {
    let pairs = pair_basis(a, n, d, Some(6)).ok()?.pairs;
    let mut f = Cochain::zero();
    for (p, c) in pairs.into_iter().zip(coeffs.iter().cycle()) {
        f.add_term(p, *c);
    }
    (!f.is_zero()).then_some(f)
}

fn diff(x: &Cochain, y: &Cochain) -> Cochain {
    let mut out = x.clone();
    out.add_scaled(y, -1);
    out
}

fn classes(a: &GentleAlgebra, field: FieldSpec) -> Vec<HHClass> {
    let mut out = Vec::new();
    for n in 0..=4 {
        for d in -4..=4 {
            if let Ok(b) = basis(a, field, n, d, None) {
                out.extend(b.into_iter().filter(|c| c.total_degree() <= 8));
            }
        }
    }
    out
}

fn one(field: FieldSpec, c: &HHClass) -> HHExpression {
    HHExpression::single(c.clone(), field.one())
}

fn scaled(field: FieldSpec, e: &HHExpression, k: i64) -> HHExpression {
    let mut out = HHExpression::zero();
    for (c, x) in &e.terms {
        out.add(field, c.clone(), &field.mul(x, &field.from_int(k)));
    }
    out
}

fn sum(field: FieldSpec, x: &HHExpression, y: &HHExpression) -> HHExpression {
    let mut out = x.clone();
    for (c, v) in &y.terms {
        out.add(field, c.clone(), v);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn cup_is_a_derivation_for_d(
        seed in any::<u64>(),
        (m, r, n, s) in (0usize..4, -3i64..=3, 0usize..4, -3i64..=3),
        coeffs in prop::collection::vec(-2i64..=2, 1..6),
    ) {
        let a = random_gentle(seed, bounds()).unwrap();
        let (Some(f), Some(g)) = (cochain(&a, m, r, &coeffs), cochain(&a, n, s, &coeffs)) else {
            return Ok(());
        };
        let lhs = differential(&a, &chain_cup(&a, &f, &g));
        let mut rhs = chain_cup(&a, &differential(&a, &f), &g).scaled(sign(s));
        rhs.add_scaled(&chain_cup(&a, &f, &differential(&a, &g)), sign(m as i64 + r));
        prop_assert!(diff(&lhs, &rhs).is_zero(), "seed {seed}");
    }

    #[test]
    fn d_is_a_derivation_of_the_bracket(
        seed in any::<u64>(),
        (m, r, n, s) in (0usize..4, -3i64..=3, 0usize..4, -3i64..=3),
        coeffs in prop::collection::vec(-2i64..=2, 1..6),
    ) {
        let a = random_gentle(seed, bounds()).unwrap();
        let (Some(f), Some(g)) = (cochain(&a, m, r, &coeffs), cochain(&a, n, s, &coeffs)) else {
            return Ok(());
        };
        let lhs = differential(&a, &chain_bracket(&a, &f, &g));
        let mut rhs = chain_bracket(&a, &differential(&a, &f), &g);
        rhs.add_scaled(&chain_bracket(&a, &f, &differential(&a, &g)), sign(m as i64 + r - 1));
        prop_assert!(diff(&lhs, &rhs).is_zero(), "seed {seed}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn closed_form_bracket_satisfies_jacobi(seed in any::<u64>()) {
        let a = random_gentle(seed, bounds()).unwrap();
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            let st = Structure::new(&a, field);
            let cs = classes(&a, field);
            for x in &cs {
                for y in &cs {
                    let xy = st.bracket(&one(field, x), &one(field, y)).unwrap();
                    let (dx, dy) = (x.total_degree() - 1, y.total_degree() - 1);
                    let yx = st.bracket(&one(field, y), &one(field, x)).unwrap();
                    prop_assert_eq!(&xy, &scaled(field, &yx, -sign(dx * dy)));
                    for z in &cs {
                        let lhs = st.bracket(&one(field, x), &st.bracket(&one(field, y), &one(field, z)).unwrap()).unwrap();
                        let first = st.bracket(&xy, &one(field, z)).unwrap();
                        let second = st.bracket(&one(field, y), &st.bracket(&one(field, x), &one(field, z)).unwrap()).unwrap();
                        let rhs = sum(field, &first, &scaled(field, &second, sign(dx * dy)));
                        prop_assert_eq!(lhs, rhs, "seed {} {} {} {}", seed, x.name(&a), y.name(&a), z.name(&a));
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_cup_is_graded_commutative_and_associative(seed in any::<u64>()) {
        let a = random_gentle(seed, bounds()).unwrap();
        for field in [FieldSpec::Rationals, FieldSpec::Prime(3)] {
            let st = Structure::new(&a, field).with_cap(12);
            let cs = classes(&a, field);
            for x in &cs {
                for y in &cs {
                    let xy = st.cup(&one(field, x), &one(field, y)).unwrap();
                    let yx = st.cup(&one(field, y), &one(field, x)).unwrap();
                    // Koszul sign of the bigrading: (-1)^{nn' + dd'}
                    let ((n1, d1), (n2, d2)) = (x.bidegree(), y.bidegree());
                    let koszul = sign((n1 * n2) as i64 + d1 * d2);
                    prop_assert_eq!(&xy, &scaled(field, &yx, koszul));
                    for z in &cs {
                        let left = st.cup(&xy, &one(field, z)).unwrap();
                        let right = st.cup(&one(field, x), &st.cup(&one(field, y), &one(field, z)).unwrap()).unwrap();
                        prop_assert_eq!(left, right);
                    }
                }
            }
        }
    }

    /// `e_m ↦ ±N1(u^m)`, `f_m ↦ ±N0(u^m)` satisfy the Witt-type relations
    /// for every cycle of even winding number, with normalizing signs fixed
    /// by the cycle kind and the last arrow.
    #[test]
    fn witt_relations_on_even_cycles(seed in any::<u64>()) {
        let a = random_gentle(seed, bounds()).unwrap();
        let q = FieldSpec::Rationals;
        let st = Structure::new(&a, q);
        for c in complete_cycles(&a) {
            if winding(&c) % 2 != 0 {
                continue;
            }
            let last = a.degree(c.primitive.last().unwrap());
            let deg = c.degree();
            let eps_e = |_: usize| match c.kind {
                CycleKind::Chain => 1,
                CycleKind::Live => -1,
            };
            let eps_f = |m: usize| match c.kind {
                CycleKind::Chain => sign(m as i64 * deg * (last + 1)),
                CycleKind::Live => 1,
            };
            let e = |m: usize| scaled(q, &one(q, &HHClass::N1 { cycle: c.clone(), m }), eps_e(m));
            let f = |m: usize| scaled(q, &one(q, &HHClass::N0 { cycle: c.clone(), m }), eps_f(m));
            for i in 1..=3 {
                for j in 1..=3 {
                    prop_assert_eq!(st.bracket(&e(i), &e(j)).unwrap(), scaled(q, &e(i + j), i as i64 - j as i64));
                    prop_assert_eq!(st.bracket(&f(i), &e(j)).unwrap(), scaled(q, &f(i + j), i as i64));
                    prop_assert!(st.bracket(&f(i), &f(j)).unwrap().is_zero());
                }
            }
        }
    }
}
