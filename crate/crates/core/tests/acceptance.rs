//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report is always printed.

use std::collections::BTreeMap;
use std::time::Instant;

use gentle_hh::boundary::{boundary_cycles, is_proper, surface_invariants, CycleShape};
use gentle_hh::complexes::{cohomology_dim, differential, graded_center_dim, pair_basis, Cochain};
use gentle_hh::field::FieldSpec;
use gentle_hh::fixtures::{algebra, E1, E2, E3, E4, E5};
use gentle_hh::formality::{formality, Verdict};
use gentle_hh::hochschild::{basis, identify, representative, winding, HHClass, HHExpression};
use gentle_hh::quiver::{random_gentle, GentleAlgebra, RandomBounds};
use gentle_hh::structure::{chain_bracket, chain_cup, Structure};
use gentle_hh::threads::{
    chain_threads, complete_cycles, live_threads, maximal_live_paths, PathWord,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const FIELDS: [FieldSpec; 3] = [
    FieldSpec::Rationals,
    FieldSpec::Prime(2),
    FieldSpec::Prime(3),
];

fn bounds(max_vertices: usize) -> RandomBounds {
    RandomBounds {
        max_vertices,
        min_degree: -2,
        max_degree: 2,
        ..Default::default()
    }
}

fn fixtures() -> Vec<(String, GentleAlgebra)> {
    [("E1", E1), ("E2", E2), ("E3", E3), ("E4", E4), ("E5", E5)]
        .into_iter()
        .map(|(n, j)| (n.to_string(), algebra(j)))
        .collect()
}

/// Fixtures plus seeded random algebras.
fn corpus(random: u64, max_vertices: usize) -> Vec<(String, GentleAlgebra)> {
    let mut out = fixtures();
    for seed in 0..random {
        out.push((
            format!("seed {seed}"),
            random_gentle(seed, bounds(max_vertices)).unwrap(),
        ));
    }
    out
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
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

/// Finite basis classes with `n <= nmax`, `|d| <= dmax`.
fn classes(a: &GentleAlgebra, field: FieldSpec, nmax: usize, dmax: i64) -> Vec<HHClass> {
    let mut out = Vec::new();
    for n in 0..=nmax {
        for d in -dmax..=dmax {
            if let Ok(b) = basis(a, field, n, d, None) {
                out.extend(b);
            }
        }
    }
    out
}

fn differential_soundness() -> Outcome {
    let mut checked = 0usize;
    for seed in 0..200 {
        let a = random_gentle(seed, bounds(6)).unwrap();
        for n in 0..=5 {
            for d in -6..=6 {
                for p in pair_basis(&a, n, d, Some(8))
                    .map_err(|e| e.to_string())?
                    .pairs
                {
                    let dd = differential(&a, &differential(&a, &Cochain::single(p, 1)));
                    for f in FIELDS {
                        check(dd.is_zero_in(f), || {
                            format!("seed {seed} ({n}, {d}) over {f}")
                        })?;
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "d^2 = 0 on {checked} pairs of 200 algebras over Q, F2, F3"
    ))
}

/// Degree window containing every nonempty cochain space with `n <= nmax`.
fn degree_window(a: &GentleAlgebra, nmax: usize) -> i64 {
    let longest = maximal_live_paths(a)
        .iter()
        .map(PathWord::len)
        .max()
        .unwrap_or(0);
    let top = (0..a.num_arrows())
        .map(|x| a.degree(x).abs())
        .max()
        .unwrap_or(0);
    (nmax + longest) as i64 * top
}

fn basis_oracle() -> Outcome {
    let mut instances: Vec<(String, GentleAlgebra)> = fixtures().into_iter().take(4).collect();
    let mut seed = 0;
    while instances.len() < 4 + 50 {
        let a = random_gentle(seed, bounds(5)).unwrap();
        if is_proper(&a) {
            instances.push((format!("seed {seed}"), a));
        }
        seed += 1;
    }
    let mut cells = 0usize;
    for (name, a) in &instances {
        let w = degree_window(a, 6);
        for f in FIELDS {
            for n in 0..=6 {
                for d in -w..=w {
                    let b = basis(a, f, n, d, None)
                        .map_err(|e| format!("{name}: {e}"))?
                        .len();
                    let h = cohomology_dim(a, f, n, d, None).map_err(|e| format!("{name}: {e}"))?;
                    check(!h.lower_bound && b == h.value, || {
                        format!(
                            "{name} over {f} at ({n}, {d}): basis {b}, oracle {}",
                            h.value
                        )
                    })?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} algebras, {cells} cells in characteristics 0, 2, 3",
        instances.len()
    ))
}

fn fixture_tables() -> Outcome {
    let q = FieldSpec::Rationals;
    let row = |a: &GentleAlgebra, d: i64| -> Result<Vec<usize>, String> {
        (0..=6)
            .map(|n| {
                cohomology_dim(a, q, n, d, None)
                    .map(|x| x.value)
                    .map_err(|e| e.to_string())
            })
            .collect()
    };
    let e1 = algebra(E1);
    for n in 0..=6 {
        for d in -6..=6 {
            let h = cohomology_dim(&e1, q, n, d, None)
                .map_err(|e| e.to_string())?
                .value;
            let want = usize::from((n, d) == (0, 0));
            check(h == want, || format!("E1 ({n}, {d}) has dim {h}"))?;
        }
    }
    let e2 = row(&algebra(E2), 0)?;
    check(e2 == [1; 7], || format!("E2 d=0 row {e2:?}"))?;
    let e3 = row(&algebra(E3), 0)?;
    check(e3 == [2, 1, 1, 0, 0, 0, 0], || format!("E3 d=0 row {e3:?}"))?;
    Ok("E1 concentrated in (0,0); E2 row 1,1,1,1,1,1,1; E3 row 2,1,1,0,0,0,0".into())
}

fn center() -> Outcome {
    let (mut cells, mut infinite) = (0usize, 0usize);
    for (name, a) in corpus(100, 5) {
        for f in [FieldSpec::Rationals, FieldSpec::Prime(2)] {
            for d in -6..=6 {
                match (
                    graded_center_dim(&a, f, d, None),
                    cohomology_dim(&a, f, 0, d, None),
                ) {
                    (Ok(z), Ok(h)) => {
                        check(z.value == h.value, || {
                            format!(
                                "{name} over {f}, d={d}: center {}, HH^0 {}",
                                z.value, h.value
                            )
                        })?;
                        cells += 1;
                    }
                    // An infinite-dimensional cochain space C^{0,d} cannot be
                    // reduced without a cap; such degrees are not compared.
                    _ => infinite += 1,
                }
            }
        }
    }
    Ok(format!(
        "{cells} degrees on 105 algebras; {infinite} degrees with infinite cochain spaces skipped"
    ))
}

fn structure_compatibility() -> Outcome {
    let mut pairs = 0usize;
    for (name, a) in corpus(60, 4) {
        for f in FIELDS {
            let st = Structure::new(&a, f).with_cap(12);
            let cs = classes(&a, f, 4, 4);
            let reps: Vec<Cochain> = cs
                .iter()
                .map(|c| representative(&a, c))
                .collect::<Result<_, _>>()
                .map_err(|e| format!("{name}: {e}"))?;
            for (x, rx) in cs.iter().zip(&reps) {
                for (y, ry) in cs.iter().zip(&reps) {
                    let (ex, ey) = (one(f, x), one(f, y));
                    let cup = st.cup(&ex, &ey).map_err(|e| format!("{name}: {e}"))?;
                    let chain = identify(&a, f, &chain_cup(&a, rx, ry), Some(12))
                        .map_err(|e| e.to_string())?;
                    check(cup == chain, || {
                        format!(
                            "{name} over {f}: cup {} {} closed {} chain {}",
                            x.name(&a),
                            y.name(&a),
                            cup.display(&a, f),
                            chain.display(&a, f)
                        )
                    })?;
                    let br = st.bracket(&ex, &ey).map_err(|e| format!("{name}: {e}"))?;
                    let chain = identify(&a, f, &chain_bracket(&a, rx, ry), Some(12))
                        .map_err(|e| e.to_string())?;
                    check(br == chain, || {
                        format!(
                            "{name} over {f}: bracket {} {} closed {} chain {}",
                            x.name(&a),
                            y.name(&a),
                            br.display(&a, f),
                            chain.display(&a, f)
                        )
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "{pairs} class pairs, cup and bracket, on 65 algebras over Q, F2, F3"
    ))
}

fn witt() -> Outcome {
    let a = algebra(E2);
    let q = FieldSpec::Rationals;
    let st = Structure::new(&a, q);
    let u = complete_cycles(&a)
        .into_iter()
        .next()
        .ok_or("E2 has no cycle")?;
    let n1 = |m: usize| HHClass::N1 {
        cycle: u.clone(),
        m,
    };
    let n0 = |m: usize| HHClass::N0 {
        cycle: u.clone(),
        m,
    };
    let mut count = 0;
    for m in 1..6 {
        for n in 1..=6 - m {
            let cases = [
                (
                    n1(m),
                    n1(n),
                    scaled(q, &one(q, &n1(m + n)), m as i64 - n as i64),
                ),
                (n0(m), n1(n), scaled(q, &one(q, &n0(m + n)), m as i64)),
                (n0(m), n0(n), HHExpression::zero()),
            ];
            for (x, y, want) in cases {
                let got = st
                    .bracket(&one(q, &x), &one(q, &y))
                    .map_err(|e| e.to_string())?;
                check(got == want, || {
                    format!("[{}, {}] = {}", x.name(&a), y.name(&a), got.display(&a, q))
                })?;
                let rx = representative(&a, &x).map_err(|e| e.to_string())?;
                let ry = representative(&a, &y).map_err(|e| e.to_string())?;
                let chain = identify(&a, q, &chain_bracket(&a, &rx, &ry), None)
                    .map_err(|e| e.to_string())?;
                check(chain == want, || {
                    format!(
                        "chain-level [{}, {}] = {}",
                        x.name(&a),
                        y.name(&a),
                        chain.display(&a, q)
                    )
                })?;
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} brackets on E2 with m+n <= 6, closed form and chain level"
    ))
}

fn axioms() -> Outcome {
    let (mut triples, mut pairs) = (0usize, 0usize);
    for (name, a) in corpus(40, 4) {
        for f in FIELDS {
            let st = Structure::new(&a, f).with_cap(12);
            let cs: Vec<HHClass> = classes(&a, f, 4, 4)
                .into_iter()
                .filter(|c| c.total_degree() <= 8)
                .collect();
            let err = |e: gentle_hh::error::Error| format!("{name}: {e}");
            for x in &cs {
                for y in &cs {
                    let (ex, ey) = (one(f, x), one(f, y));
                    let xy = st.bracket(&ex, &ey).map_err(err)?;
                    let yx = st.bracket(&ey, &ex).map_err(err)?;
                    let (sx, sy) = (x.total_degree() - 1, y.total_degree() - 1);
                    check(xy == scaled(f, &yx, -sign(sx * sy)), || {
                        format!(
                            "{name} over {f}: antisymmetry fails for {}, {}",
                            x.name(&a),
                            y.name(&a)
                        )
                    })?;
                    let cxy = st.cup(&ex, &ey).map_err(err)?;
                    let cyx = st.cup(&ey, &ex).map_err(err)?;
                    let ((n1, d1), (n2, d2)) = (x.bidegree(), y.bidegree());
                    check(
                        cxy == scaled(f, &cyx, sign((n1 * n2) as i64 + d1 * d2)),
                        || {
                            format!(
                                "{name} over {f}: cup commutativity fails for {}, {}",
                                x.name(&a),
                                y.name(&a)
                            )
                        },
                    )?;
                    pairs += 1;
                    for z in &cs {
                        let ez = one(f, z);
                        let lhs = st
                            .bracket(&ex, &st.bracket(&ey, &ez).map_err(err)?)
                            .map_err(err)?;
                        let r1 = st.bracket(&xy, &ez).map_err(err)?;
                        let r2 = st
                            .bracket(&ey, &st.bracket(&ex, &ez).map_err(err)?)
                            .map_err(err)?;
                        check(lhs == sum(f, &r1, &scaled(f, &r2, sign(sx * sy))), || {
                            format!(
                                "{name} over {f}: Jacobi fails for {}, {}, {}",
                                x.name(&a),
                                y.name(&a),
                                z.name(&a)
                            )
                        })?;
                        let left = st.cup(&cxy, &ez).map_err(err)?;
                        let right = st.cup(&ex, &st.cup(&ey, &ez).map_err(err)?).map_err(err)?;
                        check(left == right, || {
                            format!(
                                "{name} over {f}: associativity fails for {}, {}, {}",
                                x.name(&a),
                                y.name(&a),
                                z.name(&a)
                            )
                        })?;
                        triples += 1;
                    }
                }
            }
        }
    }
    Ok(format!("Jacobi and associativity on {triples} triples, antisymmetry and commutativity on {pairs} pairs"))
}

fn aag_consistency() -> Outcome {
    let all = corpus(300, 6);
    for (name, a) in &all {
        let cycles = boundary_cycles(a);
        let mut live: BTreeMap<PathWord, i64> = BTreeMap::new();
        let mut chains: BTreeMap<PathWord, i64> = BTreeMap::new();
        for t in live_threads(a) {
            *live.entry(t).or_default() += 1;
        }
        for t in chain_threads(a) {
            *chains.entry(t).or_default() += 1;
        }
        // Occurrences of each vertex on the live side and on the relation-chain
        // side of the boundary, counted with multiplicity.
        let mut live_side = vec![0usize; a.num_vertices()];
        let mut chain_side = vec![0usize; a.num_vertices()];
        let visit = |side: &mut Vec<usize>, w: &PathWord| {
            for &x in w.arrows() {
                side[a.source(x)] += 1;
            }
        };
        for c in &cycles {
            match &c.shape {
                CycleShape::Generic(segs) => {
                    for (p, q) in segs {
                        *chains.entry(p.clone()).or_default() -= 1;
                        *live.entry(q.clone()).or_default() -= 1;
                        visit(&mut chain_side, p);
                        chain_side[p.target()] += 1;
                        visit(&mut live_side, q);
                        live_side[q.target()] += 1;
                    }
                }
                CycleShape::FullyMarked(w) => visit(&mut live_side, &w.primitive),
                CycleShape::Unmarked(w) => visit(&mut chain_side, &w.primitive),
            }
        }
        check(live.values().all(|&k| k == 0), || {
            format!("{name}: live threads not covered exactly once")
        })?;
        check(chains.values().all(|&k| k == 0), || {
            format!("{name}: relation chains not covered exactly once")
        })?;
        check(live_side.iter().chain(&chain_side).all(|&k| k == 2), || {
            format!("{name}: vertex occurrences live {live_side:?}, chain {chain_side:?}")
        })?;
        surface_invariants(a).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!(
        "{} algebras: threads covered once, each vertex twice on each side, genus integral",
        all.len()
    ))
}

fn formality_verdicts() -> Outcome {
    let q = FieldSpec::Rationals;
    let e1 = formality(&algebra(E1), q, 6).map_err(|e| e.to_string())?;
    check(
        e1.surface_verdict == Verdict::Formal && e1.kadeishvili.sufficient_formality,
        || "E1 not formal".into(),
    )?;
    let e4 = formality(&algebra(E4), q, 6).map_err(|e| e.to_string())?;
    check(e4.surface_verdict == Verdict::NotFormal, || {
        "E4 verdict".into()
    })?;
    check(e4.kadeishvili.obstruction_dims.get(&3) == Some(&1), || {
        "E4 dim HH^{3,-1} != 1".into()
    })?;
    check(e4.witnesses.iter().any(|w| w.contains("unmarked")), || {
        "E4 lacks an unmarked witness".into()
    })?;
    let e2 = formality(&algebra(E2), q, 6).map_err(|e| e.to_string())?;
    check(
        e2.surface_verdict == Verdict::NotFormal && e2.disagreement,
        || "E2 disagreement not flagged".into(),
    )?;
    Ok("E1 formal; E4 not formal with dim HH^{3,-1} = 1; E2 disagreement flagged".into())
}

fn characteristic_sensitivity() -> Outcome {
    let a = algebra(E5);
    let cycle_classes = |f: FieldSpec| -> Result<usize, String> {
        let mut k = 0;
        for n in 0..=6 {
            for d in -6..=6 {
                let b = basis(&a, f, n, d, None).map_err(|e| e.to_string())?;
                let h = cohomology_dim(&a, f, n, d, None)
                    .map_err(|e| e.to_string())?
                    .value;
                check(b.len() == h, || {
                    format!("E5 over {f} at ({n}, {d}): basis {}, oracle {h}", b.len())
                })?;
                k += b
                    .iter()
                    .filter(|c| c.cycle_power().is_some_and(|p| winding(&p) % 2 != 0))
                    .count();
            }
        }
        Ok(k)
    };
    let (f2, q, f3) = (
        cycle_classes(FieldSpec::Prime(2))?,
        cycle_classes(FieldSpec::Rationals)?,
        cycle_classes(FieldSpec::Prime(3))?,
    );
    check(f2 > 0 && q == 0 && f3 == 0, || {
        format!("odd-winding classes: F2 {f2}, Q {q}, F3 {f3}")
    })?;
    Ok(format!("E5 has {f2} odd-winding cycle classes over F2 and none over Q or F3; basis = oracle in all three"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("differential soundness", differential_soundness),
        ("basis-oracle equivalence", basis_oracle),
        ("fixture dimension tables", fixture_tables),
        ("center check", center),
        ("structure-constant compatibility", structure_compatibility),
        ("Witt relations", witt),
        ("Lie and algebra axioms", axioms),
        ("AAG self-consistency", aag_consistency),
        ("formality verdicts", formality_verdicts),
        ("characteristic sensitivity", characteristic_sensitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
