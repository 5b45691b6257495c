//! The closed-form basis of Hochschild cohomology, explicit representative
//! cocycles and identification of arbitrary cocycles in that basis.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::complexes::{differential, reduce_mod_coboundaries, Cochain, ParallelPair};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::quiver::{ArrowId, GentleAlgebra};
use crate::threads::{
    canonical_cycle, closed_maximal_live, complete_cycles, maximal_chains_and_companions,
    parse_word, rotate, CycleKind, CyclicWord, PathWord,
};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HHClass {
    Unit,
    /// Trace-like class of the power `u^m` of a primitive complete cycle.
    N0 {
        cycle: CyclicWord,
        m: usize,
    },
    /// Companion class of `N0` one step up in chain length.
    N1 {
        cycle: CyclicWord,
        m: usize,
    },
    /// A maximal relation chain with its companion live path.
    StopChain {
        chain: PathWord,
        companion: PathWord,
    },
    /// A closed maximal live path at its base vertex.
    StopLoop {
        word: PathWord,
    },
    /// An arrow outside the spanning tree.
    Arrow {
        arrow: ArrowId,
    },
}

impl HHClass {
    pub fn bidegree(&self) -> (usize, i64) {
        match self {
            HHClass::Unit => (0, 0),
            HHClass::N0 { cycle, m } | HHClass::N1 { cycle, m } => {
                let p = cycle.power(*m);
                let extra = matches!(self, HHClass::N1 { .. }) as usize;
                match cycle.kind {
                    CycleKind::Chain => (p.len() + extra, -p.degree()),
                    CycleKind::Live => (extra, p.degree()),
                }
            }
            HHClass::StopChain { chain, companion } => {
                (chain.len(), companion.degree() - chain.degree())
            }
            HHClass::StopLoop { word } => (0, word.degree()),
            HHClass::Arrow { .. } => (1, 0),
        }
    }

    pub fn total_degree(&self) -> i64 {
        let (n, d) = self.bidegree();
        n as i64 + d
    }

    /// The power `u^m` carried by cycle classes.
    pub fn cycle_power(&self) -> Option<CyclicWord> {
        match self {
            HHClass::N0 { cycle, m } | HHClass::N1 { cycle, m } => Some(cycle.power(*m)),
            _ => None,
        }
    }

    pub fn name(&self, a: &GentleAlgebra) -> String {
        match self {
            HHClass::Unit => "unit".into(),
            HHClass::N0 { cycle, m } => format!("N0[{}^{m}]", cycle.primitive.display(a)),
            HHClass::N1 { cycle, m } => format!("N1[{}^{m}]", cycle.primitive.display(a)),
            HHClass::StopChain { chain, .. } => format!("stop[chain:{}]", chain.display(a)),
            HHClass::StopLoop { word } => format!("stoploop[{}]", word.display(a)),
            HHClass::Arrow { arrow } => format!("arrow[{}]", a.arrow_name(*arrow)),
        }
    }
}

/// Winding number of a cycle power: `l(p) - |p|` for relation-chain cycles and
/// `-|q|` for live cycles.
pub fn winding(c: &CyclicWord) -> i64 {
    match c.kind {
        CycleKind::Chain => c.len() as i64 - c.degree(),
        CycleKind::Live => -c.degree(),
    }
}

/// Whether the pair `N0`, `N1` exists for this cycle power over `field`.
pub fn cycle_classes_exist(c: &CyclicWord, field: FieldSpec) -> bool {
    winding(c) % 2 == 0 || field.characteristic() == 2
}

/// Arrows of the breadth-first spanning tree grown from vertex 0, scanning
/// arrows in id order.
pub fn spanning_tree(a: &GentleAlgebra) -> BTreeSet<ArrowId> {
    let mut seen = vec![false; a.num_vertices()];
    let mut tree = BTreeSet::new();
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for x in 0..a.num_arrows() {
            let (s, t) = (a.source(x), a.target(x));
            let other = if s == v {
                t
            } else if t == v {
                s
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                tree.insert(x);
                queue.push_back(other);
            }
        }
    }
    tree
}

/// All basis classes in bidegree `(n, d)`. A degree-zero live cycle makes
/// bidegrees `(0, 0)` and `(1, 0)` infinite; these need a cap, which then
/// bounds the cycle-power length.
pub fn basis(
    a: &GentleAlgebra,
    field: FieldSpec,
    n: usize,
    d: i64,
    cap: Option<usize>,
) -> Result<Vec<HHClass>> {
    let mut out = Vec::new();
    if (n, d) == (0, 0) {
        out.push(HHClass::Unit);
    }
    let cycles = complete_cycles(a);
    for variant in 0..2 {
        for c in &cycles {
            let l = c.period();
            let deg = c.degree();
            let ms: Vec<usize> = match c.kind {
                CycleKind::Chain => {
                    let Some(len) = n.checked_sub(variant) else {
                        continue;
                    };
                    if len == 0 || len % l != 0 {
                        continue;
                    }
                    let m = len / l;
                    if -(m as i64) * deg == d {
                        vec![m]
                    } else {
                        vec![]
                    }
                }
                CycleKind::Live => {
                    if n != variant {
                        continue;
                    }
                    if deg == 0 {
                        if d != 0 {
                            continue;
                        }
                        let cap = cap.ok_or(Error::NeedsCap { n, d })?;
                        (1..=cap / l).collect()
                    } else if d % deg == 0 && d / deg >= 1 {
                        vec![(d / deg) as usize]
                    } else {
                        vec![]
                    }
                }
            };
            for m in ms {
                if !cycle_classes_exist(&c.power(m), field) {
                    continue;
                }
                let cycle = c.clone();
                out.push(if variant == 0 {
                    HHClass::N0 { cycle, m }
                } else {
                    HHClass::N1 { cycle, m }
                });
            }
        }
    }
    for mc in maximal_chains_and_companions(a) {
        if let Some(companion) = mc.companion {
            let class = HHClass::StopChain {
                chain: mc.chain,
                companion,
            };
            if class.bidegree() == (n, d) {
                out.push(class);
            }
        }
    }
    if n == 0 {
        for word in closed_maximal_live(a) {
            if word.degree() == d {
                out.push(HHClass::StopLoop { word });
            }
        }
    }
    if (n, d) == (1, 0) {
        let tree = spanning_tree(a);
        out.extend(
            (0..a.num_arrows())
                .filter(|x| !tree.contains(x))
                .map(|arrow| HHClass::Arrow { arrow }),
        );
    }
    Ok(out)
}

/// Dimension of `HH^{n,d}` from the closed-form basis; `None` when infinite.
pub fn basis_dim(a: &GentleAlgebra, field: FieldSpec, n: usize, d: i64) -> Option<usize> {
    basis(a, field, n, d, None).ok().map(|b| b.len())
}

/// Basis dimensions over a rectangular window, indexed `[d - dmin][n]`.
/// Infinite cells are `None`.
pub fn dims(
    a: &GentleAlgebra,
    field: FieldSpec,
    nmax: usize,
    dmin: i64,
    dmax: i64,
) -> Vec<Vec<Option<usize>>> {
    (dmin..=dmax)
        .map(|d| (0..=nmax).map(|n| basis_dim(a, field, n, d)).collect())
        .collect()
}

/// A symbolic description of the infinitely many cycle classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub cycle: CyclicWord,
    /// Human-readable condition on the exponent `m`.
    pub condition: String,
    /// `N0` and `N1` bidegrees as affine functions of `m`: `(n0, n1, d)` per unit `m`.
    pub per_power: (i64, i64, i64),
}

pub fn families(a: &GentleAlgebra, field: FieldSpec) -> Vec<Family> {
    complete_cycles(a)
        .into_iter()
        .map(|c| {
            let w = winding(&c);
            let condition = if field.characteristic() == 2 || w % 2 == 0 {
                "all m >= 1".to_string()
            } else {
                "m even".to_string()
            };
            let per_power = match c.kind {
                CycleKind::Chain => (c.len() as i64, c.len() as i64, -c.degree()),
                CycleKind::Live => (0, 0, c.degree()),
            };
            Family {
                cycle: c,
                condition,
                per_power,
            }
        })
        .collect()
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn pair(p: PathWord, q: PathWord) -> ParallelPair {
    ParallelPair::new(p, q).expect("representative pairs are parallel")
}

/// The explicit cocycle representing a basis class.
pub fn representative(a: &GentleAlgebra, c: &HHClass) -> Result<Cochain> {
    let z = match c {
        HHClass::Unit => (0..a.num_vertices())
            .map(|x| (pair(PathWord::vertex(x), PathWord::vertex(x)), 1))
            .collect(),
        HHClass::N0 { cycle, m } => {
            let p = cycle.power(*m).word();
            let r = cycle.period();
            let n = p.len() as i64;
            let mut z = Cochain::zero();
            for i in 0..r {
                let rot = rotate(a, &p, i as i64)?;
                let prefix: i64 = p.arrows()[..i].iter().map(|&x| a.degree(x)).sum();
                let e = PathWord::vertex(rot.source());
                match cycle.kind {
                    CycleKind::Chain => {
                        let s = sign(i as i64 * n + p.degree() * prefix);
                        z.add_term(pair(rot, e), s);
                    }
                    CycleKind::Live => {
                        let s = sign(p.degree() * prefix);
                        z.add_term(pair(e, rot), s);
                    }
                }
            }
            z
        }
        HHClass::N1 { cycle, m } => {
            let p = cycle.power(*m).word();
            let last = PathWord::arrow(a, p.last().expect("nontrivial cycle"));
            let extended = last.concat(&p).expect("closed cycle");
            match cycle.kind {
                CycleKind::Chain => Cochain::single(pair(extended, last), 1),
                CycleKind::Live => Cochain::single(pair(last, extended), 1),
            }
        }
        HHClass::StopChain { chain, companion } => {
            Cochain::single(pair(chain.clone(), companion.clone()), 1)
        }
        HHClass::StopLoop { word } => {
            Cochain::single(pair(PathWord::vertex(word.source()), word.clone()), 1)
        }
        HHClass::Arrow { arrow } => {
            let w = PathWord::arrow(a, *arrow);
            Cochain::single(pair(w.clone(), w), 1)
        }
    };
    // Cycle classes of odd winding number are cocycles only in characteristic 2.
    let dz = differential(a, &z);
    let closed = match c.cycle_power() {
        Some(p) if winding(&p) % 2 != 0 => dz.is_zero_in(FieldSpec::Prime(2)),
        _ => dz.is_zero(),
    };
    if !closed {
        return Err(Error::Internal(format!(
            "representative of {} is not a cocycle",
            c.name(a)
        )));
    }
    Ok(z)
}

/// Parses a class name (`unit`, `N0[u^m]`, `N1[u^m]`, `stop[chain:w]`,
/// `stoploop[w]`, `arrow[x]`). Any rotation of a cycle word is accepted.
pub fn parse_class(a: &GentleAlgebra, field: FieldSpec, text: &str) -> Result<HHClass> {
    let text = text.trim();
    let invalid = |why: &str| Error::InvalidClass {
        class: text.to_string(),
        reason: why.to_string(),
    };
    if text == "unit" {
        return Ok(HHClass::Unit);
    }
    let open = text
        .find('[')
        .ok_or_else(|| invalid("expected `name[...]`"))?;
    let inner = text[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| invalid("missing `]`"))?;
    let head = &text[..open];
    let class = match head {
        "N0" | "N1" => {
            let (word, m) = match inner.rsplit_once('^') {
                Some((w, m)) => (w, m.parse::<usize>().map_err(|_| invalid("bad exponent"))?),
                None => (inner, 1),
            };
            if m == 0 {
                return Err(invalid("exponent must be positive"));
            }
            let w = parse_word(a, word)?;
            let c = canonical_cycle(a, &w).ok_or_else(|| invalid("not a complete cycle"))?;
            let cycle = CyclicWord {
                exponent: 1,
                ..c.clone()
            };
            let m = m * c.exponent;
            if head == "N0" {
                HHClass::N0 { cycle, m }
            } else {
                HHClass::N1 { cycle, m }
            }
        }
        "stop" => {
            let word = inner
                .strip_prefix("chain:")
                .ok_or_else(|| invalid("expected `stop[chain:...]`"))?;
            let w = parse_word(a, word)?;
            let mc = maximal_chains_and_companions(a)
                .into_iter()
                .find(|mc| mc.chain == w)
                .ok_or_else(|| invalid("not a maximal relation chain"))?;
            let companion = mc
                .companion
                .ok_or_else(|| invalid("chain has no companion"))?;
            HHClass::StopChain {
                chain: mc.chain,
                companion,
            }
        }
        "stoploop" => {
            let w = parse_word(a, inner)?;
            if !closed_maximal_live(a).contains(&w) {
                return Err(invalid("not a closed maximal live path"));
            }
            HHClass::StopLoop { word: w }
        }
        "arrow" => {
            let arrow = a
                .arrow_by_name(inner)
                .ok_or_else(|| invalid("unknown arrow"))?;
            if spanning_tree(a).contains(&arrow) {
                return Err(invalid("arrow lies in the spanning tree"));
            }
            HHClass::Arrow { arrow }
        }
        _ => return Err(invalid("unknown class kind")),
    };
    if let Some(p) = class.cycle_power() {
        if !cycle_classes_exist(&p, field) {
            return Err(invalid("odd winding number outside characteristic 2"));
        }
    }
    Ok(class)
}

/// A linear combination of basis classes with field coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HHExpression {
    pub terms: BTreeMap<HHClass, Scalar>,
}

impl HHExpression {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(c: HHClass, x: Scalar) -> Self {
        let mut e = Self::zero();
        if !x.is_zero() {
            e.terms.insert(c, x);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, field: FieldSpec, c: HHClass, x: &Scalar) {
        let e = self.terms.entry(c.clone()).or_insert_with(Scalar::zero);
        *e = field.add(e, x);
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    /// Renders as `c * name` terms joined by ` + `, e.g. `-1 * N1[ab^3]`.
    pub fn display(&self, a: &GentleAlgebra, field: FieldSpec) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(c, x)| format!("{} * {}", field.display(x), c.name(a)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for HHClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Expresses the class of a cocycle in the closed-form basis. Inhomogeneous
/// inputs are split by bidegree.
pub fn identify(
    a: &GentleAlgebra,
    field: FieldSpec,
    z: &Cochain,
    cap: Option<usize>,
) -> Result<HHExpression> {
    let mut parts: BTreeMap<(usize, i64), Cochain> = BTreeMap::new();
    for (p, c) in z.terms() {
        parts
            .entry(p.bidegree())
            .or_default()
            .add_term(p.clone(), c);
    }
    let mut out = HHExpression::zero();
    for ((n, d), part) in parts {
        let classes = basis(a, field, n, d, cap)?;
        let reps = classes
            .iter()
            .map(|c| representative(a, c))
            .collect::<Result<Vec<_>>>()?;
        let coords = reduce_mod_coboundaries(a, field, &part, &reps, (n, d), cap)?;
        for (c, x) in classes.into_iter().zip(coords) {
            out.add(field, c, &x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::cohomology_dim;
    use crate::fixtures::{algebra, E1, E2, E3, E4, E5};

    fn names(a: &GentleAlgebra, cs: &[HHClass]) -> Vec<String> {
        cs.iter().map(|c| c.name(a)).collect()
    }

    #[test]
    fn dims_tables() {
        let q = FieldSpec::Rationals;
        let e2 = dims(&algebra(E2), q, 6, 0, 0);
        assert_eq!(e2, [vec![Some(1); 7]]);
        let e3 = dims(&algebra(E3), q, 3, -1, 1);
        assert_eq!(e3[0], [Some(0); 4]);
        assert_eq!(e3[1], [Some(2), Some(1), Some(1), Some(0)]);
        assert_eq!(e3[2], [Some(0); 4]);
        let e1 = dims(&algebra(E1), q, 6, -4, 4);
        let total: usize = e1.iter().flatten().map(|x| x.unwrap()).sum();
        assert_eq!((e1[4][0], total), (Some(1), 1));
    }

    #[test]
    fn fixture_bases() {
        let q = FieldSpec::Rationals;
        let e2 = algebra(E2);
        assert_eq!(
            names(&e2, &basis(&e2, q, 2, 0, None).unwrap()),
            ["N0[ab^1]"]
        );
        assert_eq!(
            names(&e2, &basis(&e2, q, 1, 0, None).unwrap()),
            ["arrow[b]"]
        );
        let e3 = algebra(E3);
        assert_eq!(
            names(&e3, &basis(&e3, q, 2, 0, None).unwrap()),
            ["stop[chain:ab]"]
        );
        assert_eq!(
            names(&e3, &basis(&e3, q, 0, 0, None).unwrap()),
            ["unit", "stoploop[ba]"]
        );
    }

    #[test]
    fn basis_matches_oracle_on_fixtures() {
        for field in [
            FieldSpec::Rationals,
            FieldSpec::Prime(2),
            FieldSpec::Prime(3),
        ] {
            for json in [E1, E2, E3, E4, E5] {
                let a = algebra(json);
                for n in 0..=6 {
                    for d in -6..=6 {
                        let b = basis(&a, field, n, d, None).unwrap().len();
                        let h = cohomology_dim(&a, field, n, d, None).unwrap().value;
                        assert_eq!(b, h, "{json} {field} ({n}, {d})");
                    }
                }
            }
        }
    }

    #[test]
    fn representatives_and_round_trip() {
        let q = FieldSpec::Rationals;
        let e2 = algebra(E2);
        let n0 = &basis(&e2, q, 2, 0, None).unwrap()[0];
        let z = representative(&e2, n0).unwrap();
        assert_eq!(z.display(&e2), "(ab, e2) + (ba, e1)");
        for json in [E1, E2, E3, E4] {
            let a = algebra(json);
            for n in 0..=5 {
                for d in -4..=4 {
                    for c in basis(&a, q, n, d, None).unwrap() {
                        let z = representative(&a, &c).unwrap();
                        let e = identify(&a, q, &z, None).unwrap();
                        assert_eq!(e, HHExpression::single(c, q.one()));
                    }
                }
            }
        }
    }

    #[test]
    fn class_names_round_trip() {
        let q = FieldSpec::Rationals;
        let e2 = algebra(E2);
        let c = parse_class(&e2, q, "N0[ba^2]").unwrap();
        assert_eq!(c.name(&e2), "N0[ab^2]");
        assert_eq!(c.bidegree(), (4, 0));
        assert!(parse_class(&e2, q, "arrow[a]").is_err());
        assert_eq!(
            parse_class(&e2, q, "arrow[b]").unwrap().name(&e2),
            "arrow[b]"
        );
        let e5 = algebra(E5);
        assert!(parse_class(&e5, q, "N0[ab^1]").is_err());
        assert!(parse_class(&e5, FieldSpec::Prime(2), "N0[ab^1]").is_ok());
        assert!(parse_class(&e5, q, "N0[ab^2]").is_ok());
    }

    #[test]
    fn coboundaries_identify_to_zero() {
        let q = FieldSpec::Rationals;
        let e2 = algebra(E2);
        let e = parse_word(&e2, "e1").unwrap();
        let u = Cochain::single(ParallelPair::new(e.clone(), e).unwrap(), 1);
        assert!(identify(&e2, q, &differential(&e2, &u), None)
            .unwrap()
            .is_zero());
    }
}
