//! The bigraded cochain complex of parallel pairs and its cohomology.
//!
//! A parallel pair `(p, q)` couples a relation chain `p` of length `n` with a
//! live path `q` having the same endpoints; it sits in bidegree
//! `(n, |q| - |p|)`. Cochains are finite integer combinations of pairs; they
//! are mapped into the chosen field only when solving linear systems.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Insert, Reducer, SparseVec};
use crate::quiver::{ArrowId, GentleAlgebra, VertexId};
use crate::threads::{relation_chains_of_length, PathWord};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParallelPair {
    pub p: PathWord,
    pub q: PathWord,
}

impl ParallelPair {
    pub fn new(p: PathWord, q: PathWord) -> Option<ParallelPair> {
        (p.source() == q.source() && p.target() == q.target()).then_some(ParallelPair { p, q })
    }

    pub fn bidegree(&self) -> (usize, i64) {
        (self.p.len(), self.q.degree() - self.p.degree())
    }

    /// Total (cohomological) degree `n + d`.
    pub fn total_degree(&self) -> i64 {
        let (n, d) = self.bidegree();
        n as i64 + d
    }

    pub fn display(&self, a: &GentleAlgebra) -> String {
        format!("({}, {})", self.p.display(a), self.q.display(a))
    }
}

/// A finite integer combination of parallel pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cochain {
    terms: BTreeMap<ParallelPair, i64>,
}

impl Cochain {
    pub fn zero() -> Cochain {
        Cochain::default()
    }

    pub fn single(pair: ParallelPair, c: i64) -> Cochain {
        let mut out = Cochain::zero();
        out.add_term(pair, c);
        out
    }

    pub fn add_term(&mut self, pair: ParallelPair, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(pair) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Cochain, c: i64) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn scaled(&self, c: i64) -> Cochain {
        let mut out = Cochain::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParallelPair, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, pair: &ParallelPair) -> i64 {
        self.terms.get(pair).copied().unwrap_or(0)
    }

    /// The common bidegree of all terms, if the cochain is homogeneous and
    /// nonzero.
    pub fn bidegree(&self) -> Option<(usize, i64)> {
        let mut degrees = self.terms.keys().map(ParallelPair::bidegree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Whether every coefficient vanishes in the field.
    pub fn is_zero_in(&self, field: FieldSpec) -> bool {
        self.terms.values().all(|v| field.from_int(*v).is_zero())
    }

    pub fn display(&self, a: &GentleAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (k, v)) in self.terms.iter().enumerate() {
            let sign = if *v < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                out.push(' ');
            }
            out.push_str(sign);
            if i > 0 && !sign.is_empty() {
                out.push(' ');
            }
            if v.abs() != 1 {
                out.push_str(&format!("{}", v.abs()));
            }
            out.push_str(&k.display(a));
        }
        out
    }
}

impl FromIterator<(ParallelPair, i64)> for Cochain {
    fn from_iter<I: IntoIterator<Item = (ParallelPair, i64)>>(iter: I) -> Self {
        let mut c = Cochain::zero();
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

/// Live paths from `x` to `y` of the given degree, with a truncation flag.
/// `None` when the set is infinite (a degree-zero live cycle) and no cap is given; with a
/// cap, such families are truncated to length at most `cap`.
pub fn live_paths(
    a: &GentleAlgebra,
    x: VertexId,
    y: VertexId,
    degree: i64,
    cap: Option<usize>,
) -> Option<(Vec<PathWord>, bool)> {
    let mut out = Vec::new();
    let mut truncated = false;
    if x == y && degree == 0 {
        out.push(PathWord::vertex(x));
    }
    for &delta in a.out_arrows(x) {
        // thread γ₁ = δ, γ_{k+1} = liveSucc(γ_k)
        let mut thread: Vec<ArrowId> = vec![delta];
        let periodic = loop {
            match a.live_succ(*thread.last().unwrap()) {
                Some(n) if n == delta => break true,
                Some(n) => thread.push(n),
                None => break false,
            }
        };
        let word = |k: usize| {
            let arrows: Vec<ArrowId> = (0..k).rev().map(|i| thread[i % thread.len()]).collect();
            PathWord::new(a, arrows).expect("threads compose")
        };
        let mut partial = Vec::with_capacity(thread.len());
        let mut s = 0;
        for &g in &thread {
            s += a.degree(g);
            partial.push(s);
        }
        if !periodic {
            for (j, &g) in thread.iter().enumerate() {
                if a.target(g) == y && partial[j] == degree {
                    out.push(word(j + 1));
                }
            }
            continue;
        }
        let period = thread.len();
        let cycle_degree = partial[period - 1];
        for j in 0..period {
            if a.target(thread[j]) != y {
                continue;
            }
            let sj = partial[j];
            if cycle_degree == 0 {
                if sj != degree {
                    continue;
                }
                let cap = cap?;
                truncated = true;
                let mut k = j + 1;
                while k <= cap {
                    out.push(word(k));
                    k += period;
                }
            } else {
                let diff = degree - sj;
                if diff % cycle_degree == 0 && diff / cycle_degree >= 0 {
                    out.push(word(j + 1 + period * (diff / cycle_degree) as usize));
                }
            }
        }
    }
    Some((out, truncated))
}

/// Basis of parallel pairs in one bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBasis {
    pub pairs: Vec<ParallelPair>,
    /// Set when an infinite family was cut off at the cap.
    pub truncated: bool,
}

pub fn pair_basis(a: &GentleAlgebra, n: usize, d: i64, cap: Option<usize>) -> Result<PairBasis> {
    let mut pairs = Vec::new();
    let mut truncated = false;
    for p in relation_chains_of_length(a, n) {
        let (qs, t) = live_paths(a, p.source(), p.target(), d + p.degree(), cap)
            .ok_or(Error::NeedsCap { n, d })?;
        truncated |= t;
        pairs.extend(qs.into_iter().map(|q| ParallelPair { p: p.clone(), q }));
    }
    pairs.sort();
    Ok(PairBasis { pairs, truncated })
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The two halves `d_L` and `d_R` of the differential on one pair.
pub fn differential_parts(a: &GentleAlgebra, pair: &ParallelPair) -> (Cochain, Cochain) {
    let ParallelPair { p, q } = pair;
    let s = q.degree() - p.degree();
    let n = p.len() as i64;
    let mut left = Cochain::zero();
    for &alpha in a.out_arrows(p.target()) {
        let chain_ok = p.first().is_none_or(|f| a.is_relation(alpha, f));
        let live_ok = q.first().is_none_or(|f| !a.is_relation(alpha, f));
        if chain_ok && live_ok {
            let al = PathWord::arrow(a, alpha);
            let np = al.concat(p).expect("composable");
            let nq = al.concat(q).expect("composable");
            left.add_term(ParallelPair { p: np, q: nq }, sign(s + s * a.degree(alpha)));
        }
    }
    let mut right = Cochain::zero();
    for &beta in a.in_arrows(p.source()) {
        let chain_ok = p.last().is_none_or(|l| a.is_relation(l, beta));
        let live_ok = q.last().is_none_or(|l| !a.is_relation(l, beta));
        if chain_ok && live_ok {
            let be = PathWord::arrow(a, beta);
            let np = p.concat(&be).expect("composable");
            let nq = q.concat(&be).expect("composable");
            right.add_term(ParallelPair { p: np, q: nq }, -sign(s + n));
        }
    }
    (left, right)
}

pub fn differential(a: &GentleAlgebra, f: &Cochain) -> Cochain {
    let mut out = Cochain::zero();
    for (pair, c) in f.terms() {
        let (l, r) = differential_parts(a, pair);
        out.add_scaled(&l, c);
        out.add_scaled(&r, c);
    }
    out
}

/// Assigns column indices to pairs on demand.
#[derive(Debug, Clone, Default)]
pub struct PairIndex {
    map: BTreeMap<ParallelPair, usize>,
}

impl PairIndex {
    pub fn vector(&mut self, field: FieldSpec, f: &Cochain) -> SparseVec {
        let mut v = SparseVec::new();
        for (pair, c) in f.terms() {
            let next = self.map.len();
            let i = *self.map.entry(pair.clone()).or_insert(next);
            let x = field.from_int(c);
            if !x.is_zero() {
                v.insert(i, x);
            }
        }
        v
    }
}

/// Dimension of a cohomology group; `lower_bound` is set when a cap truncated
/// an infinite family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dim {
    pub value: usize,
    pub lower_bound: bool,
}

/// `dim HH^{n,d}` by exact rank computations.
pub fn cohomology_dim(
    a: &GentleAlgebra,
    field: FieldSpec,
    n: usize,
    d: i64,
    cap: Option<usize>,
) -> Result<Dim> {
    let here = pair_basis(a, n, d, cap)?;
    let next_rank = differential_rank(a, field, &here.pairs);
    let (prev_rank, prev_trunc) = if n == 0 {
        (0, false)
    } else {
        let prev = pair_basis(a, n - 1, d, cap)?;
        (differential_rank(a, field, &prev.pairs), prev.truncated)
    };
    let value = here.pairs.len() - next_rank - prev_rank;
    Ok(Dim {
        value,
        lower_bound: here.truncated || prev_trunc,
    })
}

fn differential_rank(a: &GentleAlgebra, field: FieldSpec, pairs: &[ParallelPair]) -> usize {
    let mut index = PairIndex::default();
    let mut r = Reducer::new(field);
    for p in pairs {
        let v = index.vector(field, &differential(a, &Cochain::single(p.clone(), 1)));
        r.insert(&v);
    }
    r.rank()
}

/// The space of coboundaries in one bidegree, ready to reduce cochains.
#[derive(Debug, Clone)]
pub struct Coboundaries {
    pub index: PairIndex,
    pub reducer: Reducer,
    pub truncated: bool,
}

pub fn coboundaries(
    a: &GentleAlgebra,
    field: FieldSpec,
    n: usize,
    d: i64,
    cap: Option<usize>,
) -> Result<Coboundaries> {
    let mut index = PairIndex::default();
    let mut reducer = Reducer::new(field);
    let mut truncated = false;
    if n > 0 {
        let prev = pair_basis(a, n - 1, d, cap)?;
        truncated = prev.truncated;
        for p in prev.pairs {
            let v = index.vector(field, &differential(a, &Cochain::single(p, 1)));
            reducer.insert(&v);
        }
    }
    Ok(Coboundaries {
        index,
        reducer,
        truncated,
    })
}

/// Solves `z = Σ c_i reps_i + d(u)` and returns the `c_i`.
///
/// The representatives must be independent modulo coboundaries (otherwise an
/// internal error is raised); a cocycle outside their span is reported as
/// inconsistent.
pub fn reduce_mod_coboundaries(
    a: &GentleAlgebra,
    field: FieldSpec,
    z: &Cochain,
    reps: &[Cochain],
    bidegree: (usize, i64),
    cap: Option<usize>,
) -> Result<Vec<Scalar>> {
    let (n, d) = bidegree;
    if !differential(a, z).is_zero_in(field) {
        return Err(Error::NotCocycle);
    }
    let mut cob = coboundaries(a, field, n, d, cap)?;
    let mut span = Reducer::new(field);
    for (i, r) in reps.iter().enumerate() {
        let v = cob.index.vector(field, r);
        let (rem, _) = cob.reducer.reduce(&v);
        if let Insert::Dependent(_) = span.insert(&rem) {
            return Err(Error::Internal(format!(
                "representative {i} in bidegree ({n}, {d}) is dependent modulo coboundaries"
            )));
        }
    }
    let v = cob.index.vector(field, z);
    let (rem, _) = cob.reducer.reduce(&v);
    let (rest, combo) = span.reduce(&rem);
    if !rest.is_empty() {
        return Err(Error::Inconsistent { n, d });
    }
    Ok((0..reps.len())
        .map(|i| combo.get(&i).cloned().unwrap_or_else(Scalar::zero))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomType {
    /// A chain of pairs: some support pair has a vanishing half of `d`.
    A,
    /// A cycle of pairs: both halves of `d` are nonzero on every support pair.
    ATilde,
    /// Supported on vertex pairs `(e_x, e_x)`.
    Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub cochain: Cochain,
    /// `(l(p), l(q))` shared by the support.
    pub level: (usize, usize),
}

/// Splits a cochain by level `(l(p), l(q))` and then into components that are
/// connected through shared children under the differential.
pub fn atom_decomposition(a: &GentleAlgebra, f: &Cochain) -> Vec<Atom> {
    let mut by_level: BTreeMap<(usize, usize), Vec<(ParallelPair, i64)>> = BTreeMap::new();
    for (pair, c) in f.terms() {
        by_level
            .entry((pair.p.len(), pair.q.len()))
            .or_default()
            .push((pair.clone(), c));
    }
    let mut atoms = Vec::new();
    for (level, terms) in by_level {
        let children: Vec<BTreeSet<ParallelPair>> = terms
            .iter()
            .map(|(pair, _)| {
                let (l, r) = differential_parts(a, pair);
                l.terms().chain(r.terms()).map(|(k, _)| k.clone()).collect()
            })
            .collect();
        let k = terms.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        for i in 0..k {
            for j in i + 1..k {
                let shared = terms[i].0.p.is_trivial() && terms[j].0.p.is_trivial()
                    || !children[i].is_disjoint(&children[j]);
                if shared {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
        let mut groups: BTreeMap<usize, Cochain> = BTreeMap::new();
        for (i, (pair, c)) in terms.into_iter().enumerate() {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().add_term(pair, c);
        }
        atoms.extend(groups.into_values().map(|cochain| Atom { cochain, level }));
    }
    atoms
}

pub fn classify_atom(a: &GentleAlgebra, f: &Cochain) -> Result<AtomType> {
    if !differential(a, f).is_zero() {
        return Err(Error::NotCocycle);
    }
    let atoms = atom_decomposition(a, f);
    if atoms.len() != 1 {
        return Err(Error::NotAtomic(atoms.len()));
    }
    if f.terms()
        .all(|(pair, _)| pair.p.is_trivial() && pair.q.is_trivial())
    {
        return Ok(AtomType::Vertex);
    }
    let cyclic = f.terms().all(|(pair, _)| {
        let (l, r) = differential_parts(a, pair);
        !l.is_zero() && !r.is_zero()
    });
    Ok(if cyclic {
        AtomType::ATilde
    } else {
        AtomType::A
    })
}

/// Dimension of the degree-`d` graded centre of the algebra, computed
/// directly from the commutation conditions `e_x z = z e_x` and
/// `α z = (-1)^{d|α|} z α` on live-path combinations `z`.
pub fn graded_center_dim(
    a: &GentleAlgebra,
    field: FieldSpec,
    d: i64,
    cap: Option<usize>,
) -> Result<Dim> {
    let mut vars = Vec::new();
    let mut truncated = false;
    for x in 0..a.num_vertices() {
        for y in 0..a.num_vertices() {
            let (ws, t) = live_paths(a, x, y, d, cap).ok_or(Error::NeedsCap { n: 0, d })?;
            truncated |= t;
            vars.extend(ws);
        }
    }
    // each variable contributes one column: its image under all constraints
    let mut index: BTreeMap<(usize, PathWord), usize> = BTreeMap::new();
    let mut r = Reducer::new(field);
    for w in &vars {
        let mut col: BTreeMap<(usize, PathWord), i64> = BTreeMap::new();
        for x in 0..a.num_vertices() {
            let c = (w.target() == x) as i64 - (w.source() == x) as i64;
            if c != 0 {
                *col.entry((x, w.clone())).or_default() += c;
            }
        }
        for alpha in 0..a.num_arrows() {
            let row = a.num_vertices() + alpha;
            let al = PathWord::arrow(a, alpha);
            if let Some(aw) = al.concat(w) {
                if w.first().is_none_or(|f| !a.is_relation(alpha, f)) {
                    *col.entry((row, aw)).or_default() += 1;
                }
            }
            if let Some(wa) = w.concat(&al) {
                if w.last().is_none_or(|l| !a.is_relation(l, alpha)) {
                    *col.entry((row, wa)).or_default() -= sign(d * a.degree(alpha));
                }
            }
        }
        let mut v = SparseVec::new();
        for (key, c) in col {
            let x = field.from_int(c);
            if x.is_zero() {
                continue;
            }
            let next = index.len();
            let i = *index.entry(key).or_insert(next);
            v.insert(i, x);
        }
        r.insert(&v);
    }
    Ok(Dim {
        value: vars.len() - r.rank(),
        lower_bound: truncated,
    })
}
