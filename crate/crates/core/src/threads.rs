//! Word combinatorics: live paths, relation chains, complete cycles, maximal
//! chains and their companions.
//!
//! A word `α₁…α_l` lists its leftmost arrow first; `α_l` is traversed first.
//! A *relation chain* has every consecutive product `α_i α_{i+1}` in the
//! ideal, a *live path* has none of them there. Words of length at most one
//! are both.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{ArrowId, GentleAlgebra, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathWord {
    arrows: Vec<ArrowId>,
    source: VertexId,
    target: VertexId,
    degree: i64,
}

impl PathWord {
    pub fn vertex(v: VertexId) -> PathWord {
        PathWord {
            arrows: Vec::new(),
            source: v,
            target: v,
            degree: 0,
        }
    }

    pub fn arrow(a: &GentleAlgebra, alpha: ArrowId) -> PathWord {
        PathWord {
            arrows: vec![alpha],
            source: a.source(alpha),
            target: a.target(alpha),
            degree: a.degree(alpha),
        }
    }

    /// Builds a nonempty word, checking composability.
    pub fn new(a: &GentleAlgebra, arrows: Vec<ArrowId>) -> Result<PathWord> {
        let (Some(&first), Some(&last)) = (arrows.first(), arrows.last()) else {
            return Err(Error::NonComposable("empty word without a vertex".into()));
        };
        for w in arrows.windows(2) {
            if a.source(w[0]) != a.target(w[1]) {
                return Err(Error::NonComposable(format!(
                    "`{}` cannot follow `{}`",
                    a.arrow_name(w[0]),
                    a.arrow_name(w[1])
                )));
            }
        }
        let degree = arrows.iter().map(|&x| a.degree(x)).sum();
        Ok(PathWord {
            source: a.source(last),
            target: a.target(first),
            arrows,
            degree,
        })
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    // A trivial word is not empty: it still names a vertex, see `is_trivial`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_closed(&self) -> bool {
        self.source == self.target
    }

    /// Leftmost arrow `α₁` (traversed last).
    pub fn first(&self) -> Option<ArrowId> {
        self.arrows.first().copied()
    }

    /// Rightmost arrow `α_l` (traversed first).
    pub fn last(&self) -> Option<ArrowId> {
        self.arrows.last().copied()
    }

    /// The composite `self ∘ other`, defined when `s(self) = t(other)`.
    pub fn concat(&self, other: &PathWord) -> Option<PathWord> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(PathWord {
            arrows,
            source: other.source,
            target: self.target,
            degree: self.degree + other.degree,
        })
    }

    /// Subword `α_i … α_{j-1}` (zero-based, half open).
    pub fn slice(&self, a: &GentleAlgebra, i: usize, j: usize) -> PathWord {
        if i == j {
            let v = if i < self.len() {
                a.target(self.arrows[i])
            } else {
                self.source
            };
            return PathWord::vertex(v);
        }
        PathWord::new(a, self.arrows[i..j].to_vec()).expect("subword of a composable word")
    }

    /// Number of occurrences of `alpha` in the word.
    pub fn count(&self, alpha: ArrowId) -> usize {
        self.arrows.iter().filter(|&&x| x == alpha).count()
    }

    pub fn names(&self, a: &GentleAlgebra) -> Vec<String> {
        self.arrows
            .iter()
            .map(|&x| a.arrow_name(x).to_string())
            .collect()
    }

    /// Renders the word: arrow names concatenated when every name is a single
    /// character, `.`-separated otherwise; `e<vertex>` for trivial words.
    pub fn display(&self, a: &GentleAlgebra) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", a.vertex_name(self.source));
        }
        let names = self.names(a);
        if single_char_names(a) {
            names.concat()
        } else {
            names.join(".")
        }
    }
}

fn single_char_names(a: &GentleAlgebra) -> bool {
    a.quiver()
        .arrows
        .iter()
        .all(|x| x.name.chars().count() == 1)
}

/// Parses a word written as by [`PathWord::display`]. A name `e<v>` that is
/// not an arrow name denotes the trivial word at vertex `v`.
pub fn parse_word(a: &GentleAlgebra, text: &str) -> Result<PathWord> {
    let text = text.trim();
    if let Some(x) = a.arrow_by_name(text) {
        return Ok(PathWord::arrow(a, x));
    }
    if let Some(v) = text.strip_prefix('e') {
        if let Some(i) = a.quiver().vertices.iter().position(|n| n == v) {
            return Ok(PathWord::vertex(i));
        }
    }
    let parts: Vec<String> = if text.contains('.') {
        text.split('.').map(str::to_string).collect()
    } else {
        text.chars().map(|c| c.to_string()).collect()
    };
    let arrows = parts
        .iter()
        .map(|n| {
            a.arrow_by_name(n).ok_or_else(|| Error::Dangling {
                kind: "arrow",
                name: n.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PathWord::new(a, arrows)
}

/// Builds a word from arrow names (leftmost first).
pub fn word_from_names(a: &GentleAlgebra, names: &[&str]) -> Result<PathWord> {
    let arrows = names
        .iter()
        .map(|n| {
            a.arrow_by_name(n).ok_or_else(|| Error::Dangling {
                kind: "arrow",
                name: n.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PathWord::new(a, arrows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordKind {
    Live,
    RelationChain,
    /// Length at most one: both live and a relation chain.
    Both,
    Neither,
}

pub fn is_live(a: &GentleAlgebra, w: &PathWord) -> bool {
    w.arrows.windows(2).all(|p| !a.is_relation(p[0], p[1]))
}

pub fn is_chain(a: &GentleAlgebra, w: &PathWord) -> bool {
    w.arrows.windows(2).all(|p| a.is_relation(p[0], p[1]))
}

pub fn classify_word(a: &GentleAlgebra, w: &PathWord) -> WordKind {
    match (is_live(a, w), is_chain(a, w)) {
        (true, true) => WordKind::Both,
        (true, false) => WordKind::Live,
        (false, true) => WordKind::RelationChain,
        (false, false) => WordKind::Neither,
    }
}

/// The generators of length `n` (vertices for `n = 0`, arrows for `n = 1`).
pub fn relation_chains_of_length(a: &GentleAlgebra, n: usize) -> Vec<PathWord> {
    if n == 0 {
        return (0..a.num_vertices()).map(PathWord::vertex).collect();
    }
    let mut out = Vec::new();
    'start: for alpha in 0..a.num_arrows() {
        let mut arrows = vec![alpha];
        while arrows.len() < n {
            match a.chain_pred(*arrows.last().unwrap()) {
                Some(g) => arrows.push(g),
                None => continue 'start,
            }
        }
        out.push(PathWord::new(a, arrows).expect("chains are composable"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CycleKind {
    /// Closed relation chain whose wrap product also lies in the ideal.
    Chain,
    /// Closed live path whose wrap product is also outside the ideal.
    Live,
}

/// A closed word up to rotation. Powers are symbolic: the representative is
/// the primitive word and `exponent` counts repetitions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord {
    pub primitive: PathWord,
    pub exponent: usize,
    pub kind: CycleKind,
}

impl CyclicWord {
    pub fn period(&self) -> usize {
        self.primitive.len()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.period() * self.exponent
    }

    pub fn degree(&self) -> i64 {
        self.primitive.degree() * self.exponent as i64
    }

    pub fn power(&self, m: usize) -> CyclicWord {
        CyclicWord {
            primitive: self.primitive.clone(),
            exponent: self.exponent * m,
            kind: self.kind,
        }
    }

    /// The full word `u^e`, starting at the canonical rotation.
    pub fn word(&self) -> PathWord {
        let mut arrows = Vec::with_capacity(self.len());
        for _ in 0..self.exponent {
            arrows.extend_from_slice(self.primitive.arrows());
        }
        PathWord {
            arrows,
            source: self.primitive.source,
            target: self.primitive.target,
            degree: self.degree(),
        }
    }

    pub fn display(&self, a: &GentleAlgebra) -> String {
        let base = self.primitive.display(a);
        if self.exponent == 1 {
            base
        } else if self.primitive.len() == 1 {
            format!("{base}^{}", self.exponent)
        } else {
            format!("({base})^{}", self.exponent)
        }
    }
}

/// `rot^k` of a closed word, where `rot(α₁…α_l) = α₂…α_l α₁`.
pub fn rotate(a: &GentleAlgebra, w: &PathWord, k: i64) -> Result<PathWord> {
    if !w.is_closed() {
        return Err(Error::NotClosed);
    }
    if w.is_trivial() {
        return Ok(w.clone());
    }
    let l = w.len() as i64;
    let mut arrows = w.arrows.clone();
    arrows.rotate_left(k.rem_euclid(l) as usize);
    PathWord::new(a, arrows)
}

/// Primitive complete cycles of both kinds, one per rotation class, each
/// represented by the rotation whose first arrow has the least id.
pub fn complete_cycles(a: &GentleAlgebra) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    for kind in [CycleKind::Chain, CycleKind::Live] {
        let pred = |x: ArrowId| match kind {
            CycleKind::Chain => a.chain_pred(x),
            CycleKind::Live => a.live_pred(x),
        };
        let mut seen = vec![false; a.num_arrows()];
        for start in 0..a.num_arrows() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            let mut cur = start;
            let closed = loop {
                match pred(cur) {
                    Some(n) if n == start => break true,
                    Some(n) if orbit.len() <= a.num_arrows() => {
                        orbit.push(n);
                        cur = n;
                    }
                    _ => break false,
                }
            };
            if closed {
                for &x in &orbit {
                    seen[x] = true;
                }
                out.push(CyclicWord {
                    primitive: PathWord::new(a, orbit).expect("orbits are composable"),
                    exponent: 1,
                    kind,
                });
            }
        }
    }
    out
}

/// Rotates a closed word in a complete cycle to its canonical representative
/// and returns the matching power of a primitive cycle.
pub fn canonical_cycle(a: &GentleAlgebra, w: &PathWord) -> Option<CyclicWord> {
    if w.is_trivial() || !w.is_closed() {
        return None;
    }
    complete_cycles(a).into_iter().find_map(|c| {
        let p = c.period();
        if !w.len().is_multiple_of(p) {
            return None;
        }
        let m = w.len() / p;
        let full = c.power(m).word();
        (0..p as i64)
            .any(|k| rotate(a, &full, k).map(|r| r == *w).unwrap_or(false))
            .then(|| c.power(m))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalChain {
    pub chain: PathWord,
    /// The parallel live path whose extremal arrows differ from the chain's.
    pub companion: Option<PathWord>,
}

/// Nontrivial relation chains that extend on neither side, each with its
/// companion. Arrows lying on a complete chain cycle never terminate and are
/// skipped.
pub fn maximal_chains_and_companions(a: &GentleAlgebra) -> Vec<MaximalChain> {
    let mut out = Vec::new();
    for alpha in 0..a.num_arrows() {
        if a.chain_succ(alpha).is_some() {
            continue;
        }
        let mut arrows = vec![alpha];
        while let Some(g) = a.chain_pred(*arrows.last().unwrap()) {
            arrows.push(g);
        }
        let chain = PathWord::new(a, arrows).expect("chains are composable");
        let companion = companion(a, &chain);
        out.push(MaximalChain { chain, companion });
    }
    out
}

fn companion(a: &GentleAlgebra, u: &PathWord) -> Option<PathWord> {
    let first = u.first()?;
    let last = u.last()?;
    let x = u.target();
    if u.is_closed() && a.in_arrows(x) == [first] && a.out_arrows(x) == [last] {
        return Some(PathWord::vertex(x));
    }
    let beta = a.in_arrows(x).iter().copied().find(|&b| b != first)?;
    let mut arrows = vec![beta];
    loop {
        match a.live_pred(*arrows.last().unwrap()) {
            Some(n) if n == beta => return None,
            Some(n) => arrows.push(n),
            None => break,
        }
    }
    let w = PathWord::new(a, arrows).expect("live threads are composable");
    (w.source() == u.source() && w.last() != Some(last)).then_some(w)
}

/// Nontrivial maximal live paths that are closed (but not complete cycles).
pub fn closed_maximal_live(a: &GentleAlgebra) -> Vec<PathWord> {
    maximal_live_paths(a)
        .into_iter()
        .filter(|w| w.is_closed())
        .collect()
}

/// Nontrivial live paths extending on neither side.
pub fn maximal_live_paths(a: &GentleAlgebra) -> Vec<PathWord> {
    let mut out = Vec::new();
    for alpha in 0..a.num_arrows() {
        if a.live_succ(alpha).is_some() {
            continue;
        }
        let mut arrows = vec![alpha];
        while let Some(g) = a.live_pred(*arrows.last().unwrap()) {
            arrows.push(g);
        }
        out.push(PathWord::new(a, arrows).expect("live paths are composable"));
    }
    out
}

/// Maximal live threads including the trivial ones: `e_v` is a thread when
/// `v` has at most one incoming arrow `α` and one outgoing arrow `β`, unless
/// both exist and `βα` lies in the ideal.
pub fn live_threads(a: &GentleAlgebra) -> Vec<PathWord> {
    let mut out = maximal_live_paths(a);
    for v in 0..a.num_vertices() {
        if trivial_thread(a, v, true) {
            out.push(PathWord::vertex(v));
        }
    }
    out
}

/// Maximal relation chains including trivial ones (the mirror of
/// [`live_threads`]).
pub fn chain_threads(a: &GentleAlgebra) -> Vec<PathWord> {
    let mut out: Vec<PathWord> = maximal_chains_and_companions(a)
        .into_iter()
        .map(|m| m.chain)
        .collect();
    for v in 0..a.num_vertices() {
        if trivial_thread(a, v, false) {
            out.push(PathWord::vertex(v));
        }
    }
    out
}

fn trivial_thread(a: &GentleAlgebra, v: VertexId, live: bool) -> bool {
    let (ins, outs) = (a.in_arrows(v), a.out_arrows(v));
    if ins.len() > 1 || outs.len() > 1 {
        return false;
    }
    match (ins.first(), outs.first()) {
        (Some(&al), Some(&be)) => a.is_relation(be, al) != live,
        _ => true,
    }
}

impl fmt::Display for WordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordKind::Live => "live",
            WordKind::RelationChain => "relation-chain",
            WordKind::Both => "live and relation-chain",
            WordKind::Neither => "neither",
        })
    }
}
