//! Boundary cycles of the ribbon surface, winding numbers, the AAG invariant
//! and the surface invariants derived from them.
//!
//! A generic boundary cycle alternates between maximal live threads and
//! maximal relation chains traversed backwards: after a live thread `q` comes
//! the chain `P` ending where `q` ends, then the live thread starting where `P`
//! starts, and so on. Each segment is stored as the parallel-ended pair
//! `(P_i, q_i)` (`t(P_i) = t(q_i)`).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiver::{GentleAlgebra, VertexId};
use crate::threads::{
    chain_threads, complete_cycles, live_threads, CycleKind, CyclicWord, PathWord,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleShape {
    /// Alternating chains and live threads, `(P_i, q_i)` for `i = 1..r`.
    Generic(Vec<(PathWord, PathWord)>),
    /// A complete live cycle.
    FullyMarked(CyclicWord),
    /// A complete relation-chain cycle.
    Unmarked(CyclicWord),
}

/// Number of stops on a boundary component; chain cycles carry none and are
/// filed under infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stops {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Stops {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stops::Finite(n) => write!(f, "{n}"),
            Stops::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Stops {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Stops::Finite(n) => s.serialize_u64(*n as u64),
            Stops::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCycle {
    pub shape: CycleShape,
    pub stops: Stops,
    pub winding: i64,
}

impl BoundaryCycle {
    pub fn kind_name(&self) -> &'static str {
        match self.shape {
            CycleShape::Generic(_) => "generic",
            CycleShape::FullyMarked(_) => "fully-marked",
            CycleShape::Unmarked(_) => "unmarked",
        }
    }

    /// The AAG pair `(n, m)` recorded for this cycle.
    pub fn aag_pair(&self) -> (Stops, i64) {
        match self.stops {
            Stops::Finite(n) => (self.stops, n as i64 - self.winding),
            Stops::Infinite => (Stops::Infinite, -self.winding),
        }
    }

    pub fn describe(&self, a: &GentleAlgebra) -> String {
        match &self.shape {
            CycleShape::Generic(segs) => segs
                .iter()
                .map(|(p, q)| format!("({}, {})", p.display(a), q.display(a)))
                .collect::<Vec<_>>()
                .join(" "),
            CycleShape::FullyMarked(c) | CycleShape::Unmarked(c) => c.display(a),
        }
    }

    /// Vertices visited by the cycle.
    pub fn vertices(&self, a: &GentleAlgebra) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut add = |w: &PathWord| {
            out.push(w.source());
            for &x in w.arrows() {
                out.push(a.target(x));
            }
        };
        match &self.shape {
            CycleShape::Generic(segs) => {
                for (p, q) in segs {
                    add(p);
                    add(q);
                }
            }
            CycleShape::FullyMarked(c) | CycleShape::Unmarked(c) => add(&c.primitive),
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// All boundary cycles: generic ones first (in canonical rotation, ordered by
/// their least segment), then complete live and chain cycles.
pub fn boundary_cycles(a: &GentleAlgebra) -> Vec<BoundaryCycle> {
    let live = live_threads(a);
    let chain = chain_threads(a);
    let n = a.num_vertices();

    // end junctions: live thread ending at v -> chain ending at v
    let mut live_to_chain: HashMap<usize, usize> = HashMap::new();
    // start junctions: chain starting at v -> live thread starting at v
    let mut chain_to_live: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let le: Vec<usize> = (0..live.len()).filter(|&i| live[i].target() == v).collect();
        let ce: Vec<usize> = (0..chain.len())
            .filter(|&i| chain[i].target() == v)
            .collect();
        for (l, c) in pair_up(&le, &ce, |i| live[i].first(), |j| chain[j].first()) {
            live_to_chain.insert(l, c);
        }
        let cs: Vec<usize> = (0..chain.len())
            .filter(|&i| chain[i].source() == v)
            .collect();
        let ls: Vec<usize> = (0..live.len()).filter(|&i| live[i].source() == v).collect();
        for (c, l) in pair_up(&cs, &ls, |j| chain[j].last(), |i| live[i].last()) {
            chain_to_live.insert(c, l);
        }
    }

    let mut visited = vec![false; live.len()];
    let mut cycles = Vec::new();
    for start in 0..live.len() {
        if visited[start] {
            continue;
        }
        let mut segs = Vec::new();
        let mut q = start;
        loop {
            visited[q] = true;
            let p = live_to_chain[&q];
            segs.push((chain[p].clone(), live[q].clone()));
            q = chain_to_live[&p];
            if q == start {
                break;
            }
        }
        let r = segs.len();
        let winding = r as i64
            + segs
                .iter()
                .map(|(p, q)| q.degree() - p.len() as i64)
                .sum::<i64>();
        let k = (0..r).min_by_key(|&i| &segs[i]).unwrap_or(0);
        segs.rotate_left(k);
        cycles.push(BoundaryCycle {
            shape: CycleShape::Generic(segs),
            stops: Stops::Finite(r),
            winding,
        });
    }
    cycles.sort_by(|x, y| match (&x.shape, &y.shape) {
        (CycleShape::Generic(s), CycleShape::Generic(t)) => s[0].cmp(&t[0]),
        _ => std::cmp::Ordering::Equal,
    });
    for c in complete_cycles(a) {
        let cycle = match c.kind {
            CycleKind::Live => BoundaryCycle {
                winding: -c.degree(),
                stops: Stops::Finite(0),
                shape: CycleShape::FullyMarked(c),
            },
            CycleKind::Chain => BoundaryCycle {
                winding: c.len() as i64 - c.degree(),
                stops: Stops::Infinite,
                shape: CycleShape::Unmarked(c),
            },
        };
        cycles.push(cycle);
    }
    cycles
}

/// Pairs the items of `xs` and `ys` at a junction. With one of each they pair
/// directly; with two of each the pairing has differing extremal arrows.
fn pair_up<K: PartialEq>(
    xs: &[usize],
    ys: &[usize],
    kx: impl Fn(usize) -> K,
    ky: impl Fn(usize) -> K,
) -> Vec<(usize, usize)> {
    match (xs, ys) {
        ([x], [y]) => vec![(*x, *y)],
        ([x0, x1], [y0, y1]) => {
            if kx(*x0) != ky(*y0) && kx(*x1) != ky(*y1) {
                vec![(*x0, *y0), (*x1, *y1)]
            } else {
                vec![(*x0, *y1), (*x1, *y0)]
            }
        }
        _ => {
            debug_assert!(xs.is_empty() && ys.is_empty(), "unbalanced junction");
            Vec::new()
        }
    }
}

/// The AAG invariant as a multiset of `(n, m)` pairs.
pub type AagInvariant = BTreeMap<(Stops, i64), usize>;

pub fn aag_invariant(a: &GentleAlgebra) -> AagInvariant {
    aag_of(&boundary_cycles(a))
}

fn aag_of(cycles: &[BoundaryCycle]) -> AagInvariant {
    let mut phi = AagInvariant::new();
    for c in cycles {
        *phi.entry(c.aag_pair()).or_default() += 1;
    }
    phi
}

pub fn format_aag(phi: &AagInvariant) -> String {
    let parts: Vec<String> = phi
        .iter()
        .flat_map(|((n, m), k)| std::iter::repeat_n(format!("({n}, {m})"), *k))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub kind: &'static str,
    pub stops: Stops,
    pub winding: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceInvariants {
    pub boundary_components: usize,
    pub euler_characteristic: i64,
    pub genus: u64,
    pub components: Vec<ComponentSummary>,
}

pub fn surface_invariants(a: &GentleAlgebra) -> Result<SurfaceInvariants> {
    surface_of(a, &boundary_cycles(a))
}

fn surface_of(a: &GentleAlgebra, cycles: &[BoundaryCycle]) -> Result<SurfaceInvariants> {
    let b = cycles.len() as i64;
    let chi = a.num_vertices() as i64 - a.num_arrows() as i64;
    let twice_g = 2 - chi - b;
    if twice_g < 0 || twice_g % 2 != 0 {
        return Err(Error::Internal(format!(
            "boundary walk produced {b} components with Euler characteristic {chi}"
        )));
    }
    Ok(SurfaceInvariants {
        boundary_components: b as usize,
        euler_characteristic: chi,
        genus: (twice_g / 2) as u64,
        components: cycles
            .iter()
            .map(|c| ComponentSummary {
                kind: c.kind_name(),
                stops: c.stops,
                winding: c.winding,
            })
            .collect(),
    })
}

/// Homologically smooth: no complete relation-chain cycle.
pub fn is_smooth(a: &GentleAlgebra) -> bool {
    complete_cycles(a)
        .iter()
        .all(|c| c.kind != CycleKind::Chain)
}

/// Proper (finite-dimensional): no complete live cycle.
pub fn is_proper(a: &GentleAlgebra) -> bool {
    complete_cycles(a).iter().all(|c| c.kind != CycleKind::Live)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// All computed invariants agree. This is a necessary condition for
    /// derived equivalence only.
    PossiblyEquivalent,
    NotEquivalent(String),
}

pub fn compare_invariants(a: &GentleAlgebra, b: &GentleAlgebra) -> Result<Comparison> {
    let (ca, cb) = (boundary_cycles(a), boundary_cycles(b));
    let (sa, sb) = (surface_of(a, &ca)?, surface_of(b, &cb)?);
    if sa.boundary_components != sb.boundary_components {
        return Ok(Comparison::NotEquivalent(format!(
            "boundary components differ: {} vs {}",
            sa.boundary_components, sb.boundary_components
        )));
    }
    if sa.genus != sb.genus {
        return Ok(Comparison::NotEquivalent(format!(
            "genus differs: {} vs {}",
            sa.genus, sb.genus
        )));
    }
    let (pa, pb) = (aag_of(&ca), aag_of(&cb));
    if pa != pb {
        return Ok(Comparison::NotEquivalent(format!(
            "AAG invariants differ: {} vs {}",
            format_aag(&pa),
            format_aag(&pb)
        )));
    }
    Ok(Comparison::PossiblyEquivalent)
}
