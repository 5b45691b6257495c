//! Graded gentle quivers: the interchange document, validation of the gentle
//! axioms and a seeded generator of random instances.
//!
//! Arrows compose right to left. A relation `(beta, alpha)` means that the
//! composite `beta alpha` (first `alpha`, then `beta`) lies in the ideal.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Pairs `(beta, alpha)` with `beta alpha` in the ideal.
    pub relations: BTreeSet<(ArrowId, ArrowId)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArrowDoc {
    name: String,
    from: String,
    to: String,
    #[serde(default)]
    degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct QuiverDoc {
    vertices: Vec<String>,
    arrows: Vec<ArrowDoc>,
    #[serde(default)]
    relations: Vec<Vec<String>>,
}

/// Parses a quiver document (JSON with keys `vertices`, `arrows`, `relations`).
pub fn parse_quiver(text: &str) -> Result<GradedQuiver> {
    let doc: QuiverDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut vertex_index = HashMap::new();
    for (i, v) in doc.vertices.iter().enumerate() {
        if vertex_index.insert(v.clone(), i).is_some() {
            return Err(Error::Duplicate(format!("vertex `{v}`")));
        }
    }
    if doc.vertices.is_empty() {
        return Err(Error::Parse("no vertices".into()));
    }
    let lookup_vertex = |name: &str| {
        vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Dangling {
                kind: "vertex",
                name: name.to_string(),
            })
    };
    let mut arrows = Vec::with_capacity(doc.arrows.len());
    let mut arrow_index = HashMap::new();
    for a in &doc.arrows {
        if arrow_index.insert(a.name.clone(), arrows.len()).is_some() {
            return Err(Error::Duplicate(format!("arrow `{}`", a.name)));
        }
        arrows.push(Arrow {
            name: a.name.clone(),
            source: lookup_vertex(&a.from)?,
            target: lookup_vertex(&a.to)?,
            degree: a.degree,
        });
    }
    let mut relations = BTreeSet::new();
    for rel in &doc.relations {
        let [beta, alpha] = rel.as_slice() else {
            return Err(Error::Parse(format!(
                "relation {rel:?} must have exactly two entries [beta, alpha]"
            )));
        };
        let find = |name: &String| {
            arrow_index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Dangling {
                    kind: "arrow",
                    name: name.clone(),
                })
        };
        let (b, a) = (find(beta)?, find(alpha)?);
        if arrows[b].source != arrows[a].target {
            return Err(Error::NonComposableRelation {
                beta: beta.clone(),
                alpha: alpha.clone(),
            });
        }
        if !relations.insert((b, a)) {
            return Err(Error::Duplicate(format!("relation [{beta}, {alpha}]")));
        }
    }
    Ok(GradedQuiver {
        vertices: doc.vertices,
        arrows,
        relations,
    })
}

impl GradedQuiver {
    /// Serialises back to the interchange document.
    pub fn to_json(&self) -> String {
        let doc = QuiverDoc {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    name: a.name.clone(),
                    from: self.vertices[a.source].clone(),
                    to: self.vertices[a.target].clone(),
                    degree: a.degree,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(b, a)| vec![self.arrows[b].name.clone(), self.arrows[a].name.clone()])
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialisable")
    }

    fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        components
    }
}

/// A validated graded gentle quiver together with its navigation maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleAlgebra {
    quiver: GradedQuiver,
    out_arrows: Vec<Vec<ArrowId>>,
    in_arrows: Vec<Vec<ArrowId>>,
    chain_succ: Vec<Option<ArrowId>>,
    chain_pred: Vec<Option<ArrowId>>,
    live_succ: Vec<Option<ArrowId>>,
    live_pred: Vec<Option<ArrowId>>,
}

/// Checks the gentle axioms, connectivity and the excluded shapes.
pub fn validate_gentle(q: GradedQuiver) -> Result<GentleAlgebra> {
    let nv = q.vertices.len();
    let na = q.arrows.len();
    let mut out_arrows = vec![Vec::new(); nv];
    let mut in_arrows = vec![Vec::new(); nv];
    for (i, a) in q.arrows.iter().enumerate() {
        out_arrows[a.source].push(i);
        in_arrows[a.target].push(i);
    }
    for v in 0..nv {
        if out_arrows[v].len() > 2 || in_arrows[v].len() > 2 {
            return Err(Error::Axiom {
                axiom: 1,
                location: format!("vertex `{}`", q.vertices[v]),
                detail: format!(
                    "{} outgoing and {} incoming arrows (at most two each)",
                    out_arrows[v].len(),
                    in_arrows[v].len()
                ),
            });
        }
    }
    let mut chain_succ: Vec<Option<ArrowId>> = vec![None; na];
    let mut chain_pred: Vec<Option<ArrowId>> = vec![None; na];
    let mut live_succ: Vec<Option<ArrowId>> = vec![None; na];
    let mut live_pred: Vec<Option<ArrowId>> = vec![None; na];
    for alpha in 0..na {
        let t = q.arrows[alpha].target;
        for &beta in &out_arrows[t] {
            let in_ideal = q.relations.contains(&(beta, alpha));
            let (succ, pred, axiom) = if in_ideal {
                (&mut chain_succ, &mut chain_pred, 2)
            } else {
                (&mut live_succ, &mut live_pred, 3)
            };
            let clash = |other: ArrowId, what: &str| Error::Axiom {
                axiom,
                location: format!("arrow `{}`", q.arrows[alpha].name),
                detail: format!(
                    "two {what} ({} and {})",
                    q.arrows[other].name, q.arrows[beta].name
                ),
            };
            if let Some(other) = succ[alpha] {
                return Err(clash(
                    other,
                    if in_ideal {
                        "successors composing into the ideal"
                    } else {
                        "successors composing outside the ideal"
                    },
                ));
            }
            succ[alpha] = Some(beta);
            if let Some(other) = pred[beta] {
                return Err(Error::Axiom {
                    axiom,
                    location: format!("arrow `{}`", q.arrows[beta].name),
                    detail: format!(
                        "two predecessors {} ({} and {})",
                        if in_ideal {
                            "composing into the ideal"
                        } else {
                            "composing outside the ideal"
                        },
                        q.arrows[other].name,
                        q.arrows[alpha].name
                    ),
                });
            }
            pred[beta] = Some(alpha);
        }
    }
    if nv == 1 && na == 1 {
        return Err(Error::ExcludedShape("a loop on a single vertex"));
    }
    if nv == 2
        && na == 2
        && q.arrows[0].source == q.arrows[1].source
        && q.arrows[0].target == q.arrows[1].target
        && q.arrows[0].source != q.arrows[0].target
    {
        return Err(Error::ExcludedShape("the Kronecker quiver"));
    }
    let components = q.component_count();
    if components > 1 {
        return Err(Error::Disconnected(components));
    }
    Ok(GentleAlgebra {
        quiver: q,
        out_arrows,
        in_arrows,
        chain_succ,
        chain_pred,
        live_succ,
        live_pred,
    })
}

impl GentleAlgebra {
    pub fn from_json(text: &str) -> Result<Self> {
        validate_gentle(parse_quiver(text)?)
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.quiver.arrows[a]
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.quiver.arrows[a].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.quiver.arrows[a].target
    }

    pub fn degree(&self, a: ArrowId) -> i64 {
        self.quiver.arrows[a].degree
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.quiver.arrows[a].name
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.quiver.arrows.iter().position(|a| a.name == name)
    }

    pub fn out_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.out_arrows[v]
    }

    pub fn in_arrows(&self, v: VertexId) -> &[ArrowId] {
        &self.in_arrows[v]
    }

    /// Whether `beta alpha` lies in the ideal (requires `s(beta) = t(alpha)`).
    pub fn is_relation(&self, beta: ArrowId, alpha: ArrowId) -> bool {
        self.quiver.relations.contains(&(beta, alpha))
    }

    /// The arrow `beta` with `beta alpha` in the ideal.
    pub fn chain_succ(&self, alpha: ArrowId) -> Option<ArrowId> {
        self.chain_succ[alpha]
    }

    /// The arrow `gamma` with `alpha gamma` in the ideal.
    pub fn chain_pred(&self, alpha: ArrowId) -> Option<ArrowId> {
        self.chain_pred[alpha]
    }

    /// The arrow `beta` with `beta alpha` composable and outside the ideal.
    pub fn live_succ(&self, alpha: ArrowId) -> Option<ArrowId> {
        self.live_succ[alpha]
    }

    /// The arrow `gamma` with `alpha gamma` composable and outside the ideal.
    pub fn live_pred(&self, alpha: ArrowId) -> Option<ArrowId> {
        self.live_pred[alpha]
    }

    /// Applies a relabelling (used by invariance tests): vertex `i` becomes
    /// `vperm[i]`, arrow `j` becomes `aperm[j]`.
    pub fn permuted(&self, vperm: &[usize], aperm: &[usize]) -> GentleAlgebra {
        let q = &self.quiver;
        let mut vertices = vec![String::new(); q.vertices.len()];
        for (i, v) in q.vertices.iter().enumerate() {
            vertices[vperm[i]] = v.clone();
        }
        let mut arrows = vec![q.arrows[0].clone(); q.arrows.len()];
        for (j, a) in q.arrows.iter().enumerate() {
            arrows[aperm[j]] = Arrow {
                name: a.name.clone(),
                source: vperm[a.source],
                target: vperm[a.target],
                degree: a.degree,
            };
        }
        let relations = q
            .relations
            .iter()
            .map(|&(b, a)| (aperm[b], aperm[a]))
            .collect();
        validate_gentle(GradedQuiver {
            vertices,
            arrows,
            relations,
        })
        .expect("relabelling preserves gentleness")
    }
}

/// Size and degree limits for [`random_gentle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomBounds {
    pub max_vertices: usize,
    pub max_arrows: Option<usize>,
    pub min_degree: i64,
    pub max_degree: i64,
    pub allow_loops: bool,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds {
            max_vertices: 4,
            max_arrows: None,
            min_degree: 0,
            max_degree: 0,
            allow_loops: true,
        }
    }
}

/// Deterministically samples a connected graded gentle algebra from `seed`.
pub fn random_gentle(seed: u64, bounds: RandomBounds) -> Result<GentleAlgebra> {
    if bounds.max_vertices < 2 {
        return Err(Error::Bounds("at least two vertices are required".into()));
    }
    if bounds.min_degree > bounds.max_degree {
        return Err(Error::Bounds("empty degree range".into()));
    }
    let capacity = 2 * bounds.max_vertices;
    if let Some(m) = bounds.max_arrows {
        if m == 0 {
            return Err(Error::Bounds("at least one arrow is required".into()));
        }
        if m > capacity {
            return Err(Error::Bounds(format!(
                "{m} arrows exceed the gentle capacity {capacity} of {} vertices",
                bounds.max_vertices
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        if let Some(q) = sample_quiver(&mut rng, &bounds) {
            if let Ok(a) = validate_gentle(q) {
                return Ok(a);
            }
        }
    }
    Err(Error::Bounds("no gentle quiver found within bounds".into()))
}

fn sample_quiver(rng: &mut ChaCha8Rng, b: &RandomBounds) -> Option<GradedQuiver> {
    let max_arrows = b.max_arrows.unwrap_or(2 * b.max_vertices);
    let max_n = b.max_vertices.min(max_arrows + 1);
    let n = rng.gen_range(2..=max_n);
    let mut outdeg = vec![0usize; n];
    let mut indeg = vec![0usize; n];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for i in 1..n {
        let mut options = Vec::new();
        for j in 0..i {
            if outdeg[j] < 2 {
                options.push((j, i));
            }
            if indeg[j] < 2 {
                options.push((i, j));
            }
        }
        let &(s, t) = options.choose(rng)?;
        outdeg[s] += 1;
        indeg[t] += 1;
        edges.push((s, t));
    }
    let upper = max_arrows.min(2 * n);
    let target = rng.gen_range(n - 1..=upper);
    let mut attempts = 0;
    while edges.len() < target && attempts < 64 {
        attempts += 1;
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(0..n);
        if (s == t && !b.allow_loops) || outdeg[s] >= 2 || indeg[t] >= 2 {
            continue;
        }
        outdeg[s] += 1;
        indeg[t] += 1;
        edges.push((s, t));
    }
    let arrows: Vec<Arrow> = edges
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| Arrow {
            name: arrow_label(i),
            source: s,
            target: t,
            degree: rng.gen_range(b.min_degree..=b.max_degree),
        })
        .collect();
    let mut relations = BTreeSet::new();
    for v in 0..n {
        let ins: Vec<ArrowId> = (0..arrows.len())
            .filter(|&a| arrows[a].target == v)
            .collect();
        let outs: Vec<ArrowId> = (0..arrows.len())
            .filter(|&a| arrows[a].source == v)
            .collect();
        match (ins.len(), outs.len()) {
            (2, 2) => {
                if rng.gen_bool(0.5) {
                    relations.insert((outs[0], ins[0]));
                    relations.insert((outs[1], ins[1]));
                } else {
                    relations.insert((outs[0], ins[1]));
                    relations.insert((outs[1], ins[0]));
                }
            }
            (2, 1) => {
                relations.insert((outs[0], ins[rng.gen_range(0..2)]));
            }
            (1, 2) => {
                relations.insert((outs[rng.gen_range(0..2)], ins[0]));
            }
            (1, 1) if rng.gen_bool(0.5) => {
                relations.insert((outs[0], ins[0]));
            }
            _ => {}
        }
    }
    Some(GradedQuiver {
        vertices: (1..=n).map(|i| i.to_string()).collect(),
        arrows,
        relations,
    })
}

fn arrow_label(i: usize) -> String {
    let letters = b"abcdefghijklmnopqrstuvwxyz";
    if i < letters.len() {
        (letters[i] as char).to_string()
    } else {
        format!("x{i}")
    }
}
