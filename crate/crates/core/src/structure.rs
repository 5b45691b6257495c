//! Cup product and Gerstenhaber bracket, both on cochains of parallel pairs
//! and in closed form on basis classes.

use std::cell::RefCell;
use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::complexes::{Cochain, ParallelPair};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::hochschild::{
    cycle_classes_exist, identify, representative, spanning_tree, winding, HHClass, HHExpression,
};
use crate::quiver::GentleAlgebra;
use crate::threads::{
    closed_maximal_live, complete_cycles, is_chain, is_live, maximal_chains_and_companions,
    CycleKind, CyclicWord, PathWord,
};

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Bidegree data `(length of p, |q| - |p|)` of a pair.
fn md(x: &ParallelPair) -> (i64, i64) {
    let (m, r) = x.bidegree();
    (m as i64, r)
}

fn valid(a: &GentleAlgebra, p: &PathWord, q: &PathWord) -> Option<ParallelPair> {
    if is_chain(a, p) && is_live(a, q) {
        ParallelPair::new(p.clone(), q.clone())
    } else {
        None
    }
}

/// Cup product of two pairs.
pub fn pair_cup(
    a: &GentleAlgebra,
    x: &ParallelPair,
    y: &ParallelPair,
) -> Option<(ParallelPair, i64)> {
    let p = x.p.concat(&y.p)?;
    let q = x.q.concat(&y.q)?;
    let pair = valid(a, &p, &q)?;
    let s = y.q.degree() - y.p.degree();
    Some((pair, sign(s * x.p.degree())))
}

pub fn chain_cup(a: &GentleAlgebra, f: &Cochain, g: &Cochain) -> Cochain {
    let mut out = Cochain::zero();
    for (x, c) in f.terms() {
        for (y, e) in g.terms() {
            if let Some((pair, s)) = pair_cup(a, x, y) {
                out.add_term(pair, s * c * e);
            }
        }
    }
    out
}

/// `x ∘_i y` for pairs, with `1 <= i <= l(p_x)`.
///
/// When `q_y` overhangs `p_x` on the left (`q_y = u α₁ v`), the factor `u`
/// moves past `q_x` and picks up the Koszul sign `(-1)^{r|u|}`, with `r` the
/// internal degree of `x`. This also covers `q_y = α₁` with `u` trivial.
pub fn pair_circ_i(a: &GentleAlgebra, x: &ParallelPair, y: &ParallelPair, i: usize) -> Cochain {
    let (m, r) = md(x);
    let (n, s) = md(y);
    let mut out = Cochain::zero();
    if m == 0 || i == 0 || i as i64 > m {
        return out;
    }
    let base = (m - 1) * (n + s - 1);
    let alphas = x.p.arrows();
    let q2 = y.q.arrows();
    let word = |arrows: &[usize], v: usize| -> PathWord {
        if arrows.is_empty() {
            PathWord::vertex(v)
        } else {
            PathWord::new(a, arrows.to_vec()).expect("subword")
        }
    };
    let push = |p: Option<PathWord>, q: Option<PathWord>, e: i64, out: &mut Cochain| {
        if let (Some(p), Some(q)) = (p, q) {
            if let Some(pair) = valid(a, &p, &q) {
                out.add_term(pair, sign(e));
            }
        }
    };
    let deg = |ws: &[usize]| ws.iter().map(|&w| a.degree(w)).sum::<i64>();
    if m == 1 {
        // q2 = u α₁ v, summed over all occurrences
        for (k, &b) in q2.iter().enumerate() {
            if b != alphas[0] {
                continue;
            }
            let u = word(&q2[..k], a.target(b));
            let v = word(&q2[k + 1..], a.source(b));
            let q = u.concat(&x.q).and_then(|w| w.concat(&v));
            push(Some(y.p.clone()), q, base + r * u.degree(), &mut out);
        }
        return out;
    }
    let i = i - 1; // zero-based position of α_i
    if i == 0 {
        // q2 = u α₁
        if q2.last() == Some(&alphas[0]) {
            let u = word(&q2[..q2.len() - 1], a.target(alphas[0]));
            let p = y.p.concat(&word(&alphas[1..], x.p.source()));
            let q = u.concat(&x.q);
            push(p, q, base + r * u.degree(), &mut out);
        }
    } else if i as i64 == m - 1 {
        // q2 = α_m u
        if q2.first() == Some(&alphas[i]) {
            let u = word(&q2[1..], y.q.source());
            let head = word(&alphas[..i], a.target(alphas[i]));
            let p = head.concat(&y.p);
            let q = x.q.concat(&u);
            push(p, q, base + deg(&alphas[..i]) * s, &mut out);
        }
    } else if q2 == [alphas[i]] {
        let head = word(&alphas[..i], a.target(alphas[i]));
        let tail = word(&alphas[i + 1..], x.p.source());
        let p = head.concat(&y.p).and_then(|w| w.concat(&tail));
        push(p, Some(x.q.clone()), base + deg(&alphas[..i]) * s, &mut out);
    }
    out
}

/// `x ∘ y = Σ_i (-1)^{(i-1)(n-1)} x ∘_i y`.
pub fn pair_circ(a: &GentleAlgebra, x: &ParallelPair, y: &ParallelPair) -> Cochain {
    let (m, _) = md(x);
    let (n, _) = md(y);
    let mut out = Cochain::zero();
    for i in 1..=m {
        out.add_scaled(&pair_circ_i(a, x, y, i as usize), sign((i - 1) * (n - 1)));
    }
    out
}

pub fn chain_circle(a: &GentleAlgebra, f: &Cochain, g: &Cochain) -> Cochain {
    let mut out = Cochain::zero();
    for (x, c) in f.terms() {
        for (y, e) in g.terms() {
            out.add_scaled(&pair_circ(a, x, y), c * e);
        }
    }
    out
}

/// `[f, g] = f ∘ g - (-1)^{(m+r-1)(n+s-1)} g ∘ f`, extended bilinearly.
pub fn chain_bracket(a: &GentleAlgebra, f: &Cochain, g: &Cochain) -> Cochain {
    let mut out = Cochain::zero();
    for (x, c) in f.terms() {
        for (y, e) in g.terms() {
            let (m, r) = md(x);
            let (n, s) = md(y);
            out.add_scaled(&pair_circ(a, x, y), c * e);
            out.add_scaled(
                &pair_circ(a, y, x),
                -sign((m + r - 1) * (n + s - 1)) * c * e,
            );
        }
    }
    out
}

/// Closed-form cup product and bracket on basis classes of one algebra over
/// one field. Cup signs are fixed once per class pair by evaluating the
/// chain-level product of representatives, then cached.
pub struct Structure<'a> {
    a: &'a GentleAlgebra,
    field: FieldSpec,
    cap: Option<usize>,
    cup_signs: RefCell<HashMap<(HHClass, HHClass), Scalar>>,
}

impl<'a> Structure<'a> {
    pub fn new(a: &'a GentleAlgebra, field: FieldSpec) -> Self {
        Structure {
            a,
            field,
            cap: None,
            cup_signs: RefCell::new(HashMap::new()),
        }
    }

    /// Length cap used when identifying products next to infinite bidegrees.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = Some(cap);
        self
    }

    pub fn algebra(&self) -> &GentleAlgebra {
        self.a
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn int(&self, n: i64) -> Scalar {
        self.field.from_int(n)
    }

    fn exists(&self, c: &HHClass) -> bool {
        c.cycle_power()
            .is_none_or(|p| cycle_classes_exist(&p, self.field))
    }

    /// The class predicted by the closed form for `x ∪ y`, if nonzero.
    fn cup_target(&self, x: &HHClass, y: &HHClass) -> Option<HHClass> {
        use HHClass::*;
        let same = |c: &CyclicWord, d: &CyclicWord| c == d;
        let t = match (x, y) {
            (N0 { cycle: c, m }, N0 { cycle: d, m: n }) if same(c, d) => N0 {
                cycle: c.clone(),
                m: m + n,
            },
            (N0 { cycle: c, m }, N1 { cycle: d, m: n })
            | (N1 { cycle: d, m: n }, N0 { cycle: c, m })
                if same(c, d) =>
            {
                N1 {
                    cycle: c.clone(),
                    m: m + n,
                }
            }
            (Arrow { arrow }, N0 { cycle, m }) | (N0 { cycle, m }, Arrow { arrow })
                if cycle.primitive.count(*arrow) > 0 =>
            {
                N1 {
                    cycle: cycle.clone(),
                    m: *m,
                }
            }
            _ => return None,
        };
        self.exists(&t).then_some(t)
    }

    fn cup_sign(&self, x: &HHClass, y: &HHClass, t: &HHClass) -> Result<Scalar> {
        let key = (x.clone(), y.clone());
        if let Some(s) = self.cup_signs.borrow().get(&key) {
            return Ok(s.clone());
        }
        let z = chain_cup(
            self.a,
            &representative(self.a, x)?,
            &representative(self.a, y)?,
        );
        let e = identify(self.a, self.field, &z, self.cap)?;
        let s = e.terms.get(t).cloned().unwrap_or_else(Scalar::zero);
        let one = self.field.one();
        if s != one && s != self.field.neg(&one) {
            return Err(Error::Internal(format!(
                "cup of {} and {} has coefficient {} on {}, expected a sign",
                x.name(self.a),
                y.name(self.a),
                self.field.display(&s),
                t.name(self.a)
            )));
        }
        self.cup_signs.borrow_mut().insert(key, s.clone());
        Ok(s)
    }

    pub fn cup_classes(&self, x: &HHClass, y: &HHClass) -> Result<HHExpression> {
        match (x, y) {
            (HHClass::Unit, _) => return Ok(HHExpression::single(y.clone(), self.field.one())),
            (_, HHClass::Unit) => return Ok(HHExpression::single(x.clone(), self.field.one())),
            _ => {}
        }
        match self.cup_target(x, y) {
            Some(t) => {
                let s = self.cup_sign(x, y, &t)?;
                Ok(HHExpression::single(t, s))
            }
            None => Ok(HHExpression::zero()),
        }
    }

    pub fn cup(&self, x: &HHExpression, y: &HHExpression) -> Result<HHExpression> {
        self.bilinear(x, y, |u, v| self.cup_classes(u, v))
    }

    pub fn bracket(&self, x: &HHExpression, y: &HHExpression) -> Result<HHExpression> {
        self.bilinear(x, y, |u, v| Ok(self.bracket_classes(u, v)))
    }

    fn bilinear(
        &self,
        x: &HHExpression,
        y: &HHExpression,
        op: impl Fn(&HHClass, &HHClass) -> Result<HHExpression>,
    ) -> Result<HHExpression> {
        let f = self.field;
        let mut out = HHExpression::zero();
        for (u, a) in &x.terms {
            for (v, b) in &y.terms {
                let ab = f.mul(a, b);
                for (w, c) in op(u, v)?.terms {
                    out.add(f, w, &f.mul(&ab, &c));
                }
            }
        }
        Ok(out)
    }

    /// Signed occurrence count of `alpha` on the boundary word of a class:
    /// occurrences in live words count positively, in relation chains
    /// negatively.
    fn occurrences(&self, alpha: usize, v: &HHClass) -> Option<i64> {
        match v {
            HHClass::N0 { cycle, m } | HHClass::N1 { cycle, m } => {
                let k = (cycle.primitive.count(alpha) * m) as i64;
                Some(match cycle.kind {
                    CycleKind::Chain => -k,
                    CycleKind::Live => k,
                })
            }
            HHClass::StopChain { chain, companion } => {
                Some(companion.count(alpha) as i64 - chain.count(alpha) as i64)
            }
            HHClass::StopLoop { word } => Some(word.count(alpha) as i64),
            _ => None,
        }
    }

    pub fn bracket_classes(&self, x: &HHClass, y: &HHClass) -> HHExpression {
        use HHClass::*;
        let f = self.field;
        let single = |c: HHClass, k: i64| {
            let s = self.int(k);
            if self.exists(&c) {
                HHExpression::single(c, s)
            } else {
                HHExpression::zero()
            }
        };
        // [x, y] = -(-1)^{(|x|-1)(|y|-1)} [y, x]
        let swapped = |e: HHExpression| {
            let s = -sign((x.total_degree() - 1) * (y.total_degree() - 1));
            let mut out = HHExpression::zero();
            for (c, v) in e.terms {
                out.add(f, c, &f.mul(&self.int(s), &v));
            }
            out
        };
        let even = |c: &CyclicWord, k: usize| winding(&c.power(k)) % 2 == 0;
        let orientation = |c: &CyclicWord| match c.kind {
            CycleKind::Chain => 1,
            CycleKind::Live => -1,
        };
        match (x, y) {
            (N1 { cycle: c, m }, N1 { cycle: d, m: n }) if c == d => {
                let target = N1 {
                    cycle: c.clone(),
                    m: m + n,
                };
                let k = orientation(c);
                let (m, n) = (*m as i64, *n as i64);
                match (even(c, m as usize), even(c, n as usize)) {
                    (true, true) => single(target, k * (m - n)),
                    (false, true) => single(target, k * m),
                    (false, false) => HHExpression::zero(),
                    (true, false) => swapped(single(target, k * n)),
                }
            }
            (N0 { cycle: c, m }, N1 { cycle: d, m: n }) if c == d => {
                let target = N0 {
                    cycle: c.clone(),
                    m: m + n,
                };
                let k = orientation(c);
                if even(c, *n) {
                    // Koszul sign of moving the last arrow of the N1 representative
                    // past an odd power of the cycle.
                    let last = c.primitive.last().expect("nontrivial cycle");
                    let koszul = match c.kind {
                        CycleKind::Chain => {
                            sign(*n as i64 * c.degree() * (self.a.degree(last) + 1))
                        }
                        CycleKind::Live => 1,
                    };
                    single(target, k * koszul * *m as i64)
                } else if even(c, *m) {
                    HHExpression::zero()
                } else {
                    single(target, k * sign((*m * c.period()) as i64))
                }
            }
            (N1 { .. }, N0 { .. }) => swapped(self.bracket_classes(y, x)),
            (Arrow { arrow }, v) => match self.occurrences(*arrow, v) {
                Some(k) => single(v.clone(), k),
                None => HHExpression::zero(),
            },
            (_, Arrow { .. }) => swapped(self.bracket_classes(y, x)),
            _ => HHExpression::zero(),
        }
    }
}

/// Cup product in closed form (convenience wrapper without a shared cache).
pub fn cup(
    a: &GentleAlgebra,
    field: FieldSpec,
    x: &HHExpression,
    y: &HHExpression,
) -> Result<HHExpression> {
    Structure::new(a, field).cup(x, y)
}

/// Gerstenhaber bracket in closed form.
pub fn bracket(
    a: &GentleAlgebra,
    field: FieldSpec,
    x: &HHExpression,
    y: &HHExpression,
) -> Result<HHExpression> {
    Structure::new(a, field).bracket(x, y)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    /// Winding number of the boundary component, where one is attached.
    pub winding: Option<i64>,
    /// The basis class the generator is identified with.
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<String>,
}

/// Generators and relations of the cohomology ring as a graded-commutative
/// algebra. Generator degrees are the total degrees of the identified classes.
pub fn hh_presentation(a: &GentleAlgebra, field: FieldSpec) -> Presentation {
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let tree = spanning_tree(a);
    let non_tree: Vec<usize> = (0..a.num_arrows()).filter(|x| !tree.contains(x)).collect();
    for &e in &non_tree {
        let class = HHClass::Arrow { arrow: e };
        generators.push(Generator {
            name: format!("x_{}", a.arrow_name(e)),
            degree: 1,
            winding: None,
            class: class.name(a),
        });
    }
    let mut xs = Vec::new();
    for c in complete_cycles(a) {
        let w = winding(&c);
        let m = if cycle_classes_exist(&c, field) { 1 } else { 2 };
        let class = HHClass::N0 {
            cycle: c.clone(),
            m,
        };
        let name = format!("x_B[{}]", c.primitive.display(a));
        generators.push(Generator {
            name: name.clone(),
            degree: class.total_degree(),
            winding: Some(w),
            class: class.name(a),
        });
        let in_cycle: Vec<usize> = non_tree
            .iter()
            .copied()
            .filter(|&e| c.primitive.count(e) > 0)
            .collect();
        for pair in in_cycle.windows(2) {
            relations.push(format!(
                "x_{} {name} - x_{} {name}",
                a.arrow_name(pair[0]),
                a.arrow_name(pair[1])
            ));
        }
        xs.push(name);
    }
    let mut ys = Vec::new();
    let single_stop = |class: HHClass, winding: i64, generators: &mut Vec<Generator>| {
        let name = match &class {
            HHClass::StopChain { chain, .. } => format!("y_C[{}]", chain.display(a)),
            HHClass::StopLoop { word } => format!("y_C[{}]", word.display(a)),
            _ => unreachable!("single-stop classes only"),
        };
        generators.push(Generator {
            name: name.clone(),
            degree: class.total_degree(),
            winding: Some(winding),
            class: class.name(a),
        });
        name
    };
    for mc in maximal_chains_and_companions(a) {
        if let Some(companion) = mc.companion {
            let w = 1 + companion.degree() - mc.chain.len() as i64;
            let class = HHClass::StopChain {
                chain: mc.chain,
                companion,
            };
            ys.push(single_stop(class, w, &mut generators));
        }
    }
    for word in closed_maximal_live(a) {
        let w = 1 + word.degree();
        ys.push(single_stop(HHClass::StopLoop { word }, w, &mut generators));
    }
    for (i, x) in xs.iter().enumerate() {
        for x2 in &xs[i + 1..] {
            relations.push(format!("{x} {x2}"));
        }
        for y in &ys {
            relations.push(format!("{x} {y}"));
        }
    }
    for y in &ys {
        relations.push(format!("{y}^2"));
    }
    Presentation {
        generators,
        relations,
    }
}
