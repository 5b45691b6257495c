//! Sparse exact Gaussian elimination.
//!
//! Vectors are sparse maps from column index to nonzero field element. A
//! [`Reducer`] keeps rows in echelon form (each row's least index is its pivot,
//! normalised to 1) and records, for every row, which inserted vectors it is a
//! combination of.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::field::{FieldSpec, Scalar};

pub type SparseVec = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

#[derive(Debug, Clone)]
pub struct Reducer {
    field: FieldSpec,
    rows: BTreeMap<usize, Row>,
    inserted: usize,
}

/// Outcome of inserting a vector: either it was independent of the rows so
/// far, or it reduced to zero and the dependency is returned.
#[derive(Debug, Clone, PartialEq)]
pub enum Insert {
    Independent,
    Dependent(SparseVec),
}

impl Reducer {
    pub fn new(field: FieldSpec) -> Self {
        Reducer {
            field,
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Fully reduces `v` against the current rows. Returns the remainder and
    /// the combination `c` of inserted vectors with `v = remainder + Σ c_i v_i`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let f = self.field;
        let mut rem: SparseVec = v
            .iter()
            .map(|(k, x)| (*k, f.normalize(x.clone())))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = rem
                .range(cursor..)
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, x)| (*k, x.clone()));
            let Some((k, coef)) = next else { break };
            let row = &self.rows[&k];
            axpy(f, &mut rem, &f.neg(&coef), &row.vec);
            axpy(f, &mut combo, &coef, &row.combo);
            cursor = k + 1;
        }
        (rem, combo)
    }

    pub fn insert(&mut self, v: &SparseVec) -> Insert {
        let f = self.field;
        let idx = self.inserted;
        self.inserted += 1;
        let (rem, combo) = self.reduce(v);
        if rem.is_empty() {
            return Insert::Dependent(combo);
        }
        // rem = v - Σ combo_i v_i
        let mut own = SparseVec::new();
        own.insert(idx, f.one());
        axpy(f, &mut own, &f.neg(&f.one()), &combo);
        let (&pivot, lead) = rem.iter().next().expect("nonempty");
        let inv = f.inv(lead);
        let vec = scale(f, &rem, &inv);
        let combo = scale(f, &own, &inv);
        self.rows.insert(pivot, Row { vec, combo });
        Insert::Independent
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// `y += a * x`, dropping zeros.
pub fn axpy(f: FieldSpec, y: &mut SparseVec, a: &Scalar, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, xv) in x {
        let add = f.mul(a, xv);
        let entry = y.entry(*k).or_insert_with(Scalar::zero);
        *entry = f.add(entry, &add);
        if entry.is_zero() {
            y.remove(k);
        }
    }
}

pub fn scale(f: FieldSpec, x: &SparseVec, a: &Scalar) -> SparseVec {
    x.iter()
        .map(|(k, v)| (*k, f.mul(v, a)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Rank of a list of sparse vectors.
pub fn rank(f: FieldSpec, vectors: &[SparseVec]) -> usize {
    let mut r = Reducer::new(f);
    for v in vectors {
        r.insert(v);
    }
    r.rank()
}
