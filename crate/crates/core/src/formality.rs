//! Intrinsic formality: the surface criterion and the Kadeishvili obstruction
//! spaces, reported side by side.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::boundary::{boundary_cycles, CycleShape, Stops};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::hochschild::basis;
use crate::quiver::GentleAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Formal,
    NotFormal,
    /// A single-stop component of winding number 2 falls outside the surface criterion.
    OutsideHypothesis,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Formal => "formal",
            Verdict::NotFormal => "not-formal",
            Verdict::OutsideHypothesis => "outside-hypothesis",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Kadeishvili {
    /// `dim HH^{n, 2-n}` for `3 <= n <= nmax`.
    pub obstruction_dims: BTreeMap<usize, usize>,
    /// True when every obstruction space in range vanishes.
    pub sufficient_formality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormalityVerdict {
    pub surface_verdict: Verdict,
    pub kadeishvili: Kadeishvili,
    /// Boundary components and basis classes behind the verdicts.
    pub witnesses: Vec<String>,
    /// The surface criterion says not formal while all obstruction spaces vanish.
    pub disagreement: bool,
}

pub fn formality(a: &GentleAlgebra, field: FieldSpec, nmax: usize) -> Result<FormalityVerdict> {
    if nmax < 3 {
        return Err(Error::Bounds(format!(
            "nmax must be at least 3, got {nmax}"
        )));
    }
    let mut witnesses = Vec::new();
    let (mut unmarked, mut single_stop) = (false, false);
    for c in boundary_cycles(a) {
        if c.winding != 2 {
            continue;
        }
        match (&c.shape, c.stops) {
            (CycleShape::Unmarked(_), _) => {
                unmarked = true;
                witnesses.push(format!(
                    "unmarked component {} with winding number 2",
                    c.describe(a)
                ));
            }
            (_, Stops::Finite(1)) => {
                single_stop = true;
                witnesses.push(format!(
                    "single-stop component {} with winding number 2",
                    c.describe(a)
                ));
            }
            _ => {}
        }
    }
    let surface_verdict = if single_stop {
        Verdict::OutsideHypothesis
    } else if unmarked {
        Verdict::NotFormal
    } else {
        Verdict::Formal
    };
    let mut obstruction_dims = BTreeMap::new();
    for n in 3..=nmax {
        let d = 2 - n as i64;
        let classes = basis(a, field, n, d, None)?;
        witnesses.extend(
            classes
                .iter()
                .map(|c| format!("class {} in HH^{{{n},{d}}}", c.name(a))),
        );
        obstruction_dims.insert(n, classes.len());
    }
    let sufficient_formality = obstruction_dims.values().all(|&d| d == 0);
    Ok(FormalityVerdict {
        surface_verdict,
        disagreement: surface_verdict == Verdict::NotFormal && sufficient_formality,
        kadeishvili: Kadeishvili {
            obstruction_dims,
            sufficient_formality,
        },
        witnesses,
    })
}
