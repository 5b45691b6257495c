//! Small built-in algebras used by tests, the CLI and the web demo.

use crate::quiver::GentleAlgebra;

/// A single arrow `a: 1 → 2`.
pub const E1: &str = include_str!("../fixtures/e1.json");
/// The two-cycle `1 ⇄ 2` with both composites in the ideal.
pub const E2: &str = include_str!("../fixtures/e2.json");
/// The two-cycle with only `ab` in the ideal.
pub const E3: &str = include_str!("../fixtures/e3.json");
/// A three-cycle with all composites in the ideal and `|a| = 1`.
pub const E4: &str = include_str!("../fixtures/e4.json");
/// The relation two-cycle with `|a| = 1`.
pub const E5: &str = include_str!("../fixtures/e5.json");

pub const ALL: [(&str, &str); 5] = [("e1", E1), ("e2", E2), ("e3", E3), ("e4", E4), ("e5", E5)];

/// Parses a built-in fixture; panics on the (impossible) invalid case.
pub fn algebra(json: &str) -> GentleAlgebra {
    GentleAlgebra::from_json(json).expect("built-in fixture is gentle")
}

pub fn by_name(name: &str) -> Option<GentleAlgebra> {
    ALL.iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, j)| algebra(j))
}
