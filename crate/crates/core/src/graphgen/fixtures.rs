//! Reference data: hand-checked walls with their expected verdicts, and the
//! contexts whose crystals are compared against the oracles.

use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::classical::{Condition, ContextJson, LambdaContext, Verdict};
use crate::liealg::Family;
use crate::wall::{Wall, WallJson};

const WALL_SETS: [&str; 4] = [
    include_str!("../../fixtures/a4_0110.json"),
    include_str!("../../fixtures/c3_011.json"),
    include_str!("../../fixtures/b4_0011.json"),
    include_str!("../../fixtures/d4_0012.json"),
];

/// Contexts checked against the Weyl dimension and Freudenthal oracles,
/// as `(family, rank, coefficients on the fundamental weights)`.
pub const ORACLE_CONTEXTS: [(Family, usize, &[i64]); 16] = [
    (Family::A, 2, &[1, 0]),
    (Family::A, 2, &[1, 1]),
    (Family::A, 4, &[0, 1, 1, 0]),
    (Family::C, 3, &[1, 0, 0]),
    (Family::C, 3, &[0, 1, 0]),
    (Family::C, 3, &[0, 1, 1]),
    (Family::B, 3, &[1, 0, 0]),
    (Family::B, 3, &[0, 1, 0]),
    (Family::B, 3, &[0, 0, 2]),
    (Family::B, 3, &[0, 0, 1]),
    (Family::B, 3, &[1, 0, 1]),
    (Family::D, 4, &[1, 0, 0, 0]),
    (Family::D, 4, &[0, 1, 0, 0]),
    (Family::D, 4, &[0, 0, 1, 0]),
    (Family::D, 4, &[0, 0, 0, 1]),
    (Family::D, 4, &[0, 0, 1, 1]),
];

/// One wall with its expected verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCase {
    pub wall: WallJson,
    pub member: bool,
    pub failed: Option<Condition>,
}

/// A context with hand-checked walls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallSet {
    pub name: String,
    pub context: ContextJson,
    pub walls: Vec<WallCase>,
}

/// The verdict computed for one case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseOutcome {
    pub set: String,
    pub case: WallCase,
    pub verdict: Verdict,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.verdict.accepted == self.case.member && self.verdict.failed == self.case.failed
    }
}

/// The built-in wall sets.
pub fn wall_sets() -> Vec<WallSet> {
    WALL_SETS
        .iter()
        .map(|text| serde_json::from_str(text).expect("built-in fixtures parse"))
        .collect()
}

/// Computes the verdict of every case of `set`.
pub fn check_set(set: &WallSet) -> Result<Vec<CaseOutcome>, GraphError> {
    let ctx = LambdaContext::from_json_value(&set.context)?;
    set.walls
        .iter()
        .map(|case| {
            let wall = Wall::from_json_value(&case.wall)?;
            Ok(CaseOutcome {
                set: set.name.clone(),
                case: case.clone(),
                verdict: ctx.member(&wall)?,
            })
        })
        .collect()
}

/// The oracle contexts, built.
pub fn oracle_contexts() -> Result<Vec<LambdaContext>, GraphError> {
    ORACLE_CONTEXTS
        .iter()
        .map(|&(family, rank, lambda)| Ok(LambdaContext::from_coefficients(family, rank, lambda)?))
        .collect()
}
