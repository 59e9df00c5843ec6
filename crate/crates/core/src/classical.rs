//! Classical crystals inside level-one wall spaces.
//!
//! Given a dominant weight `lambda` of `A_n`, `B_n`, `C_n` or `D_n`, this
//! module picks the level-one ground weight, lays out one column group per
//! `omega` part (plus a spin group for `lambda_n`-type parts), builds the
//! highest weight wall `H` and lowest weight wall `L`, and decides which walls
//! between them belong to the crystal.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::crystal;
use crate::liealg::{
    choose_level_one, decompose, DominantWeight, Family, LieError, OmegaDecomposition, Spin,
    Weight,
};
use crate::wall::{Column, Partial, Slot, Wall, WallContext, WallError};

pub mod membership;

pub use membership::{Condition, Verdict};

/// Errors raised while building a classical context.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Wall(#[from] WallError),
    #[error("highest weight wall construction failed: {0}")]
    Construction(String),
    #[error("malformed context JSON: {0}")]
    Json(String),
}

/// The columns occupied by one `omega` part (or by the spin part).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColumnGroup {
    /// The `omega` index `i_k`; for the spin group, the fundamental weight
    /// index (`n` or `n-1`).
    pub part: usize,
    /// Rightmost column of the group.
    pub start: usize,
    /// Number of columns.
    pub width: usize,
    /// Height (in cells) of the null-root padding under the group.
    pub padding: u32,
}

impl ColumnGroup {
    pub fn columns(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.width
    }
}

/// Everything derived from `(family, n, lambda)`.
#[derive(Debug, Clone)]
pub struct LambdaContext {
    pub family: Family,
    pub rank: usize,
    pub lambda: DominantWeight,
    pub decomposition: OmegaDecomposition,
    pub walls: WallContext,
    /// Groups of the `omega` parts, `k = 1..t` from right to left.
    pub groups: Vec<ColumnGroup>,
    /// The group of the spin part, left of all `omega` groups.
    pub spin_group: Option<ColumnGroup>,
    highest: Wall,
    lowest: Wall,
}

/// JSON form of a context: family, rank and fundamental-weight coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextJson {
    pub family: Family,
    pub n: usize,
    pub lambda: Vec<u32>,
}

impl LambdaContext {
    /// Builds the context, including `H` and `L`.
    pub fn new(
        family: Family,
        rank: usize,
        lambda: DominantWeight,
    ) -> Result<Self, ClassicalError> {
        family.check_rank(rank)?;
        let decomposition = decompose(family, rank, &lambda)?;
        let ground = choose_level_one(family, rank, &decomposition);
        let walls = WallContext::new(family.affine_kind(), rank, ground)?;
        let (groups, spin_group) = layout(family, rank, &decomposition, walls.period_units());
        let highest = build_highest(family, rank, walls, &groups, &decomposition)?;
        let lowest = descend(&highest);
        let ctx = LambdaContext {
            family,
            rank,
            lambda,
            decomposition,
            walls,
            groups,
            spin_group,
            highest,
            lowest,
        };
        ctx.check_extremal_walls()?;
        Ok(ctx)
    }

    /// Convenience constructor from raw coefficients.
    pub fn from_coefficients(
        family: Family,
        rank: usize,
        coefficients: &[i64],
    ) -> Result<Self, ClassicalError> {
        LambdaContext::new(family, rank, DominantWeight::new(coefficients)?)
    }

    pub fn to_json_value(&self) -> ContextJson {
        ContextJson {
            family: self.family,
            n: self.rank,
            lambda: self.lambda.coefficients().to_vec(),
        }
    }

    pub fn from_json_value(json: &ContextJson) -> Result<Self, ClassicalError> {
        LambdaContext::new(
            json.family,
            json.n,
            DominantWeight::from_unsigned(json.lambda.clone()),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("context encoding is serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ClassicalError> {
        let json: ContextJson =
            serde_json::from_str(text).map_err(|e| ClassicalError::Json(e.to_string()))?;
        LambdaContext::from_json_value(&json)
    }

    /// The highest weight wall `H`.
    pub fn highest(&self) -> &Wall {
        &self.highest
    }

    /// The lowest weight wall `L`.
    pub fn lowest(&self) -> &Wall {
        &self.lowest
    }

    /// Index of the ground weight `Lambda_i`.
    pub fn ground(&self) -> usize {
        self.walls.ground
    }

    /// The classical colours `1..=n`.
    pub fn colors(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    fn check_extremal_walls(&self) -> Result<(), ClassicalError> {
        let fail = |msg: String| Err(ClassicalError::Construction(msg));
        let h = &self.highest;
        if h.classical_weight() != self.lambda.as_weight() {
            return fail(format!(
                "weight {} differs from {}",
                h.classical_weight(),
                self.lambda.as_weight()
            ));
        }
        if !h.is_proper() || !h.is_reduced() {
            return fail("the highest weight wall is not reduced and proper".into());
        }
        if let Some(i) = self.colors().find(|&i| crystal::e(h, i).is_some()) {
            return fail(format!("e_{i} does not annihilate the highest weight wall"));
        }
        let mut lowest = self.lambda.as_weight();
        for x in &mut lowest.0 {
            *x = -*x;
        }
        let w0 = self.lowest.classical_weight();
        // The lowest weight is -w0(lambda); only its dominance-reversed form
        // is checked here: pairing with every coroot is nonpositive.
        if w0.0.iter().any(|&x| x > 0) {
            return fail(format!("lowest wall weight {w0} is not antidominant"));
        }
        Ok(())
    }

    /// `F(lambda)`: reduced proper walls lying between `H` and `L`.
    pub fn in_f(&self, wall: &Wall) -> Result<bool, ClassicalError> {
        if wall.context() != self.walls {
            return Err(WallError::ContextMismatch.into());
        }
        Ok(wall.is_proper()
            && wall.is_reduced()
            && wall.contains(&self.highest)?
            && self.lowest.contains(wall)?)
    }

    /// Every wall of `F(lambda)`, sorted.  Exponential in general; meant for
    /// small contexts and tests.
    pub fn enumerate_f(&self) -> Vec<Wall> {
        let width = self.lowest.width().max(self.highest.width()) + 1;
        let mut seen: HashSet<Wall> = HashSet::new();
        let mut stack = vec![self.highest.clone()];
        seen.insert(self.highest.clone());
        while let Some(w) = stack.pop() {
            for col in 0..width {
                for color in 0..=self.rank {
                    if let Some(next) = w.grow(col, color) {
                        if self.lowest.contains(&next).unwrap_or(false) && seen.insert(next.clone())
                        {
                            stack.push(next);
                        }
                    }
                }
            }
        }
        let out: BTreeSet<Wall> = seen
            .into_iter()
            .filter(|w| w.is_proper() && w.is_reduced())
            .collect();
        out.into_iter().collect()
    }

    /// Exact reference predicate: `wall` lies in `F(lambda)` and is joined to
    /// `H` by classical Kashiwara operators.  Raising with `e_i` until no
    /// operator applies reaches the highest weight wall of the component.
    pub fn in_component_of_highest(&self, wall: &Wall) -> Result<bool, ClassicalError> {
        if !self.in_f(wall)? {
            return Ok(false);
        }
        Ok(ascend(wall) == self.highest)
    }

    /// Decides membership with the geometric conditions.
    pub fn member(&self, wall: &Wall) -> Result<Verdict, ClassicalError> {
        membership::member(self, wall)
    }
}

impl fmt::Display for LambdaContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{} lambda=(", self.family, self.rank)?;
        for (k, c) in self.lambda.coefficients().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ") on Lambda_{}", self.walls.ground)
    }
}

/// Applies `e_i` (smallest applicable `i` first) until none applies.
pub fn ascend(wall: &Wall) -> Wall {
    let rank = wall.context().rank;
    let mut w = wall.clone();
    while let Some(next) = (1..=rank).find_map(|i| crystal::e(&w, i)) {
        w = next;
    }
    w
}

/// Applies `f_i` (smallest applicable `i` first) until none applies.  In a
/// finite crystal this ends at the lowest weight element of the component.
pub fn descend(wall: &Wall) -> Wall {
    let rank = wall.context().rank;
    let mut w = wall.clone();
    while let Some(next) = (1..=rank).find_map(|i| crystal::f(&w, i)) {
        w = next;
    }
    w
}

/// Number of columns spanned by the group of `omega_i`.
fn group_width(family: Family, rank: usize, part: usize) -> usize {
    match family {
        Family::D if part > rank => rank,
        _ => part,
    }
}

/// Column groups: `omega_{i_1}` rightmost, then leftwards, then the spin
/// group.  Padding depths are in cells.
fn layout(
    family: Family,
    rank: usize,
    dec: &OmegaDecomposition,
    period: u32,
) -> (Vec<ColumnGroup>, Option<ColumnGroup>) {
    let t = dec.parts.len();
    let spin = dec.spin != Spin::None;
    let mut groups = Vec::with_capacity(t);
    let mut start = 0;
    for (k, &part) in dec.parts.iter().enumerate() {
        let width = group_width(family, rank, part);
        let padding = match family {
            Family::A => 0,
            _ => (t - 1 - k) as u32 * period + if spin { period / 2 } else { 0 },
        };
        groups.push(ColumnGroup {
            part,
            start,
            width,
            padding,
        });
        start += width;
    }
    if family == Family::A {
        // Type A has no split cells to absorb a phase shift: every group is
        // lifted by the least height that puts it in the phase of its own
        // ground weight while keeping heights weakly decreasing leftward.
        let m = (rank + 1) as u32;
        let mut above = 0u32;
        let mut floor = 0u32;
        for g in groups.iter_mut().rev() {
            let target = (m - above % m) % m;
            let mut h = target;
            while h < floor {
                h += m;
            }
            g.padding = h;
            floor = h;
            above += g.part as u32;
        }
    }
    let spin_group = match dec.spin {
        Spin::None => None,
        s => Some(ColumnGroup {
            part: if s == Spin::Minus { rank - 1 } else { rank },
            start,
            width: rank,
            padding: 0,
        }),
    };
    (groups, spin_group)
}

/// Back colour (0 or 1) of the ground cell of local column `j` in the ground
/// state that `omega_i` would use on its own.
fn isolated_back_color(family: Family, rank: usize, part: usize, j: usize) -> usize {
    let weight = if family == Family::D && part > rank {
        rank
    } else {
        part
    };
    let odd = weight % 2 == 1;
    if j.is_multiple_of(2) != odd {
        1
    } else {
        0
    }
}

/// Column state whose top is the half of colour `color` in the split cell at
/// level `units`.
fn half_top(walls: &WallContext, col: usize, units: u32, color: usize) -> Option<Column> {
    match walls.slot(col, units) {
        Slot::Split { back, .. } if back == color => Some(Column {
            units,
            partial: Partial::Back,
        }),
        Slot::Split { front, .. } if front == color => Some(Column {
            units,
            partial: Partial::Front,
        }),
        _ => None,
    }
}

fn build_highest(
    family: Family,
    rank: usize,
    walls: WallContext,
    groups: &[ColumnGroup],
    dec: &OmegaDecomposition,
) -> Result<Wall, ClassicalError> {
    let _ = dec;
    let mut cols: Vec<Column> = Vec::new();
    let ground = walls.ground_column();
    let n = rank;
    for g in groups {
        for j in 0..g.width {
            let col = g.start + j;
            let state = if family == Family::A {
                Column {
                    units: g.padding,
                    partial: Partial::None,
                }
            } else {
                let i = g.part;
                let steps = group_width(family, rank, i);
                if family == Family::D && i >= n && j == 0 {
                    // omega_n / omega_{n+1}: the staircase ends in one half
                    // of the (n-1, n) cell.
                    let color = if i == n { n - 1 } else { n };
                    half_top(&walls, col, g.padding + (n - 2) as u32, color).ok_or_else(|| {
                        ClassicalError::Construction(format!(
                            "column {col} has no {color}-half at the expected height"
                        ))
                    })?
                } else if j + 1 < steps {
                    Column {
                        units: g.padding + (steps - 1 - j) as u32,
                        partial: Partial::None,
                    }
                } else {
                    let color = isolated_back_color(family, rank, i, j);
                    let state = half_top(&walls, col, g.padding, color).ok_or_else(|| {
                        ClassicalError::Construction(format!(
                            "column {col} has no {color}-half at height {}",
                            g.padding
                        ))
                    })?;
                    if g.padding == 0 && state != ground {
                        return Err(ClassicalError::Construction(format!(
                            "column {col}: ground phase does not match omega_{i}"
                        )));
                    }
                    state
                }
            };
            if cols.len() <= col {
                cols.resize(col + 1, ground);
            }
            cols[col] = state;
        }
    }
    Ok(Wall::from_columns(walls, cols)?)
}

/// The weight `lambda` as a classical weight vector.
pub fn weight_of(lambda: &DominantWeight) -> Weight {
    lambda.as_weight()
}
