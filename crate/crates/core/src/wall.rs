//! Young walls of level one.
//!
//! A wall is a stack of coloured blocks built on a ground-state wall.  Every
//! column is cut into unit cells ("slots") whose content is fixed by the
//! affine type, the ground weight and the column parity:
//!
//! * a full unit block of one colour;
//! * a split cell holding two blocks of half thickness, one in the back
//!   layer and one in the front layer (colours 0/1, and `n-1`/`n` for
//!   `D_n^(1)`);
//! * for `B_n^(1)`, a cell of two half-height `n`-blocks.
//!
//! Heights are tracked separately for the back and the front layer, in
//! half-unit steps.  The building rules then read: a column may only grow on
//! top of a complete cell (or fill the missing half of its top cell), and no
//! layer of a column may be higher than the same layer of its right
//! neighbour.  Column 0 is the rightmost column.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::liealg::{AffineDatum, AffineKind, LieError, Weight};

/// Errors raised when constructing or decoding walls.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WallError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("Lambda_{index} is not a level-one ground weight for {kind} of rank {rank}")]
    UnsupportedGround {
        kind: AffineKind,
        rank: usize,
        index: usize,
    },
    #[error("walls belong to different contexts")]
    ContextMismatch,
    #[error("column {column}: fill {fill} does not describe a valid column state")]
    InvalidFill { column: usize, fill: u32 },
    #[error("the encoded columns violate the building rules at column {0}")]
    NotAWall(usize),
    #[error("malformed wall JSON: {0}")]
    Json(String),
}

/// Content of one unit cell of a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    /// A full block of the given colour.
    Full(usize),
    /// Two half-thickness blocks sharing the cell.
    Split { back: usize, front: usize },
    /// Two half-height blocks of the same colour (`n` in `B_n^(1)`).
    Halves(usize),
}

/// How much of the topmost, unfinished cell of a column is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partial {
    /// The column ends on a cell boundary.
    None,
    /// Only the back half of a split cell.
    Back,
    /// Only the front half of a split cell.
    Front,
    /// Only the lower of two half-height blocks.
    Lower,
}

/// State of one column: number of complete cells and the partial top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Column {
    pub units: u32,
    pub partial: Partial,
}

impl Column {
    /// Back and front layer heights in half-units.
    pub fn layers(self) -> (u32, u32) {
        let base = 2 * self.units;
        match self.partial {
            Partial::None => (base, base),
            Partial::Back => (base + 2, base),
            Partial::Front => (base, base + 2),
            Partial::Lower => (base + 1, base + 1),
        }
    }

    /// `true` if both layers of `self` are at least as high as in `other`.
    pub fn covers(self, other: Column) -> bool {
        let (b, f) = self.layers();
        let (ob, of) = other.layers();
        b >= ob && f >= of
    }
}

/// Thickness of a column top after a pattern item is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Thickness {
    Half,
    Full,
}

/// One step of a column's building pattern, counted from the ground.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PatternItem {
    pub color: usize,
    /// Height gained, in half-units.
    pub extent: u32,
    pub top: Thickness,
}

/// Affine type, rank and ground weight shared by all walls of one space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WallContext {
    pub kind: AffineKind,
    pub rank: usize,
    /// Index `i` of the ground weight `Lambda_i`.
    pub ground: usize,
}

impl WallContext {
    pub fn new(kind: AffineKind, rank: usize, ground: usize) -> Result<Self, WallError> {
        let datum = AffineDatum::new(kind, rank)?;
        if !datum.level_one_weights().contains(&ground) {
            return Err(WallError::UnsupportedGround {
                kind,
                rank,
                index: ground,
            });
        }
        Ok(WallContext { kind, rank, ground })
    }

    pub fn affine_datum(&self) -> AffineDatum {
        AffineDatum::new(self.kind, self.rank).expect("context was validated on construction")
    }

    /// Length of one null-root period of a column, in unit cells.
    pub fn period_units(&self) -> u32 {
        let n = self.rank as u32;
        match self.kind {
            AffineKind::Untwisted => n + 1,
            AffineKind::Twisted | AffineKind::B => 2 * n - 2,
            AffineKind::D => 2 * n - 4,
        }
    }

    /// Cell offset of the ground weight inside the `Lambda_0` pattern.
    fn phase(&self) -> u32 {
        let n = self.rank;
        match self.kind {
            AffineKind::B if self.ground == n => (n - 1) as u32,
            AffineKind::D if self.ground >= n - 1 => (n - 2) as u32,
            _ => 0,
        }
    }

    /// Content of cell `unit` (0 = ground cell) of column `col`.
    pub fn slot(&self, col: usize, unit: u32) -> Slot {
        let n = self.rank;
        if self.kind == AffineKind::Untwisted {
            let m = n + 1;
            let c = (self.ground + unit as usize % m + m - col % m) % m;
            return Slot::Full(c);
        }
        let period = self.period_units() as usize;
        let u = (unit + self.phase()) as usize % period;
        let even = col.is_multiple_of(2);
        if u == 0 {
            let one_at_back = even != (self.ground == 1);
            return if one_at_back {
                Slot::Split { back: 1, front: 0 }
            } else {
                Slot::Split { back: 0, front: 1 }
            };
        }
        match self.kind {
            AffineKind::B | AffineKind::Twisted => {
                if u < n - 1 {
                    Slot::Full(u + 1)
                } else if u == n - 1 {
                    if self.kind == AffineKind::B {
                        Slot::Halves(n)
                    } else {
                        Slot::Full(n)
                    }
                } else {
                    Slot::Full(2 * n - 1 - u)
                }
            }
            AffineKind::D => {
                if u < n - 2 {
                    Slot::Full(u + 1)
                } else if u == n - 2 {
                    let minus_at_back = even != (self.ground == n - 1);
                    if minus_at_back {
                        Slot::Split {
                            back: n - 1,
                            front: n,
                        }
                    } else {
                        Slot::Split {
                            back: n,
                            front: n - 1,
                        }
                    }
                } else {
                    Slot::Full(2 * n - 3 - u)
                }
            }
            AffineKind::Untwisted => unreachable!(),
        }
    }

    /// State of a column of the ground-state wall.
    pub fn ground_column(&self) -> Column {
        let partial = match self.kind {
            AffineKind::Untwisted => Partial::None,
            AffineKind::B if self.ground == self.rank => Partial::Lower,
            _ => Partial::Back,
        };
        Column { units: 0, partial }
    }

    /// Pattern items of one cell, in building order, skipping the part that
    /// belongs to the ground.
    fn cell_items(&self, col: usize, unit: u32) -> Vec<PatternItem> {
        let ground = unit == 0;
        let mut items = Vec::with_capacity(2);
        match self.slot(col, unit) {
            Slot::Full(c) => items.push(PatternItem {
                color: c,
                extent: 2,
                top: Thickness::Full,
            }),
            Slot::Split { back, front } => {
                if !ground || self.ground_column().partial != Partial::Back {
                    items.push(PatternItem {
                        color: back,
                        extent: 2,
                        top: Thickness::Half,
                    });
                }
                items.push(PatternItem {
                    color: front,
                    extent: 0,
                    top: Thickness::Full,
                });
            }
            Slot::Halves(c) => {
                if !ground || self.ground_column().partial != Partial::Lower {
                    items.push(PatternItem {
                        color: c,
                        extent: 1,
                        top: Thickness::Full,
                    });
                }
                items.push(PatternItem {
                    color: c,
                    extent: 1,
                    top: Thickness::Full,
                });
            }
        }
        items
    }

    /// The `pos`-th item (0-based) placed above the ground in column `col`.
    ///
    /// Split cells are listed back half first; walls may also hold the front
    /// half alone (see [`Partial::Front`]).
    pub fn pattern_item(&self, col: usize, pos: usize) -> PatternItem {
        let mut remaining = pos;
        let mut unit = 0;
        loop {
            let items = self.cell_items(col, unit);
            if remaining < items.len() {
                return items[remaining];
            }
            remaining -= items.len();
            unit += 1;
        }
    }

    /// Number of items in one null-root period of a column.
    pub fn period_items(&self, col: usize) -> usize {
        (1..=self.period_units())
            .map(|u| self.cell_items(col, u).len())
            .sum()
    }

    /// Number of items above the ground in a column state.
    fn items_in(&self, col: usize, state: Column) -> u32 {
        let mut count: u32 = (0..state.units)
            .map(|u| self.cell_items(col, u).len() as u32)
            .sum();
        let ground = self.ground_column();
        if state.partial != Partial::None && !(state.units == 0 && state.partial == ground.partial)
        {
            count += 1;
        }
        count
    }

    /// Inverse of `items_in`: the column state holding `items` items, with
    /// the front half chosen for a half-filled split top if `front_only`.
    fn column_from_items(
        &self,
        col: usize,
        items: u32,
        front_only: bool,
    ) -> Result<Column, WallError> {
        let invalid = WallError::InvalidFill {
            column: col,
            fill: items,
        };
        let ground = self.ground_column();
        let mut remaining = items;
        let mut unit = 0;
        loop {
            let len = self.cell_items(col, unit).len() as u32;
            if remaining >= len {
                remaining -= len;
                unit += 1;
                if remaining == 0 && !front_only {
                    return Ok(Column {
                        units: unit,
                        partial: Partial::None,
                    });
                }
                continue;
            }
            if remaining == 0 {
                // Only reachable for the ground cell.
                return if front_only {
                    Err(invalid)
                } else {
                    Ok(ground)
                };
            }
            // remaining == 1 inside a two-item cell.
            let partial = match self.slot(col, unit) {
                Slot::Split { .. } if front_only => Partial::Front,
                Slot::Split { .. } => Partial::Back,
                Slot::Halves(_) if !front_only => Partial::Lower,
                _ => return Err(invalid),
            };
            if unit == 0 {
                return Err(invalid);
            }
            return Ok(Column {
                units: unit,
                partial,
            });
        }
    }

    /// Adds a `color` block to a column state, following the pattern and the
    /// rule that nothing is stacked on a half-thickness top.  Neighbouring
    /// columns are not consulted.
    fn grow(&self, col: usize, state: Column, color: usize) -> Option<Column> {
        let slot = self.slot(col, state.units);
        let next = match (state.partial, slot) {
            (Partial::None, Slot::Full(c)) if c == color => Column {
                units: state.units + 1,
                partial: Partial::None,
            },
            (Partial::None, Slot::Split { back, .. }) if back == color => Column {
                units: state.units,
                partial: Partial::Back,
            },
            (Partial::None, Slot::Split { front, .. }) if front == color => Column {
                units: state.units,
                partial: Partial::Front,
            },
            (Partial::None, Slot::Halves(c)) if c == color => Column {
                units: state.units,
                partial: Partial::Lower,
            },
            (Partial::Back, Slot::Split { front, .. }) if front == color => Column {
                units: state.units + 1,
                partial: Partial::None,
            },
            (Partial::Front, Slot::Split { back, .. }) if back == color => Column {
                units: state.units + 1,
                partial: Partial::None,
            },
            (Partial::Lower, Slot::Halves(c)) if c == color => Column {
                units: state.units + 1,
                partial: Partial::None,
            },
            _ => return None,
        };
        Some(next)
    }

    /// Removes a `color` block from the top of a column state, never digging
    /// into the ground.  Neighbouring columns are not consulted.
    fn shrink(&self, col: usize, state: Column, color: usize) -> Option<Column> {
        let next = match state.partial {
            Partial::None => {
                if state.units == 0 {
                    return None;
                }
                let below = state.units - 1;
                match self.slot(col, below) {
                    Slot::Full(c) if c == color => Column {
                        units: below,
                        partial: Partial::None,
                    },
                    Slot::Split { back, .. } if back == color => Column {
                        units: below,
                        partial: Partial::Front,
                    },
                    Slot::Split { front, .. } if front == color => Column {
                        units: below,
                        partial: Partial::Back,
                    },
                    Slot::Halves(c) if c == color => Column {
                        units: below,
                        partial: Partial::Lower,
                    },
                    _ => return None,
                }
            }
            Partial::Back => match self.slot(col, state.units) {
                Slot::Split { back, .. } if back == color => Column {
                    units: state.units,
                    partial: Partial::None,
                },
                _ => return None,
            },
            Partial::Front => match self.slot(col, state.units) {
                Slot::Split { front, .. } if front == color => Column {
                    units: state.units,
                    partial: Partial::None,
                },
                _ => return None,
            },
            Partial::Lower => match self.slot(col, state.units) {
                Slot::Halves(c) if c == color => Column {
                    units: state.units,
                    partial: Partial::None,
                },
                _ => return None,
            },
        };
        if next.covers(self.ground_column()) {
            Some(next)
        } else {
            None
        }
    }

    /// Colour of every block of a column state that lies above the ground.
    fn colors_in(&self, col: usize, state: Column, counts: &mut [i64]) {
        for unit in 0..state.units {
            for item in self.cell_items(col, unit) {
                counts[item.color] += 1;
            }
        }
        let ground = self.ground_column();
        if state.units == 0 && state.partial == ground.partial {
            return;
        }
        match (state.partial, self.slot(col, state.units)) {
            (Partial::None, _) => {}
            (Partial::Back, Slot::Split { back, .. }) => counts[back] += 1,
            (Partial::Front, Slot::Split { front, .. }) => counts[front] += 1,
            (Partial::Lower, Slot::Halves(c)) => counts[c] += 1,
            _ => unreachable!("partial top does not match the pattern"),
        }
    }
}

impl fmt::Display for WallContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={}] on Lambda_{}", self.kind, self.rank, self.ground)
    }
}

/// A Young wall: the context plus the columns that differ from the ground
/// state (column 0 first; all further columns are ground columns).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Wall {
    ctx: WallContext,
    cols: Vec<Column>,
}

impl PartialOrd for Wall {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Wall {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .cmp(&other.ctx)
            .then_with(|| self.cols.len().cmp(&other.cols.len()))
            .then_with(|| self.cols.cmp(&other.cols))
    }
}

impl Wall {
    /// The ground-state wall of the context.
    pub fn ground_state(ctx: WallContext) -> Wall {
        Wall {
            ctx,
            cols: Vec::new(),
        }
    }

    /// Builds a wall from explicit column states, checking the building rules.
    pub fn from_columns(ctx: WallContext, cols: Vec<Column>) -> Result<Wall, WallError> {
        let wall = Wall { ctx, cols }.trimmed();
        wall.validate()?;
        Ok(wall)
    }

    fn trimmed(mut self) -> Wall {
        let ground = self.ctx.ground_column();
        while self.cols.last() == Some(&ground) {
            self.cols.pop();
        }
        self
    }

    fn validate(&self) -> Result<(), WallError> {
        let ground = self.ctx.ground_column();
        for (k, &c) in self.cols.iter().enumerate() {
            if !c.covers(ground) {
                return Err(WallError::NotAWall(k));
            }
            // The partial top must be compatible with the cell it sits in.
            let ok = matches!(
                (c.partial, self.ctx.slot(k, c.units)),
                (Partial::None, _)
                    | (Partial::Back | Partial::Front, Slot::Split { .. })
                    | (Partial::Lower, Slot::Halves(_))
            );
            if !ok || (k > 0 && !self.column(k - 1).covers(c)) {
                return Err(WallError::NotAWall(k));
            }
        }
        Ok(())
    }

    pub fn context(&self) -> WallContext {
        self.ctx
    }

    /// State of column `k` (ground state beyond the stored columns).
    pub fn column(&self, k: usize) -> Column {
        self.cols
            .get(k)
            .copied()
            .unwrap_or_else(|| self.ctx.ground_column())
    }

    /// The stored (non-ground) columns, column 0 first.
    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    /// Number of stored columns; every column at or beyond this index is a
    /// ground column.
    pub fn width(&self) -> usize {
        self.cols.len()
    }

    fn with_column(&self, k: usize, state: Column) -> Wall {
        let mut cols = self.cols.clone();
        let ground = self.ctx.ground_column();
        if cols.len() <= k {
            cols.resize(k + 1, ground);
        }
        cols[k] = state;
        Wall {
            ctx: self.ctx,
            cols,
        }
        .trimmed()
    }

    /// Adds a `color` block on column `col` if the building rules allow it,
    /// without checking properness of the result.
    pub fn grow(&self, col: usize, color: usize) -> Option<Wall> {
        let next = self.ctx.grow(col, self.column(col), color)?;
        if col > 0 && !self.column(col - 1).covers(next) {
            return None;
        }
        Some(self.with_column(col, next))
    }

    /// Removes a `color` block from the top of column `col` if the building
    /// rules allow it, without checking properness of the result.
    pub fn shrink(&self, col: usize, color: usize) -> Option<Wall> {
        let next = self.ctx.shrink(col, self.column(col), color)?;
        if !next.covers(self.column(col + 1)) {
            return None;
        }
        Some(self.with_column(col, next))
    }

    /// Adds a `color` block on column `col`; `None` unless the result is a
    /// proper Young wall.
    pub fn add_block(&self, col: usize, color: usize) -> Option<Wall> {
        self.grow(col, color).filter(Wall::is_proper)
    }

    /// Removes a `color` block from the top of column `col`; `None` unless
    /// the result is a proper Young wall.
    pub fn remove_block(&self, col: usize, color: usize) -> Option<Wall> {
        self.shrink(col, color).filter(Wall::is_proper)
    }

    /// Colours that can currently be removed from the top of column `col`.
    pub fn removable_colors(&self, col: usize) -> Vec<usize> {
        (0..=self.ctx.rank)
            .filter(|&c| self.remove_block(col, c).is_some())
            .collect()
    }

    /// A column is full when its height is a whole number of cells and its
    /// top has full thickness; a wall is proper when no two full columns
    /// have the same height.  Every `A_n^(1)` wall is proper.
    pub fn is_proper(&self) -> bool {
        if self.ctx.kind == AffineKind::Untwisted {
            return true;
        }
        let mut heights: Vec<u32> = self
            .cols
            .iter()
            .filter(|c| c.partial == Partial::None)
            .map(|c| c.units)
            .collect();
        heights.sort_unstable();
        heights.windows(2).all(|w| w[0] != w[1])
    }

    /// A wall is reduced when no column can shed a whole null-root period
    /// from its top and remain a proper Young wall.
    pub fn is_reduced(&self) -> bool {
        (0..self.cols.len()).all(|k| self.without_period(k).is_none())
    }

    /// Column `k` with one null-root period removed from its top, if that
    /// is a legal proper wall.
    pub fn without_period(&self, k: usize) -> Option<Wall> {
        let period = self.ctx.period_units();
        let state = self.column(k);
        if state.units < period {
            return None;
        }
        let next = Column {
            units: state.units - period,
            partial: state.partial,
        };
        if !next.covers(self.ctx.ground_column()) || !next.covers(self.column(k + 1)) {
            return None;
        }
        Some(self.with_column(k, next)).filter(Wall::is_proper)
    }

    /// Number of blocks of each colour `0..=n` above the ground.
    pub fn color_counts(&self) -> Vec<i64> {
        let mut counts = vec![0i64; self.ctx.rank + 1];
        for (k, &c) in self.cols.iter().enumerate() {
            self.ctx.colors_in(k, c, &mut counts);
        }
        counts
    }

    /// Number of blocks above the ground (half blocks count one each).
    pub fn block_count(&self) -> i64 {
        self.color_counts().iter().sum()
    }

    /// Classical weight: the ground weight minus the simple roots of all
    /// blocks, paired with `h_1, ..., h_n`.
    pub fn classical_weight(&self) -> Weight {
        let datum = self.ctx.affine_datum();
        self.classical_weight_with(&datum)
    }

    /// As [`Wall::classical_weight`] with a precomputed affine datum.
    pub fn classical_weight_with(&self, datum: &AffineDatum) -> Weight {
        let mut w = datum.classical_fundamental(self.ctx.ground);
        for (color, count) in self.color_counts().into_iter().enumerate() {
            if count != 0 {
                w.add_scaled(&datum.classical_root(color), -count);
            }
        }
        w
    }

    /// `true` if every layer of every column of `self` reaches at least as
    /// high as in `other`.
    pub fn contains(&self, other: &Wall) -> Result<bool, WallError> {
        if self.ctx != other.ctx {
            return Err(WallError::ContextMismatch);
        }
        let width = self.cols.len().max(other.cols.len());
        Ok((0..width).all(|k| self.column(k).covers(other.column(k))))
    }

    /// Encoded form: per-column item counts plus the columns whose top cell
    /// holds only its front half.
    pub fn to_json_value(&self) -> WallJson {
        let fills = self
            .cols
            .iter()
            .enumerate()
            .map(|(k, &c)| self.ctx.items_in(k, c))
            .collect();
        let front_only = self
            .cols
            .iter()
            .enumerate()
            .filter(|(_, c)| c.partial == Partial::Front)
            .map(|(k, _)| k)
            .collect();
        WallJson {
            kind: self.ctx.kind,
            n: self.ctx.rank,
            lambda_index: self.ctx.ground,
            fills,
            front_only,
        }
    }

    pub fn from_json_value(json: &WallJson) -> Result<Wall, WallError> {
        let ctx = WallContext::new(json.kind, json.n, json.lambda_index)?;
        let cols = json
            .fills
            .iter()
            .enumerate()
            .map(|(k, &fill)| ctx.column_from_items(k, fill, json.front_only.contains(&k)))
            .collect::<Result<Vec<_>, _>>()?;
        for &k in &json.front_only {
            if k >= cols.len() {
                return Err(WallError::InvalidFill { column: k, fill: 0 });
            }
        }
        let wall = Wall::from_columns(ctx, cols)?;
        if wall.to_json_value() != *json {
            // Untrimmed or otherwise non-canonical input.
            return Err(WallError::Json("encoding is not canonical".into()));
        }
        Ok(wall)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("wall encoding is serializable")
    }

    pub fn from_json(text: &str) -> Result<Wall, WallError> {
        let json: WallJson =
            serde_json::from_str(text).map_err(|e| WallError::Json(e.to_string()))?;
        Wall::from_json_value(&json)
    }

    /// Rows of text drawing the wall, top row first: each column shows the
    /// colour of its topmost block at every height (`.` for ground).
    pub fn sketch(&self) -> String {
        let width = self.cols.len().max(1);
        let height = (0..width)
            .map(|k| self.column(k).layers().0.max(self.column(k).layers().1))
            .max()
            .unwrap_or(0)
            .div_ceil(2) as usize;
        let mut rows = Vec::new();
        for level in (0..height.max(1)).rev() {
            let mut row = String::new();
            for k in (0..width).rev() {
                let c = self.column(k);
                let cell = self.ctx.slot(k, level as u32);
                let filled = (level as u32) < c.units
                    || ((level as u32) == c.units && c.partial != Partial::None);
                let text = if !filled {
                    "  ".to_string()
                } else if level as u32 == 0
                    && c.units == 0
                    && c.partial == self.ctx.ground_column().partial
                {
                    " .".to_string()
                } else {
                    match cell {
                        Slot::Full(x) => format!("{x:>2}"),
                        Slot::Split { back, front } => {
                            if (level as u32) < c.units {
                                format!("{back}{front}")
                            } else if c.partial == Partial::Back {
                                format!("{back}'")
                            } else {
                                format!("'{front}")
                            }
                        }
                        Slot::Halves(x) => {
                            if (level as u32) < c.units {
                                format!("{x}{x}")
                            } else {
                                format!("{x}_")
                            }
                        }
                    }
                };
                row.push_str(&text);
                row.push(' ');
            }
            rows.push(row.trim_end().to_string());
        }
        rows.join("\n")
    }
}

/// JSON encoding of a wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallJson {
    #[serde(rename = "type")]
    pub kind: AffineKind,
    pub n: usize,
    pub lambda_index: usize,
    /// Items above the ground per column, column 0 first, trimmed.
    pub fills: Vec<u32>,
    /// Columns whose top split cell holds only its front half.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub front_only: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(kind: AffineKind, n: usize, ground: usize) -> WallContext {
        WallContext::new(kind, n, ground).unwrap()
    }

    fn all_contexts() -> Vec<WallContext> {
        let mut out = Vec::new();
        for kind in AffineKind::all() {
            for n in kind.classical().min_rank()..=6 {
                for g in AffineDatum::new(kind, n).unwrap().level_one_weights() {
                    out.push(ctx(kind, n, g));
                }
            }
        }
        out
    }

    #[test]
    fn b3_column_zero_pattern() {
        let c = ctx(AffineKind::B, 3, 0);
        let colors: Vec<usize> = (0..8).map(|p| c.pattern_item(0, p).color).collect();
        // Ground cell front half first, then 2, the two half-height 3s, 2,
        // and the next split cell.
        assert_eq!(colors, vec![0, 2, 3, 3, 2, 1, 0, 2]);
    }

    #[test]
    fn periods_match_marks() {
        for c in all_contexts() {
            let datum = c.affine_datum();
            for col in 0..4 {
                let per = c.period_items(col);
                let start = c.cell_items(col, 0).len();
                for base in [start, start + per, start + 3] {
                    let mut counts = vec![0i64; c.rank + 1];
                    for p in base..base + per {
                        counts[c.pattern_item(col, p).color] += 1;
                        assert_eq!(c.pattern_item(col, p), c.pattern_item(col, p + per));
                    }
                    assert_eq!(counts, datum.marks, "{c} col {col}");
                }
            }
        }
    }

    #[test]
    fn ground_states() {
        for c in all_contexts() {
            let g = Wall::ground_state(c);
            assert!(g.is_proper());
            assert!(g.is_reduced());
            let datum = c.affine_datum();
            assert_eq!(g.classical_weight(), datum.classical_fundamental(c.ground));
            // Only column 0 accepts a block, and only of colour Lambda's index.
            let addable: Vec<(usize, usize)> = (0..3)
                .flat_map(|k| (0..=c.rank).map(move |i| (k, i)))
                .filter(|&(k, i)| g.add_block(k, i).is_some())
                .collect();
            assert_eq!(addable, vec![(0, c.ground)], "{c}");
        }
    }

    #[test]
    fn a_type_is_always_proper() {
        let c = ctx(AffineKind::Untwisted, 3, 0);
        let w = Wall::ground_state(c)
            .add_block(0, 0)
            .unwrap()
            .add_block(1, 3)
            .unwrap();
        assert_eq!(w.column(0).units, w.column(1).units);
        assert!(w.is_proper());
    }

    #[test]
    fn improper_b_wall_is_rejected() {
        let c = ctx(AffineKind::B, 3, 0);
        let w = Wall::ground_state(c).add_block(0, 0).unwrap();
        // Column 1 would reach the same full height as column 0.
        assert!(w.grow(1, 1).is_some());
        assert!(w.add_block(1, 1).is_none());
        assert!(!w.grow(1, 1).unwrap().is_proper());
    }

    #[test]
    fn free_space_rule() {
        let c = ctx(AffineKind::Untwisted, 2, 0);
        let g = Wall::ground_state(c);
        assert!(g.add_block(1, 2).is_none());
        assert!(g.add_block(3, 1).is_none());
    }

    #[test]
    fn add_then_remove() {
        let c = ctx(AffineKind::B, 3, 0);
        let g = Wall::ground_state(c);
        let w = g.add_block(0, 0).unwrap();
        assert_eq!(w.remove_block(0, 0).unwrap(), g);
        assert!(g.remove_block(0, 1).is_none());
        assert!(g.add_block(0, 1).is_none());
    }

    #[test]
    fn removing_a_full_period_breaks_reducedness() {
        let c = ctx(AffineKind::B, 3, 0);
        let mut w = Wall::ground_state(c);
        for color in [0, 2, 3, 3, 2, 1, 0] {
            w = w.add_block(0, color).unwrap();
        }
        assert!(!w.is_reduced());
        let a = ctx(AffineKind::Untwisted, 2, 0);
        let mut w = Wall::ground_state(a);
        for color in [0, 1, 2] {
            w = w.add_block(0, color).unwrap();
        }
        assert!(!w.is_reduced());
        assert!(w.without_period(0).unwrap() == Wall::ground_state(a));
    }

    #[test]
    fn json_round_trip() {
        let c = ctx(AffineKind::D, 4, 4);
        let w = Wall::ground_state(c).add_block(0, 4).unwrap();
        let text = w.to_json();
        assert_eq!(text, r#"{"type":"D1","n":4,"lambda_index":4,"fills":[1]}"#);
        assert_eq!(Wall::from_json(&text).unwrap(), w);
        let c = ctx(AffineKind::Twisted, 3, 1);
        let mut w = Wall::ground_state(c);
        for color in [1, 2, 3, 2] {
            w = w.add_block(0, color).unwrap();
        }
        let w = w.add_block(0, 1).unwrap();
        assert_eq!(w.column(0).partial, Partial::Front);
        let text = w.to_json();
        assert!(text.contains("front_only"));
        assert_eq!(Wall::from_json(&text).unwrap(), w);
        assert!(Wall::from_json(r#"{"type":"B1","n":3,"lambda_index":0,"fills":[0]}"#).is_err());
        assert!(Wall::from_json(r#"{"type":"B1","n":3,"lambda_index":0,"fills":[1,2]}"#).is_err());
    }

    #[test]
    fn containment() {
        let c = ctx(AffineKind::B, 3, 1);
        let g = Wall::ground_state(c);
        let w = g.add_block(0, 1).unwrap();
        assert!(w.contains(&g).unwrap());
        assert!(!g.contains(&w).unwrap());
        assert!(w.contains(&w).unwrap());
        let other = Wall::ground_state(ctx(AffineKind::B, 3, 0));
        assert_eq!(w.contains(&other), Err(WallError::ContextMismatch));
    }

    #[test]
    fn unsupported_ground() {
        assert!(WallContext::new(AffineKind::Twisted, 3, 2).is_err());
        assert!(WallContext::new(AffineKind::B, 2, 0).is_err());
        assert!(WallContext::new(AffineKind::D, 4, 2).is_err());
    }
}
