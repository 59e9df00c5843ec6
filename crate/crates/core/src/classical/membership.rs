//! Membership conditions cutting the crystal out of `F(lambda)`.
//!
//! Walls are cut into parts: sets of blocks inside one column group,
//! addressed by local column (0 = rightmost column of the group) and row
//! (cells above the group's null-root padding).  Parts are compared after the
//! normalisations the conditions call for: reflection across a row and
//! shifting every row to the right.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ClassicalError, ColumnGroup, LambdaContext};
use crate::liealg::{Family, Spin};
use crate::wall::{Column, Partial, Slot, Wall, WallContext};

/// The named conditions a wall of `F(lambda)` must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// Not reduced, not proper, or not between `H` and `L`.
    OutsideF,
    Y1,
    Y2,
    Y3,
    Y4,
    Y5,
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let text = match self {
            Condition::OutsideF => "F",
            Condition::Y1 => "Y1",
            Condition::Y2 => "Y2",
            Condition::Y3 => "Y3",
            Condition::Y4 => "Y4",
            Condition::Y5 => "Y5",
        };
        f.write_str(text)
    }
}

/// Outcome of a membership test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub accepted: bool,
    pub failed: Option<Condition>,
}

impl Verdict {
    fn accept() -> Verdict {
        Verdict {
            accepted: true,
            failed: None,
        }
    }

    fn reject(condition: Condition) -> Verdict {
        Verdict {
            accepted: false,
            failed: Some(condition),
        }
    }
}

/// Which piece of a cell a block occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Piece {
    Whole,
    Back,
    Front,
    Lower,
    Upper,
}

impl Piece {
    /// Pieces that share a colour inside one cell are told apart by height.
    fn key(self) -> u8 {
        match self {
            Piece::Lower => 1,
            Piece::Upper => 2,
            _ => 0,
        }
    }
}

/// One block of a part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartCell {
    pub row: i32,
    pub col: i32,
    pub piece: Piece,
    pub color: usize,
}

/// A finite set of blocks cut out of a wall.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallPart {
    pub cells: BTreeSet<PartCell>,
}

impl WallPart {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Number of occupied block positions: the two half-height pieces
    /// sharing one position count once.
    pub fn position_count(&self) -> usize {
        self.cells
            .iter()
            .map(|c| (c.row, c.col))
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Number of blocks in each local column.
    pub fn column_lengths(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for c in &self.cells {
            *out.entry(c.col).or_insert(0) += 1;
        }
        out
    }

    /// Number of blocks in each row.
    pub fn row_lengths(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for c in &self.cells {
            *out.entry(c.row).or_insert(0) += 1;
        }
        out
    }

    /// Mirror image across row `axis`; half-height pieces swap.
    pub fn reflect(&self, axis: i32) -> WallPart {
        let cells = self
            .cells
            .iter()
            .map(|c| PartCell {
                row: 2 * axis - c.row,
                piece: match c.piece {
                    Piece::Lower => Piece::Upper,
                    Piece::Upper => Piece::Lower,
                    p => p,
                },
                ..*c
            })
            .collect();
        WallPart { cells }
    }

    /// Every row pushed to the right: the occupied columns of a row become
    /// `0, 1, ...` in their original order.
    pub fn right_justified(&self) -> WallPart {
        let mut by_row: BTreeMap<i32, BTreeSet<i32>> = BTreeMap::new();
        for c in &self.cells {
            by_row.entry(c.row).or_default().insert(c.col);
        }
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let cols = &by_row[&c.row];
                let rank = cols.range(..c.col).count() as i32;
                PartCell { col: rank, ..*c }
            })
            .collect();
        WallPart { cells }
    }

    /// Blocks in rows at least `row`.
    pub fn rows_from(&self, row: i32) -> WallPart {
        self.filter(|c| c.row >= row)
    }

    /// Blocks in local columns below `width`.
    pub fn columns_below(&self, width: i32) -> WallPart {
        self.filter(|c| c.col < width)
    }

    pub fn filter(&self, keep: impl Fn(&PartCell) -> bool) -> WallPart {
        WallPart {
            cells: self.cells.iter().copied().filter(|c| keep(c)).collect(),
        }
    }

    fn keys(&self) -> BTreeSet<(i32, i32, usize, u8)> {
        self.cells
            .iter()
            .map(|c| (c.row, c.col, c.color, c.piece.key()))
            .collect()
    }

    /// Position-and-colour containment.
    pub fn is_subset(&self, other: &WallPart) -> bool {
        self.keys().is_subset(&other.keys())
    }
}

/// All blocks of one column state, ground pieces included, as
/// `(unit, piece, colour)`.
fn column_blocks(ctx: &WallContext, col: usize, state: Column) -> Vec<(u32, Piece, usize)> {
    let mut out = Vec::new();
    let mut push_cell = |unit: u32, partial: Partial| match ctx.slot(col, unit) {
        Slot::Full(c) => {
            if partial == Partial::None {
                out.push((unit, Piece::Whole, c));
            }
        }
        Slot::Split { back, front } => match partial {
            Partial::None => {
                out.push((unit, Piece::Back, back));
                out.push((unit, Piece::Front, front));
            }
            Partial::Back => out.push((unit, Piece::Back, back)),
            Partial::Front => out.push((unit, Piece::Front, front)),
            Partial::Lower => {}
        },
        Slot::Halves(c) => match partial {
            Partial::None => {
                out.push((unit, Piece::Lower, c));
                out.push((unit, Piece::Upper, c));
            }
            Partial::Lower => out.push((unit, Piece::Lower, c)),
            _ => {}
        },
    };
    for unit in 0..state.units {
        push_cell(unit, Partial::None);
    }
    if state.partial != Partial::None {
        push_cell(state.units, state.partial);
    }
    out
}

/// The blocks of `wall` inside `group`, in group coordinates: row 0 is the
/// unit `base` of the wall.
fn group_part(wall: &Wall, group: &ColumnGroup, base: i32) -> WallPart {
    let ctx = wall.context();
    let mut cells = BTreeSet::new();
    for j in 0..group.width {
        let col = group.start + j;
        for (unit, piece, color) in column_blocks(&ctx, col, wall.column(col)) {
            cells.insert(PartCell {
                row: unit as i32 - base,
                col: j as i32,
                piece,
                color,
            });
        }
    }
    WallPart { cells }
}

fn difference(a: &WallPart, b: &WallPart) -> WallPart {
    WallPart {
        cells: a.cells.difference(&b.cells).copied().collect(),
    }
}

/// Per-group views of one wall.  The `omega` groups come first, right to
/// left; a spin group, if any, is appended last.  Its ground sits on the
/// `n`-row of the common frame, half a period below the `omega` groups.
struct Views {
    /// Number of `omega` groups.
    omega: usize,
    /// Staircase index of every group.
    stairs: Vec<usize>,
    /// Tableau entries of every group, by local column.
    entries: Vec<Vec<usize>>,
    /// Blocks of the wall inside each group.
    bar: Vec<WallPart>,
    /// Blocks of the wall above the highest weight wall inside each group.
    circ: Vec<WallPart>,
    /// The lowest weight wall inside each group.
    lowest: Vec<WallPart>,
}

impl Views {
    fn new(ctx: &LambdaContext, wall: &Wall) -> Views {
        let spin_base = -n_row(ctx);
        let framed = ctx
            .groups
            .iter()
            .map(|g| (g, g.padding as i32))
            .chain(ctx.spin_group.iter().map(|g| (g, spin_base)));
        let mut views = Views {
            omega: ctx.groups.len(),
            stairs: Vec::new(),
            entries: Vec::new(),
            bar: Vec::new(),
            circ: Vec::new(),
            lowest: Vec::new(),
        };
        for (idx, (g, base)) in framed.enumerate() {
            let y = group_part(wall, g, base);
            let h = group_part(ctx.highest(), g, base);
            views.stairs.push(staircase(ctx, g));
            let circ = difference(&y, &h);
            let stair = staircase(ctx, g);
            views.entries.push(if idx < views.omega {
                omega_entries(ctx, &y, &circ, stair)
            } else {
                spin_entries(ctx, &circ)
            });
            views.circ.push(circ);
            views.bar.push(y);
            views.lowest.push(group_part(ctx.lowest(), g, base));
        }
        views
    }

    /// Number of neighbouring pairs of groups, the spin group included.
    fn pairs(&self) -> usize {
        self.stairs.len().saturating_sub(1)
    }
}

/// Top row (exclusive) of a part.
fn top_row(part: &WallPart) -> i32 {
    part.cells.iter().map(|c| c.row + 1).max().unwrap_or(0)
}

/// Index `i` of the staircase of a group (`omega_n` and `omega_{n+1}` of
/// `D_n` both span `n` columns).
fn staircase(ctx: &LambdaContext, group: &ColumnGroup) -> usize {
    group.part.min(ctx.rank)
}

/// The lowest `count` blocks of every column of `part` removed.
fn drop_lowest(part: &WallPart, count: usize) -> WallPart {
    let mut seen: BTreeMap<i32, usize> = BTreeMap::new();
    let mut cells = BTreeSet::new();
    // Cells are ordered by row first, so each column is met bottom-up.
    for c in &part.cells {
        let n = seen.entry(c.col).or_insert(0);
        if *n >= count {
            cells.insert(*c);
        }
        *n += 1;
    }
    WallPart { cells }
}

/// The pair of cross-parts `(Y^{omega_{i_k}}, Y^{omega_{i_{k+1}}})` for the
/// groups `k` and `k + 1` (0-based `k`).
///
/// The two groups are stacked flush at the top: the staircase of group
/// `k + 1` starts `i_{k+1} - i_k` blocks higher in each column, so the first
/// part is `Y°_k` without the lowest `i_{k+1} - i_k` blocks of every column,
/// and the second is `Y°_{k+1}` inside the `i_k` columns of group `k`.
pub fn cross_parts(ctx: &LambdaContext, wall: &Wall, k: usize) -> (WallPart, WallPart) {
    let views = Views::new(ctx, wall);
    if k >= views.pairs() {
        return Default::default();
    }
    cross_parts_of(&views, k)
}

fn cross_parts_of(views: &Views, k: usize) -> (WallPart, WallPart) {
    let (right, left) = (views.stairs[k], views.stairs[k + 1]);
    let upper = drop_lowest(&views.circ[k], left - right);
    let lower = views.circ[k + 1].columns_below(right as i32);
    (upper, lower)
}

/// For `D_n`: two columns in the same position that both stop halfway
/// through the `(n-1, n)`-row must stop on a half of the same colour.
fn split_row_agrees(ctx: &LambdaContext, views: &Views, k: usize) -> bool {
    let n = ctx.rank;
    if ctx.family != Family::D {
        return true;
    }
    let half = |e: usize| e == n || e == n + 1;
    views.entries[k]
        .iter()
        .zip(&views.entries[k + 1])
        .all(|(&r, &l)| !(half(r) && half(l)) || r == l)
}

/// Column-by-column containment, both parts aligned at the right and at the
/// bottom.
fn columnwise_within(small: &WallPart, large: &WallPart) -> bool {
    let big = large.column_lengths();
    small
        .column_lengths()
        .iter()
        .all(|(col, &len)| big.get(col).copied().unwrap_or(0) >= len)
}

pub(super) fn member(ctx: &LambdaContext, wall: &Wall) -> Result<Verdict, ClassicalError> {
    if !ctx.in_f(wall)? {
        return Ok(Verdict::reject(Condition::OutsideF));
    }
    let views = Views::new(ctx, wall);
    let failed = match ctx.family {
        Family::A => type_a(&views),
        _ => type_bcd(ctx, &views),
    };
    Ok(match failed {
        None => Verdict::accept(),
        Some(c) => Verdict::reject(c),
    })
}

fn type_a(views: &Views) -> Option<Condition> {
    for k in 0..views.pairs() {
        let (upper, lower) = cross_parts_of(views, k);
        if !columnwise_within(&upper, &lower) {
            return Some(Condition::Y1);
        }
    }
    None
}

/// Row of the `n`-blocks (the `(n-1, n)` split cells for `D_n`) above the
/// padding.
fn n_row(ctx: &LambdaContext) -> i32 {
    let n = ctx.rank as i32;
    match ctx.family {
        Family::D => n - 2,
        _ => n - 1,
    }
}

/// `(Y^+, Y^-)` of group `k`: blocks above the `n`-row, and blocks above
/// the highest weight wall but below the `n`-row.  Both are empty when the
/// lowest weight shape of the group does not reach the `n`-row.
pub fn n_row_split(ctx: &LambdaContext, wall: &Wall, k: usize) -> (WallPart, WallPart) {
    let views = Views::new(ctx, wall);
    if ctx.family == Family::A || k >= views.circ.len() {
        return Default::default();
    }
    n_row_split_of(ctx, &views, k)
}

fn n_row_split_of(ctx: &LambdaContext, views: &Views, k: usize) -> (WallPart, WallPart) {
    let axis = n_row(ctx);
    if top_row(&views.lowest[k]) <= axis {
        return (WallPart::default(), WallPart::default());
    }
    let mut plus = views.bar[k].filter(|c| c.row > axis);
    let mut minus = views.circ[k].filter(|c| c.row < axis);
    if ctx.family == Family::D {
        // The `(n-1, n)`-row is cut diagonally into a lower and an upper
        // half.  Where the highest weight wall reaches the row, its half
        // fixes which piece lies below; elsewhere a lone half lies below.
        // The colours of the halves alternate from column to column, so
        // halves are compared by position only.
        let row = views.bar[k].filter(|c| c.row == axis);
        let lens = row.column_lengths();
        let lower_piece = row
            .cells
            .iter()
            .find(|c| !views.circ[k].cells.contains(c))
            .map(|c| c.piece);
        for c in &row.cells {
            let upper = match lower_piece {
                Some(piece) => c.piece != piece,
                None => lens[&c.col] == 2 && c.piece == Piece::Front,
            };
            let half = PartCell {
                piece: if upper { Piece::Upper } else { Piece::Lower },
                color: ctx.rank,
                ..*c
            };
            if upper {
                plus.cells.insert(half);
            } else if views.circ[k].cells.contains(c) {
                minus.cells.insert(half);
            }
        }
    }
    (plus, minus)
}

/// `|part|`: reflected across row `axis`, then shifted right.
pub fn reflect_shift(part: &WallPart, axis: i32) -> WallPart {
    part.reflect(axis).right_justified()
}

fn type_bcd(ctx: &LambdaContext, views: &Views) -> Option<Condition> {
    let axis = n_row(ctx);
    for k in 0..views.omega {
        let (plus, minus) = n_row_split_of(ctx, views, k);
        if !plus.is_subset(&reflect_shift(&minus, axis)) {
            return Some(Condition::Y1);
        }
    }
    for k in 0..views.pairs() {
        if k + 1 == views.omega {
            // A spin column is read letter by letter; only its barred
            // letters stand for blocks of the spin group.
            let (right, left) = (&views.entries[k], &views.entries[k + 1]);
            let barred = |l: usize| match ctx.family {
                Family::D => l >= ctx.rank,
                _ => l >= barred_entry(ctx, ctx.rank),
            };
            if right.iter().zip(left).any(|(&r, &l)| barred(l) && r > l)
                || !split_row_agrees(ctx, views, k)
            {
                return Some(Condition::Y2);
            }
            continue;
        }
        let (upper, lower) = cross_parts_of(views, k);
        if !columnwise_within(&upper, &lower) || !split_row_agrees(ctx, views, k) {
            return Some(Condition::Y2);
        }
    }
    for k in 0..views.pairs() {
        let (minus, plus) = triangle_parts_of(ctx, views, k);
        if !reflect_shift(&minus, axis).is_subset(&plus) {
            return Some(Condition::Y3);
        }
    }
    for k in 0..views.pairs() {
        // Against a spin group only the `omega` side is constrained.
        let sides = if k + 1 < views.omega { 2 } else { 1 };
        for hit in detect_c1_of(ctx, views, k) {
            for g in (k..=k + 1).take(sides) {
                let (plus, minus) = hook_parts(ctx, views, g, hit);
                if !plus.is_subset(&c1_reflect_shift(&minus, hit)) {
                    return Some(Condition::Y4);
                }
            }
        }
    }
    if ctx.family == Family::D {
        for k in 0..views.pairs() {
            for hit in detect_c2_of(ctx, views, k) {
                let (right, left) = band_parts(ctx, views, k, hit);
                if !right.right_justified().is_subset(&left.right_justified()) {
                    return Some(Condition::Y5);
                }
            }
        }
    }
    None
}

/// A `(p, q)` configuration of `D_n` between neighbouring groups: the
/// `p`-th column of the right group and the `q`-th column of the left group
/// (`p < q`) both end on one half of the `(n-1, n)`-row, on halves of the
/// same colour exactly when `q - p` is odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitHit {
    pub p: usize,
    pub q: usize,
}

/// All `(p, q)` split-row configurations between groups `k` and `k + 1`.
pub fn detect_c2(ctx: &LambdaContext, wall: &Wall, k: usize) -> Vec<SplitHit> {
    let views = Views::new(ctx, wall);
    if ctx.family != Family::D || k >= views.pairs() {
        return Vec::new();
    }
    detect_c2_of(ctx, &views, k)
}

fn detect_c2_of(ctx: &LambdaContext, views: &Views, k: usize) -> Vec<SplitHit> {
    let n = ctx.rank;
    let half = |e: usize| e == n || e == n + 1;
    let (right, left) = (&views.entries[k], &views.entries[k + 1]);
    let mut hits = Vec::new();
    for (pj, &r) in right.iter().enumerate() {
        if !half(r) {
            continue;
        }
        for (qj, &l) in left.iter().enumerate().skip(pj + 1) {
            if half(l) && (r == l) == ((qj - pj) % 2 == 1) {
                hits.push(SplitHit { p: pj + 1, q: qj + 1 });
            }
        }
    }
    hits
}

/// The two parallelograms of a split-row configuration, as blocks
/// `(column, colour)` with the colour in `row`.  In the right group the
/// `j`-th column (`q <= j <= i`) contributes its ascending blocks of colours
/// `n - j ..= n - j + p - 1`; in the left group the `j`-th column
/// (`1 <= j <= p`) its descending blocks of colours
/// `n - i + j - 1 ..= n - q + j - 1`.
/// The two parallelogram parts `(right, left)` of a configuration found by
/// [`detect_c2`] between groups `k` and `k + 1`.
pub fn c2_parts(ctx: &LambdaContext, wall: &Wall, k: usize, hit: SplitHit) -> (WallPart, WallPart) {
    let views = Views::new(ctx, wall);
    if ctx.family != Family::D || k >= views.pairs() {
        return Default::default();
    }
    band_parts(ctx, &views, k, hit)
}

fn band_parts(ctx: &LambdaContext, views: &Views, k: usize, hit: SplitHit) -> (WallPart, WallPart) {
    let n = ctx.rank;
    let i = views.stairs[k];
    let (p, q) = (hit.p, hit.q);
    let height = |g: usize, j: usize| level(ctx, views.entries[g].get(j - 1).copied().unwrap_or(0));
    let cell = |j: usize, c: usize| PartCell {
        row: c as i32,
        col: j as i32 - 1,
        piece: Piece::Whole,
        color: c,
    };
    let mut right = WallPart::default();
    for j in q..=i.min(n - 1) {
        for c in n - j..n - j + p {
            if height(k, j) > c {
                right.cells.insert(cell(j, c));
            }
        }
    }
    let mut left = WallPart::default();
    for j in 1..=p {
        for c in (n + j).saturating_sub(i + 1)..=(n + j - 1).saturating_sub(q) {
            if height(k + 1, j) >= descending_level(ctx, c) {
                left.cells.insert(cell(j, c));
            }
        }
    }
    (right, left)
}

/// Local columns of `part` moved `offset` columns to the left.
fn shift_columns(part: &WallPart, offset: i32) -> WallPart {
    WallPart {
        cells: part
            .cells
            .iter()
            .map(|c| PartCell {
                col: c.col + offset,
                ..*c
            })
            .collect(),
    }
}

/// The entries read off an `omega` group: local column `j` holds the
/// staircase height `i - j` plus its number of blocks above the highest
/// weight wall.  Entries `1..=n` are unbarred and larger ones barred.
///
/// For `D_n` the `(n-1, n)`-row is one cell, so the count skips a letter:
/// a column ending in a single half of that row reads `n` or `n-bar` by the
/// colour of the half, and higher counts move up by one.
fn omega_entries(ctx: &LambdaContext, bar: &WallPart, circ: &WallPart, stair: usize) -> Vec<usize> {
    let n = ctx.rank;
    let axis = n_row(ctx);
    let lens = circ.column_lengths();
    (0..stair)
        .map(|j| {
            let count = stair - j + lens.get(&(j as i32)).copied().unwrap_or(0);
            if ctx.family != Family::D || count < n {
                return count;
            }
            if count > n {
                return count + 1;
            }
            let top = bar
                .cells
                .iter()
                .filter(|c| c.col == j as i32 && c.row == axis)
                .map(|c| c.color)
                .next();
            if top == Some(n) {
                n + 1
            } else {
                n
            }
        })
        .collect()
}

/// Tableau entries of every group of `wall`, the spin group last.
pub fn entries(ctx: &LambdaContext, wall: &Wall) -> Vec<Vec<usize>> {
    Views::new(ctx, wall).entries
}

/// The entries read off a spin group.  A column grown by `h` blocks holds
/// the barred letter `n + 1 - h`; the unbarred letters are the rest of
/// `1..=n`.  The column is sorted with the largest letter in local column 0.
///
/// For `D_n` the ground of a spin column is half of the `(n-1, n)`-row, so
/// a column grown by `h` blocks holds `(n - h)`-bar, and `n` is barred or
/// not as the parity of the spin weight demands.
fn spin_entries(ctx: &LambdaContext, circ: &WallPart) -> Vec<usize> {
    let n = ctx.rank;
    let lens = circ.column_lengths();
    let mut barred: BTreeSet<usize> = match ctx.family {
        Family::D => lens.values().map(|&h| n - h.min(n - 1)).collect(),
        _ => lens.values().map(|&h| n + 1 - h.min(n)).collect(),
    };
    if ctx.family == Family::D {
        let minus = ctx.decomposition.spin == Spin::Minus;
        if (barred.len() % 2 == 1) != minus {
            barred.insert(n);
        }
    }
    let mut letters: Vec<usize> = (1..=n)
        .map(|x| if barred.contains(&x) { barred_entry(ctx, x) } else { x })
        .collect();
    letters.sort_unstable_by(|a, b| b.cmp(a));
    letters
}

fn entry_of(views: &Views, k: usize, j: usize) -> usize {
    views.entries[k][j]
}

/// The entry standing for `a-bar`.  For `B_n` the two half-height
/// `n`-blocks make room for the extra letter `0` between `n` and `n-bar`.
fn barred_entry(ctx: &LambdaContext, a: usize) -> usize {
    let n = ctx.rank;
    match ctx.family {
        Family::B => 2 * n + 2 - a,
        _ => 2 * n + 1 - a,
    }
}

/// An `(a; p, q)` configuration between two neighbouring groups: the
/// `p`-th column of the right group ends in the ascending `a` pattern and
/// the `q`-th column of the left group in the descending one, with `p > q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hit {
    pub a: usize,
    pub p: usize,
    pub q: usize,
}

/// All `(a; p, q)` configurations between groups `k` and `k + 1`.
pub fn detect_c1(ctx: &LambdaContext, wall: &Wall, k: usize) -> Vec<Hit> {
    let views = Views::new(ctx, wall);
    if ctx.family == Family::A || k >= views.pairs() {
        return Vec::new();
    }
    detect_c1_of(ctx, &views, k)
}

fn detect_c1_of(ctx: &LambdaContext, views: &Views, k: usize) -> Vec<Hit> {
    let n = ctx.rank;
    let (right, left) = (views.stairs[k], views.stairs[k + 1]);
    let mut hits = Vec::new();
    for pj in 0..right {
        let a = entry_of(views, k, pj);
        // The ascending pattern needs two blocks below the top.
        if a < 2 || a >= n {
            continue;
        }
        for qj in 0..pj.min(left) {
            if entry_of(views, k + 1, qj) == barred_entry(ctx, a) {
                hits.push(Hit {
                    a,
                    p: pj + 1,
                    q: qj + 1,
                });
            }
        }
    }
    hits
}

/// Height of a column in levels: a column reading the entry `e` holds the
/// levels `1..=level`.  For `D_n` the letters `n` and `n-bar` both end on
/// the first half of the `(n-1, n)`-row.
fn level(ctx: &LambdaContext, e: usize) -> usize {
    let n = ctx.rank;
    match ctx.family {
        Family::D if e > n => e - 1,
        _ => e,
    }
}

/// Level of the descending block of colour `c`; the ascending block of
/// colour `c` sits on level `c + 1`, and the two are mirror images across
/// the `n`-row.
fn descending_level(ctx: &LambdaContext, c: usize) -> usize {
    let n = ctx.rank;
    match ctx.family {
        Family::B => 2 * n + 2 - c,
        Family::D => 2 * n - c,
        _ => 2 * n + 1 - c,
    }
}

/// `(Y^+(a;p,q), Y^-(a;p,q))` of group `g` for a configuration found by
/// [`detect_c1`].  See [`hook_parts`] for the block layout.
pub fn c1_parts(ctx: &LambdaContext, wall: &Wall, g: usize, hit: Hit) -> (WallPart, WallPart) {
    let views = Views::new(ctx, wall);
    if ctx.family == Family::A || g >= views.entries.len() {
        return Default::default();
    }
    hook_parts(ctx, &views, g, hit)
}

/// `|Y^-(a;p,q)|`: the lower hook laid over the upper one.  Hook blocks are
/// stored by colour, so the reflection across the `n`-row keeps their rows
/// and only the columns move: right-justified, then shifted to column `q`.
pub fn c1_reflect_shift(minus: &WallPart, hit: Hit) -> WallPart {
    shift_columns(&minus.right_justified(), hit.q as i32 - 1)
}

/// `(Y^+(a;p,q), Y^-(a;p,q))` of group `g`, as blocks `(column, colour)`
/// stored with the colour in `row`.  The upper hook runs over the
/// descending blocks of colours `a..=a'` (`a' = a + p - q - 1`), its right
/// angle at the bottom of column `q`; the lower hook is its point
/// reflection over the ascending blocks, its right angle at the top of
/// column `p`.
fn hook_parts(ctx: &LambdaContext, views: &Views, g: usize, hit: Hit) -> (WallPart, WallPart) {
    let (p, q) = (hit.p, hit.q);
    let top = hit.a + p - q - 1;
    let height = |j: usize| level(ctx, views.entries[g].get(j).copied().unwrap_or(0));
    let cell = |j: usize, c: usize| PartCell {
        row: c as i32,
        col: j as i32,
        piece: Piece::Whole,
        color: c,
    };
    let mut plus = WallPart::default();
    for c in hit.a..=top {
        for j in q - 1..=p - 2 - (top - c) {
            if height(j) >= descending_level(ctx, c) {
                plus.cells.insert(cell(j, c));
            }
        }
    }
    let mut minus = WallPart::default();
    for j in q..p {
        for c in top.saturating_sub(j - q)..=top {
            if height(j) > c {
                minus.cells.insert(cell(j, c));
            }
        }
    }
    (plus, minus)
}

/// `(Y^-, Y^+)` for groups `k` and `k + 1`: the triangle hanging below the
/// `n`-row of group `k` from its left end, and the triangle standing on the
/// `n`-row of group `k + 1` at its right end, both with legs of length `i_k`.
pub fn triangle_parts(ctx: &LambdaContext, wall: &Wall, k: usize) -> (WallPart, WallPart) {
    let views = Views::new(ctx, wall);
    if ctx.family == Family::A || k >= views.pairs() {
        return Default::default();
    }
    triangle_parts_of(ctx, &views, k)
}

fn triangle_parts_of(ctx: &LambdaContext, views: &Views, k: usize) -> (WallPart, WallPart) {
    let axis = n_row(ctx);
    let i = views.stairs[k] as i32;
    // For `D_n` both triangles are one block smaller and the lower one
    // leaves out the rightmost column.
    let (shrink, skip) = if ctx.family == Family::D { (1, 1) } else { (0, 0) };
    let minus = views.circ[k]
        .filter(|c| c.row <= axis && axis - c.row <= c.col - skip && c.col < i);
    let plus = views.bar[k + 1].filter(|c| c.row >= axis && c.col + (c.row - axis) < i - shrink);
    (minus, plus)
}

/// `Y°_k`: the blocks of `wall` above the highest weight wall in group `k`.
pub fn circ_part(ctx: &LambdaContext, wall: &Wall, k: usize) -> WallPart {
    Views::new(ctx, wall).circ.get(k).cloned().unwrap_or_default()
}
