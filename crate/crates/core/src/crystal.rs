//! Kashiwara operators on proper Young walls via the signature rule.
//!
//! For a colour `i` every column contributes up to two signs: `-` for each
//! way of removing an `i`-block from its top and `+` for each way of adding
//! one.  Signs are read from the leftmost relevant column (largest index)
//! down to column 0; adjacent `(+, -)` pairs are cancelled repeatedly.  `f_i`
//! adds a block to the column of the leftmost surviving `+`, `e_i` removes
//! one from the column of the rightmost surviving `-`.

use std::fmt;

use crate::wall::Wall;

/// The signs contributed by one column for one colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ColumnSignature {
    Empty,
    Minus,
    Plus,
    MinusMinus,
    MinusPlus,
    PlusPlus,
}

impl ColumnSignature {
    /// The signs in reading order, `true` for `+`.
    pub fn signs(self) -> &'static [bool] {
        match self {
            ColumnSignature::Empty => &[],
            ColumnSignature::Minus => &[false],
            ColumnSignature::Plus => &[true],
            ColumnSignature::MinusMinus => &[false, false],
            ColumnSignature::MinusPlus => &[false, true],
            ColumnSignature::PlusPlus => &[true, true],
        }
    }
}

impl fmt::Display for ColumnSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &plus in self.signs() {
            f.write_str(if plus { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Number of times an `i`-block can be removed from (resp. added to)
/// column `col` in succession, at most two each.
fn counts(wall: &Wall, col: usize, i: usize) -> (usize, usize) {
    let removable = match wall.remove_block(col, i) {
        None => 0,
        Some(w) => 1 + usize::from(w.remove_block(col, i).is_some()),
    };
    let admissible = match wall.add_block(col, i) {
        None => 0,
        Some(w) => 1 + usize::from(w.add_block(col, i).is_some()),
    };
    (removable, admissible)
}

/// Signs of column `col` for colour `i`.
pub fn column_signature(wall: &Wall, col: usize, i: usize) -> ColumnSignature {
    match counts(wall, col, i) {
        (0, 0) => ColumnSignature::Empty,
        (2, _) => ColumnSignature::MinusMinus,
        (1, 0) => ColumnSignature::Minus,
        (1, _) => ColumnSignature::MinusPlus,
        (0, 1) => ColumnSignature::Plus,
        (0, _) => ColumnSignature::PlusPlus,
        _ => unreachable!("a column holds at most two blocks of one colour on top"),
    }
}

/// The signature after all `(+, -)` cancellations: some `-` signs followed
/// by some `+` signs, each tagged with its column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReducedSignature {
    /// Columns of the surviving `-` signs, in reading order (left first).
    pub minus: Vec<usize>,
    /// Columns of the surviving `+` signs, in reading order (left first).
    pub plus: Vec<usize>,
}

impl fmt::Display for ReducedSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in &self.minus {
            f.write_str("-")?;
        }
        for _ in &self.plus {
            f.write_str("+")?;
        }
        Ok(())
    }
}

/// The raw signs of all columns for colour `i`, in reading order.
pub fn raw_signature(wall: &Wall, i: usize) -> Vec<(usize, bool)> {
    // Beyond the first ground column nothing can be added or removed.
    let last = wall.width();
    let mut out = Vec::new();
    for col in (0..=last).rev() {
        for &plus in column_signature(wall, col, i).signs() {
            out.push((col, plus));
        }
    }
    out
}

/// Cancels `(+, -)` pairs in the raw signature of colour `i`.
pub fn signature(wall: &Wall, i: usize) -> ReducedSignature {
    let mut minus = Vec::new();
    let mut open_plus: Vec<usize> = Vec::new();
    for (col, plus) in raw_signature(wall, i) {
        if plus {
            open_plus.push(col);
        } else if open_plus.pop().is_none() {
            minus.push(col);
        }
    }
    ReducedSignature {
        minus,
        plus: open_plus,
    }
}

/// `f_i`: add an `i`-block at the leftmost surviving `+`.
pub fn f(wall: &Wall, i: usize) -> Option<Wall> {
    let sig = signature(wall, i);
    let col = *sig.plus.first()?;
    Some(
        wall.add_block(col, i)
            .expect("a surviving + marks an admissible slot"),
    )
}

/// `e_i`: remove the `i`-block at the rightmost surviving `-`.
pub fn e(wall: &Wall, i: usize) -> Option<Wall> {
    let sig = signature(wall, i);
    let col = *sig.minus.last()?;
    Some(
        wall.remove_block(col, i)
            .expect("a surviving - marks a removable block"),
    )
}

/// Number of surviving `-` signs.
pub fn epsilon(wall: &Wall, i: usize) -> usize {
    signature(wall, i).minus.len()
}

/// Number of surviving `+` signs.
pub fn phi(wall: &Wall, i: usize) -> usize {
    signature(wall, i).plus.len()
}
