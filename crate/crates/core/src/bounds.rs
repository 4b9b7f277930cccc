//! Blocklength bounds and reference data for `N_P(k, t)`, the smallest
//! blocklength of a binary t-PIR code of dimension `k`.
//!
//! The reference columns (k = 1..32, t = 4, 6, 8) are static data together
//! with their annotations: proved optimal, found without property S5,
//! impossible, and new.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("the bound needs t >= 3, got t = {t}")]
    InvalidT { t: usize },
    #[error("the bound needs k >= 1")]
    InvalidK,
    #[error("no reference data for k = {k}, t = {t}")]
    NoReferenceData { k: usize, t: usize },
}

/// Least integer `s >= 1` with `(2s - 1)^2 >= 8k + 1`, which equals
/// `ceil(sqrt(2k + 1/4) + 1/2)`.
fn ceil_sqrt_term(k: usize) -> usize {
    let target = 8 * k as u128 + 1;
    let mut s = 1usize;
    while ((2 * s as u128 - 1) * (2 * s as u128 - 1)) < target {
        s += 1;
    }
    s
}

/// `L_P(k, t) = k + ceil(sqrt(2k + 1/4) + 1/2) + t - 3`, computed with
/// integers only.
pub fn lp_bound(k: usize, t: usize) -> Result<usize, BoundsError> {
    if t < 3 {
        return Err(BoundsError::InvalidT { t });
    }
    if k == 0 {
        return Err(BoundsError::InvalidK);
    }
    Ok(k + ceil_sqrt_term(k) + t - 3)
}

/// `n_U = min(n1, n2 - 2)`: a t = 8 code punctured twice is a t = 6 code.
pub fn n_upper_t6(n1: usize, n2: usize) -> usize {
    n1.min(n2.saturating_sub(2))
}

/// Annotation on a reference cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mark {
    /// Proved optimal.
    Optimal,
    /// Best code found has constant row weight but no property S5.
    NoPropertyS5,
    /// Below a proven lower bound, hence impossible.
    Impossible,
    /// Improves on earlier literature.
    New,
}

impl Mark {
    /// ASCII suffix used in text renderings.
    pub fn symbol(self) -> char {
        match self {
            Mark::Optimal => '*',
            Mark::NoPropertyS5 => 'd',
            Mark::Impossible => '!',
            Mark::New => 'b',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub value: usize,
    pub marks: Vec<Mark>,
}

impl Cell {
    fn plain(value: usize) -> Self {
        Cell {
            value,
            marks: Vec::new(),
        }
    }

    pub fn has(&self, mark: Mark) -> bool {
        self.marks.contains(&mark)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        for m in &self.marks {
            write!(f, "{}", m.symbol())?;
        }
        Ok(())
    }
}

/// A column of the reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Column {
    /// `L_P(k, t)`, which is optimal for t = 4.
    LpBound,
    /// `N(k, t)`: shortest linear code with minimum distance `t`.
    LinearLower,
    /// `n_B`: best blocklength found by the search (t = 6: 5-server code + 1).
    Best,
    /// `n_U` of the earlier literature.
    Upper,
    /// Shortest SPRM code.
    Sprm,
}

impl Column {
    pub fn name(self) -> &'static str {
        match self {
            Column::LpBound => "L_P",
            Column::LinearLower => "N(k,t)",
            Column::Best => "n_B",
            Column::Upper => "n_U",
            Column::Sprm => "SPRM",
        }
    }
}

/// Bounds on `N_P(k, t)` for one `(k, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsEntry {
    pub k: usize,
    pub t: usize,
    /// Largest known lower bound.
    pub lower: usize,
    /// Smallest known blocklength.
    pub upper: usize,
    pub optimal: bool,
    /// Where `lower` and `upper` come from.
    pub sources: Vec<&'static str>,
    pub cells: Vec<(Column, Option<Cell>)>,
}

impl BoundsEntry {
    pub fn cell(&self, column: Column) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|(c, _)| *c == column)
            .and_then(|(_, cell)| cell.as_ref())
    }
}

pub const TABLE_MAX_K: usize = 32;

/// `N(k, 6)` for k = 5..32.
const N_K6: [usize; 28] = [
    14, 15, 16, 17, 18, 20, 21, 22, 23, 24, 26, 27, 28, 29, 30, 31, 32, 33, 34, 36, 37, 38, 39, 40,
    41, 42, 43, 44,
];

/// `n_B` for t = 6, k = 1..32.
const NB_T6: [usize; 32] = [
    6, 9, 11, 12, 14, 15, 17, 18, 20, 21, 22, 23, 25, 27, 28, 31, 32, 33, 35, 36, 37, 39, 40, 41,
    42, 43, 44, 46, 47, 48, 50, 52,
];

/// `n_U` for t = 6, k = 5..32.
const NU_T6: [usize; 28] = [
    13, 14, 15, 20, 23, 24, 25, 26, 27, 29, 34, 35, 37, 38, 39, 40, 42, 46, 47, 49, 50, 51, 53, 54,
    55, 56, 58, 59,
];

/// Shortest SPRM code for t = 8, k = 1..32.
const SPRM_T8: [usize; 32] = [
    8, 12, 14, 15, 19, 21, 22, 24, 25, 26, 30, 32, 33, 35, 36, 37, 39, 40, 41, 42, 46, 48, 49, 51,
    52, 53, 55, 56, 57, 58, 60, 61,
];

/// Improved t = 8 blocklengths found by the search, as `(k, n)`.
const IMPROVED_T8: [(usize, usize); 4] = [(5, 18), (6, 20), (11, 29), (12, 31)];

fn t6_entry(k: usize) -> BoundsEntry {
    let lp = lp_bound(k, 6).expect("t = 6");
    let linear = (k >= 5).then(|| N_K6[k - 5]);
    let mut best = Cell::plain(NB_T6[k - 1]);
    if k <= 6 {
        best.marks.push(Mark::Optimal);
    }
    if matches!(k, 4 | 6 | 13 | 14 | 15) {
        best.marks.push(Mark::NoPropertyS5);
    }
    if k >= 7 {
        best.marks.push(Mark::New);
    }
    let upper_u = (k >= 5).then(|| {
        let mut c = Cell::plain(NU_T6[k - 5]);
        if k <= 7 {
            c.marks.push(Mark::Impossible);
        }
        c
    });
    let optimal = best.has(Mark::Optimal);
    let mut sources = vec!["L_P"];
    let mut lower = lp;
    if let Some(n) = linear {
        sources.push("N(k,6)");
        lower = lower.max(n);
    }
    if optimal {
        // proved optimal in the reference, possibly by an argument not
        // captured by the two lower-bound columns
        sources.push("optimality proof");
        lower = lower.max(best.value);
    }
    sources.push("n_B");
    BoundsEntry {
        k,
        t: 6,
        lower,
        upper: best.value,
        optimal,
        sources,
        cells: vec![
            (Column::LpBound, Some(Cell::plain(lp))),
            (Column::LinearLower, linear.map(Cell::plain)),
            (Column::Best, Some(best)),
            (Column::Upper, upper_u),
        ],
    }
}

fn t4_entry(k: usize) -> BoundsEntry {
    let lp = lp_bound(k, 4).expect("t = 4");
    BoundsEntry {
        k,
        t: 4,
        lower: lp,
        upper: lp,
        optimal: true,
        sources: vec!["L_P", "SPRM"],
        cells: vec![(
            Column::LpBound,
            Some(Cell {
                value: lp,
                marks: vec![Mark::Optimal],
            }),
        )],
    }
}

fn t8_entry(k: usize) -> BoundsEntry {
    let lp = lp_bound(k, 8).expect("t = 8");
    let mut sprm = Cell::plain(SPRM_T8[k - 1]);
    let optimal = k <= 4;
    if optimal {
        sprm.marks.push(Mark::Optimal);
    }
    let improved = IMPROVED_T8
        .iter()
        .find(|(kk, _)| *kk == k)
        .map(|&(_, n)| Cell {
            value: n,
            marks: vec![Mark::New],
        });
    let upper = improved.as_ref().map_or(sprm.value, |c| c.value);
    let mut sources = vec!["L_P", "SPRM"];
    if improved.is_some() {
        sources.push("n_B");
    }
    BoundsEntry {
        k,
        t: 8,
        lower: if optimal { sprm.value } else { lp },
        upper,
        optimal,
        sources,
        cells: vec![
            (Column::LpBound, Some(Cell::plain(lp))),
            (Column::Sprm, Some(sprm)),
            (Column::Best, improved),
        ],
    }
}

/// The reference column for `t` in {4, 6, 8}, k = 1..32; empty otherwise.
pub fn reference_table(t: usize) -> Vec<BoundsEntry> {
    let make: fn(usize) -> BoundsEntry = match t {
        4 => t4_entry,
        6 => t6_entry,
        8 => t8_entry,
        _ => return Vec::new(),
    };
    (1..=TABLE_MAX_K).map(make).collect()
}

pub fn reference_entry(k: usize, t: usize) -> Result<BoundsEntry, BoundsError> {
    if !(1..=TABLE_MAX_K).contains(&k) || !matches!(t, 4 | 6 | 8) {
        return Err(BoundsError::NoReferenceData { k, t });
    }
    Ok(reference_table(t).swap_remove(k - 1))
}

/// How a found blocklength compares with the reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    BeatsTable,
    MatchesTable,
    WorseThanTable,
    /// Shorter than a proven lower bound: the code cannot be valid.
    BelowProvenLowerBound,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::BeatsTable => "beats-table",
            Comparison::MatchesTable => "matches-table",
            Comparison::WorseThanTable => "worse-than-table",
            Comparison::BelowProvenLowerBound => "below-proven-lower-bound",
        })
    }
}

/// Classifies a `t`-PIR code of dimension `k` and length `n_found`.
pub fn compare_found(k: usize, t: usize, n_found: usize) -> Result<Comparison, BoundsError> {
    let entry = reference_entry(k, t)?;
    Ok(if n_found < entry.lower {
        Comparison::BelowProvenLowerBound
    } else if n_found < entry.upper {
        Comparison::BeatsTable
    } else if n_found == entry.upper {
        Comparison::MatchesTable
    } else {
        Comparison::WorseThanTable
    })
}
