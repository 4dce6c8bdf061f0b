//! Partitions, standard Young tableaux in English notation, evacuation and
//! Richardson tableaux.
//!
//! Cells are addressed as 1-indexed `(row, column)` pairs.

mod evacuation;
mod richardson;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::perm::Permutation;

pub use evacuation::{evacuate, evacuation_paths, evacuation_slide, is_l_slide, HolePath};
pub use richardson::{
    column_strip_decomposition, generate_richardson, is_richardson, richardson_pair,
    ColumnStripDecomposition,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("parts {0:?} are not a weakly decreasing sequence of positive integers")]
    NotAPartition(Vec<usize>),
    #[error("entries are not exactly 1..={size}")]
    BadEntries { size: usize },
    #[error("entry {value} at ({row}, {col}) breaks strict increase")]
    NotIncreasing { value: usize, row: usize, col: usize },
    #[error("declared shape {declared:?} does not match rows {actual:?}")]
    ShapeMismatch { declared: Vec<usize>, actual: Vec<usize> },
    #[error("the tableau is empty")]
    Empty,
    #[error("the tableau is not a Richardson tableau")]
    NotRichardson,
    #[error("cannot parse tableau: {0}")]
    Parse(String),
}

/// A partition `λ_1 ≥ λ_2 ≥ … > 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, TableauError> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(TableauError::NotAPartition(parts));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The partition without its first row.
    pub fn crop(&self) -> Self {
        Self { parts: self.parts.iter().skip(1).copied().collect() }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A standard Young tableau, stored row by row.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    /// Validates shape, entry set and strict increase along rows and columns.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, TableauError> {
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        Partition::new(lens)?;
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &v in rows.iter().flatten() {
            if v == 0 || v > n || seen[v] {
                return Err(TableauError::BadEntries { size: n });
            }
            seen[v] = true;
        }
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let left_ok = c == 0 || row[c - 1] < v;
                let up_ok = r == 0 || rows[r - 1][c] < v;
                if !left_ok || !up_ok {
                    return Err(TableauError::NotIncreasing { value: v, row: r + 1, col: c + 1 });
                }
            }
        }
        Ok(Self { rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<usize>>) -> Self {
        debug_assert!(Self::new(rows.clone()).is_ok(), "not standard: {rows:?}");
        Self { rows }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition { parts: self.rows.iter().map(Vec::len).collect() }
    }

    /// Number of boxes.
    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Entry at the 1-indexed cell `(row, col)`, if it exists.
    pub fn get(&self, row: usize, col: usize) -> Option<usize> {
        self.rows.get(row.checked_sub(1)?)?.get(col.checked_sub(1)?).copied()
    }

    /// The cell holding `value`.
    pub fn cell_of(&self, value: usize) -> Option<(usize, usize)> {
        self.rows.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|&x| x == value).map(|c| (r + 1, c + 1))
        })
    }

    /// Rows read bottom to top, each left to right.
    pub fn reading_word(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.rows.iter().rev().flatten().copied().collect())
    }

    /// Rows read top to bottom, each left to right.
    pub fn top_down_reading_word(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.rows.iter().flatten().copied().collect())
    }

    /// Rows 2 and below, standardized to `1..=|crop(λ)|`.
    pub fn crop(&self) -> Self {
        let rest: Vec<Vec<usize>> = self.rows.iter().skip(1).cloned().collect();
        let mut sorted: Vec<usize> = rest.iter().flatten().copied().collect();
        sorted.sort_unstable();
        let rows = rest
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| sorted.binary_search(&v).expect("entry present") + 1)
                    .collect()
            })
            .collect();
        Self { rows }
    }

    /// All standard Young tableaux of the given shape.
    pub fn all_of_shape(shape: &Partition) -> Vec<StandardTableau> {
        let mut out = Vec::new();
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.len()];
        fill_syt(shape.parts(), &mut rows, 1, &mut |rows| {
            out.push(StandardTableau { rows: rows.to_vec() });
            true
        });
        out
    }

    /// Parses the plain format (one row per line, entries separated by
    /// whitespace) or the JSON object `{"shape": [...], "rows": [[...], ...]}`.
    pub fn parse(text: &str) -> Result<Self, TableauError> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let doc: TableauDocument =
                serde_json::from_str(trimmed).map_err(|e| TableauError::Parse(e.to_string()))?;
            let actual: Vec<usize> = doc.rows.iter().map(Vec::len).collect();
            if let Some(shape) = doc.shape {
                if shape != actual {
                    return Err(TableauError::ShapeMismatch { declared: shape, actual });
                }
            }
            return Self::new(doc.rows);
        }
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| TableauError::Parse(format!("bad entry {t:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::new(rows)
    }

    /// The structured JSON form.
    pub fn to_document(&self) -> TableauDocument {
        TableauDocument {
            shape: Some(self.shape().parts().to_vec()),
            rows: self.rows.clone(),
        }
    }
}

/// Serialized tableau: `{"shape": [5,3,2,2], "rows": [[1,2,5,7,10], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<Vec<usize>>,
    pub rows: Vec<Vec<usize>>,
}

impl FromStr for StandardTableau {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for StandardTableau {
    /// One row per line, entries separated by single spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let parts: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Backtracking filler: places `next` into each addable cell of the partial
/// tableau in `rows` (bounded by `shape`), calling `visit` on completion.
///
/// `visit` returns `false` to stop the search.
pub(crate) fn fill_syt(
    shape: &[usize],
    rows: &mut Vec<Vec<usize>>,
    next: usize,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
) -> bool {
    fill_syt_filtered(shape, rows, next, &mut |_, _| true, visit)
}

/// As [`fill_syt`], but only places `next` in row `r` (0-indexed) when
/// `allow(rows, r)` holds.
pub(crate) fn fill_syt_filtered(
    shape: &[usize],
    rows: &mut Vec<Vec<usize>>,
    next: usize,
    allow: &mut dyn FnMut(&[Vec<usize>], usize) -> bool,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> bool,
) -> bool {
    let total: usize = shape.iter().sum();
    if next > total {
        return visit(rows);
    }
    for r in 0..shape.len() {
        let len = rows[r].len();
        let addable = len < shape[r] && (r == 0 || rows[r - 1].len() > len);
        if !addable || !allow(rows, r) {
            continue;
        }
        rows[r].push(next);
        let go_on = fill_syt_filtered(shape, rows, next + 1, allow, visit);
        rows[r].pop();
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn t(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(StandardTableau::new(vec![vec![1, 2], vec![3]]).is_ok());
        assert!(matches!(
            StandardTableau::new(vec![vec![1, 3], vec![2, 4, 5]]).unwrap_err(),
            TableauError::NotAPartition(_)
        ));
        assert_eq!(
            StandardTableau::new(vec![vec![1, 3], vec![2, 1]]).unwrap_err(),
            TableauError::BadEntries { size: 4 }
        );
        assert_eq!(
            StandardTableau::new(vec![vec![2, 1]]).unwrap_err(),
            TableauError::NotIncreasing { value: 1, row: 1, col: 2 }
        );
        assert!(Partition::new(vec![2, 3]).is_err());
    }

    #[test]
    fn reading_words() {
        assert_eq!(t(&[&[1, 2, 3]]).reading_word(), Permutation::identity(3));
        assert_eq!(t(&[&[1], &[2], &[3]]).reading_word(), "321".parse().unwrap());
        assert_eq!(t(&[&[1], &[2], &[3]]).top_down_reading_word(), Permutation::identity(3));
        let big = t(&[&[1, 2, 5, 7, 10], &[3, 8, 11], &[4, 9], &[6, 12]]);
        assert_eq!(big.reading_word().values(), &[6, 12, 4, 9, 3, 8, 11, 1, 2, 5, 7, 10]);
    }

    #[test]
    fn cropping_chain() {
        let mut cur = t(&[&[1, 2, 5, 7, 10], &[3, 8, 11], &[4, 9], &[6, 12]]);
        let expected = [
            t(&[&[1, 4, 6], &[2, 5], &[3, 7]]),
            t(&[&[1, 3], &[2, 4]]),
            t(&[&[1, 2]]),
            StandardTableau::empty(),
        ];
        for want in expected {
            cur = cur.crop();
            assert_eq!(cur, want);
        }
        assert_eq!(t(&[&[1, 2, 3]]).crop(), StandardTableau::empty());
    }

    #[test]
    fn syt_counts() {
        // Hook length formula values.
        let count = |p: Vec<usize>| StandardTableau::all_of_shape(&Partition::new(p).unwrap()).len();
        assert_eq!(count(vec![3, 2]), 5);
        assert_eq!(count(vec![2, 2, 1]), 5);
        assert_eq!(count(vec![3, 2, 1]), 16);
        assert_eq!(count(vec![5, 3, 2, 2]), 4455);
        let total: usize = Partition::all_of_size(6)
            .iter()
            .map(|p| StandardTableau::all_of_shape(p).len())
            .sum();
        assert_eq!(total, 76);
        assert_eq!(Partition::all_of_size(8).len(), 22);
    }

    #[test]
    fn parse_both_formats() {
        let plain = "1 2 5 7 10\n3 8 11\n4 9\n6 12\n";
        let json = r#"{"shape":[5,3,2,2],"rows":[[1,2,5,7,10],[3,8,11],[4,9],[6,12]]}"#;
        let a = StandardTableau::parse(plain).unwrap();
        let b = StandardTableau::parse(json).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), plain);
        assert_eq!(serde_json::to_string(&a.to_document()).unwrap(), json);
        assert!(matches!(
            StandardTableau::parse(r#"{"shape":[2],"rows":[[1],[2]]}"#).unwrap_err(),
            TableauError::ShapeMismatch { .. }
        ));
        assert!(StandardTableau::parse("1 x").is_err());
        assert_eq!(StandardTableau::parse("").unwrap(), StandardTableau::empty());
    }
}
