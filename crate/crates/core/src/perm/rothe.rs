//! Rothe diagrams and the dominant lift.

use std::collections::BTreeSet;
use std::fmt;

use super::{PermError, Permutation};

/// A finite set of `(row, column)` boxes, 1-indexed.
///
/// For Rothe diagrams the row is a value coordinate and the column a position
/// coordinate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BoxSet {
    boxes: BTreeSet<(usize, usize)>,
}

impl BoxSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, row: usize, col: usize) -> bool {
        self.boxes.insert((row, col))
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.boxes.contains(&(row, col))
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Boxes in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.boxes.iter().copied()
    }

    pub fn is_subset(&self, other: &BoxSet) -> bool {
        self.boxes.is_subset(&other.boxes)
    }

    /// `self ∖ other`.
    pub fn difference(&self, other: &BoxSet) -> BoxSet {
        BoxSet { boxes: self.boxes.difference(&other.boxes).copied().collect() }
    }

    /// Number of boxes in each row `1..=rows`.
    pub fn row_counts(&self, rows: usize) -> Vec<usize> {
        let mut counts = vec![0; rows];
        for &(r, _) in &self.boxes {
            if r <= rows {
                counts[r - 1] += 1;
            }
        }
        counts
    }

    /// Whether the boxes form a Young diagram justified to the top-left corner.
    pub fn is_young_diagram(&self) -> bool {
        self.boxes.iter().all(|&(r, c)| {
            (r == 1 || self.contains(r - 1, c)) && (c == 1 || self.contains(r, c - 1))
        })
    }
}

impl FromIterator<(usize, usize)> for BoxSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        BoxSet { boxes: iter.into_iter().collect() }
    }
}

impl fmt::Display for BoxSet {
    /// Draws the boxes as a grid of `#` and `.` covering their bounding rectangle
    /// from `(1, 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.boxes.iter().map(|b| b.0).max().unwrap_or(0);
        let cols = self.boxes.iter().map(|b| b.1).max().unwrap_or(0);
        for r in 1..=rows {
            let line: String =
                (1..=cols).map(|c| if self.contains(r, c) { '#' } else { '.' }).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// The Rothe diagram `{(w(j), i) : i < j, w(i) > w(j)}`.
pub fn rothe_diagram(w: &Permutation) -> BoxSet {
    let v = w.values();
    let mut d = BoxSet::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                d.insert(v[j], i + 1);
            }
        }
    }
    d
}

/// `v ≤_B w` for dominant `v`, as containment of Rothe diagrams.
pub fn dominant_bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool, PermError> {
    if !v.is_dominant() {
        return Err(PermError::NotDominant(v.clone()));
    }
    Ok(rothe_diagram(v).is_subset(&rothe_diagram(w)))
}

/// The dominant permutation `v↑` reached from `v` by left-multiplying with
/// `s_i` for critical `i`, always taking the smallest critical index.
///
/// Returns `v↑` together with the applied indices in order, so that
/// `v↑ = s_{i_m} ⋯ s_{i_1} · v`.
pub fn dominant_lift(v: &Permutation) -> (Permutation, Vec<usize>) {
    let mut cur = v.clone();
    let mut steps = Vec::new();
    while let Some(&i) = cur.critical_set().first() {
        cur = cur.left_swap(i);
        steps.push(i);
    }
    (cur, steps)
}
