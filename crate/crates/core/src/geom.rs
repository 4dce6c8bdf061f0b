//! Smoothness of Richardson varieties `X_v^w` at torus-fixed points, decided
//! by counting transpositions that stay inside the Bruhat interval.

use std::fmt;

use serde::Serialize;

use crate::perm::{common_window, BruhatInterval, PermError, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SmoothMode {
    /// Check the two endpoints `v` and `w` only.
    TwoPoint,
    /// Check every `u ∈ [v, w]`.
    AllPoints,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("{u} is not in the interval [{v}, {w}]")]
    OutsideInterval { u: Permutation, v: Permutation, w: Permutation },
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub interval: BruhatInterval,
    pub fixed_point: Permutation,
    pub deodhar_count: usize,
    pub codim_bound: usize,
    pub smooth_at_point: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessRecord {
    pub u: String,
    pub count: usize,
    pub bound: usize,
    pub smooth: bool,
}

impl SmoothnessReport {
    pub fn to_record(&self) -> SmoothnessRecord {
        SmoothnessRecord {
            u: self.fixed_point.to_compact(),
            count: self.deodhar_count,
            bound: self.codim_bound,
            smooth: self.smooth_at_point,
        }
    }
}

impl fmt::Display for SmoothnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u={} count={} bound={} smooth={}",
            self.fixed_point.to_compact(),
            self.deodhar_count,
            self.codim_bound,
            self.smooth_at_point
        )
    }
}

fn count_in(interval: &BruhatInterval, u: &Permutation) -> usize {
    let n = interval.top().window().max(u.window());
    let u = u.padded(n);
    let mut count = 0;
    for a in 1..=n {
        for b in a + 1..=n {
            if interval.contains(&u.right_transpose(a, b)) {
                count += 1;
            }
        }
    }
    count
}

fn report(interval: &BruhatInterval, u: &Permutation) -> SmoothnessReport {
    let deodhar_count = count_in(interval, u);
    let codim_bound = interval.rank();
    SmoothnessReport {
        interval: interval.clone(),
        fixed_point: u.padded(interval.top().window().max(u.window())),
        deodhar_count,
        codim_bound,
        smooth_at_point: deodhar_count == codim_bound,
    }
}

/// `#{t_{ab} : u t_{ab} ∈ [v, w]}` against the bound `ℓ(w) - ℓ(v)`, over all
/// transpositions of the common window.
pub fn deodhar_count(u: &Permutation, v: &Permutation, w: &Permutation) -> Result<SmoothnessReport, GeomError> {
    let (v, w) = common_window(v, w);
    let interval = BruhatInterval::new(v.clone(), w.clone())?;
    if !interval.contains(u) {
        return Err(GeomError::OutsideInterval { u: u.clone(), v, w });
    }
    Ok(report(&interval, u))
}

/// Reports at the points selected by `mode`, in lexicographic order.
pub fn smoothness_reports(
    v: &Permutation,
    w: &Permutation,
    mode: SmoothMode,
) -> Result<Vec<SmoothnessReport>, GeomError> {
    let (v, w) = common_window(v, w);
    let interval = BruhatInterval::new(v.clone(), w.clone())?;
    let points = match mode {
        SmoothMode::TwoPoint if v == w => vec![v],
        SmoothMode::TwoPoint => vec![v, w],
        SmoothMode::AllPoints => interval.members(),
    };
    Ok(points.iter().map(|u| report(&interval, u)).collect())
}

/// Whether the Deodhar bound is attained at every point selected by `mode`.
pub fn is_smooth_richardson(v: &Permutation, w: &Permutation, mode: SmoothMode) -> Result<bool, GeomError> {
    Ok(smoothness_reports(v, w, mode)?.iter().all(|r| r.smooth_at_point))
}
