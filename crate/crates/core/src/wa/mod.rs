//! Aligned, well-aligned and very well-aligned pairs, the reduction to a
//! dominant bottom, and translation equivalence of intervals.

mod pieri;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::perm::{common_window, dominant_lift, witness, BruhatInterval, PermError, Permutation};

pub use pieri::{
    iterated_pieri, pieri_count_to, pieri_step, raw_chain_counts, wa_coeff, wa_expansion, PieriChain,
};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum WaError {
    #[error("({v}, {w}) is not well-aligned")]
    NotWellAligned { v: Permutation, w: Permutation },
    #[error("{i} is not a critical value of {v}")]
    NotCritical { i: usize, v: Permutation },
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("k sequence {0:?} is not weakly decreasing")]
    NotDecreasing(Vec<usize>),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Checks the top level of the alignment conditions on raw one-line vectors
/// of equal length: `v^{-1}(1) ≤ w^{-1}(1)`, every index in between an
/// ascent of `v`, and (if `descents_in_w`) a descent of `w`.
fn level_ok(v: &[usize], w: &[usize], descents_in_w: bool) -> bool {
    let i = v.iter().position(|&x| x == 1).unwrap_or(0);
    let j = w.iter().position(|&x| x == 1).unwrap_or(0);
    i <= j && (i..j).all(|t| v[t] < v[t + 1] && (!descents_in_w || w[t] > w[t + 1]))
}

fn remove_one(v: &mut Vec<usize>) {
    v.retain(|&x| x != 1);
    for x in v.iter_mut() {
        *x -= 1;
    }
}

fn recursive_check(v: &Permutation, w: &Permutation, descents_in_w: bool) -> bool {
    let (v, w) = common_window(v, w);
    let (mut v, mut w) = (v.values().to_vec(), w.values().to_vec());
    while v.len() > 1 {
        if !level_ok(&v, &w, descents_in_w) {
            return false;
        }
        remove_one(&mut v);
        remove_one(&mut w);
    }
    true
}

/// `v^{-1}(1) ≤ w^{-1}(1)` and every index from `v^{-1}(1)` to
/// `w^{-1}(1) - 1` is an ascent of `v`.
pub fn is_aligned(v: &Permutation, w: &Permutation) -> bool {
    let (v, w) = common_window(v, w);
    level_ok(v.values(), w.values(), false)
}

/// `(v, w)` is aligned and so is every `(δ^k v, δ^k w)`.
pub fn is_well_aligned(v: &Permutation, w: &Permutation) -> bool {
    recursive_check(v, w, false)
}

/// Well-aligned with each intermediate index range also descents of `w`.
pub fn is_very_well_aligned(v: &Permutation, w: &Permutation) -> bool {
    recursive_check(v, w, true)
}

/// `(v, w)` and `(w w_o, v w_o)` are both well-aligned.
pub fn is_very_well_aligned_by_reversal(v: &Permutation, w: &Permutation) -> bool {
    let (v, w) = common_window(v, w);
    let wo = Permutation::longest(v.window());
    is_well_aligned(&v, &w) && is_well_aligned(&w.compose(&wo), &v.compose(&wo))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Aligned,
    WellAligned,
    VeryWellAligned,
}

impl Flavor {
    pub fn holds(self, v: &Permutation, w: &Permutation) -> bool {
        match self {
            Flavor::Aligned => is_aligned(v, w),
            Flavor::WellAligned => is_well_aligned(v, w),
            Flavor::VeryWellAligned => is_very_well_aligned(v, w),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Aligned => "aligned",
            Flavor::WellAligned => "well_aligned",
            Flavor::VeryWellAligned => "very_well_aligned",
        })
    }
}

/// A pair satisfying the predicate named by its flavor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlignedPair {
    v: Permutation,
    w: Permutation,
    flavor: Flavor,
}

impl AlignedPair {
    pub fn new(v: Permutation, w: Permutation, flavor: Flavor) -> Result<Self, WaError> {
        if !flavor.holds(&v, &w) {
            return match flavor {
                Flavor::Aligned => Err(WaError::Postcondition(format!("({v}, {w}) is not aligned"))),
                _ => Err(WaError::NotWellAligned { v, w }),
            };
        }
        let (v, w) = common_window(&v, &w);
        Ok(Self { v, w, flavor })
    }

    /// The strongest flavor that holds, if any.
    pub fn classify(v: &Permutation, w: &Permutation) -> Option<Self> {
        [Flavor::VeryWellAligned, Flavor::WellAligned, Flavor::Aligned]
            .into_iter()
            .find(|f| f.holds(v, w))
            .map(|flavor| {
                let (v, w) = common_window(v, w);
                Self { v, w, flavor }
            })
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
}

/// `(s_i v, s_i w)` for a critical value `i` of `v`, checking everything that
/// is supposed to hold along the way.
pub fn swap_lift(
    v: &Permutation,
    w: &Permutation,
    i: usize,
) -> Result<(Permutation, Permutation), WaError> {
    if !is_well_aligned(v, w) {
        return Err(WaError::NotWellAligned { v: v.clone(), w: w.clone() });
    }
    if !v.critical_set().contains(&i) {
        return Err(WaError::NotCritical { i, v: v.clone() });
    }
    if w.position_of(i) >= w.position_of(i + 1) {
        return Err(WaError::Postcondition(format!(
            "w^-1({i}) < w^-1({}) fails for ({v}, {w})",
            i + 1
        )));
    }
    let (sv, sw) = (v.left_swap(i), w.left_swap(i));
    if sv.length() != v.length() + 1 || sw.length() != w.length() + 1 {
        return Err(WaError::Postcondition(format!("s_{i} does not raise both lengths of ({v}, {w})")));
    }
    if witness(&sv, w).is_none() {
        return Err(WaError::Postcondition(format!("s_{i} {v} = {sv} is still below {w}")));
    }
    if !is_well_aligned(&sv, &sw) {
        return Err(WaError::Postcondition(format!("({sv}, {sw}) is not well-aligned")));
    }
    Ok((sv, sw))
}

/// `(v↑, v↑ v^{-1} w)`, reached by repeated [`swap_lift`] along the
/// critical-value steps of [`dominant_lift`].
pub fn dominant_form(v: &Permutation, w: &Permutation) -> Result<(Permutation, Permutation), WaError> {
    if !is_well_aligned(v, w) {
        return Err(WaError::NotWellAligned { v: v.clone(), w: w.clone() });
    }
    let (_, steps) = dominant_lift(v);
    let (mut cur_v, mut cur_w) = common_window(v, w);
    for i in steps {
        (cur_v, cur_w) = swap_lift(&cur_v, &cur_w, i)?;
    }
    if !cur_v.is_dominant() || !is_well_aligned(&cur_v, &cur_w) {
        return Err(WaError::Postcondition(format!("({cur_v}, {cur_w}) has no dominant bottom")));
    }
    debug_assert_eq!(cur_w, cur_v.compose(&v.inverse()).compose(w));
    Ok((cur_v, cur_w))
}

/// Whether `{a.bottom^{-1} u : u ∈ a}` equals `{b.bottom^{-1} u : u ∈ b}`.
pub fn translation_equivalent(a: &BruhatInterval, b: &BruhatInterval) -> bool {
    if a.rank() != b.rank() {
        return false;
    }
    let left: BTreeSet<Permutation> = a.normalized_members().into_iter().collect();
    let right: BTreeSet<Permutation> = b.normalized_members().into_iter().collect();
    left == right
}

/// Well-aligned pairs inside `S_n` whose bottom is `v`.
pub fn well_aligned_tops(v: &Permutation, n: usize) -> Vec<Permutation> {
    crate::perm::all_permutations(n)
        .into_iter()
        .filter(|w| is_well_aligned(v, w))
        .collect()
}
