//! Operator words for the functional `Φ^w_v = ev0 ∘ ∂_w ∘ (· 𝔖_v)`.

use std::fmt;

use num_bigint::BigInt;

use super::SchubertError;
use crate::perm::{common_window, rothe_diagram, PermError, Permutation};
use crate::poly::{bs_operator, divided_difference, ev0, IntPolynomial};
use crate::wa::is_well_aligned;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `π_i`.
    Bs(usize),
    /// `∂_j`.
    Dd(usize),
    Ev0,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Bs(i) => write!(f, "π{i}"),
            Atom::Dd(j) => write!(f, "∂{j}"),
            Atom::Ev0 => f.write_str("ev0"),
        }
    }
}

/// A sequence of atoms stored in application order: `ops()[0]` acts first.
///
/// `Display` prints composition order (the last atom applied is leftmost),
/// with a space before every `π` and `ev0` and none before `∂`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OperatorWord {
    ops: Vec<Atom>,
}

impl OperatorWord {
    pub fn new(ops: Vec<Atom>) -> Result<Self, SchubertError> {
        let evs = ops.iter().filter(|a| **a == Atom::Ev0).count();
        if evs > 1 || (evs == 1 && ops.last() != Some(&Atom::Ev0)) {
            return Err(SchubertError::MalformedWord);
        }
        Ok(Self { ops })
    }

    pub fn ops(&self) -> &[Atom] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn num_divided_differences(&self) -> usize {
        self.ops.iter().filter(|a| matches!(a, Atom::Dd(_))).count()
    }

    /// Applies every atom except `EV0`.
    pub fn apply(&self, f: &IntPolynomial) -> IntPolynomial {
        let mut g = f.clone();
        for atom in &self.ops {
            if g.is_zero() {
                break;
            }
            g = match *atom {
                Atom::Bs(i) => bs_operator(i, &g),
                Atom::Dd(j) => divided_difference(j, &g),
                Atom::Ev0 => g,
            };
        }
        g
    }

    /// The constant term of [`apply`](Self::apply).
    ///
    /// Only the part of `f` of degree equal to the number of divided
    /// differences can survive, so the rest is dropped up front.
    pub fn evaluate(&self, f: &IntPolynomial) -> BigInt {
        let deg = self.num_divided_differences();
        let mut part = IntPolynomial::zero();
        for (m, c) in f.terms() {
            if m.degree() == deg {
                part.add_term(m.clone(), c.clone());
            }
        }
        ev0(&self.apply(&part))
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, atom) in self.ops.iter().rev().enumerate() {
            if k > 0 && !matches!(atom, Atom::Dd(_)) {
                f.write_str(" ")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

/// Unrolls `Φ^w_v = Φ^{δw}_{δv} π_i ∂_i ∂_{i+1} ⋯ ∂_{j-1}` with
/// `i = v^{-1}(1)`, `j = w^{-1}(1)`, ending in `EV0`.
pub fn phi_word_general(v: &Permutation, w: &Permutation) -> Result<OperatorWord, SchubertError> {
    if !is_well_aligned(v, w) {
        return Err(SchubertError::NotWellAligned { v: v.clone(), w: w.clone() });
    }
    let (mut v, mut w) = common_window(v, w);
    let mut ops = Vec::new();
    while v.window() > 0 {
        let (i, j) = (v.position_of(1), w.position_of(1));
        ops.extend((i..j).rev().map(Atom::Dd));
        ops.push(Atom::Bs(i));
        v = v.delta_remove();
        w = w.delta_remove();
    }
    ops.push(Atom::Ev0);
    OperatorWord::new(ops)
}

/// The word read off the skew diagram `D(w) \ D(v)` for dominant `v`: level
/// `k` contributes `π_{c_k+1} ∂_{c_k+1} ⋯ ∂_{c_k+r_k}`, where `r_k` counts
/// boxes of the skew diagram in row `k` and `c = code(v^{-1})`.
pub fn phi_word_dominant(v: &Permutation, w: &Permutation) -> Result<OperatorWord, SchubertError> {
    if !v.is_dominant() {
        return Err(PermError::NotDominant(v.clone()).into());
    }
    if !is_well_aligned(v, w) {
        return Err(SchubertError::NotWellAligned { v: v.clone(), w: w.clone() });
    }
    let (v, w) = common_window(v, w);
    let n = v.window();
    let r = rothe_diagram(&w).difference(&rothe_diagram(&v)).row_counts(n);
    let c = v.inverse().lehmer_code();
    let mut ops = Vec::new();
    for k in 0..n {
        ops.extend((c[k] + 1..=c[k] + r[k]).rev().map(Atom::Dd));
        ops.push(Atom::Bs(c[k] + 1));
    }
    ops.push(Atom::Ev0);
    OperatorWord::new(ops)
}
