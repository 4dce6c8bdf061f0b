//! The `S_∞` action, divided differences, Bergeron–Sottile operators and
//! constant-term evaluation.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{IntPolynomial, Monomial};
use crate::perm::Permutation;

/// `s_i f`: exchanges `x_i` and `x_{i+1}`.
pub fn s_action(i: usize, f: &IntPolynomial) -> IntPolynomial {
    assert!(i >= 1);
    let mut out = IntPolynomial::zero();
    for (m, c) in f.terms() {
        out.add_term(m.swapped(i), c.clone());
    }
    out
}

/// `∂_i f = (f - s_i f) / (x_i - x_{i+1})`.
///
/// Each monomial `x^r x_i^a x_{i+1}^b` is divided exactly: for `a > b` the
/// quotient is `x^r (x_i x_{i+1})^b (x_i^{a-b-1} + x_i^{a-b-2} x_{i+1} + ⋯ + x_{i+1}^{a-b-1})`,
/// for `a < b` it is the negative of the same sum with `a` and `b` exchanged,
/// and for `a = b` it vanishes.
pub fn divided_difference(i: usize, f: &IntPolynomial) -> IntPolynomial {
    assert!(i >= 1);
    let mut out = IntPolynomial::zero();
    for (m, c) in f.terms() {
        let (a, b) = (m.exponent(i), m.exponent(i + 1));
        if a == b {
            continue;
        }
        let (hi, lo, coeff) = if a > b { (a, b, c.clone()) } else { (b, a, -c) };
        let span = hi - lo;
        for k in 0..span {
            out.add_term(m.with_pair(i, lo + span - 1 - k, lo + k), coeff.clone());
        }
    }
    out
}

/// `π_i f = f(x_1, …, x_{i-1}, 0, x_i, x_{i+1}, …)`.
pub fn bs_operator(i: usize, f: &IntPolynomial) -> IntPolynomial {
    assert!(i >= 1);
    let mut out = IntPolynomial::zero();
    for (m, c) in f.terms() {
        if m.exponent(i) == 0 {
            out.add_term(m.remove_slot(i), c.clone());
        }
    }
    out
}

/// The constant term.
pub fn ev0(f: &IntPolynomial) -> BigInt {
    f.coefficient(&Monomial::one())
}

/// A reduced word `(i_1, …, i_ℓ)` with `w = s_{i_1} ⋯ s_{i_ℓ}`, found by
/// repeatedly splitting off the first descent on the right.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut cur = w.clone();
    let mut rev = Vec::with_capacity(w.length());
    while let Some(&i) = cur.descents().first() {
        rev.push(i);
        cur = cur.right_swap(i);
    }
    rev.reverse();
    rev
}

/// `∂_w f = ∂_{i_1} ⋯ ∂_{i_ℓ} f` for a reduced word of `w`.
pub fn partial_w(w: &Permutation, f: &IntPolynomial) -> IntPolynomial {
    let mut out = f.clone();
    for &i in reduced_word(w).iter().rev() {
        if out.is_zero() {
            break;
        }
        out = divided_difference(i, &out);
    }
    out
}

/// `∂_w f` followed by [`ev0`], skipping the work when degrees rule out a
/// constant term.
pub(crate) fn ev0_partial_w(w: &Permutation, f: &IntPolynomial) -> BigInt {
    let len = w.length();
    if !f.terms().any(|(m, _)| m.degree() == len) {
        return BigInt::zero();
    }
    let mut homogeneous = IntPolynomial::zero();
    for (m, c) in f.terms() {
        if m.degree() == len {
            homogeneous.add_term(m.clone(), c.clone());
        }
    }
    ev0(&partial_w(w, &homogeneous))
}
