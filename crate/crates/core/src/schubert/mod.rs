//! Schubert polynomials, expansion in the Schubert basis, and structure
//! constants `c^w_{u,v}` computed directly from polynomials.

mod phi;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::perm::{dominant_lift, Permutation, PermError};
use crate::poly::{self, divided_difference, IntPolynomial, PolyError};

pub use phi::{phi_word_dominant, phi_word_general, Atom, OperatorWord};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum SchubertError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("Schubert expansion does not reproduce the input polynomial (at {at})")]
    Reconstruction { at: Permutation },
    #[error("({v}, {w}) is not well-aligned")]
    NotWellAligned { v: Permutation, w: Permutation },
    #[error("EV0 may only appear once, as the last atom")]
    MalformedWord,
}

const CACHE_CAP: usize = 1 << 16;

fn cache() -> &'static RwLock<HashMap<Permutation, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<Permutation, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Computes `𝔖_u` from the dominant permutation `d` above `u` in right weak
/// order: `𝔖_d = x^{code(d)}`, then divided differences walk down to `u`.
fn compute_schubert(u: &Permutation) -> IntPolynomial {
    // (u^{-1})↑ = s_{i_m} ⋯ s_{i_1} u^{-1}, so d = u s_{i_1} ⋯ s_{i_m} with each
    // step raising the length by one.
    let (lift, steps) = dominant_lift(&u.inverse());
    let d = lift.inverse();
    let mut f = IntPolynomial::x_power(&d.lehmer_code());
    for &i in steps.iter().rev() {
        f = divided_difference(i, &f);
    }
    f
}

/// `𝔖_u`, memoized in a shared cache keyed by the trimmed permutation.
pub fn schubert_poly_shared(u: &Permutation) -> Arc<IntPolynomial> {
    let key = u.trimmed();
    if let Some(f) = cache().read().expect("cache lock").get(&key) {
        return Arc::clone(f);
    }
    let f = Arc::new(compute_schubert(&key));
    let mut guard = cache().write().expect("cache lock");
    if guard.len() >= CACHE_CAP {
        guard.clear();
    }
    guard.entry(key).or_insert_with(|| Arc::clone(&f));
    f
}

/// The Schubert polynomial `𝔖_u`.
pub fn schubert_poly(u: &Permutation) -> IntPolynomial {
    (*schubert_poly_shared(u)).clone()
}

/// `𝔖_u`, rejecting permutations whose polynomial would exceed the
/// configured variable bound.
pub fn try_schubert_poly(u: &Permutation) -> Result<IntPolynomial, SchubertError> {
    let vars = u.descents().last().copied().unwrap_or(0);
    poly::check_vars(vars, poly::max_vars())?;
    Ok(schubert_poly(u))
}

/// `𝔖_u = ∂_{u^{-1} w_o} x_1^{n-1} x_2^{n-2} ⋯ x_{n-1}` computed in `S_n`.
///
/// An independent route to [`schubert_poly`]; `n` must be at least the
/// support of `u`.
pub fn schubert_poly_in_window(u: &Permutation, n: usize) -> IntPolynomial {
    let u = u.padded(n);
    let staircase: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
    let wo = Permutation::longest(n);
    poly::partial_w(&u.inverse().compose(&wo), &IntPolynomial::x_power(&staircase))
}

/// A finite integer combination `Σ c_w 𝔖_w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchubertExpansion {
    coefficients: BTreeMap<Permutation, BigInt>,
}

impl SchubertExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c` to the coefficient of `w`, dropping it if it becomes zero.
    pub fn add(&mut self, w: Permutation, c: BigInt) {
        let w = w.trimmed();
        let entry = self.coefficients.entry(w.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&w);
        }
    }

    pub fn get(&self, w: &Permutation) -> BigInt {
        self.coefficients.get(w).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Terms in lexicographic order of the trimmed permutations.
    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &BigInt)> {
        self.coefficients.iter()
    }

    /// Terms sorted by length, then lexicographically.
    pub fn sorted_terms(&self) -> Vec<(&Permutation, &BigInt)> {
        let mut terms: Vec<_> = self.coefficients.iter().collect();
        terms.sort_by(|a, b| a.0.length().cmp(&b.0.length()).then_with(|| a.0.cmp(b.0)));
        terms
    }

    /// Only the terms indexed by permutations in `S_n`.
    pub fn restrict_to(&self, n: usize) -> Self {
        Self {
            coefficients: self
                .coefficients
                .iter()
                .filter(|(w, _)| w.support() <= n)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest support among the indexing permutations.
    pub fn support(&self) -> usize {
        self.coefficients.keys().map(Permutation::support).max().unwrap_or(0)
    }

    /// `Σ c_w 𝔖_w` as a polynomial.
    pub fn to_polynomial(&self) -> IntPolynomial {
        let mut f = IntPolynomial::zero();
        for (w, c) in &self.coefficients {
            f += &schubert_poly_shared(w).scale(c);
        }
        f
    }

    /// One line `coefficient  permutation` per term (two spaces), with each
    /// permutation written on window `max(window, support)`.
    pub fn render(&self, window: usize) -> String {
        let n = window.max(self.support()).max(1);
        let mut out = String::new();
        for (w, c) in self.sorted_terms() {
            out.push_str(&format!("{c}  {}\n", w.padded(n).to_compact()));
        }
        out
    }

    /// Structured form: `[{"permutation": "..", "coefficient": ".."}, ...]`
    /// in rendering order.
    pub fn to_records(&self, window: usize) -> Vec<ExpansionRecord> {
        let n = window.max(self.support()).max(1);
        self.sorted_terms()
            .into_iter()
            .map(|(w, c)| ExpansionRecord {
                permutation: w.padded(n).to_compact(),
                coefficient: c.to_string(),
            })
            .collect()
    }
}

/// One term of an expansion in structured output; the coefficient is a
/// decimal string so that values beyond 64 bits survive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionRecord {
    pub permutation: String,
    pub coefficient: String,
}

impl fmt::Display for SchubertExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

/// Expands a homogeneous polynomial in the Schubert basis.
///
/// Terms are peeled off by repeatedly taking the lexicographically smallest
/// monomial `c x^a`, which is the leading monomial of `𝔖_w` for the
/// permutation `w` with Lehmer code `a`, and subtracting `c 𝔖_w`. Every
/// coefficient is then re-derived as `ev0(∂_w f)` and must agree.
pub fn expand_schubert(f: &IntPolynomial) -> Result<SchubertExpansion, SchubertError> {
    if !f.is_homogeneous() {
        return Err(PolyError::NotHomogeneous.into());
    }
    let mut rest = f.clone();
    let mut out = SchubertExpansion::new();
    while let Some((m, c)) = rest.lex_min_term() {
        let code: Vec<usize> = m.exponents().iter().map(|&e| e as usize).collect();
        let w = Permutation::from_lehmer_code(&code)?;
        let c = c.clone();
        rest = &rest - &schubert_poly_shared(&w).scale(&c);
        out.add(w, c);
    }
    for (w, c) in out.iter() {
        if &poly::ev0_partial_w(w, f) != c {
            return Err(SchubertError::Reconstruction { at: w.clone() });
        }
    }
    Ok(out)
}

/// `c^w_{u,v} = ev0(∂_w(𝔖_u 𝔖_v))`.
pub fn lr_coeff(u: &Permutation, v: &Permutation, w: &Permutation) -> BigInt {
    if u.length() + v.length() != w.length() {
        return BigInt::zero();
    }
    let prod = &*schubert_poly_shared(u) * &*schubert_poly_shared(v);
    poly::ev0_partial_w(w, &prod)
}

/// `Φ^w_v(f) = ev0(∂_w(f 𝔖_v))`.
pub fn phi_functional(v: &Permutation, w: &Permutation, f: &IntPolynomial) -> BigInt {
    let prod = f * &*schubert_poly_shared(v);
    poly::ev0_partial_w(w, &prod)
}

/// All `c^w_{u,v}` with `u, w` ranging over `S_n`, as an expansion of
/// `𝔖_v 𝔖_u` truncated to `S_n`; only `u` with `ℓ(u) = ℓ(w) - ℓ(v)` can
/// contribute. Returns `{u ↦ c^w_{u,v}}`.
pub fn oracle_expansion(v: &Permutation, w: &Permutation, n: usize) -> SchubertExpansion {
    let target = w.length().checked_sub(v.length());
    let mut out = SchubertExpansion::new();
    let Some(len) = target else { return out };
    for u in crate::perm::all_permutations(n) {
        if u.length() == len {
            let c = lr_coeff(&u, v, w);
            if !c.is_zero() {
                debug_assert!(c.is_positive());
                out.add(u, c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::poly::{bs_operator, ev0, partial_w, Monomial};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn small_polynomials() {
        assert_eq!(schubert_poly(&Permutation::identity(4)), IntPolynomial::one());
        assert_eq!(schubert_poly(&p("4512367")), IntPolynomial::x_power(&[3, 3]));
        assert_eq!(schubert_poly(&p("4512367")).to_string(), "x1^3 x2^3");
        assert_eq!(schubert_poly(&p("132")).to_string(), "x1 + x2");
        assert_eq!(schubert_poly(&p("1432")).to_string(), "x1^2 x2 + x1 x2^2 + x1^2 x3 + x1 x2 x3 + x2^2 x3");
    }

    #[test]
    fn complete_homogeneous_in_two_variables() {
        // 1523467 has code (0,3): the Schur polynomial in x1, x2 of the one-row
        // partition (3).
        let want = IntPolynomial::from_terms(vec![
            (vec![3, 0], 1),
            (vec![2, 1], 1),
            (vec![1, 2], 1),
            (vec![0, 3], 1),
        ]);
        assert_eq!(schubert_poly(&p("1523467")), want);
        assert_eq!(schubert_poly(&p("1523467")).to_string(), "x1^3 + x1^2 x2 + x1 x2^2 + x2^3");
    }

    #[test]
    fn fast_route_matches_staircase_route() {
        for n in 1..=6 {
            for u in all_permutations(n) {
                assert_eq!(schubert_poly(&u), schubert_poly_in_window(&u, n), "{u}");
            }
        }
        for u in all_permutations(4) {
            assert_eq!(schubert_poly_in_window(&u, 4), schubert_poly_in_window(&u, 6));
        }
    }

    #[test]
    fn leading_monomial_is_lex_min() {
        for u in all_permutations(6) {
            let f = schubert_poly(&u);
            let (m, c) = f.lex_min_term().unwrap();
            assert_eq!(*m, Monomial::from_code(&u.lehmer_code()));
            assert_eq!(*c, BigInt::from(1));
        }
    }

    #[test]
    fn divided_difference_recursion() {
        for u in all_permutations(5) {
            let f = schubert_poly(&u);
            for i in 1..5 {
                let want = if u.has_descent(i) {
                    schubert_poly(&u.right_swap(i))
                } else {
                    IntPolynomial::zero()
                };
                assert_eq!(divided_difference(i, &f), want);
            }
        }
    }

    #[test]
    fn duality_with_constant_terms() {
        let perms = all_permutations(4);
        for u in &perms {
            for w in &perms {
                let want = BigInt::from((u == w) as u8);
                assert_eq!(ev0(&partial_w(w, &schubert_poly(u))), want);
            }
        }
    }

    #[test]
    fn bs_on_schubert() {
        for w in all_permutations(4) {
            let got = bs_operator(1, &schubert_poly(&w));
            let want = if w.apply(1) == 1 {
                schubert_poly(&w.delta_remove())
            } else {
                IntPolynomial::zero()
            };
            assert_eq!(got, want, "{w}");
        }
    }

    #[test]
    fn basis_expansion_roundtrip() {
        for u in all_permutations(5) {
            let e = expand_schubert(&schubert_poly(&u)).unwrap();
            assert_eq!(e.len(), 1);
            assert_eq!(e.get(&u), BigInt::from(1));
        }
        assert!(expand_schubert(&(&IntPolynomial::var(1) + &IntPolynomial::one())).is_err());
        assert!(expand_schubert(&IntPolynomial::zero()).unwrap().is_empty());
    }

    #[test]
    fn monk_products() {
        // x1 𝔖_u expanded against the oracle on both sides.
        for u in all_permutations(3) {
            let f = &IntPolynomial::var(1) * &schubert_poly(&u);
            let e = expand_schubert(&f).unwrap();
            assert_eq!(e.to_polynomial(), f);
            for (w, c) in e.iter() {
                assert_eq!(&lr_coeff(&u, &p("21"), w), c);
            }
        }
    }

    #[test]
    fn worked_product() {
        let f = &IntPolynomial::x_power(&[3, 3]) * &schubert_poly(&p("1476235"));
        let e = expand_schubert(&f).unwrap().restrict_to(7);
        let want: Vec<Permutation> =
            ["4765123", "5763124", "6735124", "6752134"].iter().map(|s| p(s)).collect();
        let got: Vec<Permutation> = e.iter().map(|(w, _)| w.clone()).collect();
        let mut want_sorted = want.clone();
        want_sorted.sort();
        assert_eq!(got, want_sorted);
        assert!(e.iter().all(|(_, c)| *c == BigInt::from(1)));
    }

    #[test]
    fn structure_constants_on_s4() {
        let perms = all_permutations(4);
        let wo = Permutation::longest(4);
        for u in &perms {
            for v in &perms {
                for w in &perms {
                    let c = lr_coeff(u, v, w);
                    assert!(!c.is_negative());
                    assert_eq!(c, lr_coeff(v, u, w));
                    // c^w_{u,v} = c^{w_o u}_{v, w_o w}
                    let flipped = lr_coeff(v, &wo.compose(w), &wo.compose(u));
                    assert_eq!(c, flipped, "{u} {v} {w}");
                    assert_eq!(phi_functional(v, w, &schubert_poly(u)), c);
                }
            }
        }
        assert_eq!(lr_coeff(&Permutation::identity(3), &p("231"), &p("231")), BigInt::from(1));
    }

    #[test]
    fn worked_coefficients() {
        let (v, w) = (p("1523467"), p("7123654"));
        assert_eq!(lr_coeff(&p("4123765"), &v, &w), BigInt::from(1));
        assert_eq!(phi_functional(&v, &w, &schubert_poly(&p("2153764"))), BigInt::from(1));
    }

    #[test]
    fn rendering() {
        let mut e = SchubertExpansion::new();
        e.add(p("213"), BigInt::from(2));
        e.add(p("132"), BigInt::from(1));
        e.add(p("1"), BigInt::from(1));
        assert_eq!(e.render(3), "1  123\n1  132\n2  213\n");
        e.add(p("213"), BigInt::from(-2));
        assert_eq!(e.len(), 2);
    }
}
