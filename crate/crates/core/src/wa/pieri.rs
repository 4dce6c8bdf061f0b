//! Chains in `k`-Bruhat order and the coefficient rule for well-aligned pairs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{dominant_form, WaError};
use crate::perm::{bruhat_leq, common_window, Permutation};
use crate::schubert::SchubertExpansion;

/// A saturated chain `u ⋖ u t_{a_1 b_1} ⋖ ⋯` in `k`-Bruhat order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PieriChain {
    start: Permutation,
    k: usize,
    covers: Vec<(usize, usize)>,
}

impl PieriChain {
    pub fn start(&self) -> &Permutation {
        &self.start
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn end(&self) -> Permutation {
        let mut x = self.start.clone();
        for &(a, b) in &self.covers {
            x = x.right_transpose(a, b);
        }
        x.trimmed()
    }

    /// Rechecks `a ≤ k < b`, distinct `a`, and that every step is a cover.
    pub fn is_valid(&self) -> bool {
        let mut x = self.start.clone();
        let mut seen = Vec::new();
        for &(a, b) in &self.covers {
            if !(a <= self.k && self.k < b) || seen.contains(&a) {
                return false;
            }
            seen.push(a);
            let y = x.right_transpose(a, b);
            if y.length() != x.length() + 1 {
                return false;
            }
            x = y;
        }
        true
    }
}

type ChainVisitor<'a> = dyn FnMut(&[usize], &[(usize, usize)]) + 'a;

fn is_cover(x: &[usize], a: usize, b: usize) -> bool {
    let (lo, hi) = (x[a - 1], x[b - 1]);
    lo < hi && x[a..b - 1].iter().all(|&c| c < lo || c > hi)
}

/// Walks chains of `k` covers `t_{a_t b_t}` with distinct `a_t ≤ k`, `b_t > k`,
/// visiting each complete chain. When `monotone` is set, `b_1 ≤ b_2 ≤ ⋯`.
fn walk_chains(u: &Permutation, k: usize, monotone: bool, visit: &mut ChainVisitor) {
    // Each cover t_{ab} has b at most one past the current support, since a
    // fixed point in between would sit strictly between x(a) and x(b).
    let n = u.window().max(k) + k;
    let mut x = u.padded(n).values().to_vec();
    let mut covers = Vec::with_capacity(k);
    fn rec(
        x: &mut Vec<usize>,
        k: usize,
        monotone: bool,
        covers: &mut Vec<(usize, usize)>,
        visit: &mut ChainVisitor,
    ) {
        if covers.len() == k {
            visit(x, covers);
            return;
        }
        let n = x.len();
        let b_min = if monotone { covers.last().map_or(k + 1, |&(_, b)| b) } else { k + 1 };
        for a in 1..=k {
            if covers.iter().any(|&(c, _)| c == a) {
                continue;
            }
            for b in b_min..=n {
                if is_cover(x, a, b) {
                    x.swap(a - 1, b - 1);
                    covers.push((a, b));
                    rec(x, k, monotone, covers, visit);
                    covers.pop();
                    x.swap(a - 1, b - 1);
                }
            }
        }
    }
    rec(&mut x, k, monotone, &mut covers, visit);
}

/// All endpoints `w` with `u →^k w`, each with its chain.
///
/// Chains are enumerated with `b_1 ≤ ⋯ ≤ b_k`; under that normalization each
/// endpoint is reached exactly once, which is asserted.
pub fn pieri_step(u: &Permutation, k: usize) -> Vec<(Permutation, PieriChain)> {
    let mut out: BTreeMap<Permutation, PieriChain> = BTreeMap::new();
    walk_chains(u, k, true, &mut |x, covers| {
        let end = Permutation::new(x.to_vec()).expect("chain endpoints are permutations").trimmed();
        let chain = PieriChain { start: u.trimmed(), k, covers: covers.to_vec() };
        let prev = out.insert(end.clone(), chain);
        assert!(prev.is_none(), "endpoint {end} of {u} reached by two normalized {k}-chains");
    });
    out.into_iter().collect()
}

/// Endpoint multiplicities when chains are only required to have distinct
/// `a_t`, without normalizing the order of the covers.
pub fn raw_chain_counts(u: &Permutation, k: usize) -> BTreeMap<Permutation, usize> {
    let mut out = BTreeMap::new();
    walk_chains(u, k, false, &mut |x, _| {
        let end = Permutation::new(x.to_vec()).expect("chain endpoints are permutations").trimmed();
        *out.entry(end).or_insert(0) += 1;
    });
    out
}

fn normalize_ks(ks: &[usize]) -> Result<Vec<usize>, WaError> {
    let ks: Vec<usize> = ks.iter().copied().filter(|&k| k > 0).collect();
    if ks.windows(2).any(|p| p[0] < p[1]) {
        return Err(WaError::NotDecreasing(ks));
    }
    Ok(ks)
}

/// Runs the Pieri levels `k_1, k_2, …` from `u`, keeping only permutations
/// accepted by `keep`; returns the number of level sequences reaching each
/// endpoint.
fn run_levels(
    u: &Permutation,
    ks: &[usize],
    keep: impl Fn(&Permutation) -> bool,
) -> BTreeMap<Permutation, BigInt> {
    let mut layer: BTreeMap<Permutation, BigInt> = BTreeMap::new();
    if keep(u) {
        layer.insert(u.trimmed(), BigInt::one());
    }
    for &k in ks {
        let mut next: BTreeMap<Permutation, BigInt> = BTreeMap::new();
        for (x, c) in &layer {
            for (y, _) in pieri_step(x, k) {
                if keep(&y) {
                    *next.entry(y).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        layer = next;
    }
    layer
}

/// `{w ↦ #(u →^{k_1} ⋯ →^{k_p} w)}`, which is the Schubert expansion of
/// `𝔖_v 𝔖_u` for the dominant `v` with `code(v^{-1}) = ks`.
pub fn iterated_pieri(u: &Permutation, ks: &[usize]) -> Result<SchubertExpansion, WaError> {
    let ks = normalize_ks(ks)?;
    let mut out = SchubertExpansion::new();
    for (w, c) in run_levels(u, &ks, |_| true) {
        out.add(w, c);
    }
    Ok(out)
}

/// The count of [`iterated_pieri`] at a single `target`, pruning every
/// intermediate permutation that is not Bruhat-below it.
pub fn pieri_count_to(u: &Permutation, ks: &[usize], target: &Permutation) -> Result<BigInt, WaError> {
    let ks = normalize_ks(ks)?;
    if u.length() + ks.iter().sum::<usize>() != target.length() {
        return Ok(BigInt::zero());
    }
    let below = |x: &Permutation| {
        let (x, t) = common_window(x, target);
        bruhat_leq(&x, &t)
    };
    Ok(run_levels(u, &ks, below).remove(&target.trimmed()).unwrap_or_default())
}

fn nonzero_code_of_inverse(v: &Permutation) -> Vec<usize> {
    v.inverse().lehmer_code().into_iter().filter(|&k| k > 0).collect()
}

/// `c^w_{u,v}` for well-aligned `(v, w)`, via `c^{v↑ v^{-1} w}_{u, v↑}` and
/// iterated Pieri chains from `u`.
pub fn wa_coeff(u: &Permutation, v: &Permutation, w: &Permutation) -> Result<BigInt, WaError> {
    let (dv, dw) = dominant_form(v, w)?;
    pieri_count_to(u, &nonzero_code_of_inverse(&dv), &dw)
}

/// `{u ↦ c^w_{u,v} : u ∈ S_n}` for well-aligned `(v, w)` in a single Pieri
/// run: `c^{w↑}_{u,v↑} = c^{w_o u}_{v↑, w_o w↑}`, so the chains start at
/// `w_o w↑` and the `S_n` part of the result is reindexed by `w_o`.
pub fn wa_expansion(v: &Permutation, w: &Permutation, n: usize) -> Result<SchubertExpansion, WaError> {
    let (dv, dw) = dominant_form(v, w)?;
    let n = n.max(dw.support());
    let wo = Permutation::longest(n);
    let start = wo.compose(&dw.padded(n));
    let ks = nonzero_code_of_inverse(&dv);
    let fits = |x: &Permutation| x.support() <= n;
    let mut out = SchubertExpansion::new();
    // Permutations leaving S_n never come back, so they are pruned.
    for (x, c) in run_levels(&start, &ks, fits) {
        out.add(wo.compose(&x.padded(n)).trimmed(), c);
    }
    Ok(out)
}
