//! Exhaustive property suite over a window, with swappable arithmetic
//! kernels so that a deliberately broken kernel can be shown to be caught.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::enumcount::{census, check_functional_equation, published_counts, CensusOptions};
use crate::geom::{is_smooth_richardson, SmoothMode};
use crate::perm::{all_permutations, bruhat_leq_full, rothe_diagram, Permutation};
use crate::poly::{ev0, reduced_word, s_action, IntPolynomial, Monomial};
use crate::schubert::{expand_schubert, phi_word_dominant, phi_word_general, schubert_poly};
use crate::tableau::{evacuate, evacuation_paths, is_l_slide, is_richardson, richardson_pair, Partition, StandardTableau};
use crate::wa::{is_very_well_aligned, is_very_well_aligned_by_reversal, is_well_aligned, pieri_step, wa_coeff};

pub type CodeFn = fn(&Permutation) -> Vec<usize>;
pub type DividedDifferenceFn = fn(usize, &IntPolynomial) -> IntPolynomial;
pub type BruhatFn = fn(&Permutation, &Permutation) -> bool;

/// The arithmetic kernels that the suite exercises.
#[derive(Clone, Copy)]
pub struct Kernels {
    pub lehmer_code: CodeFn,
    pub divided_difference: DividedDifferenceFn,
    pub bruhat_leq: BruhatFn,
}

/// Kernel names accepted by [`Kernels::mutated`].
pub const MUTABLE_KERNELS: [&str; 3] = ["lehmer_code", "divided_difference", "bruhat_leq"];

fn library_code(p: &Permutation) -> Vec<usize> {
    p.lehmer_code()
}

fn library_bruhat(u: &Permutation, v: &Permutation) -> bool {
    crate::perm::bruhat_leq(u, v)
}

// Skips the neighbour immediately to the right.
fn broken_code(p: &Permutation) -> Vec<usize> {
    let v = p.values();
    (0..v.len())
        .map(|i| v.iter().skip(i + 2).filter(|&&x| x < v[i]).count())
        .collect()
}

// Forgets the sign-reversed branch of the quotient.
fn broken_divided_difference(i: usize, f: &IntPolynomial) -> IntPolynomial {
    let mut kept = IntPolynomial::zero();
    for (m, c) in f.terms() {
        if m.exponent(i) >= m.exponent(i + 1) {
            kept.add_term(m.clone(), c.clone());
        }
    }
    crate::poly::divided_difference(i, &kept)
}

// Only compares the first entries.
fn broken_bruhat(u: &Permutation, v: &Permutation) -> bool {
    u.apply(1) <= v.apply(1)
}

impl Kernels {
    pub fn standard() -> Self {
        Self {
            lehmer_code: library_code,
            divided_difference: crate::poly::divided_difference,
            bruhat_leq: library_bruhat,
        }
    }

    /// The standard kernels with one replaced by a subtly wrong version.
    pub fn mutated(kernel: &str) -> Option<Self> {
        let mut k = Self::standard();
        match kernel {
            "lehmer_code" => k.lehmer_code = broken_code,
            "divided_difference" => k.divided_difference = broken_divided_difference,
            "bruhat_leq" => k.bruhat_leq = broken_bruhat,
            _ => return None,
        }
        Some(k)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyOutcome {
    pub name: &'static str,
    pub checked: u64,
    pub counterexample: Option<String>,
    pub seconds: f64,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

type Check = fn(usize, &Kernels) -> Result<u64, String>;

/// Property names in the order they are reported.
pub fn property_names() -> Vec<&'static str> {
    PROPERTIES.iter().map(|(name, _)| *name).collect()
}

const PROPERTIES: &[(&str, Check)] = &[
    ("code_sum_is_length", code_sum_is_length),
    ("code_round_trip", code_round_trip),
    ("rothe_rows_are_inverse_code", rothe_rows_are_inverse_code),
    ("divided_difference_exact", divided_difference_exact),
    ("nil_coxeter_relations", nil_coxeter_relations),
    ("schubert_duality", schubert_duality),
    ("schubert_leading_term", schubert_leading_term),
    ("bruhat_cover_closure", bruhat_cover_closure),
    ("bruhat_improved_criterion", bruhat_improved_criterion),
    ("well_aligned_implies_bruhat", well_aligned_implies_bruhat),
    ("dominant_bottom_wa_iff_bruhat", dominant_bottom_wa_iff_bruhat),
    ("very_well_aligned_two_routes", very_well_aligned_two_routes),
    ("dominant_pairs_double_factorial", dominant_pairs_double_factorial),
    ("pieri_matches_products", pieri_matches_products),
    ("three_way_coefficients", three_way_coefficients),
    ("phi_words_agree", phi_words_agree),
    ("smoothness_two_point", smoothness_two_point),
    ("very_well_aligned_smooth", very_well_aligned_smooth),
    ("census_counts", census_counts),
    ("evacuation_involution", evacuation_involution),
    ("richardson_iff_l_slides", richardson_iff_l_slides),
    ("richardson_pairs_very_well_aligned", richardson_pairs_very_well_aligned),
];

/// Runs every property on windows `1..=n` (tableaux up to `n + 2` boxes).
pub fn run_suite(n: usize, kernels: &Kernels) -> Vec<PropertyOutcome> {
    PROPERTIES
        .par_iter()
        .map(|&(name, check)| {
            let start = Instant::now();
            let result = check(n, kernels);
            let seconds = start.elapsed().as_secs_f64();
            match result {
                Ok(checked) => PropertyOutcome { name, checked, counterexample: None, seconds },
                Err(ce) => PropertyOutcome { name, checked: 0, counterexample: Some(ce), seconds },
            }
        })
        .collect()
}

fn inversions(p: &Permutation) -> usize {
    let v = p.values();
    let mut c = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                c += 1;
            }
        }
    }
    c
}

fn windows(n: usize) -> impl Iterator<Item = Permutation> {
    (1..=n).flat_map(all_permutations)
}

fn pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let perms = all_permutations(n);
    let mut out = Vec::with_capacity(perms.len() * perms.len());
    for v in &perms {
        for w in &perms {
            out.push((v.clone(), w.clone()));
        }
    }
    out
}

fn code_sum_is_length(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for p in windows(n) {
        let code = (k.lehmer_code)(&p);
        let sum: usize = code.iter().sum();
        if sum != inversions(&p) {
            return Err(format!("p = {p}: code {code:?} sums to {sum}, inversions {}", inversions(&p)));
        }
        c += 1;
    }
    Ok(c)
}

fn code_round_trip(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for p in windows(n) {
        let code = (k.lehmer_code)(&p);
        match Permutation::from_lehmer_code(&code) {
            Ok(q) if q == p => {}
            other => return Err(format!("p = {p}: code {code:?} decodes to {other:?}")),
        }
        c += 1;
    }
    Ok(c)
}

fn rothe_rows_are_inverse_code(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for p in windows(n) {
        let rows = rothe_diagram(&p).row_counts(p.window());
        let code = (k.lehmer_code)(&p.inverse());
        if rows != code {
            return Err(format!("p = {p}: Rothe rows {rows:?}, code of inverse {code:?}"));
        }
        c += 1;
    }
    Ok(c)
}

/// Every monomial in `vars` variables with exponents at most `max`.
fn small_monomials(vars: usize, max: u8) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u8; vars];
    loop {
        out.push(IntPolynomial::monomial(Monomial::new(&exps)));
        let mut i = 0;
        while i < vars && exps[i] == max {
            exps[i] = 0;
            i += 1;
        }
        if i == vars {
            return out;
        }
        exps[i] += 1;
    }
}

fn divided_difference_exact(n: usize, k: &Kernels) -> Result<u64, String> {
    let vars = n.max(2);
    let mut c = 0;
    for f in small_monomials(vars, 3) {
        for i in 1..vars {
            let q = (k.divided_difference)(i, &f);
            let lhs = &(&IntPolynomial::var(i) - &IntPolynomial::var(i + 1)) * &q;
            if lhs != &f - &s_action(i, &f) {
                return Err(format!("∂{i}({f}) = {q}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn nil_coxeter_relations(n: usize, k: &Kernels) -> Result<u64, String> {
    let vars = n.max(3);
    let d = k.divided_difference;
    let mut c = 0;
    for f in small_monomials(vars, 2) {
        for i in 1..vars {
            if !d(i, &d(i, &f)).is_zero() {
                return Err(format!("∂{i}∂{i}({f}) ≠ 0"));
            }
            if i + 1 < vars && d(i, &d(i + 1, &d(i, &f))) != d(i + 1, &d(i, &d(i + 1, &f))) {
                return Err(format!("braid relation fails at i = {i} on {f}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

/// `∂_{u^{-1} w_o} x^δ` in window `n` with the supplied divided difference.
fn kernel_schubert(u: &Permutation, n: usize, k: &Kernels) -> IntPolynomial {
    let wo = Permutation::longest(n);
    let staircase: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
    let mut f = IntPolynomial::x_power(&staircase);
    for &i in reduced_word(&u.padded(n).inverse().compose(&wo)).iter().rev() {
        f = (k.divided_difference)(i, &f);
    }
    f
}

fn kernel_partial(w: &Permutation, f: &IntPolynomial, k: &Kernels) -> IntPolynomial {
    let mut g = f.clone();
    for &i in reduced_word(w).iter().rev() {
        g = (k.divided_difference)(i, &g);
    }
    g
}

fn schubert_duality(n: usize, k: &Kernels) -> Result<u64, String> {
    let n = n.min(4);
    let perms = all_permutations(n);
    let polys: Vec<IntPolynomial> = perms.iter().map(|u| kernel_schubert(u, n, k)).collect();
    let mut c = 0;
    for (u, f) in perms.iter().zip(&polys) {
        for w in &perms {
            let got = ev0(&kernel_partial(w, f, k));
            let want = if u == w { BigInt::one() } else { BigInt::zero() };
            if got != want {
                return Err(format!("ev0 ∂_{w} S_{u} = {got}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn schubert_leading_term(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for u in all_permutations(n) {
        let f = kernel_schubert(&u, n, k);
        let code = (k.lehmer_code)(&u);
        let want = Monomial::from_code(&code);
        match f.lex_min_term() {
            Some((m, coeff)) if *m == want && coeff.is_one() => {}
            other => return Err(format!("S_{u}: leading term {other:?}, expected x^{code:?}")),
        }
        c += 1;
    }
    Ok(c)
}

/// Bruhat order on `S_n` as the transitive closure of covers, computed from
/// inversion counts alone.
fn closure(n: usize) -> HashMap<Permutation, HashSet<Permutation>> {
    let perms = all_permutations(n);
    let mut by_length: Vec<&Permutation> = perms.iter().collect();
    by_length.sort_by_key(|p| std::cmp::Reverse(inversions(p)));
    let mut above: HashMap<Permutation, HashSet<Permutation>> = HashMap::new();
    for p in by_length {
        let mut set = HashSet::new();
        set.insert(p.clone());
        for a in 1..=n {
            for b in a + 1..=n {
                let q = p.right_transpose(a, b);
                if inversions(&q) == inversions(p) + 1 {
                    set.extend(above[&q].iter().cloned());
                }
            }
        }
        above.insert(p.clone(), set);
    }
    above
}

fn bruhat_cover_closure(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for m in 1..=n.min(5) {
        let above = closure(m);
        for (u, v) in pairs(m) {
            let want = above[&u].contains(&v);
            if (k.bruhat_leq)(&u, &v) != want {
                return Err(format!("{u} ≤ {v} should be {want}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn bruhat_improved_criterion(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for (u, v) in pairs(n) {
        if (k.bruhat_leq)(&u, &v) != bruhat_leq_full(&u, &v) {
            return Err(format!("{u} ≤ {v}: criteria disagree"));
        }
        c += 1;
    }
    Ok(c)
}

fn well_aligned_implies_bruhat(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for (v, w) in pairs(n) {
        if is_well_aligned(&v, &w) {
            if !(k.bruhat_leq)(&v, &w) {
                return Err(format!("({v}, {w}) is well-aligned but not Bruhat comparable"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn dominant_bottom_wa_iff_bruhat(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for (v, w) in pairs(n) {
        if v.is_dominant() {
            if is_well_aligned(&v, &w) != (k.bruhat_leq)(&v, &w) {
                return Err(format!("dominant {v}: well-aligned with {w} differs from {v} ≤ {w}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn very_well_aligned_two_routes(n: usize, _: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for (v, w) in pairs(n) {
        if is_very_well_aligned(&v, &w) != is_very_well_aligned_by_reversal(&v, &w) {
            return Err(format!("({v}, {w}): routes disagree"));
        }
        c += 1;
    }
    Ok(c)
}

fn dominant_pairs_double_factorial(n: usize, _: &Kernels) -> Result<u64, String> {
    let mut df = 1u64;
    for m in 1..=n {
        df *= 2 * m as u64 - 1;
        let got = pairs(m).iter().filter(|(v, w)| v.is_dominant() && is_well_aligned(v, w)).count() as u64;
        if got != df {
            return Err(format!("n = {m}: {got} dominant-bottom pairs, expected {df}"));
        }
    }
    Ok(n as u64)
}

fn pieri_matches_products(n: usize, k: &Kernels) -> Result<u64, String> {
    let m = n.min(4);
    let mut c = 0;
    for u in all_permutations(m) {
        let su = kernel_schubert(&u, m, k);
        for kk in 1..=3 {
            let f = &IntPolynomial::x_power(&vec![1; kk]) * &su;
            let got: Vec<Permutation> = pieri_step(&u, kk).into_iter().map(|(w, _)| w).collect();
            let exp = expand_schubert(&f).map_err(|e| format!("x1..x{kk} S_{u}: {e}"))?;
            let mut want: Vec<Permutation> = exp.iter().map(|(w, _)| w.clone()).collect();
            want.sort();
            if got != want || exp.iter().any(|(_, c)| !c.is_one()) {
                return Err(format!("u = {u}, k = {kk}: chains reach {got:?}, product has {exp}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn three_way_coefficients(n: usize, k: &Kernels) -> Result<u64, String> {
    let perms = all_permutations(n);
    let polys: HashMap<Permutation, IntPolynomial> =
        perms.iter().map(|u| (u.clone(), kernel_schubert(u, n, k))).collect();
    let mut c = 0;
    for (v, w) in pairs(n) {
        if !is_well_aligned(&v, &w) {
            continue;
        }
        let word = phi_word_general(&v, &w).map_err(|e| e.to_string())?;
        for u in perms.iter().filter(|u| u.length() + v.length() == w.length()) {
            let oracle = ev0(&kernel_partial(&w, &(&polys[u] * &polys[&v]), k));
            let pieri = wa_coeff(u, &v, &w).map_err(|e| e.to_string())?;
            let phi = word.evaluate(&polys[u]);
            if oracle != pieri || oracle != phi {
                return Err(format!("u = {u}, v = {v}, w = {w}: oracle {oracle}, pieri {pieri}, phi {phi}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn phi_words_agree(n: usize, _: &Kernels) -> Result<u64, String> {
    let perms = all_permutations(n);
    let mut c = 0;
    for (v, w) in pairs(n) {
        if !v.is_dominant() || !is_well_aligned(&v, &w) {
            continue;
        }
        let a = phi_word_dominant(&v, &w).map_err(|e| e.to_string())?;
        let b = phi_word_general(&v, &w).map_err(|e| e.to_string())?;
        for u in perms.iter().filter(|u| u.length() + v.length() == w.length()) {
            let s = schubert_poly(u);
            if a.evaluate(&s) != b.evaluate(&s) {
                return Err(format!("({v}, {w}) at S_{u}: {a} vs {b}"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn smoothness_two_point(n: usize, k: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for (v, w) in pairs(n) {
        if !(k.bruhat_leq)(&v, &w) {
            continue;
        }
        let a = is_smooth_richardson(&v, &w, SmoothMode::TwoPoint).map_err(|e| e.to_string())?;
        let b = is_smooth_richardson(&v, &w, SmoothMode::AllPoints).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("[{v}, {w}]: two_point {a}, all_points {b}"));
        }
        c += 1;
    }
    Ok(c)
}

fn very_well_aligned_smooth(n: usize, _: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for (v, w) in pairs(n) {
        if is_very_well_aligned(&v, &w) {
            if !is_smooth_richardson(&v, &w, SmoothMode::AllPoints).map_err(|e| e.to_string())? {
                return Err(format!("[{v}, {w}] is very well-aligned but singular"));
            }
            c += 1;
        }
    }
    Ok(c)
}

fn census_counts(n: usize, _: &Kernels) -> Result<u64, String> {
    let published = published_counts();
    for (m, want) in published.iter().enumerate().take(n.min(7) + 1).skip(1) {
        let r = census(m, &CensusOptions::default()).map_err(|e| e.to_string())?;
        if BigInt::from(r.wa_count) != *want {
            return Err(format!("n = {m}: |WA_n| = {}, published {want}", r.wa_count));
        }
    }
    if !check_functional_equation(&published).map_err(|e| e.to_string())? {
        return Err("published counts fail the functional equation".to_string());
    }
    Ok(n.min(7) as u64)
}

fn tableaux(max_boxes: usize) -> impl Iterator<Item = StandardTableau> {
    (1..=max_boxes)
        .flat_map(Partition::all_of_size)
        .flat_map(|shape| StandardTableau::all_of_shape(&shape))
}

fn evacuation_involution(n: usize, _: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for t in tableaux(n + 2) {
        if evacuate(&evacuate(&t)) != t {
            return Err(format!("evac(evac(T)) ≠ T for T =\n{t}"));
        }
        c += 1;
    }
    Ok(c)
}

fn richardson_iff_l_slides(n: usize, _: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for t in tableaux(n + 2) {
        let slides = evacuation_paths(&t).iter().all(is_l_slide);
        if is_richardson(&t) != slides {
            return Err(format!("Richardson {} but L-slides {slides} for T =\n{t}", is_richardson(&t)));
        }
        c += 1;
    }
    Ok(c)
}

fn richardson_pairs_very_well_aligned(n: usize, _: &Kernels) -> Result<u64, String> {
    let mut c = 0;
    for t in tableaux(n + 2).filter(is_richardson) {
        let (v, w) = richardson_pair(&t);
        if !is_very_well_aligned(&v, &w) {
            return Err(format!("pair ({v}, {w}) of T =\n{t}\nis not very well-aligned"));
        }
        c += 1;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_kernels_pass_at_four() {
        for o in run_suite(4, &Kernels::standard()) {
            assert!(o.passed(), "{}: {:?}", o.name, o.counterexample);
            assert!(o.checked > 0, "{}", o.name);
        }
    }

    #[test]
    fn every_mutation_is_caught_at_three() {
        for name in MUTABLE_KERNELS {
            let k = Kernels::mutated(name).unwrap();
            let failures: Vec<PropertyOutcome> = run_suite(3, &k).into_iter().filter(|o| !o.passed()).collect();
            assert!(!failures.is_empty(), "mutation of {name} went unnoticed");
            assert!(failures.iter().all(|o| !o.counterexample.as_ref().unwrap().is_empty()));
        }
        assert!(Kernels::mutated("length").is_none());
    }
}
