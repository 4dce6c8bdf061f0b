//! Permutations of finite windows in one-line notation.
//!
//! A [`Permutation`] is stored on an explicit window `n` but compares, hashes
//! and orders by its trimmed form, so `1 3 2` and `1 3 2 4 5` are the same
//! element of `S_∞`. Binary operations pad both arguments to the larger
//! window first.
//!
//! Conventions (all positions and values are 1-indexed):
//!
//! - composition is `(p ∘ q)(i) = p(q(i))`;
//! - `s_i · v` (left multiplication) swaps the *values* `i` and `i + 1`;
//! - `v · s_i` (right multiplication) swaps the *positions* `i` and `i + 1`.

mod bruhat;
mod rothe;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

pub use bruhat::{
    bruhat_covers, bruhat_leq, bruhat_leq_full, interval, witness, BruhatInterval,
};
pub use rothe::{dominant_bruhat_leq, dominant_lift, rothe_diagram, BoxSet};

/// Errors raised while constructing or parsing permutations.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("value {value} is outside the window 1..={window}")]
    OutOfRange { value: usize, window: usize },
    #[error("value {value} appears more than once")]
    Duplicate { value: usize },
    #[error("not a permutation: {duplicate} is duplicated and {missing} is missing")]
    NotABijection { duplicate: usize, missing: usize },
    #[error("cannot parse {token:?} as a positive integer")]
    BadToken { token: String },
    #[error("insertion position {position} outside 1..={max}")]
    InsertPosition { position: usize, max: usize },
    #[error("{bottom} is not below {top} in Bruhat order")]
    NotBruhatLeq { bottom: Permutation, top: Permutation },
    #[error("{0} is not dominant (contains a 132 pattern)")]
    NotDominant(Permutation),
}

/// A permutation in one-line notation `w(1) … w(n)`.
#[derive(Clone, Default)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from one-line notation, checking that `values` is a
    /// bijection of `1..=values.len()`.
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(PermError::OutOfRange { value: v, window: n });
            }
            if seen[v] {
                return Err(PermError::Duplicate { value: v });
            }
            seen[v] = true;
        }
        // With no duplicates and no out-of-range values every value is present.
        debug_assert!(seen[1..].iter().all(|&s| s));
        Ok(Self { values })
    }

    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Self::new(values.clone()).is_ok(), "not a bijection: {values:?}");
        Self { values }
    }

    pub fn identity(n: usize) -> Self {
        Self { values: (1..=n).collect() }
    }

    /// The longest element `w_o = n (n-1) … 1` of `S_n`.
    pub fn longest(n: usize) -> Self {
        Self { values: (1..=n).rev().collect() }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(i: usize) -> Self {
        assert!(i >= 1, "simple transpositions are indexed from 1");
        Self::transposition(i, i + 1)
    }

    /// The transposition `t_{ab}` swapping `a` and `b`.
    pub fn transposition(a: usize, b: usize) -> Self {
        assert!(a >= 1 && b >= 1 && a != b);
        let mut values: Vec<usize> = (1..=a.max(b)).collect();
        values.swap(a - 1, b - 1);
        Self { values }
    }

    /// The Coxeter element `c = s_{n-1} ⋯ s_2 s_1` of `S_n`.
    pub fn coxeter(n: usize) -> Self {
        let mut c = Self::identity(n);
        for i in 1..n {
            c = Self::simple(i).compose(&c);
        }
        c.padded(n)
    }

    /// Reconstructs the permutation with the given Lehmer code
    /// `c_i = #{j > i : w(j) < w(i)}`.
    pub fn from_lehmer_code(code: &[usize]) -> Result<Self, PermError> {
        // Every finitely supported code is realised in S_m with m large enough.
        let m = code
            .iter()
            .enumerate()
            .map(|(i, &c)| i + c + 1)
            .max()
            .unwrap_or(0);
        let mut available: Vec<usize> = (1..=m).collect();
        let mut values = Vec::with_capacity(m);
        for i in 0..m {
            let c = code.get(i).copied().unwrap_or(0);
            if c >= available.len() {
                return Err(PermError::OutOfRange { value: c, window: available.len() });
            }
            values.push(available.remove(c));
        }
        Ok(Self { values })
    }

    /// Window size `n` of the stored one-line notation.
    pub fn window(&self) -> usize {
        self.values.len()
    }

    /// The stored one-line notation.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// One-line notation with trailing fixed points removed.
    pub fn trimmed_values(&self) -> &[usize] {
        let mut k = self.values.len();
        while k > 0 && self.values[k - 1] == k {
            k -= 1;
        }
        &self.values[..k]
    }

    /// Smallest `n` with `self ∈ S_n`.
    pub fn support(&self) -> usize {
        self.trimmed_values().len()
    }

    pub fn trimmed(&self) -> Self {
        Self { values: self.trimmed_values().to_vec() }
    }

    /// The same element of `S_∞` written on window `n`, which must be at least
    /// [`support`](Self::support).
    pub fn padded(&self, n: usize) -> Self {
        assert!(n >= self.support(), "window {n} too small for {self}");
        let mut values: Vec<usize> = self.values[..n.min(self.values.len())].to_vec();
        values.extend(values.len() + 1..=n);
        Self { values }
    }

    /// `w(i)`, extended by fixed points beyond the window.
    pub fn apply(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.values.get(i - 1).copied().unwrap_or(i)
    }

    /// Position of the value `i`, i.e. `w^{-1}(i)`.
    pub fn position_of(&self, i: usize) -> usize {
        self.values
            .iter()
            .position(|&v| v == i)
            .map(|p| p + 1)
            .unwrap_or(i)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self { values: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.window().max(other.window());
        Self {
            values: (1..=n).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    /// `s_i · self`: swaps the values `i` and `i + 1`.
    pub fn left_swap(&self, i: usize) -> Self {
        let mut p = self.padded(self.window().max(i + 1));
        for v in p.values.iter_mut() {
            if *v == i {
                *v = i + 1;
            } else if *v == i + 1 {
                *v = i;
            }
        }
        p
    }

    /// `self · s_i`: swaps the entries in positions `i` and `i + 1`.
    pub fn right_swap(&self, i: usize) -> Self {
        self.right_transpose(i, i + 1)
    }

    /// `self · t_{ab}`: swaps the entries in positions `a` and `b`.
    pub fn right_transpose(&self, a: usize, b: usize) -> Self {
        let mut p = self.padded(self.window().max(a).max(b));
        p.values.swap(a - 1, b - 1);
        p
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.values;
        let mut count = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Descent set `{i : w(i) > w(i+1)}` in increasing order.
    pub fn descents(&self) -> Vec<usize> {
        self.values
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn has_descent(&self, i: usize) -> bool {
        i >= 1 && self.apply(i) > self.apply(i + 1)
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}` on the stored window.
    pub fn lehmer_code(&self) -> Vec<usize> {
        let v = &self.values;
        (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&x| x < v[i]).count())
            .collect()
    }

    /// `ε_j(w)`: inserts `1` at position `j` and increments the other values.
    pub fn eps_insert(&self, j: usize) -> Result<Self, PermError> {
        let n = self.window();
        if j == 0 || j > n + 1 {
            return Err(PermError::InsertPosition { position: j, max: n + 1 });
        }
        let mut values: Vec<usize> = Vec::with_capacity(n + 1);
        values.extend(self.values[..j - 1].iter().map(|&x| x + 1));
        values.push(1);
        values.extend(self.values[j - 1..].iter().map(|&x| x + 1));
        Ok(Self { values })
    }

    /// `δ(w)`: deletes `1` and decrements the remaining values.
    pub fn delta_remove(&self) -> Self {
        Self {
            values: self
                .values
                .iter()
                .filter(|&&x| x != 1)
                .map(|&x| x - 1)
                .collect(),
        }
    }

    /// Whether `self` avoids the pattern 132.
    pub fn is_dominant(&self) -> bool {
        // For each middle position j, a 132 occurrence needs some i < j with
        // v[i] < v[j] and some k > j with v[i] < v[k] < v[j].
        let v = &self.values;
        let mut prefix_min = usize::MAX;
        for j in 0..v.len() {
            if prefix_min < v[j] && v[j + 1..].iter().any(|&x| prefix_min < x && x < v[j]) {
                return false;
            }
            prefix_min = prefix_min.min(v[j]);
        }
        true
    }

    /// Critical values `C(w)`: those `i` for which `w` contains a subsequence
    /// `i … j … i+1` with `j > i + 1`.
    pub fn critical_set(&self) -> Vec<usize> {
        let n = self.window();
        let inv = self.inverse();
        (1..n)
            .filter(|&i| {
                let (p, q) = (inv.values[i - 1], inv.values[i]);
                p < q && self.values[p..q - 1].iter().any(|&x| x > i + 1)
            })
            .collect()
    }

    /// One-line notation without separators when every value is a single
    /// digit, otherwise joined by commas; `()` for the empty window.
    pub fn to_compact(&self) -> String {
        if self.values.is_empty() {
            return "()".to_string();
        }
        let sep = if self.values.len() <= 9 { "" } else { "," };
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        parts.join(sep)
    }

    /// One-line notation joined by spaces.
    pub fn to_one_line(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed_values() == other.trimmed_values()
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed_values().hash(state);
    }
}

impl Ord for Permutation {
    /// Lexicographic order of one-line notation on a common window.
    fn cmp(&self, other: &Self) -> Ordering {
        // Comparing trimmed forms agrees with comparing padded forms: if one
        // trimmed form is a proper prefix of the other, the longer one has a
        // value larger than the next fixed point there.
        self.trimmed_values().cmp(other.trimmed_values())
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return f.write_str("()");
        }
        f.write_str(&self.to_one_line())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Parses comma- or whitespace-separated one-line notation. A single
    /// token made only of the digits `1`–`9` is read one digit per entry, so
    /// `15726348` and `1 5 7 2 6 3 4 8` parse to the same permutation.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .collect();
        let values: Vec<usize> = if tokens.len() == 1
            && tokens[0].len() > 1
            && tokens[0].chars().all(|c| ('1'..='9').contains(&c))
        {
            tokens[0].chars().map(|c| c as usize - '0' as usize).collect()
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| PermError::BadToken { token: t.to_string() })
                })
                .collect::<Result<_, _>>()?
        };
        let n = values.len();
        match Self::new(values.clone()) {
            Err(PermError::Duplicate { value }) if values.iter().all(|&v| v >= 1 && v <= n) => {
                let missing = (1..=n).find(|x| !values.contains(x)).unwrap_or(0);
                Err(PermError::NotABijection { duplicate: value, missing })
            }
            other => other,
        }
    }
}

/// All permutations of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation { values: cur.clone() });
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

/// Advances `v` to the next permutation in lexicographic order; returns
/// `false` (leaving `v` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Pads both permutations to their common window.
pub fn common_window(p: &Permutation, q: &Permutation) -> (Permutation, Permutation) {
    let n = p.window().max(q.window());
    (p.padded(n), q.padded(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compact_form_round_trips() {
        assert_eq!(p("4 5 1 2 3").to_compact(), "45123");
        let long = Permutation::longest(10);
        assert_eq!(long.to_compact(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(long.to_compact().parse::<Permutation>().unwrap(), long);
        for q in all_permutations(4) {
            assert_eq!(q.to_compact().parse::<Permutation>().unwrap(), q);
        }
    }

    #[test]
    fn compose_identity_and_inverse() {
        assert_eq!(Permutation::identity(3).compose(&p("231")), p("231"));
        for q in all_permutations(4) {
            assert!(q.compose(&q.inverse()).is_identity());
            assert!(q.inverse().compose(&q).is_identity());
        }
    }

    #[test]
    fn compose_matches_dominant_translation_example() {
        let v_up = p("56734128");
        let got = v_up.compose(&p("15726348").inverse().compose(&p("75182364")));
        assert_eq!(got, p("76583142"));
    }

    #[test]
    fn trimming_defines_equality() {
        assert_eq!(p("132"), p("13245"));
        assert_eq!(Permutation::identity(0), Permutation::identity(5));
        assert_ne!(p("132"), p("1243"));
        assert_eq!(p("13245").support(), 3);
    }

    #[test]
    fn length_and_descents() {
        assert_eq!(Permutation::identity(6).length(), 0);
        assert_eq!(Permutation::longest(6).length(), 15);
        assert_eq!(p("43152").length(), 6);
        assert_eq!(p("43152").descents(), vec![1, 2, 4]);
        assert!(Permutation::identity(4).descents().is_empty());
        assert_eq!(Permutation::longest(5).descents(), vec![1, 2, 3, 4]);
        assert_eq!(p("43152").padded(9).length(), 6);
    }

    #[test]
    fn lehmer_codes() {
        assert_eq!(Permutation::identity(4).lehmer_code(), vec![0; 4]);
        assert_eq!(p("34215").lehmer_code(), vec![2, 2, 1, 0, 0]);
        assert_eq!(p("4351267").lehmer_code(), vec![3, 2, 2, 0, 0, 0, 0]);
        for q in all_permutations(5) {
            let code = q.lehmer_code();
            assert_eq!(code.iter().sum::<usize>(), q.length());
            assert_eq!(Permutation::from_lehmer_code(&code).unwrap(), q);
        }
    }

    #[test]
    fn eps_and_delta() {
        assert_eq!(p("25143").eps_insert(1).unwrap(), p("136254"));
        assert_eq!(p("25143").eps_insert(2).unwrap(), p("316254"));
        assert_eq!(p("25143").delta_remove(), p("1432"));
        assert_eq!(Permutation::identity(5).delta_remove(), Permutation::identity(4));
        assert!(p("21").eps_insert(4).is_err());
        assert!(p("21").eps_insert(0).is_err());
    }

    #[test]
    fn delta_chain_of_worked_pair() {
        let chain_v = ["15726348", "4615237", "354126", "24315", "1324", "213", "12", "1"];
        let chain_w = ["75182364", "6471253", "536142", "42531", "3142", "231", "12", "1"];
        let (mut v, mut w) = (p(chain_v[0]), p(chain_w[0]));
        for k in 1..chain_v.len() {
            v = v.delta_remove();
            w = w.delta_remove();
            assert_eq!(v.values(), p(chain_v[k]).values());
            assert_eq!(w.values(), p(chain_w[k]).values());
        }
    }

    #[test]
    fn critical_sets() {
        assert_eq!(p("15726348").critical_set(), vec![1, 2, 5]);
        assert_eq!(p("2143").critical_set(), vec![2]);
        assert_eq!(p("3142").critical_set(), vec![1]);
        assert!(p("3241").critical_set().is_empty());
        for q in all_permutations(5) {
            assert_eq!(q.critical_set().is_empty(), q.is_dominant(), "{q}");
        }
    }

    #[test]
    fn dominance() {
        assert!(Permutation::identity(4).is_dominant());
        assert!(p("43125").is_dominant());
        assert!(!p("132").is_dominant());
        let count = all_permutations(5).iter().filter(|q| q.is_dominant()).count();
        assert_eq!(count, 42);
    }

    #[test]
    fn coxeter_element() {
        // s_3 s_2 s_1 sends 1 -> 2 -> 3 -> 4 and i -> i - 1 otherwise.
        assert_eq!(Permutation::coxeter(4), p("4123"));
        assert_eq!(Permutation::coxeter(5), p("51234"));
    }

    #[test]
    fn parsing() {
        assert_eq!(p("1 5 7 2 6 3 4 8"), p("15726348"));
        assert_eq!(p("1,5,7,2,6,3,4,8"), p("15726348"));
        assert_eq!(p("10 1 2 3 4 5 6 7 8 9").window(), 10);
        assert_eq!(
            "1 2 2".parse::<Permutation>().unwrap_err(),
            PermError::NotABijection { duplicate: 2, missing: 3 }
        );
        assert_eq!(
            "1 4 2".parse::<Permutation>().unwrap_err(),
            PermError::OutOfRange { value: 4, window: 3 }
        );
        assert!(matches!(
            "1 x".parse::<Permutation>().unwrap_err(),
            PermError::BadToken { .. }
        ));
        assert_eq!("".parse::<Permutation>().unwrap(), Permutation::identity(0));
    }

    #[test]
    fn ordering_is_consistent_with_padding() {
        let perms = all_permutations(4);
        for a in &perms {
            for b in &perms {
                let (x, y) = (a.padded(6), b.trimmed());
                assert_eq!(a.values().cmp(b.values()), x.cmp(&y));
            }
        }
    }
}
