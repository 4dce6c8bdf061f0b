//! Bruhat order via the tableau criterion, witnesses of incomparability, and
//! interval enumeration.

use std::collections::{HashSet, VecDeque};

use super::{common_window, PermError, Permutation};

/// Runs the tableau criterion on the prefixes ending at the positions
/// selected by `check`; returns the first failing prefix length.
fn first_failing_prefix(
    u: &Permutation,
    v: &Permutation,
    check: impl Fn(usize) -> bool,
) -> Option<usize> {
    let (u, v) = common_window(u, v);
    let n = u.window();
    let mut su: Vec<usize> = Vec::with_capacity(n);
    let mut sv: Vec<usize> = Vec::with_capacity(n);
    for k in 1..=n {
        let (a, b) = (u.apply(k), v.apply(k));
        let pa = su.partition_point(|&x| x < a);
        su.insert(pa, a);
        let pb = sv.partition_point(|&x| x < b);
        sv.insert(pb, b);
        if check(k) && su.iter().zip(&sv).any(|(x, y)| x > y) {
            return Some(k);
        }
    }
    None
}

/// `u ≤_B v` by the improved tableau criterion, which only inspects prefixes
/// ending at descents of `u`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> bool {
    first_failing_prefix(u, v, |k| u.has_descent(k)).is_none()
}

/// `u ≤_B v` by the tableau criterion on every prefix length.
pub fn bruhat_leq_full(u: &Permutation, v: &Permutation) -> bool {
    first_failing_prefix(u, v, |_| true).is_none()
}

/// The smallest descent `p` of `u` whose sorted prefix exceeds that of `v`
/// somewhere, or `None` when `u ≤_B v`.
pub fn witness(u: &Permutation, v: &Permutation) -> Option<usize> {
    first_failing_prefix(u, v, |k| u.has_descent(k))
}

/// Whether `u · t_{ab}` (positions `a < b`) covers `u` in Bruhat order.
pub(crate) fn is_cover_transposition(u: &Permutation, a: usize, b: usize) -> bool {
    let (x, y) = (u.apply(a), u.apply(b));
    x < y && !(a + 1..b).any(|c| {
        let z = u.apply(c);
        x < z && z < y
    })
}

/// Upper covers of `u` inside `S_n`.
pub fn bruhat_covers(u: &Permutation, n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            if is_cover_transposition(u, a, b) {
                out.push(u.right_transpose(a, b).padded(n));
            }
        }
    }
    out
}

/// The Bruhat interval `[v, w]`, sorted lexicographically.
///
/// Walks upper covers breadth-first from `v`, keeping only elements below `w`.
pub fn interval(v: &Permutation, w: &Permutation) -> Result<Vec<Permutation>, PermError> {
    if !bruhat_leq(v, w) {
        return Err(PermError::NotBruhatLeq { bottom: v.clone(), top: w.clone() });
    }
    let (v, w) = common_window(v, w);
    let n = v.window();
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.clone());
    queue.push_back(v);
    while let Some(x) = queue.pop_front() {
        for y in bruhat_covers(&x, n) {
            if !seen.contains(&y) && bruhat_leq(&y, &w) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let mut members: Vec<Permutation> = seen.into_iter().collect();
    members.sort();
    Ok(members)
}

/// A Bruhat interval `[bottom, top]` with `bottom ≤_B top`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BruhatInterval {
    bottom: Permutation,
    top: Permutation,
}

impl BruhatInterval {
    pub fn new(bottom: Permutation, top: Permutation) -> Result<Self, PermError> {
        if !bruhat_leq(&bottom, &top) {
            return Err(PermError::NotBruhatLeq { bottom, top });
        }
        let (bottom, top) = common_window(&bottom, &top);
        Ok(Self { bottom, top })
    }

    pub fn bottom(&self) -> &Permutation {
        &self.bottom
    }

    pub fn top(&self) -> &Permutation {
        &self.top
    }

    pub fn contains(&self, u: &Permutation) -> bool {
        bruhat_leq(&self.bottom, u) && bruhat_leq(u, &self.top)
    }

    /// All members, sorted lexicographically.
    pub fn members(&self) -> Vec<Permutation> {
        interval(&self.bottom, &self.top).expect("validated on construction")
    }

    /// `{bottom^{-1} u : u ∈ [bottom, top]}`, sorted.
    pub fn normalized_members(&self) -> Vec<Permutation> {
        let inv = self.bottom.inverse();
        let mut out: Vec<Permutation> = self.members().iter().map(|u| inv.compose(u)).collect();
        out.sort();
        out
    }

    /// `ℓ(top) - ℓ(bottom)`.
    pub fn rank(&self) -> usize {
        self.top.length() - self.bottom.length()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    /// Bruhat order on `S_n` as the transitive closure of length-one
    /// transposition covers, computed without the tableau criterion.
    fn cover_closure(n: usize) -> HashSet<(Permutation, Permutation)> {
        let perms = all_permutations(n);
        let mut rel = HashSet::new();
        for u in &perms {
            let mut stack = vec![u.clone()];
            let mut seen = HashSet::new();
            seen.insert(u.clone());
            while let Some(x) = stack.pop() {
                for a in 1..=n {
                    for b in a + 1..=n {
                        let y = x.right_transpose(a, b);
                        if y.length() == x.length() + 1 && seen.insert(y.clone()) {
                            stack.push(y);
                        }
                    }
                }
            }
            for x in seen {
                rel.insert((u.clone(), x));
            }
        }
        rel
    }

    #[test]
    fn tableau_criterion_matches_cover_closure_on_s4() {
        let rel = cover_closure(4);
        let perms = all_permutations(4);
        for u in &perms {
            for v in &perms {
                assert_eq!(
                    bruhat_leq(u, v),
                    rel.contains(&(u.clone(), v.clone())),
                    "{u} vs {v}"
                );
            }
        }
    }

    #[test]
    fn improved_criterion_agrees_on_s5() {
        let perms = all_permutations(5);
        for u in &perms {
            for v in &perms {
                assert_eq!(bruhat_leq(u, v), bruhat_leq_full(u, v));
            }
        }
    }

    #[test]
    fn worked_pair_is_comparable() {
        assert!(bruhat_leq(&p("15726348"), &p("75182364")));
        assert!(bruhat_leq(&p("2413"), &p("2413")));
    }

    #[test]
    fn witnesses_from_worked_example() {
        assert_eq!(witness(&p("2413"), &p("2413")), None);
        assert_eq!(witness(&p("5614237"), &p("6471253")), Some(2));
        let s1_delta_v = p("4615237").left_swap(1);
        assert_eq!(s1_delta_v, p("4625137"));
        assert_eq!(witness(&s1_delta_v, &p("6471253")), Some(4));
    }

    #[test]
    fn intervals() {
        assert_eq!(interval(&p("2413"), &p("2413")).unwrap(), vec![p("2413")]);
        assert_eq!(
            interval(&Permutation::identity(3), &Permutation::longest(3)).unwrap().len(),
            6
        );
        let (v, w) = (p("1324"), p("3142"));
        let brute = all_permutations(4)
            .into_iter()
            .filter(|u| bruhat_leq(&v, u) && bruhat_leq(u, &w))
            .count();
        assert_eq!(brute, 4);
        assert_eq!(interval(&v, &w).unwrap().len(), brute);
        assert!(interval(&p("21"), &p("12")).is_err());
    }

    #[test]
    fn intervals_match_filtering_on_s4() {
        let perms = all_permutations(4);
        for v in &perms {
            for w in &perms {
                if !bruhat_leq(v, w) {
                    continue;
                }
                let brute: Vec<Permutation> = perms
                    .iter()
                    .filter(|u| bruhat_leq(v, u) && bruhat_leq(u, w))
                    .cloned()
                    .collect();
                assert_eq!(interval(v, w).unwrap(), brute);
            }
        }
    }
}
