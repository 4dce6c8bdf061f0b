//! Exhaustive census of well-aligned pairs in `S_n`.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::perm::{interval, next_permutation, Permutation};

/// Largest window the census accepts by default.
pub const DEFAULT_MAX_N: usize = 8;

/// Identifies the build that produced a ledger record.
pub const BUILD_ID: &str = match option_env!("SCHUBCALC_BUILD_ID") {
    Some(id) => id,
    None => env!("CARGO_PKG_VERSION"),
};

#[derive(thiserror::Error, Debug)]
pub enum EnumError {
    #[error("window {n} exceeds the census bound {max}")]
    TooLarge { n: usize, max: usize },
    #[error("window must be at least 1")]
    Empty,
    #[error("count sequence is empty")]
    NoCounts,
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub n: usize,
    pub wa_count: u64,
    pub wa132_count: u64,
    pub very_wa_count: u64,
    pub equivalence_class_count: u64,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    pub max_n: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { jobs: None, max_n: DEFAULT_MAX_N }
    }
}

/// The alignment conditions on fixed-size buffers, without allocation.
///
/// Each level finds the positions of `1`, checks the range between them,
/// then deletes `1` and shifts the remaining values down.
pub(crate) fn fast_flags(v: &[u8], w: &[u8]) -> (bool, bool) {
    let n = v.len();
    let mut a = [0u8; 16];
    let mut b = [0u8; 16];
    a[..n].copy_from_slice(v);
    b[..n].copy_from_slice(w);
    let mut very = true;
    for len in (2..=n).rev() {
        let i = a[..len].iter().position(|&x| x == 1).unwrap_or(0);
        let j = b[..len].iter().position(|&x| x == 1).unwrap_or(0);
        if i > j {
            return (false, false);
        }
        for t in i..j {
            if a[t] > a[t + 1] {
                return (false, false);
            }
            if b[t] < b[t + 1] {
                very = false;
            }
        }
        for (buf, p) in [(&mut a, i), (&mut b, j)] {
            for k in p..len - 1 {
                buf[k] = buf[k + 1];
            }
            for x in buf[..len - 1].iter_mut() {
                *x -= 1;
            }
        }
    }
    (true, very)
}

fn is_dominant_raw(v: &[u8]) -> bool {
    let mut prefix_min = u8::MAX;
    for j in 0..v.len() {
        if prefix_min < v[j] && v[j + 1..].iter().any(|&x| prefix_min < x && x < v[j]) {
            return false;
        }
        prefix_min = prefix_min.min(v[j]);
    }
    true
}

fn all_raw(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn to_perm(v: &[u8]) -> Permutation {
    Permutation::new(v.iter().map(|&x| x as usize).collect()).expect("raw buffers hold permutations")
}

/// `{v^{-1} u : u ∈ [v, w]}` as sorted one-line vectors.
fn class_key(v: &[u8], w: &[u8]) -> Vec<Vec<u8>> {
    let (v, w) = (to_perm(v), to_perm(w));
    let inv = v.inverse();
    let mut key: Vec<Vec<u8>> = interval(&v, &w)
        .expect("well-aligned pairs are Bruhat comparable")
        .iter()
        .map(|u| inv.compose(u).values().iter().map(|&x| x as u8).collect())
        .collect();
    key.sort();
    key
}

#[derive(Default)]
struct Shard {
    wa: u64,
    wa132: u64,
    very: u64,
    keys: HashSet<Vec<Vec<u8>>>,
}

fn run_shard(prefix: (u8, u8), perms: &[Vec<u8>]) -> Shard {
    let mut s = Shard::default();
    for v in perms.iter().filter(|v| v.len() < 2 || (v[0], v[1]) == prefix) {
        let dominant = is_dominant_raw(v);
        for w in perms {
            let (wa, very) = fast_flags(v, w);
            if !wa {
                continue;
            }
            s.wa += 1;
            if very {
                s.very += 1;
            }
            if dominant {
                s.wa132 += 1;
                s.keys.insert(class_key(v, w));
            }
        }
    }
    s
}

fn census_inner(n: usize) -> CensusResult {
    let perms = all_raw(n);
    let prefixes: Vec<(u8, u8)> = if n < 2 {
        vec![(0, 0)]
    } else {
        let mut p = Vec::new();
        for a in 1..=n as u8 {
            for b in 1..=n as u8 {
                if a != b {
                    p.push((a, b));
                }
            }
        }
        p
    };
    let shards: Vec<Shard> = prefixes.par_iter().map(|&p| run_shard(p, &perms)).collect();
    let mut keys: HashSet<Vec<Vec<u8>>> = HashSet::new();
    let mut out = CensusResult { n, wa_count: 0, wa132_count: 0, very_wa_count: 0, equivalence_class_count: 0 };
    for s in shards {
        out.wa_count += s.wa;
        out.wa132_count += s.wa132;
        out.very_wa_count += s.very;
        keys.extend(s.keys);
    }
    out.equivalence_class_count = keys.len() as u64;
    out
}

/// Counts `WA_n`, its dominant-bottom part, the very well-aligned pairs, and
/// translation-equivalence classes of dominant-bottom intervals.
pub fn census(n: usize, opts: &CensusOptions) -> Result<CensusResult, EnumError> {
    if n == 0 {
        return Err(EnumError::Empty);
    }
    if n > opts.max_n || n > 16 {
        return Err(EnumError::TooLarge { n, max: opts.max_n.min(16) });
    }
    match opts.jobs {
        None => Ok(census_inner(n)),
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.max(1))
                .build()
                .map_err(|e| EnumError::Pool(e.to_string()))?;
            Ok(pool.install(|| census_inner(n)))
        }
    }
}

/// Checks `2 W' - W W' = W^2` for `W = Σ a_n x^n / n!` through order
/// `len - 2`, i.e. for every `n` with `a_{n+1}` available:
/// `2 a_{n+1} - Σ_k C(n,k) a_k a_{n-k+1} = Σ_k C(n,k) a_k a_{n-k}`.
pub fn check_functional_equation(counts: &[BigInt]) -> Result<bool, EnumError> {
    if counts.is_empty() {
        return Err(EnumError::NoCounts);
    }
    let m = counts.len() - 1;
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    for n in 0..m {
        if n > 0 {
            let mut next = vec![BigInt::one(); n + 1];
            for k in 1..n {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        let mut lhs = BigInt::from(2) * &counts[n + 1];
        let mut rhs = BigInt::zero();
        for k in 0..=n {
            lhs -= &row[k] * &counts[k] * &counts[n - k + 1];
            rhs += &row[k] * &counts[k] * &counts[n - k];
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The `|WA_n|` values printed as EGF coefficients, `n = 0..7`.
pub fn published_counts() -> Vec<BigInt> {
    [1u64, 1, 3, 17, 147, 1729, 25827, 468593].iter().map(|&c| BigInt::from(c)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub build: String,
    #[serde(flatten)]
    pub result: CensusResult,
    pub jobs: usize,
    pub wall_seconds: f64,
}

/// Runs [`census`] and times it.
pub fn timed_census(n: usize, opts: &CensusOptions) -> Result<LedgerRecord, EnumError> {
    let start = Instant::now();
    let result = census(n, opts)?;
    Ok(LedgerRecord {
        build: BUILD_ID.to_string(),
        result,
        jobs: opts.jobs.unwrap_or_else(rayon::current_num_threads),
        wall_seconds: (start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0,
    })
}

/// Appends one JSON line per record.
pub fn append_ledger(path: &Path, records: &[LedgerRecord]) -> Result<(), EnumError> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for r in records {
        writeln!(file, "{}", serde_json::to_string(r)?)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;
    use crate::wa::{is_very_well_aligned, is_well_aligned};

    fn opts() -> CensusOptions {
        CensusOptions::default()
    }

    #[test]
    fn fast_kernel_matches_the_recursive_predicates_on_s5() {
        let perms = all_permutations(5);
        for v in &perms {
            let rv: Vec<u8> = v.values().iter().map(|&x| x as u8).collect();
            for w in &perms {
                let rw: Vec<u8> = w.values().iter().map(|&x| x as u8).collect();
                let (wa, very) = fast_flags(&rv, &rw);
                assert_eq!(wa, is_well_aligned(v, w), "{v} {w}");
                assert_eq!(wa && very, is_very_well_aligned(v, w), "{v} {w}");
            }
            assert_eq!(is_dominant_raw(&rv), v.is_dominant());
        }
    }

    #[test]
    fn small_censuses() {
        let want = [1u64, 3, 17, 147, 1729];
        let mut double_factorial = 1u64;
        for n in 1..=5 {
            double_factorial *= 2 * n as u64 - 1;
            let r = census(n, &opts()).unwrap();
            assert_eq!(r.wa_count, want[n - 1], "n = {n}");
            assert_eq!(r.wa132_count, double_factorial, "n = {n}");
            assert!(r.very_wa_count <= r.wa_count);
            assert!(r.equivalence_class_count <= r.wa132_count);
        }
        assert_eq!(census(3, &opts()).unwrap().wa132_count, 15);
    }

    #[test]
    fn census_of_six() {
        let r = census(6, &opts()).unwrap();
        assert_eq!(r.wa_count, 25827);
        assert_eq!(r.wa132_count, 10395);
    }

    #[test]
    fn sharding_is_deterministic() {
        let one = census(5, &CensusOptions { jobs: Some(1), ..opts() }).unwrap();
        let many = census(5, &CensusOptions { jobs: Some(4), ..opts() }).unwrap();
        assert_eq!(one, many);
    }

    #[test]
    fn bounds() {
        assert!(matches!(census(0, &opts()), Err(EnumError::Empty)));
        assert!(matches!(census(9, &opts()), Err(EnumError::TooLarge { .. })));
    }

    #[test]
    fn functional_equation() {
        assert!(check_functional_equation(&published_counts()).unwrap());
        let ones: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        assert!(check_functional_equation(&ones).unwrap());
        assert!(check_functional_equation(&[BigInt::one()]).unwrap());
        let mut bad = published_counts();
        bad[3] = BigInt::from(18);
        assert!(!check_functional_equation(&bad).unwrap());
        assert!(check_functional_equation(&[]).is_err());
    }

    #[test]
    fn ledger_lines() {
        let dir = std::env::temp_dir().join(format!("schubcalc-ledger-{}", std::process::id()));
        let rec = timed_census(3, &opts()).unwrap();
        append_ledger(&dir, &[rec.clone(), rec.clone()]).unwrap();
        let text = std::fs::read_to_string(&dir).unwrap();
        std::fs::remove_file(&dir).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        let back: LedgerRecord = serde_json::from_str(lines[0]).unwrap();
        assert_eq!(back.result, rec.result);
        assert!(lines[0].contains("\"wa_count\":17"));
    }
}
