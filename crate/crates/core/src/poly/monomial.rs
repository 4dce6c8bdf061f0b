use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// A monomial `x_1^{e_1} x_2^{e_2} ⋯` stored as its exponent vector with
/// trailing zeros removed.
///
/// The derived order is lexicographic on exponent vectors read from `x_1`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: SmallVec<[u8; 16]>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from exponents of `x_1, x_2, …`.
    pub fn new(exps: &[u8]) -> Self {
        let mut m = Self { exps: SmallVec::from_slice(exps) };
        m.trim();
        m
    }

    /// `x^code`, panicking if an exponent exceeds 255.
    pub fn from_code(code: &[usize]) -> Self {
        let exps: Vec<u8> = code
            .iter()
            .map(|&c| u8::try_from(c).expect("exponent exceeds 255"))
            .collect();
        Self::new(&exps)
    }

    /// The variable `x_i` (1-indexed).
    pub fn var(i: usize) -> Self {
        assert!(i >= 1, "variables are indexed from 1");
        let mut exps = SmallVec::from_elem(0, i);
        exps[i - 1] = 1;
        Self { exps }
    }

    fn trim(&mut self) {
        while self.exps.last() == Some(&0) {
            self.exps.pop();
        }
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    /// Exponent of `x_i` (1-indexed).
    pub fn exponent(&self, i: usize) -> u8 {
        self.exps.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Index of the last variable with positive exponent, or 0 for `1`.
    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) =
            if self.exps.len() >= other.exps.len() { (self, other) } else { (other, self) };
        let mut exps = long.exps.clone();
        for (e, &f) in exps.iter_mut().zip(short.exps.iter()) {
            *e = e.checked_add(f).expect("exponent overflow");
        }
        Monomial { exps }
    }

    /// Exchanges the exponents of `x_i` and `x_{i+1}`.
    pub fn swapped(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() < i + 1 {
            exps.resize(i + 1, 0);
        }
        exps.swap(i - 1, i);
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    /// Replaces the exponents of `x_i` and `x_{i+1}` by `a` and `b`.
    pub(crate) fn with_pair(&self, i: usize, a: u8, b: u8) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() < i + 1 {
            exps.resize(i + 1, 0);
        }
        exps[i - 1] = a;
        exps[i] = b;
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    /// Removes the slot of `x_i`, shifting later exponents down one slot.
    pub(crate) fn remove_slot(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        if i <= exps.len() {
            exps.remove(i - 1);
        }
        let mut m = Monomial { exps };
        m.trim();
        m
    }

    /// Graded reverse lexicographic comparison: higher degree first, then the
    /// monomial with the smaller exponent in the last differing variable is
    /// larger.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in (1..=n).rev() {
                let (a, b) = (self.exponent(i), other.exponent(i));
                if a != b {
                    return b.cmp(&a);
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Display for Monomial {
    /// `x1^3 x2`, or `1` for the empty monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}
