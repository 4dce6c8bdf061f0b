//! Sparse polynomials in `x_1, x_2, …` with arbitrary-precision integer
//! coefficients, and the operators acting on them.

mod monomial;
mod operators;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use monomial::Monomial;
pub use operators::{bs_operator, divided_difference, ev0, partial_w, reduced_word, s_action};
pub(crate) use operators::ev0_partial_w;

/// Environment variable overriding the default bound on the number of
/// variables a polynomial may touch.
pub const MAX_VARS_ENV: &str = "SCHUBCALC_MAX_VARS";

/// Default bound on the number of variables.
pub const DEFAULT_MAX_VARS: usize = 16;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial touches {used} variables; the limit is {limit} (set {MAX_VARS_ENV} to raise it)")]
    TooManyVariables { used: usize, limit: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// The configured variable bound, read once from [`MAX_VARS_ENV`].
pub fn max_vars() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var(MAX_VARS_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_VARS)
    })
}

/// Rejects a polynomial in more than `limit` variables.
pub fn check_vars(used: usize, limit: usize) -> Result<(), PolyError> {
    if used > limit {
        Err(PolyError::TooManyVariables { used, limit })
    } else {
        Ok(())
    }
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c)
    }

    /// `c · m`.
    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, 1)
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        Self::monomial(Monomial::var(i))
    }

    /// `x^code`.
    pub fn x_power(code: &[usize]) -> Self {
        Self::monomial(Monomial::from_code(code))
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// repeated monomials.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u8>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(Monomial::new(&e), c.into());
        }
        p
    }

    /// Adds `c · m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The lexicographically smallest monomial and its coefficient.
    pub fn lex_min_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next()
    }

    /// Largest total degree of a term, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Index of the largest variable that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Monomial::num_vars).max().unwrap_or(0)
    }

    /// Errors if more variables occur than [`max_vars`] allows.
    pub fn check_vars(&self) -> Result<(), PolyError> {
        check_vars(self.num_vars(), max_vars())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(n, k)| (n.mul(m), k.clone())).collect() }
    }

    /// Terms sorted by descending graded reverse lexicographic order.
    pub fn grevlex_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.grevlex_cmp(a.0));
        terms
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders terms in descending grevlex order, e.g. `x1^2 + 3 x1 x2 - x2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.grevlex_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs} {m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl AddAssign<&IntPolynomial> for IntPolynomial {
    fn add_assign(&mut self, rhs: &IntPolynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;

    fn add(mut self, rhs: IntPolynomial) -> IntPolynomial {
        self += &rhs;
        self
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c * d);
            }
        }
        out
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}
