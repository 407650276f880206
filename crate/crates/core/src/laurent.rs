//! Exact integer Laurent polynomials in one variable `t`.
//!
//! Coefficients are `i64`; every arithmetic path is checked and reports
//! [`LaurentError::Overflow`] instead of wrapping. The operator impls
//! (`+`, `-`, `*`) panic on overflow; use the `checked_*` methods where the
//! input size is not under your control.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("integer overflow in polynomial arithmetic")]
    Overflow,
    #[error("substitution t -> t^k requires k != 0")]
    ZeroSubstitution,
    #[error("the zero polynomial is not an Alexander polynomial")]
    ZeroPolynomial,
    #[error("Alexander polynomial must evaluate to +1 or -1 at t = 1, got {0}")]
    NotUnitAtOne(i64),
    #[error("not an Alexander-symmetric polynomial")]
    NotSymmetric,
    #[error("division is not exact")]
    NotExact,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, LaurentError>;

/// Sparse exponent -> coefficient map. No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms<I>(iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
        for (e, c) in iter {
            let entry = terms.entry(e).or_insert(0);
            *entry = entry.checked_add(c).ok_or(LaurentError::Overflow)?;
        }
        terms.retain(|_, c| *c != 0);
        Ok(Self { terms })
    }

    /// Coefficients listed from exponent `start` upwards.
    pub fn from_coeffs(start: i64, coeffs: &[i64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (start + i as i64, c))
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `max_exp - min_exp`, or `None` for the zero polynomial.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    /// Coefficient of the highest power of `t`.
    pub fn leading_coeff(&self) -> Option<i64> {
        self.terms.values().next_back().copied()
    }

    pub fn trailing_coeff(&self) -> Option<i64> {
        self.terms.values().next().copied()
    }

    pub fn eval_at_one(&self) -> Result<i64> {
        self.terms
            .values()
            .try_fold(0i64, |acc, &c| acc.checked_add(c))
            .ok_or(LaurentError::Overflow)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        Self::from_terms(self.terms().chain(other.terms()))
    }

    pub fn checked_neg(&self) -> Result<Self> {
        self.checked_scale(-1)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let terms = self
            .terms()
            .map(|(e, c)| c.checked_mul(k).map(|c| (e, c)).ok_or(LaurentError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(terms)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let e = e1.checked_add(e2).ok_or(LaurentError::Overflow)?;
                let c = c1.checked_mul(c2).ok_or(LaurentError::Overflow)?;
                let entry = acc.entry(e).or_insert(0);
                *entry = entry.checked_add(c).ok_or(LaurentError::Overflow)?;
            }
        }
        acc.retain(|_, c| *c != 0);
        Ok(Self { terms: acc })
    }

    pub fn checked_pow(&self, n: u32) -> Result<Self> {
        (0..n).try_fold(Self::one(), |acc, _| acc.checked_mul(self))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Result<Self> {
        let terms = self
            .terms()
            .map(|(e, c)| e.checked_add(k).map(|e| (e, c)).ok_or(LaurentError::Overflow))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { terms })
    }

    /// The substitution `t -> t^k`.
    pub fn substitute_power(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(LaurentError::ZeroSubstitution);
        }
        let terms = self
            .terms()
            .map(|(e, c)| e.checked_mul(k).map(|e| (e, c)).ok_or(LaurentError::Overflow))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self { terms })
    }

    /// `p(t^-1)`.
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms().map(|(e, c)| (-e, c)).collect(),
        }
    }

    /// Exact quotient `self / divisor`. Fails with [`LaurentError::NotExact`]
    /// when the divisor does not divide in `Z[t, t^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (dmin, dmax) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lead = divisor.coeff(dmax);
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        // Long division from the top. Units t^k are invertible, so the
        // remainder is exhausted iff it reaches zero before its span drops
        // below the divisor's.
        while let (Some(rmin), Some(rmax)) = (rem.min_exp(), rem.max_exp()) {
            if rmax - rmin < dmax - dmin {
                return Err(LaurentError::NotExact);
            }
            let rc = rem.coeff(rmax);
            if rc % lead != 0 {
                return Err(LaurentError::NotExact);
            }
            let qc = rc / lead;
            let qe = rmax - dmax;
            quot.insert(qe, qc);
            rem = rem.checked_sub(&divisor.checked_scale(qc)?.shift(qe)?)?;
        }
        Ok(Self { terms: quot })
    }

    /// Canonical Alexander representative `±t^k·p`: exponent-symmetric,
    /// palindromic, and equal to `+1` at `t = 1`.
    pub fn normalize_alexander(&self) -> Result<Self> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::ZeroPolynomial),
        };
        let at_one = self.eval_at_one()?;
        if at_one != 1 && at_one != -1 {
            return Err(LaurentError::NotUnitAtOne(at_one));
        }
        let sum = lo.checked_add(hi).ok_or(LaurentError::Overflow)?;
        if sum % 2 != 0 {
            return Err(LaurentError::NotSymmetric);
        }
        let centered = self.shift(-sum / 2)?.checked_scale(at_one)?;
        if centered.reflect() != centered {
            return Err(LaurentError::NotSymmetric);
        }
        Ok(centered)
    }

    /// True when `self` is already in canonical Alexander form.
    pub fn is_normalized_alexander(&self) -> bool {
        !self.is_zero() && self.eval_at_one() == Ok(1) && self.reflect() == *self
    }
}

fn expect_ok<T>(r: Result<T>) -> T {
    match r {
        Ok(v) => v,
        Err(e) => panic!("{e}"),
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        expect_ok(self.checked_add(rhs))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        expect_ok(self.checked_sub(rhs))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        expect_ok(self.checked_mul(rhs))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        expect_ok(self.checked_neg())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: u64, e: i64) -> fmt::Result {
    match (c, e) {
        (c, 0) => write!(f, "{c}"),
        (1, 1) => write!(f, "t"),
        (1, e) => write!(f, "t^{e}"),
        (c, 1) => write!(f, "{c}t"),
        (c, e) => write!(f, "{c}t^{e}"),
    }
}

/// Ascending exponent order, e.g. `-t^-1 + 3 - t`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            match (i, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            fmt_monomial(f, c.unsigned_abs(), e)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    input: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Self { input, chars: input.char_indices().peekable() }
    }

    fn err(&self, reason: impl Into<String>) -> LaurentError {
        LaurentError::Parse { input: self.input.to_string(), reason: reason.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<std::result::Result<i64, LaurentError>> {
        self.skip_ws();
        let mut s = String::new();
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            s.push(c);
        }
        if s.is_empty() {
            None
        } else {
            Some(s.parse::<i64>().map_err(|_| self.err(format!("integer {s} out of range"))))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let v = self.digits().ok_or_else(|| self.err("expected exponent after '^'"))??;
        if paren && !self.eat(')') {
            return Err(self.err("unclosed '(' in exponent"));
        }
        Ok(if neg { -v } else { v })
    }

    fn term(&mut self) -> Result<(i64, i64)> {
        let coeff = self.digits().transpose()?;
        if coeff.is_some() {
            self.eat('*');
        }
        if self.eat('t') {
            let exp = if self.eat('^') { self.exponent()? } else { 1 };
            Ok((exp, coeff.unwrap_or(1)))
        } else {
            match coeff {
                Some(c) => Ok((0, c)),
                None => Err(match self.peek() {
                    Some(c) => self.err(format!("unexpected character {c:?}")),
                    None => self.err("expected a term"),
                }),
            }
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut terms = Vec::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (e, c) = self.term()?;
            terms.push((e, c * sign));
            sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else {
                break;
            };
        }
        if let Some(c) = self.peek() {
            return Err(self.err(format!("trailing input at {c:?}")));
        }
        LaurentPoly::from_terms(terms)
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).poly()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
