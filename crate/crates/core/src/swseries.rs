//! Seiberg-Witten series of `E(1)_K` supported on multiples of the fiber
//! class `[T]`.
//!
//! A series maps an odd integer `λ` to the SW value of `λ[T]`. The chamber
//! series `SW^{[T],±}` are infinite and are only ever produced up to a
//! window `|λ| ≤ N`; the small-perturbation invariant `SW° = P⁺ + P⁻` is a
//! finite sum and is computed in closed form from the coefficients of `Δ`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};
use crate::lattice::{self, ClassVector, FourManifoldModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwError {
    #[error("Alexander polynomial {0} is not normalized (symmetric with value 1 at t = 1)")]
    NotNormalized(LaurentPoly),
    #[error("Alexander polynomial {0} is not monic; the knot cannot be fibered")]
    NotMonic(LaurentPoly),
    #[error("window {window} is smaller than the degree span {span}")]
    WindowTooSmall { window: i64, span: i64 },
    #[error("class {0}[T] is not characteristic (even multiple)")]
    EvenClass(i64),
    #[error("window {0} exceeds the supported maximum {MAX_WINDOW}")]
    WindowTooLarge(i64),
    #[error("genus {0} exceeds the supported maximum {MAX_GENUS}")]
    GenusTooLarge(i64),
    #[error("trivial Alexander polynomial has no basic classes")]
    Trivial,
    #[error(transparent)]
    Polynomial(#[from] LaurentError),
}

pub type Result<T> = std::result::Result<T, SwError>;

/// Which side of the wall: `Plus` is the chamber where `(2πc₁(L) + [h])·[ω] > 0`.
/// Since `[T]·[ω] > 0` this coincides with the `[T]`-relative `+` chamber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    Plus,
    Minus,
}

impl Chamber {
    /// `±1`
    pub fn sign(self) -> i64 {
        match self {
            Chamber::Plus => 1,
            Chamber::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extent {
    /// Complete finite sum.
    Exact,
    /// Exact coefficients for `|λ| ≤ N`; nothing is known beyond.
    Truncated(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwRecord {
    pub lambda: i64,
    pub value: i64,
}

/// Odd `λ` -> nonzero SW value of `λ[T]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SWSeries {
    values: BTreeMap<i64, i64>,
    extent: Extent,
}

impl SWSeries {
    pub fn new<I>(values: I, extent: Extent) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut map = BTreeMap::new();
        for (lambda, value) in values {
            if lambda.rem_euclid(2) == 0 {
                return Err(SwError::EvenClass(lambda));
            }
            let entry: &mut i64 = map.entry(lambda).or_insert(0);
            *entry = entry.checked_add(value).ok_or(LaurentError::Overflow)?;
        }
        map.retain(|_, v| *v != 0);
        Ok(Self { values: map, extent })
    }

    pub fn empty() -> Self {
        Self { values: BTreeMap::new(), extent: Extent::Exact }
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn get(&self, lambda: i64) -> i64 {
        self.values.get(&lambda).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// `(λ, value)` in ascending `λ`.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.values.iter().map(|(&l, &v)| (l, v))
    }

    pub fn lambdas(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.keys().copied()
    }

    /// Basic classes `λ[T]` as lattice vectors.
    pub fn basic_classes(&self) -> Vec<ClassVector> {
        self.lambdas().map(ClassVector::torus_multiple).collect()
    }

    /// Largest `λ` with nonzero value.
    pub fn top(&self) -> Option<(i64, i64)> {
        self.iter().next_back()
    }

    /// Terms with `λ > 0` (`sign = 1`) or `λ < 0` (`sign = -1`).
    pub fn part(&self, sign: i64) -> SWSeries {
        Self {
            values: self.iter().filter(|(l, _)| l.signum() == sign).collect(),
            extent: self.extent,
        }
    }

    pub fn records(&self) -> Vec<SwRecord> {
        self.iter().map(|(lambda, value)| SwRecord { lambda, value }).collect()
    }

    pub fn from_records(records: &[SwRecord]) -> Result<Self> {
        Self::new(records.iter().map(|r| (r.lambda, r.value)), Extent::Exact)
    }
}

fn fmt_class(lambda: i64) -> String {
    match lambda {
        1 => "T".into(),
        -1 => "-T".into(),
        l => format!("{l}T"),
    }
}

/// Descending `λ`, e.g. `-e^{T} + e^{-T}`; the empty series prints as `0`.
impl fmt::Display for SWSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (lambda, value)) in self.iter().rev().enumerate() {
            match (i, value < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = value.unsigned_abs();
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "e^{{{}}}", fmt_class(lambda))?;
        }
        Ok(())
    }
}

/// Largest knot genus accepted by the series routines.
pub const MAX_GENUS: i64 = 100_000;
/// Largest truncation window accepted by [`fs_series`].
pub const MAX_WINDOW: i64 = 1_000_000;

fn check_genus(delta: &LaurentPoly) -> Result<()> {
    let g = genus(delta);
    if g > MAX_GENUS {
        return Err(SwError::GenusTooLarge(g));
    }
    Ok(())
}

fn check_delta(delta: &LaurentPoly) -> Result<()> {
    if !delta.is_normalized_alexander() {
        return Err(SwError::NotNormalized(delta.clone()));
    }
    if !crate::knots::is_fibered_candidate(delta) {
        return Err(SwError::NotMonic(delta.clone()));
    }
    check_genus(delta)
}

/// Genus `g` of a normalized Alexander polynomial (`span = 2g`).
pub fn genus(delta: &LaurentPoly) -> i64 {
    delta.span().unwrap_or(0) / 2
}

/// Chamber series `(∓1)·Σ_{n≥0} e^{∓(2n+1)[T]}·Δ(e^{2[T]})` for `|λ| ≤ window`.
///
/// Only finitely many `n` reach the window, so the truncated geometric sum
/// is multiplied out exactly.
pub fn fs_series(delta: &LaurentPoly, chamber: Chamber, window: i64) -> Result<SWSeries> {
    check_delta(delta)?;
    let span = delta.span().unwrap_or(0);
    if window < span {
        return Err(SwError::WindowTooSmall { window, span });
    }
    if window > MAX_WINDOW {
        return Err(SwError::WindowTooLarge(window));
    }
    let s = chamber.sign();
    // exponents of Δ(t²) lie in [-span, span]
    let n_max = (span + window - 1).div_euclid(2);
    let geometric = LaurentPoly::from_terms((0..=n_max).map(|n| (-s * (2 * n + 1), -s)))?;
    let product = geometric.checked_mul(&delta.substitute_power(2)?)?;
    SWSeries::new(
        product.terms().filter(|(e, _)| e.abs() <= window),
        Extent::Truncated(window),
    )
}

/// Small-perturbation invariant `SW° = P⁺ + P⁻`.
///
/// With `Δ = Σ a_k t^k`, the positive part of the `+` series is
/// `P⁺(λ) = -Σ_{k ≥ (λ+1)/2} a_k` and the negative part of the `-` series is
/// `P⁻(λ) = Σ_{k ≤ (λ-1)/2} a_k`. Both vanish for `|λ| > 2g - 1`.
pub fn sw_small_perturbation(delta: &LaurentPoly) -> Result<SWSeries> {
    check_delta(delta)?;
    tail_sums(delta)
}

/// The same closed form without the monicity screen. Only meaningful as
/// data: for non-fibered knots the gluing formula behind it does not apply.
pub fn sw_small_perturbation_unscreened(delta: &LaurentPoly) -> Result<SWSeries> {
    if !delta.is_normalized_alexander() {
        return Err(SwError::NotNormalized(delta.clone()));
    }
    check_genus(delta)?;
    tail_sums(delta)
}

fn tail_sums(delta: &LaurentPoly) -> Result<SWSeries> {
    let g = genus(delta);
    let mut values = Vec::new();
    let mut tail = 0i64;
    for k in (1..=g).rev() {
        tail = tail.checked_add(delta.coeff(k)).ok_or(LaurentError::Overflow)?;
        values.push((2 * k - 1, -tail));
    }
    let mut head = 0i64;
    for k in -g..=-1 {
        head = head.checked_add(delta.coeff(k)).ok_or(LaurentError::Overflow)?;
        values.push((2 * k + 1, head));
    }
    SWSeries::new(values, Extent::Exact)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WallViolation {
    pub lambda: i64,
    pub plus: i64,
    pub minus: i64,
    pub expected: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallCrossingReport {
    pub window: i64,
    /// Number of classes `λ[T]` compared.
    pub checked: usize,
    pub first_violation: Option<WallViolation>,
}

impl WallCrossingReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Compares `SW⁺(λ[T]) - SW⁻(λ[T])` against `-(-1)^{d}` for every odd
/// `|λ| ≤ window`, where `2d` is the formal dimension of `λ[T]`.
pub fn wall_crossing_check(delta: &LaurentPoly, window: i64) -> Result<WallCrossingReport> {
    let plus = fs_series(delta, Chamber::Plus, window)?;
    let minus = fs_series(delta, Chamber::Minus, window)?;
    let model = FourManifoldModel::elliptic_e1();
    let mut checked = 0;
    let first_lambda = -window + (window + 1).rem_euclid(2);
    for lambda in (first_lambda..=window).step_by(2) {
        let dim = lattice::formal_dimension(&ClassVector::torus_multiple(lambda), &model)
            .map_err(|_| SwError::EvenClass(lambda))?;
        if dim < 0 || dim % 2 != 0 {
            continue;
        }
        let expected = if (dim / 2) % 2 == 0 { -1 } else { 1 };
        checked += 1;
        let (p, m) = (plus.get(lambda), minus.get(lambda));
        if p - m != expected {
            return Ok(WallCrossingReport {
                window,
                checked,
                first_violation: Some(WallViolation { lambda, plus: p, minus: m, expected }),
            });
        }
    }
    Ok(WallCrossingReport { window, checked, first_violation: None })
}

/// Default truncation window for chamber series: `4g + 5`.
pub fn default_window(delta: &LaurentPoly) -> i64 {
    4 * genus(delta) + 5
}

/// Top basic class of `SW°` and its value. For monic nontrivial `Δ` this is
/// `(2g - 1, -a_g)`, matching the canonical class `K = (2g-1)[T]`.
pub fn canonical_class_coefficient(delta: &LaurentPoly) -> Result<(i64, i64)> {
    check_delta(delta)?;
    if delta.is_one() {
        return Err(SwError::Trivial);
    }
    sw_small_perturbation(delta)?.top().ok_or(SwError::Trivial)
}
