//! Knot presentations and their Alexander polynomials.
//!
//! Three routes lead to a normalized Alexander polynomial: a braid word
//! (reduced Burau representation), a Seifert matrix (`det(V - tV^T)`), or a
//! polynomial given directly. The torus-knot catalog lives here as well.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("invalid braid word: {0}")]
    InvalidBraid(String),
    #[error("braid closure is a {0}-component link, not a knot")]
    NotAKnot(usize),
    #[error("invalid Seifert matrix: {0}")]
    InvalidSeifert(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("torus knot T({p},{q}) requires coprime 2 <= p, q with p*q <= {max}")]
    InvalidTorus { p: i64, q: i64, max: i64 },
    #[error("knot {name:?}: braid word gives {from_braid} but table lists {listed}")]
    Disagreement { name: String, from_braid: LaurentPoly, listed: LaurentPoly },
    #[error("knot table row {name:?} has neither a braid word nor an Alexander polynomial")]
    EmptyRow { name: String },
    #[error("unknown knot {0:?}")]
    UnknownKnot(String),
    #[error("knot table: {0}")]
    Table(String),
    #[error(transparent)]
    Polynomial(#[from] LaurentError),
}

pub type Result<T> = std::result::Result<T, KnotError>;

/// Largest strand count accepted for braid words.
pub const MAX_STRANDS: usize = 64;

/// Largest `p*q` accepted by [`torus_alexander`].
pub const MAX_TORUS_PRODUCT: i64 = 1 << 20;

/// A word in the braid group `B_n`. Letter `i` is `σ_i`, letter `-i` is
/// `σ_i^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// Validates letter indices and that the closure is a knot.
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(KnotError::InvalidBraid(format!("need at least 2 strands, got {strands}")));
        }
        if strands > MAX_STRANDS {
            return Err(KnotError::InvalidBraid(format!("{strands} strands exceeds the maximum {MAX_STRANDS}")));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(KnotError::InvalidBraid(format!(
                "generator index {bad} outside 1..={} for {strands} strands",
                strands - 1
            )));
        }
        let word = Self { strands, letters };
        match word.closure_components() {
            1 => Ok(word),
            k => Err(KnotError::NotAKnot(k)),
        }
    }

    /// Parses space-separated signed generator indices such as `1 -2 1 -2`.
    /// Without an explicit strand count, `max|index| + 1` is used.
    pub fn parse(text: &str, strands: Option<usize>) -> Result<Self> {
        let letters = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| KnotError::InvalidBraid(format!("bad generator {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(KnotError::InvalidBraid("empty word".into()));
        }
        let inferred = letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0).saturating_add(1);
        Self::new(strands.unwrap_or(inferred), letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Permutation of strand positions induced by the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    /// Number of components of the braid closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", words.join(" "))
    }
}

/// Square integer matrix of even size `2g` with `det(V - V^T) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(KnotError::InvalidSeifert("matrix is not square".into()));
        }
        if n % 2 != 0 {
            return Err(KnotError::InvalidSeifert(format!("odd dimension {n}")));
        }
        let skew: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        entries[i][j]
                            .checked_sub(entries[j][i])
                            .map(LaurentPoly::constant)
                            .ok_or(LaurentError::Overflow)
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<_, _>>()?;
        let d = determinant(skew)?;
        if !d.is_one() {
            return Err(KnotError::InvalidSeifert(format!("det(V - V^T) = {d}, expected 1")));
        }
        Ok(Self { entries })
    }

    /// Parses `[[a, b], [c, d]]` (JSON-style nested integer arrays).
    pub fn parse(text: &str) -> Result<Self> {
        let entries: Vec<Vec<i64>> = serde_json::from_str(text)
            .map_err(|e| KnotError::InvalidSeifert(format!("cannot parse {text:?}: {e}")))?;
        Self::new(entries)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotSource {
    Braid(BraidWord),
    Seifert(SeifertMatrix),
    Polynomial(LaurentPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotInput {
    pub name: String,
    pub source: KnotSource,
}

impl KnotInput {
    pub fn new(name: impl Into<String>, source: KnotSource) -> Self {
        Self { name: name.into(), source }
    }

    /// Normalized Alexander polynomial of the presented knot.
    pub fn alexander(&self) -> Result<LaurentPoly> {
        match &self.source {
            KnotSource::Braid(b) => alexander_from_braid(b),
            KnotSource::Seifert(v) => alexander_from_seifert(v),
            KnotSource::Polynomial(p) => Ok(p.normalize_alexander()?),
        }
    }
}

/// Fraction-free (Bareiss) determinant over `Z[t, t^-1]`.
fn determinant(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly> {
    let n = m.len();
    let mut sign = 1;
    let mut prev = LaurentPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].checked_mul(&m[k][k])?.checked_sub(&m[i][k].checked_mul(&m[k][j])?)?;
                m[i][j] = num
                    .div_exact(&prev)
                    .map_err(|_| KnotError::Internal("Bareiss step is not exact".into()))?;
            }
        }
        prev = m[k][k].clone();
    }
    match n {
        0 => Ok(LaurentPoly::one()),
        _ => Ok(m[n - 1][n - 1].checked_scale(sign)?),
    }
}

/// `Δ(t) ≐ det(V - t V^T)`, normalized.
pub fn alexander_from_seifert(v: &SeifertMatrix) -> Result<LaurentPoly> {
    let n = v.dim();
    let t = LaurentPoly::t();
    let m = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| LaurentPoly::constant(v.entries[i][j]).checked_sub(&t.checked_scale(v.entries[j][i])?))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let det = determinant(m)?;
    det.normalize_alexander()
        .map_err(|e| KnotError::InvalidSeifert(format!("det(V - tV^T) = {det}: {e}")))
}

type PolyMatrix = Vec<Vec<LaurentPoly>>;

fn identity(n: usize) -> PolyMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect())
        .collect()
}

/// Reduced Burau matrix of a single letter, `(n-1) x (n-1)`.
///
/// `σ_i` acts on row `i` (1-based) as `(t, -t, 1)` in columns `i-1, i, i+1`;
/// `σ_i^{-1}` as `(1, -t^-1, t^-1)`. Columns outside `1..n-1` are dropped.
fn burau_letter(strands: usize, letter: i32) -> PolyMatrix {
    let dim = strands - 1;
    let mut m = identity(dim);
    let i = letter.unsigned_abs() as usize - 1;
    let row = if letter > 0 {
        [LaurentPoly::t(), LaurentPoly::monomial(-1, 1), LaurentPoly::one()]
    } else {
        [LaurentPoly::one(), LaurentPoly::monomial(-1, -1), LaurentPoly::monomial(1, -1)]
    };
    for (offset, entry) in row.into_iter().enumerate() {
        if let Some(col) = (i + offset).checked_sub(1) {
            if col < dim {
                m[i][col] = entry;
            }
        }
    }
    m
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    let n = a.len();
    let mut out = vec![vec![LaurentPoly::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].checked_add(&a[i][k].checked_mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

/// Alexander polynomial of a braid closure via the reduced Burau
/// representation: `det(I - ρ(β)) ≐ Δ(t)·(1 + t + … + t^{n-1})`.
pub fn alexander_from_braid(b: &BraidWord) -> Result<LaurentPoly> {
    let components = b.closure_components();
    if components != 1 {
        return Err(KnotError::NotAKnot(components));
    }
    let dim = b.strands - 1;
    let mut rho = identity(dim);
    for &l in &b.letters {
        rho = mat_mul(&rho, &burau_letter(b.strands, l))?;
    }
    let mut m = identity(dim);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = entry.checked_sub(&rho[i][j])?;
        }
    }
    let det = determinant(m)?;
    let divisor = LaurentPoly::from_coeffs(0, &vec![1; b.strands]);
    let delta = det.div_exact(&divisor).map_err(|_| {
        KnotError::Internal(format!("det(I - Burau) = {det} is not divisible by {divisor}"))
    })?;
    delta
        .normalize_alexander()
        .map_err(|e| KnotError::Internal(format!("braid {b} produced {delta}: {e}")))
}

/// Fiberedness screen: a fibered knot has a monic Alexander polynomial.
pub fn is_fibered_candidate(delta: &LaurentPoly) -> bool {
    matches!(delta.leading_coeff(), Some(1) | Some(-1))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `Δ_{T(p,q)}` computed as `(t^{pq}-1)(t-1) / ((t^p-1)(t^q-1))`, normalized.
pub fn torus_alexander(p: i64, q: i64) -> Result<LaurentPoly> {
    let invalid = || KnotError::InvalidTorus { p, q, max: MAX_TORUS_PRODUCT };
    if p < 2 || q < 2 || gcd(p, q) != 1 {
        return Err(invalid());
    }
    let pq = p.checked_mul(q).filter(|&pq| pq <= MAX_TORUS_PRODUCT).ok_or_else(invalid)?;
    let binom = |k: i64| LaurentPoly::from_terms([(k, 1), (0, -1)]);
    let num = binom(pq)?.checked_mul(&binom(1)?)?;
    let den = binom(p)?.checked_mul(&binom(q)?)?;
    let delta = num
        .div_exact(&den)
        .map_err(|_| KnotError::Internal(format!("torus quotient for T({p},{q}) is not exact")))?;
    Ok(delta.normalize_alexander()?)
}

/// The standard braid `(σ_1 ⋯ σ_{p-1})^q` whose closure is `T(p,q)`.
pub fn torus_braid(p: usize, q: usize) -> Result<BraidWord> {
    let letters = (0..q).flat_map(|_| 1..p as i32).collect();
    BraidWord::new(p, letters)
}

/// Coprime pairs `2 <= p < q` with `(p-1)(q-1) = span`.
pub fn torus_candidates(span: i64) -> Vec<(i64, i64)> {
    if span <= 0 {
        return Vec::new();
    }
    (1..)
        .take_while(|d| d * d < span)
        .filter(|d| span % d == 0)
        .map(|d| (d + 1, span / d + 1))
        .filter(|&(p, q)| gcd(p, q) == 1)
        .collect()
}

/// Finds the torus knot (if any) sharing this normalized Alexander
/// polynomial. The trivial polynomial has no match.
pub fn match_torus(delta: &LaurentPoly) -> Option<(i64, i64)> {
    let span = delta.span()?;
    torus_candidates(span)
        .into_iter()
        .find(|&(p, q)| torus_alexander(p, q).map(|t| &t == delta).unwrap_or(false))
}

/// Seifert matrices for the built-in knots that have one on file.
pub fn builtin_seifert(name: &str) -> Option<SeifertMatrix> {
    let entries: Vec<Vec<i64>> = match name {
        "unknot" => vec![],
        "trefoil" => vec![vec![-1, 1], vec![0, -1]],
        "figure-eight" => vec![vec![1, 1], vec![0, -1]],
        "T(2,5)" => two_bridge_torus_seifert(2),
        "T(2,7)" => two_bridge_torus_seifert(3),
        "5_2" => vec![vec![-1, 1], vec![0, -2]],
        _ => return None,
    };
    SeifertMatrix::new(entries).ok()
}

// T(2, 2g+1): -1 on the diagonal, 1 on the superdiagonal.
fn two_bridge_torus_seifert(genus: usize) -> Vec<Vec<i64>> {
    let n = 2 * genus;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j as i64 - i as i64 {
                    0 => -1,
                    1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Deserialize)]
struct RawRow {
    name: String,
    braid_word: Option<String>,
    alexander: Option<String>,
}

/// One row of a knot table (`name,braid_word,alexander`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub name: String,
    pub braid_word: Option<String>,
    pub alexander: Option<String>,
}

impl TableRow {
    /// Resolves the row to an input, cross-validating when both columns are
    /// filled in.
    pub fn to_input(&self) -> Result<KnotInput> {
        let braid = self.braid_word.as_deref().map(|w| BraidWord::parse(w, None)).transpose()?;
        let listed = self
            .alexander
            .as_deref()
            .map(|s| s.parse::<LaurentPoly>().and_then(|p| p.normalize_alexander()))
            .transpose()?;
        match (braid, listed) {
            (Some(b), Some(listed)) => {
                let from_braid = alexander_from_braid(&b)?;
                if from_braid != listed {
                    return Err(KnotError::Disagreement { name: self.name.clone(), from_braid, listed });
                }
                Ok(KnotInput::new(&self.name, KnotSource::Braid(b)))
            }
            (Some(b), None) => Ok(KnotInput::new(&self.name, KnotSource::Braid(b))),
            (None, Some(p)) => Ok(KnotInput::new(&self.name, KnotSource::Polynomial(p))),
            (None, None) => Err(KnotError::EmptyRow { name: self.name.clone() }),
        }
    }
}

fn nonempty(s: Option<String>) -> Option<String> {
    s.map(|s| s.trim().to_string()).filter(|s| !s.is_empty())
}

pub fn read_table<R: std::io::Read>(reader: R) -> Result<Vec<TableRow>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    rdr.deserialize::<RawRow>()
        .map(|row| {
            let row = row.map_err(|e| KnotError::Table(e.to_string()))?;
            Ok(TableRow {
                name: row.name,
                braid_word: nonempty(row.braid_word),
                alexander: nonempty(row.alexander),
            })
        })
        .collect()
}

pub fn read_table_file(path: &Path) -> Result<Vec<TableRow>> {
    let file = std::fs::File::open(path).map_err(|e| KnotError::Table(format!("{}: {e}", path.display())))?;
    read_table(file)
}

pub const BUILTIN_TABLE: &str = include_str!("../data/knots.csv");

pub fn builtin_table() -> Vec<TableRow> {
    read_table(BUILTIN_TABLE.as_bytes()).expect("built-in knot table is well-formed")
}

pub fn lookup<'a>(table: &'a [TableRow], name: &str) -> Result<&'a TableRow> {
    table
        .iter()
        .find(|row| row.name == name)
        .ok_or_else(|| KnotError::UnknownKnot(name.to_string()))
}
