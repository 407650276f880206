//! Classification of `E(1)_K` from the small-perturbation SW invariant.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knots::{self, KnotError, KnotInput};
use crate::laurent::LaurentPoly;
use crate::lattice::{self, ClassVector};
use crate::swseries::{self, SWSeries, SwError, SwRecord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Sw(#[from] SwError),
    #[error("minimality via basic classes is not applicable to an empty SW series")]
    EmptySeries,
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("malformed verdict JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, ClassifyError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    RationalOrRuled,
    Dolgachev { p: i64, q: i64 },
    MinimalNonComplex,
    NotApplicable { reason: String },
}

impl Outcome {
    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::RationalOrRuled => "RATIONAL_OR_RULED",
            Outcome::Dolgachev { .. } => "DOLGACHEV",
            Outcome::MinimalNonComplex => "MINIMAL_NON_COMPLEX",
            Outcome::NotApplicable { .. } => "NOT_APPLICABLE",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Dolgachev { p, q } => write!(f, "DOLGACHEV({p}, {q})"),
            Outcome::NotApplicable { reason } => write!(f, "NOT_APPLICABLE({reason})"),
            other => f.write_str(other.tag()),
        }
    }
}

/// Rules a verdict can rest on. Serialized as `id: statement`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    FiberedScreen,
    TrivialAlexander,
    VanishingCriterion,
    NontrivialAlexander,
    Adjunction,
    CanonicalClass,
    Minimality,
    TorusPolynomial,
    NonComplex,
}

impl Rule {
    const ALL: [Rule; 9] = [
        Rule::FiberedScreen,
        Rule::TrivialAlexander,
        Rule::VanishingCriterion,
        Rule::NontrivialAlexander,
        Rule::Adjunction,
        Rule::CanonicalClass,
        Rule::Minimality,
        Rule::TorusPolynomial,
        Rule::NonComplex,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Rule::FiberedScreen => "fibered-screen",
            Rule::TrivialAlexander => "trivial-alexander",
            Rule::VanishingCriterion => "vanishing-criterion",
            Rule::NontrivialAlexander => "nontrivial-alexander",
            Rule::Adjunction => "adjunction",
            Rule::CanonicalClass => "canonical-class",
            Rule::Minimality => "minimality",
            Rule::TorusPolynomial => "torus-polynomial",
            Rule::NonComplex => "non-complex",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Rule::FiberedScreen => {
                "Alexander polynomial is not monic, so K is not fibered and the knot-surgery formula does not apply"
            }
            Rule::TrivialAlexander => "E(1)_K is rational or ruled iff the Alexander polynomial is trivial",
            Rule::VanishingCriterion => {
                "a minimal symplectic manifold with b2+ = 1 and torsion-free K, K^2 >= 0 is rational or ruled iff SW vanishes"
            }
            Rule::NontrivialAlexander => "nontrivial Alexander polynomial gives nonzero SW, so E(1)_K is neither rational nor ruled",
            Rule::Adjunction => "every basic class is orthogonal to the square-zero fiber torus",
            Rule::CanonicalClass => "top basic class is (2g-1)[T] with SW value +1 or -1",
            Rule::Minimality => "differences of basic classes square to 0, never -4, so E(1)_K is minimal",
            Rule::TorusPolynomial => {
                "Alexander polynomial equals that of T(p,q); SW-indistinguishable from the Dolgachev surface E(1;p,q)"
            }
            Rule::NonComplex => {
                "Alexander polynomial differs from every torus-knot polynomial, so E(1)_K admits no complex structure"
            }
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.id(), self.statement())
    }
}

impl FromStr for Rule {
    type Err = ClassifyError;

    fn from_str(s: &str) -> Result<Self> {
        let id = s.split(':').next().unwrap_or("").trim();
        Rule::ALL
            .into_iter()
            .find(|r| r.id() == id)
            .ok_or_else(|| ClassifyError::Json(format!("unknown rule {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub knot_name: String,
    pub delta: LaurentPoly,
    pub sw: SWSeries,
    pub outcome: Outcome,
    pub minimal: bool,
    pub evidence: Vec<Rule>,
}

/// Wire form with a fixed field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub name: String,
    pub alexander: LaurentPoly,
    pub sw: Vec<SwRecord>,
    pub outcome: String,
    pub p: Option<i64>,
    pub q: Option<i64>,
    pub minimal: bool,
    pub evidence: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verdict {
    pub fn to_json(&self) -> VerdictJson {
        let (p, q) = match self.outcome {
            Outcome::Dolgachev { p, q } => (Some(p), Some(q)),
            _ => (None, None),
        };
        VerdictJson {
            name: self.knot_name.clone(),
            alexander: self.delta.clone(),
            sw: self.sw.records(),
            outcome: self.outcome.tag().to_string(),
            p,
            q,
            minimal: self.minimal,
            evidence: self.evidence.iter().map(Rule::to_string).collect(),
            reason: match &self.outcome {
                Outcome::NotApplicable { reason } => Some(reason.clone()),
                _ => None,
            },
        }
    }

    pub fn from_json(json: &VerdictJson) -> Result<Self> {
        let outcome = match (json.outcome.as_str(), json.p, json.q) {
            ("RATIONAL_OR_RULED", None, None) => Outcome::RationalOrRuled,
            ("DOLGACHEV", Some(p), Some(q)) => Outcome::Dolgachev { p, q },
            ("MINIMAL_NON_COMPLEX", None, None) => Outcome::MinimalNonComplex,
            ("NOT_APPLICABLE", None, None) => {
                Outcome::NotApplicable { reason: json.reason.clone().unwrap_or_default() }
            }
            (other, p, q) => {
                return Err(ClassifyError::Json(format!("bad outcome {other:?} with p={p:?}, q={q:?}")))
            }
        };
        Ok(Self {
            knot_name: json.name.clone(),
            delta: json.alexander.clone(),
            sw: SWSeries::from_records(&json.sw)?,
            outcome,
            minimal: json.minimal,
            evidence: json.evidence.iter().map(|s| s.parse()).collect::<Result<_>>()?,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("verdict serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: VerdictJson = serde_json::from_str(s).map_err(|e| ClassifyError::Json(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// True iff no two basic classes differ by a class of square `-4`.
pub fn minimality_check(sw: &SWSeries) -> Result<bool> {
    if sw.is_empty() {
        return Err(ClassifyError::EmptySeries);
    }
    let classes = sw.basic_classes();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if (*a - *b).square() == -4 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `SW°` of the Dolgachev surface `E(1;p,q)`.
pub fn dolgachev_series(p: i64, q: i64) -> Result<SWSeries> {
    Ok(swseries::sw_small_perturbation(&knots::torus_alexander(p, q)?)?)
}

pub fn classify(input: &KnotInput) -> Result<Verdict> {
    let delta = input.alexander()?;
    classify_alexander(&input.name, &delta)
}

pub fn classify_alexander(name: &str, delta: &LaurentPoly) -> Result<Verdict> {
    let delta = delta.normalize_alexander().map_err(KnotError::from)?;
    let verdict = |sw, outcome, minimal, evidence| Verdict {
        knot_name: name.to_string(),
        delta: delta.clone(),
        sw,
        outcome,
        minimal,
        evidence,
    };

    if !knots::is_fibered_candidate(&delta) {
        let lead = delta.leading_coeff().unwrap_or(0);
        return Ok(verdict(
            swseries::sw_small_perturbation_unscreened(&delta)?,
            Outcome::NotApplicable {
                reason: format!("not fibered-screened: leading coefficient {lead} is not +1 or -1"),
            },
            false,
            vec![Rule::FiberedScreen],
        ));
    }

    let sw = swseries::sw_small_perturbation(&delta)?;
    if delta.is_one() {
        if !sw.is_empty() {
            return Err(ClassifyError::Internal("trivial Alexander polynomial produced basic classes".into()));
        }
        return Ok(verdict(sw, Outcome::RationalOrRuled, false, vec![Rule::TrivialAlexander, Rule::VanishingCriterion]));
    }

    let torus = ClassVector::torus();
    if sw.basic_classes().iter().any(|c| lattice::adjunction_check(1, &torus, c) != Ok(true)) {
        return Err(ClassifyError::Internal("basic class violates the torus adjunction inequality".into()));
    }
    let genus = swseries::genus(&delta);
    let (top, value) = swseries::canonical_class_coefficient(&delta)?;
    if ClassVector::torus_multiple(top) != ClassVector::canonical_class(genus) || value.abs() != 1 {
        return Err(ClassifyError::Internal(format!("top basic class {top}[T] with value {value}")));
    }
    let minimal = minimality_check(&sw)?;
    if !minimal {
        return Err(ClassifyError::Internal("basic classes differ by a (-4)-class".into()));
    }

    let mut evidence = vec![Rule::NontrivialAlexander, Rule::Adjunction, Rule::CanonicalClass, Rule::Minimality];
    let outcome = match knots::match_torus(&delta) {
        Some((p, q)) => {
            evidence.push(Rule::TorusPolynomial);
            Outcome::Dolgachev { p, q }
        }
        None => {
            evidence.push(Rule::NonComplex);
            Outcome::MinimalNonComplex
        }
    };
    Ok(verdict(sw, outcome, minimal, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knots::{BraidWord, KnotSource};

    fn braid_input(name: &str, word: &str) -> KnotInput {
        KnotInput::new(name, KnotSource::Braid(BraidWord::parse(word, None).unwrap()))
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        let v = classify(&braid_input("unknot", "1")).unwrap();
        assert_eq!(v.outcome, Outcome::RationalOrRuled);
        assert!(v.sw.is_empty());

        let v = classify(&braid_input("trefoil", "1 1 1")).unwrap();
        assert_eq!(v.outcome, Outcome::Dolgachev { p: 2, q: 3 });
        assert!(v.minimal);

        let v = classify(&braid_input("figure-eight", "1 -2 1 -2")).unwrap();
        assert_eq!(v.outcome, Outcome::MinimalNonComplex);
        assert!(v.minimal);
        assert!(v.evidence.contains(&Rule::NonComplex));
    }

    #[test]
    fn non_monic_is_not_applicable() {
        let v = classify_alexander("5_2", &p("2t^-1 - 3 + 2t")).unwrap();
        assert!(matches!(v.outcome, Outcome::NotApplicable { .. }));
        assert!(!v.minimal);
        assert_eq!(v.evidence, vec![Rule::FiberedScreen]);
        assert_eq!(v.sw.iter().collect::<Vec<_>>(), vec![(-1, 2), (1, -2)]);
    }

    #[test]
    fn minimality_examples() {
        let tref = swseries::sw_small_perturbation(&p("t^-1 - 1 + t")).unwrap();
        assert_eq!(minimality_check(&tref), Ok(true));
        let t25 = dolgachev_series(2, 5).unwrap();
        assert_eq!(minimality_check(&t25), Ok(true));
        assert_eq!(minimality_check(&SWSeries::empty()), Err(ClassifyError::EmptySeries));
    }

    #[test]
    fn dolgachev_examples() {
        let s = dolgachev_series(2, 3).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![(-1, 1), (1, -1)]);
        assert_eq!(dolgachev_series(2, 5).unwrap().top(), Some((3, -1)));
        let v = classify(&braid_input("trefoil", "1 1 1")).unwrap();
        assert_eq!(v.sw, s);
        assert!(dolgachev_series(2, 4).is_err());
    }

    #[test]
    fn verdict_json_round_trip() {
        for (name, word) in [("unknot", "1"), ("trefoil", "1 1 1"), ("figure-eight", "1 -2 1 -2")] {
            let v = classify(&braid_input(name, word)).unwrap();
            let s = v.to_json_string();
            assert_eq!(Verdict::from_json_str(&s).unwrap(), v);
        }
        let v = classify_alexander("5_2", &p("2t^-1 - 3 + 2t")).unwrap();
        assert_eq!(Verdict::from_json_str(&v.to_json_string()).unwrap(), v);
    }

    #[test]
    fn verdict_json_field_order() {
        let v = classify(&braid_input("trefoil", "1 1 1")).unwrap();
        let s = v.to_json_string();
        let keys = ["\"name\"", "\"alexander\"", "\"sw\"", "\"outcome\"", "\"p\"", "\"q\"", "\"minimal\"", "\"evidence\""];
        let positions: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{s}");
        assert!(s.starts_with(
            r#"{"name":"trefoil","alexander":"t^-1 - 1 + t","sw":[{"lambda":-1,"value":1},{"lambda":1,"value":-1}],"outcome":"DOLGACHEV","p":2,"q":3,"minimal":true,"evidence":["#
        ));
    }

    #[test]
    fn rule_ids_parse() {
        for r in Rule::ALL {
            assert_eq!(r.to_string().parse::<Rule>().unwrap(), r);
        }
        assert!("nope: x".parse::<Rule>().is_err());
    }
}
