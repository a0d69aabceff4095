use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremId {
    Thm2,
    Thm3,
    Thm5,
    Thm6,
    Thm7,
    Eq22,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] =
        [TheoremId::Thm2, TheoremId::Thm3, TheoremId::Thm5, TheoremId::Thm6, TheoremId::Thm7, TheoremId::Eq22];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm2 => "thm2",
            TheoremId::Thm3 => "thm3",
            TheoremId::Thm5 => "thm5",
            TheoremId::Thm6 => "thm6",
            TheoremId::Thm7 => "thm7",
            TheoremId::Eq22 => "eq22",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == key)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown theorem id {s:?}") })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = ">=")]
    GreaterEq,
    #[serde(rename = "<")]
    Less,
}

/// One inequality `lhs <relation> rhs`. `slack` is positive on the satisfied
/// side, so a caller can demand a margin by comparing it against a threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionRow<S> {
    #[serde(rename = "i", skip_serializing_if = "Option::is_none", serialize_with = "one_based")]
    pub agent: Option<usize>,
    pub label: String,
    pub lhs: S,
    pub relation: Relation,
    pub rhs: S,
    pub slack: S,
    pub holds: bool,
}

fn one_based<Ser: Serializer>(agent: &Option<usize>, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
    match agent {
        Some(i) => s.serialize_some(&(i + 1)),
        None => s.serialize_none(),
    }
}

impl<S: Scalar> ConditionRow<S> {
    pub fn new(agent: Option<usize>, label: impl Into<String>, lhs: S, relation: Relation, rhs: S) -> Self {
        let (slack, holds) = match relation {
            Relation::Greater => (lhs - rhs, lhs > rhs),
            Relation::GreaterEq => (lhs - rhs, lhs >= rhs),
            Relation::Less => (rhs - lhs, lhs < rhs),
        };
        Self { agent, label: label.into(), lhs, relation, rhs, slack, holds }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    NotApplicable,
}

/// Within-set row sums of `W` over a two-sided partition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartitionDegrees<S> {
    pub d_p_min: S,
    pub d_p_max: S,
    pub d_n_min: S,
    pub d_n_max: S,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport<S> {
    pub theorem: TheoremId,
    pub applicable: bool,
    pub holds: bool,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub per_agent: Vec<ConditionRow<S>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<ConditionRow<S>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<PartitionDegrees<S>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl<S: Scalar> TheoremReport<S> {
    pub fn not_applicable(theorem: TheoremId, reason: impl Into<String>) -> Self {
        Self {
            theorem,
            applicable: false,
            holds: false,
            verdict: Verdict::NotApplicable,
            reason: Some(reason.into()),
            per_agent: Vec::new(),
            conditions: Vec::new(),
            degrees: None,
            notes: Vec::new(),
        }
    }

    /// Verdict is the conjunction of every row.
    pub fn evaluated(theorem: TheoremId, per_agent: Vec<ConditionRow<S>>, conditions: Vec<ConditionRow<S>>) -> Self {
        let holds = per_agent.iter().chain(&conditions).all(|r| r.holds);
        Self {
            theorem,
            applicable: true,
            holds,
            verdict: if holds { Verdict::Holds } else { Verdict::Fails },
            reason: None,
            per_agent,
            conditions,
            degrees: None,
            notes: Vec::new(),
        }
    }

    /// Smallest slack over all rows; `None` when there are none.
    pub fn min_slack(&self) -> Option<S> {
        self.per_agent.iter().chain(&self.conditions).map(|r| r.slack).reduce(S::min)
    }

    pub fn failing(&self) -> impl Iterator<Item = &ConditionRow<S>> {
        self.per_agent.iter().chain(&self.conditions).filter(|r| !r.holds)
    }

    pub fn condition(&self, label: &str) -> Option<&ConditionRow<S>> {
        self.conditions.iter().find(|r| r.label == label)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_sign_and_strictness() {
        let r = ConditionRow::new(Some(0), "x", 1.0, Relation::Less, 1.0);
        assert!(!r.holds);
        assert_eq!(r.slack, 0.0);
        let r = ConditionRow::new(None, "x", 0.5, Relation::GreaterEq, 0.5);
        assert!(r.holds);
        let r = ConditionRow::new(None, "x", 0.2, Relation::Greater, 0.5);
        assert!(!r.holds && r.slack < 0.0);
    }

    #[test]
    fn json_shape() {
        let rep = TheoremReport::evaluated(
            TheoremId::Thm5,
            vec![ConditionRow::new(Some(0), "row_mass", 1.0, Relation::Less, 4.0)],
            vec![],
        );
        let v = rep.to_json();
        assert_eq!(v["theorem"], "thm5");
        assert_eq!(v["applicable"], true);
        assert_eq!(v["holds"], true);
        assert_eq!(v["per_agent"][0]["i"], 1);
        assert_eq!(v["per_agent"][0]["slack"], 3.0);
        assert!(v.get("conditions").is_none());

        let na = TheoremReport::<f64>::not_applicable(TheoremId::Thm7, "beta too large");
        assert_eq!(na.verdict, Verdict::NotApplicable);
        assert!(!na.holds);
    }

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert!("thm4".parse::<TheoremId>().is_err());
    }
}
