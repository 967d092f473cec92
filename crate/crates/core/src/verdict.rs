//! Outcomes of the individual tests.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::itest::{BlockWitness, ITestWitness};

/// The result of running one sufficient criterion on one input.
///
/// The criteria are sufficient, never necessary, so a failed test yields
/// [`Verdict::Inconclusive`] rather than a negative claim.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status")]
pub enum Verdict {
    #[serde(rename = "ProvenDR")]
    ProvenDr {
        witness: Box<Witness>,
    },
    ProvenAspherical {
        witness: Box<Witness>,
    },
    Inconclusive {
        reason: Inconclusive,
    },
    Inapplicable {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Inconclusive {
    /// The search space was enumerated completely without success.
    Exhausted,
    /// The search stopped at its LP-call or enumeration budget.
    Budget,
    /// The criterion was evaluated and does not hold.
    NotSatisfied(String),
}

impl Verdict {
    pub fn dr(witness: Witness) -> Self {
        Verdict::ProvenDr {
            witness: Box::new(witness),
        }
    }

    pub fn aspherical(witness: Witness) -> Self {
        Verdict::ProvenAspherical {
            witness: Box::new(witness),
        }
    }

    pub fn not_satisfied(reason: impl Into<String>) -> Self {
        Verdict::Inconclusive {
            reason: Inconclusive::NotSatisfied(reason.into()),
        }
    }

    pub fn exhausted() -> Self {
        Verdict::Inconclusive {
            reason: Inconclusive::Exhausted,
        }
    }

    pub fn budget() -> Self {
        Verdict::Inconclusive {
            reason: Inconclusive::Budget,
        }
    }

    pub fn inapplicable(reason: impl Into<String>) -> Self {
        Verdict::Inapplicable {
            reason: reason.into(),
        }
    }

    pub fn is_proven(&self) -> bool {
        matches!(
            self,
            Verdict::ProvenDr { .. } | Verdict::ProvenAspherical { .. }
        )
    }

    pub fn is_dr(&self) -> bool {
        matches!(self, Verdict::ProvenDr { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::ProvenDr { witness } | Verdict::ProvenAspherical { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Verdict::ProvenDr { .. } => "ProvenDR",
            Verdict::ProvenAspherical { .. } => "ProvenAspherical",
            Verdict::Inconclusive { .. } => "Inconclusive",
            Verdict::Inapplicable { .. } => "Inapplicable",
        }
    }

    /// Rank used to pick the strongest of several verdicts.
    pub fn strength(&self) -> u8 {
        match self {
            Verdict::ProvenDr { .. } => 3,
            Verdict::ProvenAspherical { .. } => 2,
            Verdict::Inconclusive { .. } => 1,
            Verdict::Inapplicable { .. } => 0,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::ProvenDr { .. } | Verdict::ProvenAspherical { .. } => {
                f.write_str(self.status())
            }
            Verdict::Inconclusive { reason } => match reason {
                Inconclusive::Exhausted => f.write_str("Inconclusive (search exhausted)"),
                Inconclusive::Budget => f.write_str("Inconclusive (budget reached)"),
                Inconclusive::NotSatisfied(why) => write!(f, "Inconclusive ({why})"),
            },
            Verdict::Inapplicable { reason } => write!(f, "Inapplicable ({reason})"),
        }
    }
}

/// The certificate attached to a positive verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    ITest(ITestWitness),
    Blocks(BlockWitness),
    Deforestation(crate::log_tools::LogDeforestationWitness),
    WeakDeforestation(crate::log_tools::WeakDeforestationWitness),
    Deletion(crate::adian::DeletionWitness),
    Hull(crate::kervaire::HullWitness),
    Dyck(crate::kervaire::DyckWitness),
}

pub(crate) fn one_based<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|i| i + 1))
}

pub(crate) fn one_based_one<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}
