//! Blow-ups of a hypersurface along disjoint coordinate centers: vanishing
//! orders, leading forms, the two smoothness routes for the strict transform,
//! and the divisor-class bookkeeping.

mod analysis;
mod charts;
mod divisor;
mod scene;

pub use analysis::{Analysis, Analyzer, BLocus, CenterAnalysis, ChartCheck, Consistency, OracleOutcome};
pub use charts::BlowupChart;
pub use divisor::{
    adjunction_ledger, AdjunctionLedger, CanonicalClass, DiscrepancyEntry, DivisorClass,
    ExceptionalBlowupRecord, LatticeClass,
};
pub use scene::{Center, Scene};

use crate::poly::Polynomial;

/// Evidence attached to a non-smooth verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub reason: String,
    /// Generators of an ideal whose variety contains the detected bad locus.
    /// Empty when the reason alone identifies the failure.
    pub generators: Vec<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Smooth,
    Singular(Witness),
    /// A sufficient criterion did not apply; names the failed hypothesis.
    Inconclusive(String),
}

impl Verdict {
    pub fn is_smooth(&self) -> bool {
        matches!(self, Verdict::Smooth)
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, Verdict::Singular(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Smooth => "smooth",
            Verdict::Singular(_) => "singular",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }

    pub(crate) fn singular(reason: impl Into<String>, generators: Vec<Polynomial>) -> Self {
        Verdict::Singular(Witness {
            reason: reason.into(),
            generators,
        })
    }
}
