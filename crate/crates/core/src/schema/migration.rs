//! Name-level mapping from the first-version label set to the current one.

use std::collections::BTreeSet;
use std::fmt;

use super::{parse_supersense, Supersense};
use crate::error::LabelError;

use Supersense::*;

/// Outcome of looking up a first-version label name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MigrationResult {
    /// Replaced by one or more current labels. More than one target means
    /// the old label was split and the caller must choose.
    MapsTo(BTreeSet<Supersense>),
    Removed,
    AlreadyV2,
}

impl fmt::Display for MigrationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MigrationResult::MapsTo(targets) => {
                f.write_str("MapsTo:")?;
                for t in targets {
                    write!(f, " {t}")?;
                }
                Ok(())
            }
            MigrationResult::Removed => f.write_str("REMOVED"),
            MigrationResult::AlreadyV2 => f.write_str("ALREADY-V2"),
        }
    }
}

/// Every retired label name with its replacement set (empty = removed).
pub const V1_LEDGER: &[(&str, &[Supersense])] = &[
    ("Location", &[Locus]),
    ("InitialLocation", &[Source]),
    ("Destination", &[Goal]),
    ("Patient", &[Theme]),
    ("Co-Patient", &[CoTheme]),
    ("DeicticTime", &[Interval]),
    ("RelativeTime", &[Time]),
    ("ClockTimeCxn", &[Time]),
    ("Material", &[Source]),
    ("Donor/Speaker", &[Originator]),
    ("Creator", &[Originator]),
    ("Instance", &[Identity]),
    ("ProfessionalAspect", &[SocialRel]),
    ("Part/Portion", &[PartPortion]),
    ("Traversed", &[Path]),
    ("1DTrajectory", &[Path]),
    ("2DArea", &[Path]),
    ("3DMedium", &[Path]),
    ("Contour", &[Path]),
    ("Via", &[Path]),
    ("Transit", &[Path]),
    ("Course", &[Path]),
    ("Activity", &[Circumstance, Topic]),
    ("Reciprocation", &[Explanation]),
    ("Attribute", &[Characteristic, Identity]),
    ("Function", &[Purpose]),
    ("Elements", &[PartPortion]),
    ("Superset", &[Whole]),
    ("Asset", &[Cost]),
    ("Value", &[Cost]),
    ("State", &[]),
    ("StartState", &[]),
    ("EndState", &[]),
    ("ValueComparison", &[]),
    ("Comparison/Contrast", &[]),
    ("Scalar/Rank", &[]),
    ("Affector", &[]),
    ("Undergoer", &[]),
    ("Place", &[]),
    ("Age", &[]),
    // former common supertype of Co-Patient and Co-Theme
    ("Co-Participant", &[]),
];

/// Resolves a first-version label name against the retirement ledger.
///
/// Current names pass through as [`MigrationResult::AlreadyV2`]; names in
/// neither set are an error.
pub fn migrate_v1(name: &str) -> Result<MigrationResult, LabelError> {
    if parse_supersense(name).is_ok() {
        return Ok(MigrationResult::AlreadyV2);
    }
    let (_, targets) = V1_LEDGER
        .iter()
        .find(|(old, _)| *old == name)
        .ok_or_else(|| LabelError::Unknown(name.to_string()))?;
    Ok(if targets.is_empty() {
        MigrationResult::Removed
    } else {
        MigrationResult::MapsTo(targets.iter().copied().collect())
    })
}
