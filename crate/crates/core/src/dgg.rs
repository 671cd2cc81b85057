//! The bundled Southern Women (DGG) data set: 18 women attending 14 events
//! in 1936, with the event dates and the usual group definitions.

use crate::dynamics::GroupDefinitions;
use crate::netmat::IncidenceData;

/// Incidence CSV, rows `W_1..W_18`, columns `E_1..E_14`, with a date row.
pub const DGG_CSV: &str = include_str!("../data/dgg.csv");

/// Groups `G1`, `G2`, `G3` of women and event classes `E1`, `J`, `E2`.
pub const DGG_GROUPS_JSON: &str = include_str!("../data/dgg_groups.json");

/// Published values the `reproduce` command checks against.
pub const DGG_EXPECTED_JSON: &str = include_str!("../data/dgg_expected.json");

pub const DGG_YEAR: i32 = 1936;

pub fn incidence() -> IncidenceData {
    IncidenceData::from_csv(DGG_CSV, DGG_YEAR).expect("bundled DGG data parses")
}

pub fn groups() -> GroupDefinitions {
    GroupDefinitions::from_json(DGG_GROUPS_JSON).expect("bundled group file parses")
}

/// `prefix_a..prefix_b` as labels, e.g. `range("W", 1, 4)` is `W_1..W_4`.
pub fn range(prefix: &str, from: usize, to: usize) -> Vec<String> {
    (from..=to).map(|i| format!("{prefix}_{i}")).collect()
}
