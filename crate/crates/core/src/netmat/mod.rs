//! Labeled matrices over the rational functions, two-mode incidence data and
//! single-mode projections.

mod dot;
mod incidence;
mod matrix;
mod multimode;
mod nodeset;

pub use dot::to_dot;
pub use incidence::{bipartite_adjacency, project_cols, project_rows, IncidenceData};
pub use matrix::{Grid, RfMatrix};
pub use multimode::{mode_convert, IntMatrix, MultiModeNetwork};
pub use nodeset::NodeSet;

/// Comma-separated fields, trimmed, each with the 1-based character column
/// where its text starts.
pub(crate) fn csv_fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 1;
    for raw in line.split(',') {
        let lead = raw.chars().take_while(|c| c.is_whitespace()).count();
        out.push((col + lead, raw.trim()));
        col += raw.chars().count() + 1;
    }
    out
}

/// Column for a "wrong number of fields" error: the first surplus field, or
/// one past the end of the line.
pub(crate) fn count_error_column(fields: &[(usize, &str)], expected: usize, line: &str) -> usize {
    fields
        .get(expected)
        .map_or(line.chars().count() + 1, |(c, _)| *c)
}
