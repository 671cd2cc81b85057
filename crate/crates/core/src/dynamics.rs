//! Chronological attendance analysis of two-mode data: event ordering by
//! date, group attendance series and their exact summary statistics,
//! activity/popularity classes and per-level mean attendance.

use std::fmt;

use chrono::{Datelike, NaiveDate};
use indexmap::IndexMap;
use num_traits::Zero;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, rational_from_int, rational_to_f64, Rational};
use crate::hierarchy::HierarchyResult;
use crate::netmat::{IncidenceData, NodeSet};

/// A calendar date. Field order makes the derived ordering chronological.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventDate {
    pub year: i32,
    pub month: u32,
    pub day: u32,
}

impl EventDate {
    pub fn new(year: i32, month: u32, day: u32) -> Result<Self> {
        NaiveDate::from_ymd_opt(year, month, day)
            .map(Self::from)
            .ok_or_else(|| Error::invalid(format!("invalid date {year}-{month}-{day}")))
    }

    /// Parses `M/D` and attaches `year`.
    pub fn parse_month_day(s: &str, year: i32) -> std::result::Result<Self, String> {
        let (m, d) = s
            .split_once('/')
            .ok_or_else(|| format!("date '{s}' is not of the form M/D"))?;
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| format!("bad month in '{s}'"))?;
        let d: u32 = d.trim().parse().map_err(|_| format!("bad day in '{s}'"))?;
        Self::new(year, m, d).map_err(|_| format!("'{s}' is not a valid date in {year}"))
    }

    pub fn month_day(&self) -> String {
        format!("{}/{}", self.month, self.day)
    }
}

impl From<NaiveDate> for EventDate {
    fn from(d: NaiveDate) -> Self {
        EventDate {
            year: d.year(),
            month: d.month(),
            day: d.day(),
        }
    }
}

impl fmt::Display for EventDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}-{:02}", self.year, self.month, self.day)
    }
}

/// Attendance of one group at a chronologically ordered list of events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttendanceSeries {
    pub group_name: String,
    pub events: Vec<String>,
    pub dates: Vec<Option<EventDate>>,
    pub counts: Vec<u32>,
}

fn col(data: &IncidenceData, label: &str) -> Result<usize> {
    data.col_index(label)
        .ok_or_else(|| Error::invalid(format!("unknown event '{label}'")))
}

fn row(data: &IncidenceData, label: &str) -> Result<usize> {
    data.row_index(label)
        .ok_or_else(|| Error::invalid(format!("unknown row label '{label}'")))
}

/// Sorts events by date; ties keep the data's column order.
pub fn chronological_order(data: &IncidenceData, events: &[String]) -> Result<Vec<String>> {
    let mut keyed = events
        .iter()
        .map(|e| {
            let j = col(data, e)?;
            let date = data
                .dates()
                .map(|d| d[j])
                .ok_or_else(|| Error::invalid(format!("no date recorded for event '{e}'")))?;
            Ok((date, j, e.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, _, e)| e).collect())
}

/// `counts[k]` is the number of group members attending `events[k]`.
pub fn group_attendance(
    data: &IncidenceData,
    group_name: &str,
    group: &[String],
    events: &[String],
) -> Result<AttendanceSeries> {
    let rows = group
        .iter()
        .map(|g| row(data, g))
        .collect::<Result<Vec<_>>>()?;
    let cols = events
        .iter()
        .map(|e| col(data, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(AttendanceSeries {
        group_name: group_name.to_string(),
        events: events.to_vec(),
        dates: cols.iter().map(|&j| data.dates().map(|d| d[j])).collect(),
        counts: cols
            .iter()
            .map(|&j| rows.iter().map(|&i| u32::from(data.get(i, j))).sum())
            .collect(),
    })
}

/// Exact mean and sample variance (divisor `n - 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesStats {
    pub mean: Rational,
    pub variance: Rational,
}

pub fn series_stats(s: &AttendanceSeries) -> Result<SeriesStats> {
    mean_and_variance(&s.counts)
}

pub fn mean_and_variance(counts: &[u32]) -> Result<SeriesStats> {
    if counts.len() < 2 {
        return Err(Error::invalid("sample variance needs at least two values"));
    }
    let n = rational_from_int(counts.len() as i64);
    let values: Vec<Rational> = counts
        .iter()
        .map(|&c| rational_from_int(c.into()))
        .collect();
    let mean = values.iter().fold(Rational::zero(), |a, v| a + v) / &n;
    let ss = values
        .iter()
        .map(|v| (v - &mean) * (v - &mean))
        .fold(Rational::zero(), |a, v| a + v);
    let variance = ss / (n - rational_from_int(1));
    Ok(SeriesStats { mean, variance })
}

/// Rows attending more events than the average row, and columns attended
/// more than the average column (strict inequality).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Activity {
    pub active_rows: NodeSet,
    pub popular_cols: NodeSet,
    pub mean_row_sum: Rational,
    pub mean_col_sum: Rational,
}

pub fn classify_activity(data: &IncidenceData) -> Activity {
    let total = rational_from_int(data.ones().into());
    let mean_row_sum = if data.n_rows() == 0 {
        Rational::zero()
    } else {
        &total / rational_from_int(data.n_rows() as i64)
    };
    let mean_col_sum = if data.n_cols() == 0 {
        Rational::zero()
    } else {
        &total / rational_from_int(data.n_cols() as i64)
    };
    let active_rows = (0..data.n_rows())
        .filter(|&i| rational_from_int(data.row_sum(i).into()) > mean_row_sum)
        .map(|i| data.row_labels()[i].clone())
        .collect();
    let popular_cols = (0..data.n_cols())
        .filter(|&j| rational_from_int(data.col_sum(j).into()) > mean_col_sum)
        .map(|j| data.col_labels()[j].clone())
        .collect();
    Activity {
        active_rows,
        popular_cols,
        mean_row_sum,
        mean_col_sum,
    }
}

/// Mean row-sum of the row labels and mean column-sum of the column labels
/// among `labels`; `None` for a mode with no members.
pub fn mean_attendance<'a>(
    data: &IncidenceData,
    labels: impl IntoIterator<Item = &'a str>,
) -> Result<(Option<Rational>, Option<Rational>)> {
    let (mut rows, mut cols) = (Vec::new(), Vec::new());
    for l in labels {
        if let Some(i) = data.row_index(l) {
            rows.push(data.row_sum(i));
        } else if let Some(j) = data.col_index(l) {
            cols.push(data.col_sum(j));
        } else {
            return Err(Error::invalid(format!("label '{l}' is not in the data")));
        }
    }
    let mean = |v: &[u32]| {
        (!v.is_empty()).then(|| {
            rational_from_int(v.iter().map(|&c| i64::from(c)).sum())
                / rational_from_int(v.len() as i64)
        })
    };
    Ok((mean(&rows), mean(&cols)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LevelKey {
    Core,
    /// `h_k`, 1-based.
    Periphery(usize),
}

impl fmt::Display for LevelKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelKey::Core => f.write_str("core"),
            LevelKey::Periphery(k) => write!(f, "h_{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAttendance {
    pub level: LevelKey,
    pub row_mean: Option<Rational>,
    pub col_mean: Option<Rational>,
}

/// Mean attendance per hierarchy level, core first, separately per mode.
pub fn level_mean_attendance(
    data: &IncidenceData,
    h: &HierarchyResult,
) -> Result<Vec<LevelAttendance>> {
    h.groups()
        .enumerate()
        .map(|(k, g)| {
            let (row_mean, col_mean) = mean_attendance(data, g.iter())?;
            Ok(LevelAttendance {
                level: if k == 0 {
                    LevelKey::Core
                } else {
                    LevelKey::Periphery(k)
                },
                row_mean,
                col_mean,
            })
        })
        .collect()
}

/// Named groups of rows and named classes of events.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
pub struct GroupDefinitions {
    pub groups: IndexMap<String, Vec<String>>,
    #[serde(default)]
    pub event_classes: IndexMap<String, Vec<String>>,
}

impl GroupDefinitions {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }
}

/// Attendance of every group at every event class, events in date order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsReport {
    /// `(group, event class, series)`
    pub series: Vec<(String, String, AttendanceSeries)>,
}

pub fn dynamics_report(data: &IncidenceData, defs: &GroupDefinitions) -> Result<DynamicsReport> {
    let mut series = Vec::new();
    for (class, events) in &defs.event_classes {
        let ordered = chronological_order(data, events)?;
        for (group, members) in &defs.groups {
            let s = group_attendance(data, group, members, &ordered)?;
            series.push((group.clone(), class.clone(), s));
        }
    }
    Ok(DynamicsReport { series })
}

impl DynamicsReport {
    /// `group,event_class,event,date,count`, one line per group and event.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("group,event_class,event,date,count\n");
        for (group, class, s) in &self.series {
            for ((e, d), c) in s.events.iter().zip(&s.dates).zip(&s.counts) {
                let date = d.map(|d| d.to_string()).unwrap_or_default();
                out.push_str(&format!("{group},{class},{e},{date},{c}\n"));
            }
        }
        out
    }

    pub fn summary_json(&self) -> Value {
        let items: Vec<Value> = self
            .series
            .iter()
            .map(|(group, class, s)| {
                let stats = mean_and_variance(&s.counts).ok();
                json!({
                    "group": group,
                    "event_class": class,
                    "events": s.events,
                    "counts": s.counts,
                    "mean": stats.as_ref().map(|st| format_rational(&st.mean)),
                    "mean_value": stats.as_ref().map(|st| rational_to_f64(&st.mean)),
                    "variance": stats.as_ref().map(|st| format_rational(&st.variance)),
                    "variance_value": stats.as_ref().map(|st| rational_to_f64(&st.variance)),
                })
            })
            .collect();
        json!({ "series": items })
    }
}
