//! End-to-end DGG pipeline: recomputes every published quantity from the
//! incidence data and compares it with a checked-in expectations file.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::dynamics::{
    chronological_order, classify_activity, group_attendance, mean_and_variance, mean_attendance,
    GroupDefinitions,
};
use crate::error::{Error, Result};
use crate::exactnum::format_rational;
use crate::hierarchy::{restrict_hierarchy, sequential_reduce, HierarchyResult, MinDegreeRule};
use crate::netmat::{
    bipartite_adjacency, project_cols, project_rows, IncidenceData, NodeSet, RfMatrix,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionResult {
    pub name: String,
    pub mismatches: Vec<String>,
}

impl SectionResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct ReproduceReport {
    pub sections: Vec<SectionResult>,
    /// Everything that was computed, in the same layout as the expectations.
    pub computed: Value,
}

impl ReproduceReport {
    pub fn passed(&self) -> bool {
        self.sections.iter().all(SectionResult::passed)
    }

    pub fn section(&self, name: &str) -> Option<&SectionResult> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let status = if s.passed() { "ok" } else { "MISMATCH" };
            out.push_str(&format!("{:<28} {status}\n", s.name));
            for m in &s.mismatches {
                out.push_str(&format!("    {m}\n"));
            }
        }
        out
    }
}

fn labels_of(v: &Value) -> Result<NodeSet> {
    v.as_array()
        .ok_or_else(|| Error::invalid("expected a label array"))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::invalid("expected a label string"))
        })
        .collect()
}

/// Groups given as `{"prefix": "W", "groups": [[1, 2], [3]]}`.
fn numbered_groups(v: &Value) -> Result<Vec<NodeSet>> {
    let prefix = v["prefix"]
        .as_str()
        .ok_or_else(|| Error::invalid("missing prefix"))?;
    v["groups"]
        .as_array()
        .ok_or_else(|| Error::invalid("missing groups"))?
        .iter()
        .map(|g| {
            g.as_array()
                .ok_or_else(|| Error::invalid("group is not an array"))?
                .iter()
                .map(|n| {
                    n.as_u64()
                        .map(|n| format!("{prefix}_{n}"))
                        .ok_or_else(|| Error::invalid("group member is not a number"))
                })
                .collect()
        })
        .collect()
}

fn show(s: &NodeSet) -> String {
    format!("{{{}}}", s.iter().collect::<Vec<_>>().join(", "))
}

/// Non-empty groups of a hierarchy, core first.
fn nonempty_groups(h: &HierarchyResult) -> Vec<NodeSet> {
    h.groups().filter(|g| !g.is_empty()).cloned().collect()
}

fn compare_groups(name: &str, got: &[NodeSet], want: &[NodeSet]) -> SectionResult {
    let mut mismatches = Vec::new();
    if got.len() != want.len() {
        mismatches.push(format!("{} groups, expected {}", got.len(), want.len()));
    }
    for (k, (g, w)) in got.iter().zip(want).enumerate() {
        if g != w {
            mismatches.push(format!("group {k}: got {}, expected {}", show(g), show(w)));
        }
    }
    SectionResult {
        name: name.to_string(),
        mismatches,
    }
}

fn int_grid(m: &RfMatrix) -> Vec<Vec<i64>> {
    m.to_grid()
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| {
                    e.as_constant()
                        .filter(|c| c.is_integer())
                        .and_then(|c| i64::try_from(c.to_integer()).ok())
                        .expect("projection entries are integers")
                })
                .collect()
        })
        .collect()
}

fn compare_table(name: &str, m: &RfMatrix, want: &Value) -> Result<SectionResult> {
    let got = int_grid(m);
    let mut mismatches = Vec::new();
    let rows = want
        .as_array()
        .ok_or_else(|| Error::invalid(format!("{name}: expected a matrix")))?;
    if rows.len() != got.len() {
        mismatches.push(format!("{} rows, expected {}", got.len(), rows.len()));
    }
    for (i, (g, w)) in got.iter().zip(rows).enumerate() {
        let w: Vec<i64> = w
            .as_array()
            .ok_or_else(|| Error::invalid(format!("{name}: expected a row")))?
            .iter()
            .map(|v| v.as_i64().unwrap_or(i64::MIN))
            .collect();
        if w.len() != g.len() {
            mismatches.push(format!(
                "row {}: {} entries, expected {}",
                m.labels()[i],
                g.len(),
                w.len()
            ));
            continue;
        }
        for (j, (a, b)) in g.iter().zip(&w).enumerate() {
            if a != b {
                mismatches.push(format!(
                    "({}, {}): got {a}, expected {b}",
                    m.labels()[i],
                    m.labels()[j]
                ));
            }
        }
    }
    Ok(SectionResult {
        name: name.to_string(),
        mismatches,
    })
}

/// Compares the degree trace of `h`, restricted to the labels starting with
/// `prefix`, against published per-step tables.
fn compare_trace(
    name: &str,
    h: &HierarchyResult,
    prefix: &str,
    want: &Value,
) -> Result<SectionResult> {
    let steps = want
        .as_array()
        .ok_or_else(|| Error::invalid(format!("{name}: expected a list of steps")))?;
    let mut mismatches = Vec::new();
    if steps.len() != h.trace.len() {
        mismatches.push(format!("{} steps, expected {}", h.trace.len(), steps.len()));
    }
    for (table, w) in h.trace.iter().zip(steps) {
        let r = format!("R_{}", table.step);
        let degrees = w["degrees"]
            .as_object()
            .ok_or_else(|| Error::invalid(format!("{name}: missing degrees")))?;
        let got: Vec<(&String, &usize)> = table
            .degrees
            .iter()
            .filter(|(l, _)| l.starts_with(prefix))
            .collect();
        for (l, d) in &got {
            match degrees.get(l.as_str()).and_then(Value::as_u64) {
                Some(e) if e == **d as u64 => {}
                Some(e) => mismatches.push(format!("{r} {l}: got {d}, expected {e}")),
                None => mismatches.push(format!("{r} {l}: got {d}, expected no entry")),
            }
        }
        for l in degrees.keys() {
            if !table.degrees.contains_key(l) {
                mismatches.push(format!("{r} {l}: expected an entry, node not present"));
            }
        }
        let starred: BTreeSet<String> = labels_of(&w["starred"])?.to_vec().into_iter().collect();
        let removed: BTreeSet<String> = table
            .removed
            .iter()
            .filter(|l| l.starts_with(prefix))
            .map(str::to_string)
            .collect();
        if starred != removed {
            mismatches.push(format!(
                "{r} minimal-degree marks: got {removed:?}, expected {starred:?}"
            ));
        }
    }
    Ok(SectionResult {
        name: name.to_string(),
        mismatches,
    })
}

fn trace_json(h: &HierarchyResult, prefix: &str) -> Value {
    Value::Array(
        h.trace
            .iter()
            .map(|t| {
                let degrees: serde_json::Map<String, Value> = t
                    .degrees
                    .iter()
                    .filter(|(l, _)| l.starts_with(prefix))
                    .map(|(l, d)| (l.clone(), json!(d)))
                    .collect();
                let starred: Vec<&str> =
                    t.removed.iter().filter(|l| l.starts_with(prefix)).collect();
                json!({"step": t.step, "degrees": degrees, "starred": starred})
            })
            .collect(),
    )
}

/// The `{"prefix": "W", "groups": [[1, 2], [3]]}` layout of `numbered_groups`.
fn groups_json(prefix: &str, groups: &[NodeSet]) -> Value {
    let short = prefix.trim_end_matches('_');
    let numbers: Vec<Vec<Value>> = groups
        .iter()
        .map(|g| {
            g.iter()
                .map(
                    |l| match l.strip_prefix(prefix).and_then(|n| n.parse::<u64>().ok()) {
                        Some(n) => json!(n),
                        None => json!(l),
                    },
                )
                .collect()
        })
        .collect();
    json!({"prefix": short, "groups": numbers})
}

/// Runs the full pipeline on `data` and compares with `expected`.
pub fn reproduce(
    data: &IncidenceData,
    defs: &GroupDefinitions,
    expected: &Value,
) -> Result<ReproduceReport> {
    let mut sections = Vec::new();
    let mut computed = serde_json::Map::new();

    // Bipartite hierarchy.
    let m = bipartite_adjacency(data);
    let h = sequential_reduce(&m, &MinDegreeRule)?;
    let want_core = labels_of(&expected["hierarchy"]["core"])?;
    let want_levels = expected["hierarchy"]["levels"]
        .as_array()
        .ok_or_else(|| Error::invalid("hierarchy.levels missing"))?
        .iter()
        .map(labels_of)
        .collect::<Result<Vec<_>>>()?;
    let mut want = vec![want_core];
    want.extend(want_levels);
    let got: Vec<NodeSet> = h.groups().cloned().collect();
    sections.push(compare_groups("hierarchy", &got, &want));
    computed.insert(
        "hierarchy".into(),
        json!({"core": h.core.to_vec(), "levels": h.levels.iter().map(NodeSet::to_vec).collect::<Vec<_>>()}),
    );

    // Restrictions.
    let mut restricted = serde_json::Map::new();
    let subsets: [(&str, NodeSet); 4] = [
        ("women", data.row_labels().iter().cloned().collect()),
        ("events", data.col_labels().iter().cloned().collect()),
        (
            "G1",
            defs.groups
                .get("G1")
                .cloned()
                .unwrap_or_default()
                .into_iter()
                .collect(),
        ),
        (
            "G2",
            defs.groups
                .get("G2")
                .cloned()
                .unwrap_or_default()
                .into_iter()
                .collect(),
        ),
    ];
    for (key, subset) in subsets {
        let want = numbered_groups(&expected["restrictions"][key])?;
        let got = if subset.is_empty() {
            Vec::new()
        } else {
            nonempty_groups(&restrict_hierarchy(&h, &subset)?)
        };
        sections.push(compare_groups(&format!("restriction/{key}"), &got, &want));
        restricted.insert(key.into(), groups_json(&label_prefix(&subset), &got));
    }
    computed.insert("restrictions".into(), Value::Object(restricted));

    // Single-mode hierarchies.
    let w = project_rows(data);
    let e = project_cols(data);
    let hw = sequential_reduce(&w, &MinDegreeRule)?;
    let he = sequential_reduce(&e, &MinDegreeRule)?;
    let mut single = serde_json::Map::new();
    for (key, hh, labels) in [
        ("women", &hw, data.row_labels()),
        ("events", &he, data.col_labels()),
    ] {
        let want = numbered_groups(&expected["single_mode"][key])?;
        let got = nonempty_groups(hh);
        sections.push(compare_groups(&format!("single_mode/{key}"), &got, &want));
        single.insert(key.into(), groups_json(&common_prefix(labels), &got));
    }
    computed.insert("single_mode".into(), Value::Object(single));

    // Degree traces.
    let row_prefix = common_prefix(data.row_labels());
    let col_prefix = common_prefix(data.col_labels());
    sections.push(compare_trace(
        "figure4/women",
        &h,
        &row_prefix,
        &expected["figure4"]["women"],
    )?);
    sections.push(compare_trace(
        "figure4/events",
        &h,
        &col_prefix,
        &expected["figure4"]["events"],
    )?);
    computed.insert(
        "figure4".into(),
        json!({"women": trace_json(&h, &row_prefix), "events": trace_json(&h, &col_prefix)}),
    );

    // Projections.
    sections.push(compare_table("table3", &w, &expected["table3"])?);
    sections.push(compare_table("table4", &e, &expected["table4"])?);
    computed.insert("table3".into(), json!(int_grid(&w)));
    computed.insert("table4".into(), json!(int_grid(&e)));

    // Attendance series.
    let mut dyn_out = serde_json::Map::new();
    for key in ["group_meetings", "joint_meetings"] {
        let mut mismatches = Vec::new();
        let mut items = Vec::new();
        for item in expected["dynamics"][key]
            .as_array()
            .map(Vec::as_slice)
            .unwrap_or_default()
        {
            let group = item["group"].as_str().unwrap_or_default();
            let class = item["event_class"].as_str().unwrap_or_default();
            let members = defs
                .groups
                .get(group)
                .ok_or_else(|| Error::invalid(format!("unknown group '{group}'")))?;
            let events = defs
                .event_classes
                .get(class)
                .ok_or_else(|| Error::invalid(format!("unknown event class '{class}'")))?;
            let ordered = chronological_order(data, events)?;
            let s = group_attendance(data, group, members, &ordered)?;
            let stats = mean_and_variance(&s.counts)?;
            let got = json!({
                "group": group,
                "event_class": class,
                "events": s.events,
                "counts": s.counts,
                "mean": format_rational(&stats.mean),
                "variance": format_rational(&stats.variance),
            });
            for field in ["events", "counts", "mean", "variance"] {
                if !item[field].is_null() && item[field] != got[field] {
                    mismatches.push(format!(
                        "{group}/{class} {field}: got {}, expected {}",
                        got[field], item[field]
                    ));
                }
            }
            items.push(got);
        }
        sections.push(SectionResult {
            name: format!("dynamics/{key}"),
            mismatches,
        });
        dyn_out.insert(key.into(), Value::Array(items));
    }
    computed.insert("dynamics".into(), Value::Object(dyn_out));

    // Activity classes.
    let act = classify_activity(data);
    let mut mismatches = Vec::new();
    let want_active = labels_of(&expected["activity"]["active"])?;
    let want_popular = labels_of(&expected["activity"]["popular"])?;
    if act.active_rows != want_active {
        mismatches.push(format!(
            "active: got {}, expected {}",
            show(&act.active_rows),
            show(&want_active)
        ));
    }
    if act.popular_cols != want_popular {
        mismatches.push(format!(
            "popular: got {}, expected {}",
            show(&act.popular_cols),
            show(&want_popular)
        ));
    }
    sections.push(SectionResult {
        name: "activity".into(),
        mismatches,
    });
    computed.insert(
        "activity".into(),
        json!({"active": act.active_rows.to_vec(), "popular": act.popular_cols.to_vec()}),
    );

    // Mean attendance by level.
    let mut means_out = serde_json::Map::new();
    for (mode, is_rows) in [("women", true), ("events", false)] {
        let mut mismatches = Vec::new();
        let mut items = Vec::new();
        for item in expected["level_means"][mode]
            .as_array()
            .map(Vec::as_slice)
            .unwrap_or_default()
        {
            let names: Vec<&str> = item["levels"]
                .as_array()
                .map(|a| a.iter().filter_map(Value::as_str).collect())
                .unwrap_or_default();
            let mut members = Vec::new();
            for n in &names {
                let group = if *n == "core" {
                    Some(&h.core)
                } else {
                    n.strip_prefix("h_")
                        .and_then(|k| k.parse().ok())
                        .and_then(|k| h.level(k))
                };
                let group = group.ok_or_else(|| Error::invalid(format!("unknown level '{n}'")))?;
                members.extend(group.iter().map(str::to_string));
            }
            let (rows, cols) = mean_attendance(data, members.iter().map(String::as_str))?;
            let got = if is_rows { rows } else { cols }.map(|m| format_rational(&m));
            let want = item["mean"].as_str().map(str::to_string);
            if got != want {
                mismatches.push(format!(
                    "{}: got {got:?}, expected {want:?}",
                    names.join("+")
                ));
            }
            items.push(json!({"levels": names, "mean": got}));
        }
        sections.push(SectionResult {
            name: format!("level_means/{mode}"),
            mismatches,
        });
        means_out.insert(mode.into(), Value::Array(items));
    }
    computed.insert("level_means".into(), Value::Object(means_out));

    Ok(ReproduceReport {
        sections,
        computed: Value::Object(computed),
    })
}

fn label_prefix(labels: &NodeSet) -> String {
    common_prefix(&labels.to_vec())
}

/// Longest common prefix of the labels, e.g. `"W_"` for `W_1..W_18`.
fn common_prefix(labels: &[String]) -> String {
    let Some(first) = labels.first() else {
        return String::new();
    };
    let mut len = first.len();
    for l in labels {
        len = len.min(
            first
                .bytes()
                .zip(l.bytes())
                .take_while(|(a, b)| a == b)
                .count(),
        );
    }
    // Stop before any digit so "W_1" and "W_18" give "W_".
    first[..len]
        .trim_end_matches(|c: char| c.is_ascii_digit())
        .to_string()
}
