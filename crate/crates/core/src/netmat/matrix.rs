use std::collections::HashMap;
use std::fmt;

use super::{count_error_column, csv_fields, NodeSet};
use crate::error::{Error, Result};
use crate::exactnum::{rational_to_f64, RatFun};

/// Dense grid of rational functions, row-major.
pub type Grid = Vec<Vec<RatFun>>;

/// Square, node-labeled matrix over the rational functions.
#[derive(Clone)]
pub struct RfMatrix {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    entries: Vec<RatFun>,
}

impl RfMatrix {
    pub fn new(labels: Vec<String>, rows: Grid) -> Result<Self> {
        let n = labels.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "matrix must be {n}x{n} to match its {n} labels"
            )));
        }
        let index = label_index(&labels)?;
        Ok(RfMatrix {
            labels,
            index,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Lifts an integer matrix to constant rational functions.
    pub fn from_ints(labels: Vec<String>, rows: &[Vec<i64>]) -> Result<Self> {
        let grid = rows
            .iter()
            .map(|r| r.iter().map(|&v| RatFun::from_int(v)).collect())
            .collect();
        Self::new(labels, grid)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_set(&self) -> NodeSet {
        self.labels.iter().cloned().collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFun {
        &self.entries[i * self.dim() + j]
    }

    pub fn row(&self, i: usize) -> &[RatFun] {
        let n = self.dim();
        &self.entries[i * n..(i + 1) * n]
    }

    /// Entry addressed by labels.
    pub fn entry(&self, row: &str, col: &str) -> Result<&RatFun> {
        let i = self.require(row)?;
        let j = self.require(col)?;
        Ok(self.get(i, j))
    }

    pub(crate) fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::invalid(format!("unknown node label '{label}'")))
    }

    pub fn to_grid(&self) -> Grid {
        (0..self.dim()).map(|i| self.row(i).to_vec()).collect()
    }

    /// Number of nonzero entries in row `i`, diagonal included.
    pub fn nonzeros_in_row(&self, i: usize) -> usize {
        self.row(i).iter().filter(|e| !e.is_zero()).count()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// True when no entry depends on `x`.
    pub fn is_constant(&self) -> bool {
        self.entries.iter().all(RatFun::is_constant)
    }

    /// Numeric copy of a constant matrix; `None` if some entry depends on `x`.
    pub fn to_f64(&self) -> Option<Vec<Vec<f64>>> {
        (0..self.dim())
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.as_constant().map(|c| rational_to_f64(&c)))
                    .collect()
            })
            .collect()
    }

    /// The `|rows| x |cols|` block, indexed in this matrix's label order.
    pub fn submatrix(&self, rows: &NodeSet, cols: &NodeSet) -> Result<Grid> {
        let ri = rows.resolve(self)?;
        let ci = cols.resolve(self)?;
        Ok(self.block(&ri, &ci))
    }

    pub(crate) fn block(&self, rows: &[usize], cols: &[usize]) -> Grid {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Matrix CSV: header `name,<labels>`, then `<label>,<entry>,...` per row,
    /// entries in canonical rational-function text.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(l);
            for e in self.row(i) {
                out.push(',');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty matrix file"))?;
        let mut fields = header.split(',').map(str::trim);
        if fields.next() != Some("name") {
            return Err(Error::parse(hline, 1, "header must start with 'name'"));
        }
        let labels: Vec<String> = fields.map(str::to_string).collect();
        let mut rows = Vec::with_capacity(labels.len());
        for (lineno, line) in lines {
            let fields = csv_fields(line);
            let label = fields[0].1;
            let expected = labels
                .get(rows.len())
                .ok_or_else(|| Error::parse(lineno, 1, "more rows than header labels"))?;
            if label != expected {
                return Err(Error::parse(
                    lineno,
                    1,
                    format!("row label '{label}' does not match column label '{expected}'"),
                ));
            }
            let row = fields[1..]
                .iter()
                .map(|&(col, f)| {
                    f.parse::<RatFun>()
                        .map_err(|e| Error::parse(lineno, col, format!("bad entry '{f}': {e}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != labels.len() {
                return Err(Error::parse(
                    lineno,
                    count_error_column(&fields, labels.len() + 1, line),
                    format!("expected {} entries, found {}", labels.len(), row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != labels.len() {
            return Err(Error::parse(
                text.lines().count().max(1),
                1,
                format!("expected {} rows, found {}", labels.len(), rows.len()),
            ));
        }
        Self::new(labels, rows)
    }
}

impl PartialEq for RfMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.entries == other.entries
    }
}

impl Eq for RfMatrix {}

impl fmt::Debug for RfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.dim())
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect();
        f.debug_struct("RfMatrix")
            .field("labels", &self.labels)
            .field("entries", &rows)
            .finish()
    }
}

pub(crate) fn label_index(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() {
            return Err(Error::invalid("empty node label"));
        }
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::invalid(format!("duplicate node label '{l}'")));
        }
    }
    Ok(index)
}
