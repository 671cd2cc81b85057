use super::matrix::label_index;
use super::{count_error_column, csv_fields, RfMatrix};
use crate::dynamics::EventDate;
use crate::error::{Error, Result};

/// Two-mode incidence data: a labeled 0/1 matrix with optional column dates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceData {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    matrix: Vec<Vec<u8>>,
    dates: Option<Vec<EventDate>>,
}

impl IncidenceData {
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        matrix: Vec<Vec<u8>>,
        dates: Option<Vec<EventDate>>,
    ) -> Result<Self> {
        let all: Vec<String> = row_labels.iter().chain(&col_labels).cloned().collect();
        label_index(&all)?;
        if matrix.len() != row_labels.len() {
            return Err(Error::invalid(format!(
                "{} rows of data for {} row labels",
                matrix.len(),
                row_labels.len()
            )));
        }
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != col_labels.len() {
                return Err(Error::invalid(format!(
                    "row '{}' has {} entries, expected {}",
                    row_labels[i],
                    row.len(),
                    col_labels.len()
                )));
            }
            if let Some(v) = row.iter().find(|&&v| v > 1) {
                return Err(Error::invalid(format!(
                    "row '{}' has non-binary entry {v}",
                    row_labels[i]
                )));
            }
        }
        if let Some(d) = &dates {
            if d.len() != col_labels.len() {
                return Err(Error::invalid(format!(
                    "{} dates for {} columns",
                    d.len(),
                    col_labels.len()
                )));
            }
        }
        Ok(IncidenceData {
            row_labels,
            col_labels,
            matrix,
            dates,
        })
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn matrix(&self) -> &[Vec<u8>] {
        &self.matrix
    }

    pub fn dates(&self) -> Option<&[EventDate]> {
        self.dates.as_deref()
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.matrix[i][j]
    }

    pub fn row_index(&self, label: &str) -> Option<usize> {
        self.row_labels.iter().position(|l| l == label)
    }

    pub fn col_index(&self, label: &str) -> Option<usize> {
        self.col_labels.iter().position(|l| l == label)
    }

    pub fn row_sum(&self, i: usize) -> u32 {
        self.matrix[i].iter().map(|&v| u32::from(v)).sum()
    }

    pub fn col_sum(&self, j: usize) -> u32 {
        self.matrix.iter().map(|r| u32::from(r[j])).sum()
    }

    /// Total number of ones.
    pub fn ones(&self) -> u32 {
        (0..self.n_rows()).map(|i| self.row_sum(i)).sum()
    }

    /// Parses the incidence CSV format. `year` completes the `M/D` dates.
    ///
    /// ```text
    /// name,E_1,E_2
    /// date,6/27,3/2
    /// W_1,1,0
    /// ```
    pub fn from_csv(text: &str, year: i32) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty())
            .peekable();
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty incidence file"))?;
        let mut fields = header.split(',').map(str::trim);
        if fields.next() != Some("name") {
            return Err(Error::parse(hline, 1, "header must start with 'name'"));
        }
        let col_labels: Vec<String> = fields.map(str::to_string).collect();
        let m = col_labels.len();

        let mut dates = None;
        if let Some((dline, line)) = lines.next_if(|(_, l)| l.trim_start().starts_with("date,")) {
            let fields = csv_fields(line);
            let parsed = fields[1..]
                .iter()
                .map(|&(col, f)| {
                    EventDate::parse_month_day(f, year).map_err(|msg| Error::parse(dline, col, msg))
                })
                .collect::<Result<Vec<_>>>()?;
            if parsed.len() != m {
                return Err(Error::parse(
                    dline,
                    count_error_column(&fields, m + 1, line),
                    format!("expected {m} dates, found {}", parsed.len()),
                ));
            }
            dates = Some(parsed);
        }

        let mut row_labels = Vec::new();
        let mut matrix = Vec::new();
        for (lineno, line) in lines {
            let fields = csv_fields(line);
            let label = fields[0].1;
            if label.is_empty() {
                return Err(Error::parse(lineno, 1, "missing row label"));
            }
            let row = fields[1..]
                .iter()
                .map(|&(col, f)| match f {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    _ => Err(Error::parse(
                        lineno,
                        col,
                        format!("entry '{f}' is not 0 or 1"),
                    )),
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != m {
                return Err(Error::parse(
                    lineno,
                    count_error_column(&fields, m + 1, line),
                    format!("expected {m} entries, found {}", row.len()),
                ));
            }
            row_labels.push(label.to_string());
            matrix.push(row);
        }
        Self::new(row_labels, col_labels, matrix, dates)
            .map_err(|e| Error::parse(hline, 1, e.to_string()))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name");
        for l in &self.col_labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        if let Some(dates) = &self.dates {
            out.push_str("date");
            for d in dates {
                out.push(',');
                out.push_str(&d.month_day());
            }
            out.push('\n');
        }
        for (l, row) in self.row_labels.iter().zip(&self.matrix) {
            out.push_str(l);
            for v in row {
                out.push(',');
                out.push(if *v == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

/// Adjacency matrix `[[0, A], [A^T, 0]]` of the two-mode network, labeled by
/// the row labels followed by the column labels.
pub fn bipartite_adjacency(a: &IncidenceData) -> RfMatrix {
    let (n, m) = (a.n_rows(), a.n_cols());
    let mut grid = vec![vec![0i64; n + m]; n + m];
    for i in 0..n {
        for j in 0..m {
            let v = i64::from(a.get(i, j));
            grid[i][n + j] = v;
            grid[n + j][i] = v;
        }
    }
    let labels = a.row_labels.iter().chain(&a.col_labels).cloned().collect();
    RfMatrix::from_ints(labels, &grid).expect("incidence labels are unique")
}

/// Row-mode projection `A A^T`: co-attendance counts, attendance on the diagonal.
pub fn project_rows(a: &IncidenceData) -> RfMatrix {
    let n = a.n_rows();
    let grid: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| {
                    (0..a.n_cols())
                        .map(|j| i64::from(a.get(i, j) & a.get(k, j)))
                        .sum()
                })
                .collect()
        })
        .collect();
    RfMatrix::from_ints(a.row_labels.clone(), &grid).expect("incidence labels are unique")
}

/// Column-mode projection `A^T A`.
pub fn project_cols(a: &IncidenceData) -> RfMatrix {
    let m = a.n_cols();
    let grid: Vec<Vec<i64>> = (0..m)
        .map(|j| {
            (0..m)
                .map(|k| {
                    (0..a.n_rows())
                        .map(|i| i64::from(a.get(i, j) & a.get(i, k)))
                        .sum()
                })
                .collect()
        })
        .collect();
    RfMatrix::from_ints(a.col_labels.clone(), &grid).expect("incidence labels are unique")
}
