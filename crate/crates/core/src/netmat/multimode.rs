use super::{IncidenceData, RfMatrix};
use crate::error::{Error, Result};

pub type IntMatrix = Vec<Vec<i64>>;

/// An n-mode network in block form: `blocks[i][j]` is the `|mode i| x |mode j|`
/// incidence block, diagonal blocks are zero and `blocks[j][i]` is the
/// transpose of `blocks[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiModeNetwork {
    pub modes: Vec<Vec<String>>,
    pub blocks: Vec<Vec<IntMatrix>>,
}

impl MultiModeNetwork {
    /// Fills `A_ji = A_ij^T` and zero diagonal blocks from the upper blocks
    /// `upper[(i, j)]` with `i < j`.
    pub fn from_upper_blocks(
        modes: Vec<Vec<String>>,
        upper: impl IntoIterator<Item = ((usize, usize), IntMatrix)>,
    ) -> Result<Self> {
        let k = modes.len();
        let mut blocks: Vec<Vec<IntMatrix>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| vec![vec![0; modes[j].len()]; modes[i].len()])
                    .collect()
            })
            .collect();
        for ((i, j), a) in upper {
            if i >= k || j >= k || i == j {
                return Err(Error::invalid(format!("bad block index ({i}, {j})")));
            }
            check_shape(&a, modes[i].len(), modes[j].len(), i, j)?;
            blocks[j][i] = transpose(&a);
            blocks[i][j] = a;
        }
        Ok(MultiModeNetwork { modes, blocks })
    }

    pub fn from_incidence(a: &IncidenceData) -> Self {
        let upper: IntMatrix = a
            .matrix()
            .iter()
            .map(|r| r.iter().map(|&v| i64::from(v)).collect())
            .collect();
        Self::from_upper_blocks(
            vec![a.row_labels().to_vec(), a.col_labels().to_vec()],
            [((0, 1), upper)],
        )
        .expect("incidence data is well-formed")
    }

    fn validate(&self) -> Result<()> {
        let k = self.modes.len();
        if self.blocks.len() != k || self.blocks.iter().any(|r| r.len() != k) {
            return Err(Error::invalid(format!("block grid must be {k}x{k}")));
        }
        for i in 0..k {
            for j in 0..k {
                let b = &self.blocks[i][j];
                check_shape(b, self.modes[i].len(), self.modes[j].len(), i, j)?;
                if i == j && b.iter().flatten().any(|&v| v != 0) {
                    return Err(Error::invalid(format!(
                        "diagonal block ({i}, {i}) is nonzero"
                    )));
                }
                if i < j && transpose(b) != self.blocks[j][i] {
                    return Err(Error::invalid(format!(
                        "block ({j}, {i}) is not the transpose of block ({i}, {j})"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn check_shape(a: &IntMatrix, rows: usize, cols: usize, i: usize, j: usize) -> Result<()> {
    if a.len() != rows || a.iter().any(|r| r.len() != cols) {
        return Err(Error::invalid(format!(
            "block ({i}, {j}) must be {rows}x{cols}"
        )));
    }
    Ok(())
}

fn transpose(a: &IntMatrix) -> IntMatrix {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

/// Converts the network to mode `i` over mode `j` (0-based): `A_ij A_ji`,
/// labeled by mode `i`.
pub fn mode_convert(net: &MultiModeNetwork, i: usize, j: usize) -> Result<RfMatrix> {
    let k = net.modes.len();
    if i >= k || j >= k {
        return Err(Error::invalid(format!(
            "mode index out of range (have {k} modes)"
        )));
    }
    if i == j {
        return Err(Error::invalid("mode conversion needs two distinct modes"));
    }
    net.validate()?;
    let a = &net.blocks[i][j];
    let b = &net.blocks[j][i];
    let n = net.modes[i].len();
    let m = net.modes[j].len();
    let product: IntMatrix = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..m).map(|t| a[r][t] * b[t][c]).sum())
                .collect()
        })
        .collect();
    RfMatrix::from_ints(net.modes[i].clone(), &product)
}
