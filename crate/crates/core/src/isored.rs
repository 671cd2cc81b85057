//! Isospectral reduction over the rational function field:
//!
//! ```text
//! R_S(M) = M_SS - M_SS' (M_S'S' - x I)^-1 M_S'S
//! ```
//!
//! where `S'` is the complement of the kept set `S`. The result is exact; its
//! entries are rational functions of `x` even when `M` is an integer matrix.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{Polynomial, RatFun};
use crate::netmat::{Grid, NodeSet, RfMatrix};

/// Outcome of one reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    /// `R_S(M)`, labeled by `S` in the input's label order.
    pub reduced: RfMatrix,
    /// The complement `S'`, in the input's label order.
    pub removed: NodeSet,
    /// `M_S'S' - x I`; empty when nothing was removed.
    pub shifted_block: Grid,
}

impl ReductionResult {
    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<String>> = (0..self.reduced.dim())
            .map(|i| {
                self.reduced
                    .row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect()
            })
            .collect();
        json!({
            "labels": self.reduced.labels(),
            "entries": entries,
            "removed": self.removed.to_vec(),
        })
    }
}

/// Exact inverse by Gauss-Jordan elimination, pivoting on the first nonzero
/// entry of each column.
pub fn invert_over_field(b: &[Vec<RatFun>]) -> Result<Grid> {
    let n = b.len();
    if b.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("matrix to invert is not square"));
    }
    let mut a: Grid = b.to_vec();
    let mut inv: Grid = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RatFun::one()
                    } else {
                        RatFun::zero()
                    }
                })
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);

        let p = a[col][col].inv()?;
        if !p.is_one() {
            for e in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !e.is_zero() {
                    *e = &*e * &p;
                }
            }
        }

        let (pivot_a, pivot_inv) = (a[col].clone(), inv[col].clone());
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (e, pv) in a[r].iter_mut().zip(&pivot_a).skip(col) {
                if !pv.is_zero() {
                    *e = &*e - &(&factor * pv);
                }
            }
            for (e, pv) in inv[r].iter_mut().zip(&pivot_inv) {
                if !pv.is_zero() {
                    *e = &*e - &(&factor * pv);
                }
            }
        }
    }
    Ok(inv)
}

/// Reduces `m` onto the kept node set `keep`.
///
/// Keeping every node returns `m` unchanged.
pub fn reduce(m: &RfMatrix, keep: &NodeSet) -> Result<ReductionResult> {
    if keep.is_empty() {
        return Err(Error::invalid("cannot reduce onto an empty node set"));
    }
    let kept = keep.resolve(m)?;
    let n = m.dim();
    let removed_idx: Vec<usize> = (0..n).filter(|i| kept.binary_search(i).is_err()).collect();
    let removed: NodeSet = removed_idx.iter().map(|&i| m.labels()[i].clone()).collect();

    if removed_idx.is_empty() {
        return Ok(ReductionResult {
            reduced: m.clone(),
            removed,
            shifted_block: Vec::new(),
        });
    }

    let mut shifted = m.block(&removed_idx, &removed_idx);
    for (i, row) in shifted.iter_mut().enumerate() {
        row[i] = &row[i] - &RatFun::x();
    }

    let symmetric = m.is_symmetric();
    let order: Vec<usize> = removed_idx.iter().chain(&kept).copied().collect();
    let out = schur_complement(m, &order, removed_idx.len(), symmetric)?;

    let labels = kept.iter().map(|&i| m.labels()[i].clone()).collect();
    Ok(ReductionResult {
        reduced: RfMatrix::new(labels, out)?,
        removed,
        shifted_block: shifted,
    })
}

/// Fraction-free elimination of the first `r` indices of `order` from
/// `M - xI`, returning the reduced matrix on the remaining indices.
///
/// Rows are first multiplied by the lcm of their denominators so that all
/// work happens in `Q[x]` with exact divisions. After eliminating `r` pivots
/// the trailing entry `(i, j)` equals `det(B) * d_i * (R - xI)_ij`, where `B`
/// is the scaled pivot block and `d_i` the scale of row `i`.
fn schur_complement(m: &RfMatrix, order: &[usize], r: usize, symmetric: bool) -> Result<Grid> {
    let n = order.len();
    let mut scale = Vec::with_capacity(n);
    let mut a: Vec<Vec<Polynomial>> = Vec::with_capacity(n);
    for &oi in order {
        let mut d = Polynomial::one();
        for &oj in order {
            let den = m.get(oi, oj).den();
            if !den.is_one() {
                let g = d.gcd(den)?;
                d = &d * &den.exact_div(&g);
            }
        }
        let row: Vec<Polynomial> = order
            .iter()
            .map(|&oj| {
                let e = m.get(oi, oj);
                let mut v = e.num() * &d.exact_div(e.den());
                if oi == oj {
                    v = &v - &(&Polynomial::x() * &d);
                }
                v
            })
            .collect();
        a.push(row);
        scale.push(d);
    }

    let mut prev = Polynomial::one();
    for k in 0..r {
        if a[k][k].is_zero() {
            // Row and column swaps inside the pivot block leave the result unchanged.
            let (pi, pj) = (k..r)
                .flat_map(|i| (k..r).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
                .ok_or(Error::Singular)?;
            a.swap(k, pi);
            scale.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&factor * &pivot_row[j]);
                }
                row[j] = v.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }

    let k = n - r;
    let mut out: Grid = vec![vec![RatFun::zero(); k]; k];
    for i in 0..k {
        let start = if symmetric { i } else { 0 };
        let den = &prev * &scale[r + i];
        for j in start..k {
            let mut v = RatFun::new(a[r + i][r + j].clone(), den.clone())?;
            if i == j {
                v = &v + &RatFun::x();
            }
            out[i][j] = v;
        }
    }
    if symmetric {
        for i in 0..k {
            for j in 0..i {
                out[i][j] = out[j][i].clone();
            }
        }
    }
    Ok(out)
}

/// Applies `reduce` repeatedly: stage `k` reduces stage `k-1` onto `keep_sets[k]`.
pub fn reduce_sequence(m: &RfMatrix, keep_sets: &[NodeSet]) -> Result<Vec<ReductionResult>> {
    let mut out: Vec<ReductionResult> = Vec::with_capacity(keep_sets.len());
    for keep in keep_sets {
        let current = out.last().map_or(m, |r| &r.reduced);
        let next = reduce(current, keep)?;
        out.push(next);
    }
    Ok(out)
}
