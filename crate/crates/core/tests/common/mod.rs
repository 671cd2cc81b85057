#![allow(dead_code)]

pub mod oracle;

use isoreduce::{NodeSet, Polynomial, RatFun, Rational, RfMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(rational(), 0..=max_len).prop_map(Polynomial::from_coeffs)
}

pub fn nonzero_poly(max_len: usize) -> impl Strategy<Value = Polynomial> {
    poly(max_len).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn ratfun() -> impl Strategy<Value = RatFun> {
    (poly(4), nonzero_poly(3)).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

/// Ratio of polynomials of degree at most one.
pub fn small_ratfun() -> impl Strategy<Value = RatFun> {
    (poly(2), nonzero_poly(2)).prop_map(|(n, d)| RatFun::new(n, d).unwrap())
}

pub fn nonzero_ratfun() -> impl Strategy<Value = RatFun> {
    ratfun().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

/// Symmetric integer matrix with entries in `lo..=hi`.
pub fn sym_int_matrix(
    dims: std::ops::RangeInclusive<usize>,
    lo: i64,
    hi: i64,
) -> impl Strategy<Value = Vec<Vec<i64>>> {
    dims.prop_flat_map(move |n| {
        prop::collection::vec(lo..=hi, n * (n + 1) / 2).prop_map(move |upper| {
            let mut m = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let v = it.next().unwrap();
                    m[i][j] = v;
                    m[j][i] = v;
                }
            }
            m
        })
    })
}

pub fn to_matrix(m: &[Vec<i64>]) -> RfMatrix {
    RfMatrix::from_ints(labels(m.len()), m).unwrap()
}

/// Non-empty subset of the labels of an `n`-node matrix picked by `mask`.
pub fn subset(n: usize, mask: &[bool]) -> NodeSet {
    let mut s: NodeSet = (0..n)
        .filter(|&i| mask[i])
        .map(|i| format!("v{i}"))
        .collect();
    if s.is_empty() {
        s.insert("v0");
    }
    s
}
