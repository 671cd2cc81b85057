//! Numeric check that a reduction keeps the spectrum.
//!
//! For every eigenvalue `l0` of `M` that is not an eigenvalue of the removed
//! block `M_S'S'`, `det(R_S(M)(l0) - l0 I)` must vanish. Eigenvalues of the
//! removed block are poles of the reduced entries and are reported as
//! excluded rather than checked.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{rational_to_f64, Polynomial, RatFun, Rational};
use crate::isored::reduce;
use crate::netmat::{NodeSet, RfMatrix};

/// Eigenvalues closer than this to the removed block's spectrum are excluded.
pub const EXCLUSION_GAP: f64 = 1e-6;

/// Jacobi sweep cap.
pub const MAX_SWEEPS: usize = 100;

/// Bisection steps when sharpening an eigenvalue before the residual check.
const REFINE_STEPS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumCheck {
    pub eigenvalue: f64,
    pub excluded: bool,
    /// `None` for excluded eigenvalues.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub eigenvalues_full: Vec<f64>,
    pub eigenvalues_removed_block: Vec<f64>,
    pub checks: Vec<SpectrumCheck>,
    pub tolerance: f64,
    pub exclusion_gap: f64,
    pub passed: bool,
}

/// Eigenvalues of a real symmetric matrix, ascending, by cyclic Jacobi
/// rotations run until the off-diagonal Frobenius norm drops below `tol`.
pub fn sym_eigenvalues(m: &[Vec<f64>], tol: f64) -> Result<Vec<f64>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::invalid("eigenvalue input is not square"));
    }
    for i in 0..n {
        for j in i + 1..n {
            if (m[i][j] - m[j][i]).abs() > tol {
                return Err(Error::invalid(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let off_norm = |a: &[Vec<f64>]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off < tol {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::Convergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Determinant of the numeric matrix obtained by evaluating every entry at
/// `x`, by LU factorization with partial pivoting. A singular factorization
/// yields `0.0`.
pub fn eval_det(m: &[Vec<RatFun>], x: f64) -> Result<f64> {
    let n = m.len();
    let mut a = m
        .iter()
        .map(|r| r.iter().map(|e| e.eval(x)).collect::<Result<Vec<f64>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[pivot][col] == 0.0 {
            return Ok(0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    Ok(det)
}

fn numeric_tolerance(m: &[Vec<f64>]) -> f64 {
    let fro = m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    1e-12 * fro.max(1.0)
}

/// Checks that reducing the constant symmetric matrix `m` onto `keep`
/// preserves every eigenvalue of `m` outside the removed block's spectrum.
///
/// The residual for eigenvalue `l0` is `|det(R(l0) - l0 I)|` divided by the
/// product of `|d(l0)|` over the distinct denominators `d` of `R`. Near a
/// pole that quotient amplifies any error in `l0` far beyond `f64` accuracy,
/// so each `l0` from the Jacobi solver is first sharpened against the exact
/// characteristic polynomial of `M` and the residual is evaluated in exact
/// arithmetic.
pub fn verify_spectrum(m: &RfMatrix, keep: &NodeSet, tol: f64) -> Result<SpectrumReport> {
    if !(tol > 0.0) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let full = m
        .to_f64()
        .ok_or_else(|| Error::invalid("spectrum check needs a matrix with constant entries"))?;
    if !m.is_symmetric() {
        return Err(Error::invalid("spectrum check needs a symmetric matrix"));
    }
    let kept = keep.resolve(m)?;
    if kept.is_empty() || kept.len() == m.dim() {
        return Err(Error::invalid("keep set must be a nonempty proper subset"));
    }
    let removed: Vec<usize> = (0..m.dim())
        .filter(|i| kept.binary_search(i).is_err())
        .collect();
    let block: Vec<Vec<f64>> = removed
        .iter()
        .map(|&i| removed.iter().map(|&j| full[i][j]).collect())
        .collect();

    let eig_full = sym_eigenvalues(&full, numeric_tolerance(&full))?;
    let eig_block = sym_eigenvalues(&block, numeric_tolerance(&block))?;

    let red = reduce(m, keep)?.reduced;
    let mut denominators: Vec<Polynomial> = Vec::new();
    for i in 0..red.dim() {
        for e in red.row(i) {
            if !e.den().is_one() && !denominators.contains(e.den()) {
                denominators.push(e.den().clone());
            }
        }
    }
    let shifted: Vec<Vec<RatFun>> = (0..red.dim())
        .map(|i| {
            let mut row = red.row(i).to_vec();
            row[i] = &row[i] - &RatFun::x();
            row
        })
        .collect();

    let exact: Vec<Vec<Rational>> = (0..m.dim())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| e.as_constant().expect("constant entries"))
                .collect()
        })
        .collect();
    let square_free = {
        let p = char_poly(&exact);
        p.exact_div(&p.gcd(&p.derivative())?)
    };
    let fro = full.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();

    let mut checks = Vec::with_capacity(eig_full.len());
    for &l0 in &eig_full {
        let gap = eig_block
            .iter()
            .map(|mu| (l0 - mu).abs())
            .fold(f64::INFINITY, f64::min);
        if gap < EXCLUSION_GAP {
            checks.push(SpectrumCheck {
                eigenvalue: l0,
                excluded: true,
                residual: None,
            });
            continue;
        }
        let x = refine_root(&square_free, l0, 1e-10 * fro.max(1.0));
        let det = exact_det(&shifted, &x)?;
        let mut scale = Rational::one();
        for d in &denominators {
            scale *= d.eval_exact(&x).abs();
        }
        checks.push(SpectrumCheck {
            eigenvalue: l0,
            excluded: false,
            residual: Some(rational_to_f64(&(det.abs() / scale))),
        });
    }
    let passed = checks.iter().all(|c| c.residual.map_or(true, |r| r < tol));
    Ok(SpectrumReport {
        eigenvalues_full: eig_full,
        eigenvalues_removed_block: eig_block,
        checks,
        tolerance: tol,
        exclusion_gap: EXCLUSION_GAP,
        passed,
    })
}

/// `det(M - xI)` by fraction-free elimination over `Q[x]`. Leading principal
/// minors of `M - xI` have degree equal to their size, so no pivoting is needed.
fn char_poly(m: &[Vec<Rational>]) -> Polynomial {
    let n = m.len();
    let mut a: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Polynomial::constant(m[i][j].clone());
                    if i == j {
                        &c - &Polynomial::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = Polynomial::one();
    for k in 0..n {
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    prev
}

/// Sharpens the approximate root `approx` of the square-free `p` by exact
/// bisection on `[approx - h, approx + h]`. Without a sign change there the
/// approximation is returned as is.
fn refine_root(p: &Polynomial, approx: f64, h: f64) -> Rational {
    // Integer coefficients with the same sign pattern as `p`.
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    // Sign of q^deg * p(n / q) for q > 0, by homogeneous Horner.
    let sign = |x: &Rational| {
        let (n, q) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut q_pow = BigInt::one();
        for c in coeffs.iter().rev() {
            acc = acc * n + c * &q_pow;
            q_pow *= q;
        }
        acc.signum()
    };
    let exact = |v: f64| Rational::from_float(v).expect("finite");
    let mid = exact(approx);
    let (mut lo, mut hi) = (exact(approx - h), exact(approx + h));
    let (s_lo, s_hi) = (sign(&lo), sign(&hi));
    if sign(&mid).is_zero() || (&s_lo * &s_hi).is_positive() {
        return mid;
    }
    if s_lo.is_zero() {
        return lo;
    }
    if s_hi.is_zero() {
        return hi;
    }
    let two = Rational::from_integer(2.into());
    for _ in 0..REFINE_STEPS {
        let m = (&lo + &hi) / &two;
        let s = sign(&m);
        if s.is_zero() {
            return m;
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    (lo + hi) / two
}

/// Exact determinant of `m` evaluated at `x`, by Gaussian elimination over Q.
fn exact_det(m: &[Vec<RatFun>], x: &Rational) -> Result<Rational> {
    let mut a = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| {
                    let d = e.den().eval_exact(x);
                    if d.is_zero() {
                        return Err(Error::Pole {
                            x: rational_to_f64(x),
                            magnitude: 0.0,
                        });
                    }
                    Ok(e.num().eval_exact(x) / d)
                })
                .collect::<Result<Vec<Rational>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let n = a.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let v = &f * &a[col][c];
                a[r][c] -= v;
            }
        }
    }
    Ok(det)
}
