//! Exact reference computations for the numeric spectrum code.

use isoreduce::exactnum::rational_from_int;
use isoreduce::{Polynomial, RatFun, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// `det(xI - M)` by fraction-free elimination over `Q[x]`.
pub fn char_poly(m: &[Vec<i64>]) -> Polynomial {
    let n = m.len();
    let mut a: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Polynomial::from_ints(&[-m[i][j]]);
                    if i == j {
                        &c + &Polynomial::x()
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
                let (q, r) = v.divmod(&prev).unwrap();
                assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    prev
}

/// Square-free factorization `p = a_1 a_2^2 a_3^3 ...` (Yun).
pub fn square_free(p: &Polynomial) -> Vec<Polynomial> {
    let dp = p.derivative();
    let a0 = p.gcd(&dp).unwrap();
    let mut b = p.divmod(&a0).unwrap().0;
    let c = dp.divmod(&a0).unwrap().0;
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    while !b.is_constant() {
        let a = b.gcd(&d).unwrap();
        b = b.divmod(&a).unwrap().0;
        let c = d.divmod(&a).unwrap().0;
        d = &c - &b.derivative();
        out.push(a);
    }
    out
}

/// Integer coefficients with the sign pattern of `p`.
fn integral(p: &Polynomial) -> Vec<BigInt> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |a, c| a.lcm(c.denom()));
    p.coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// Sign of `p(x)` by homogeneous Horner.
fn sign(p: &[BigInt], x: &Rational) -> i8 {
    let (n, q) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut q_pow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * n + c * &q_pow;
        q_pow *= q;
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(p: &Polynomial) -> Vec<Vec<BigInt>> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain.iter().map(integral).collect();
        }
        let r = chain[n - 2].divmod(&chain[n - 1]).unwrap().1;
        chain.push(-r);
    }
}

fn variations(chain: &[Vec<BigInt>], x: &Rational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| sign(p, x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Real roots of a square-free polynomial, each to within `width`.
pub fn real_roots(p: &Polynomial, width: f64) -> Vec<f64> {
    if p.is_constant() {
        return Vec::new();
    }
    let chain = sturm_chain(p);
    let lead = p.leading_coeff().unwrap().clone();
    let bound = p
        .coeffs()
        .iter()
        .map(|c| (c / &lead).abs())
        .fold(rational_from_int(1), |a, b| a + b);
    let width = Rational::new(
        BigInt::from((width * 1e15) as i64),
        BigInt::from(10i64.pow(15)),
    );
    let two = rational_from_int(2);
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = variations(&chain, &lo) - variations(&chain, &hi);
        if count == 0 {
            continue;
        }
        if count == 1 && &hi - &lo < width {
            let mid = (&lo + &hi) / &two;
            roots.push(isoreduce_to_f64(&mid));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    roots.sort_by(f64::total_cmp);
    roots
}

fn isoreduce_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap()
}

/// Eigenvalues with multiplicity, ascending.
pub fn exact_eigenvalues(m: &[Vec<i64>], width: f64) -> Vec<f64> {
    let p = char_poly(m);
    let mut out = Vec::new();
    for (i, a) in square_free(&p).iter().enumerate() {
        for r in real_roots(a, width) {
            out.extend(std::iter::repeat(r).take(i + 1));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Determinant by the permutation expansion.
pub fn leibniz_det(m: &[Vec<RatFun>]) -> RatFun {
    fn go(
        m: &[Vec<RatFun>],
        row: usize,
        used: &mut Vec<bool>,
        sign: bool,
        acc: RatFun,
        out: &mut RatFun,
    ) {
        let n = m.len();
        if row == n {
            *out = if sign { &*out - &acc } else { &*out + &acc };
            return;
        }
        let mut flips = 0;
        for c in 0..n {
            if used[c] {
                continue;
            }
            // Parity of the number of unused columns skipped over.
            let s = sign ^ (flips % 2 == 1);
            flips += 1;
            if m[row][c].is_zero() {
                continue;
            }
            used[c] = true;
            go(m, row + 1, used, s, &acc * &m[row][c], out);
            used[c] = false;
        }
    }
    let mut out = RatFun::zero();
    go(
        m,
        0,
        &mut vec![false; m.len()],
        false,
        RatFun::one(),
        &mut out,
    );
    out
}
