use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// Default threshold on `|den(x)|` below which [`RatFun::eval`] reports a pole.
pub const DEFAULT_POLE_TOLERANCE: f64 = 1e-12;

/// Rational function `num / den` in `x` with rational coefficients.
///
/// Always canonical: `gcd(num, den) = 1`, `den` is monic, and zero is `0/1`.
/// Two equal rational functions therefore have identical representations, so
/// the derived `Eq`/`Hash` are field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Polynomial,
    den: Polynomial,
}

impl RatFun {
    pub fn zero() -> Self {
        RatFun {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    /// The indeterminate `x` as a rational function.
    pub fn x() -> Self {
        Self::from_poly(Polynomial::x())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(Polynomial::from(n))
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn from_poly(num: Polynomial) -> Self {
        RatFun {
            num,
            den: Polynomial::one(),
        }
    }

    /// Builds and canonicalizes `num / den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("rational function with zero denominator"));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den).expect("den is nonzero");
            (num.exact_div(&g), den.exact_div(&g))
        };
        Self::normalize_lead(num, den)
    }

    /// Makes `den` monic, assuming `num/den` is already gcd-reduced.
    fn normalize_lead(num: Polynomial, den: Polynomial) -> Self {
        let lc = den.leading_coeff().expect("den is nonzero");
        if num_traits::One::is_one(lc) {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the function does not depend on `x`.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    /// The constant value, if this is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of the zero rational function"));
        }
        Ok(Self::normalize_lead(self.den.clone(), self.num.clone()))
    }

    /// `self / rhs`; fails when `rhs` is zero.
    pub fn try_div(&self, rhs: &RatFun) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::invalid("division by the zero rational function"));
        }
        Ok(self * &rhs.inv()?)
    }

    /// Evaluates at `x`, failing when `|den(x)| < DEFAULT_POLE_TOLERANCE`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.eval_with_tolerance(x, DEFAULT_POLE_TOLERANCE)
    }

    pub fn eval_with_tolerance(&self, x: f64, pole_tol: f64) -> Result<f64> {
        let d = self.den.eval(x);
        if d.abs() < pole_tol {
            return Err(Error::Pole {
                x,
                magnitude: d.abs(),
            });
        }
        Ok(self.num.eval(x) / d)
    }

    fn add_impl(&self, rhs: &RatFun, negate: bool) -> RatFun {
        let rhs_num = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.is_zero() {
            return RatFun {
                num: rhs_num,
                den: rhs.den.clone(),
            };
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::canonical(&self.num + &rhs_num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFun {
                num: &self.num * &rhs.den + rhs_num,
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return RatFun {
                num: &self.num + &(&rhs_num * &self.den),
                den: self.den.clone(),
            };
        }
        // a/b + c/d = (a*(d/g) + c*(b/g)) / (b*(d/g)); only g can share
        // factors with the new numerator.
        let g = self.den.gcd(&rhs.den).expect("nonzero denominators");
        let b_g = self.den.exact_div(&g);
        let d_g = rhs.den.exact_div(&g);
        let num = &self.num * &d_g + &rhs_num * &b_g;
        let den = &self.den * &d_g;
        Self::canonical(num, den)
    }

    fn mul_impl(&self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cross-cancel: a/b * c/d with gcd(a,d) and gcd(c,b) removed is
        // already reduced, and a product of monic polynomials is monic.
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatFun {
            num: &a * &c,
            den: &b * &d,
        }
    }
}

fn cancel(num: &Polynomial, den: &Polynomial) -> (Polynomial, Polynomial) {
    if den.is_one() {
        return (num.clone(), den.clone());
    }
    let g = num.gcd(den).expect("den is nonzero");
    (num.exact_div(&g), den.exact_div(&g))
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_ratfun(self))
    }
}

impl FromStr for RatFun {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::text::parse_ratfun(s)
    }
}

impl From<Polynomial> for RatFun {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                let f: fn(&RatFun, &RatFun) -> RatFun = $body;
                f(self, rhs)
            }
        }
        impl $trait<RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
