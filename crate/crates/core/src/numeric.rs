//! Bisection and outward-rounded interval arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::ops::{Add, Div, Mul, Sub};

use crate::error::{Error, Result};

/// Absolute tolerance on bisection brackets.
pub const BISECTION_TOL: f64 = 1e-12;
/// Iteration cap for every bisection.
pub const BISECTION_MAX_ITER: usize = 200;

/// Root of `f` on `[lo, hi]` given a sign change, as a bracket
/// `(a, b)` with `b - a <= tol` and `f(a)`, `f(b)` of opposite signs (or zero).
pub fn bisect_bracket(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok((lo, lo));
    }
    if fhi == 0.0 {
        return Ok((hi, hi));
    }
    if flo.signum() == fhi.signum() || !flo.is_finite() || !fhi.is_finite() {
        return Err(Error::NoBracket { lo, hi });
    }
    let neg_low = flo < 0.0;
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok((mid, mid));
        }
        if (fm < 0.0) == neg_low {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// Midpoint of [`bisect_bracket`] at the default tolerance.
pub fn bisect(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<f64> {
    let (a, b) = bisect_bracket(f, lo, hi, BISECTION_TOL)?;
    Ok(0.5 * (a + b))
}

/// A closed interval `[lo, hi]` of reals enclosing a computed quantity.
///
/// Every operation rounds to nearest and then widens by one ulp on each
/// side, which encloses the exact result of the operation on the endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

fn down(x: f64) -> f64 {
    x.next_down()
}

fn up(x: f64) -> f64 {
    x.next_up()
}

impl Interval {
    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn from_ratio(q: &BigRational) -> Self {
        let x = q.to_f64().expect("finite rational");
        if BigRational::from_float(x).as_ref() == Some(q) {
            Self::point(x)
        } else {
            Self { lo: down(x), hi: up(x) }
        }
    }

    pub fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn scale(self, c: f64) -> Self {
        self.mul(Self::point(c))
    }

    /// Square root, clamping a slightly negative lower end to zero.
    pub fn sqrt(self) -> Self {
        assert!(self.hi >= 0.0);
        let lo = if self.lo <= 0.0 { 0.0 } else { down(self.lo.sqrt()).max(0.0) };
        Self { lo, hi: up(self.hi.sqrt()) }
    }

    pub fn powi(self, k: u32) -> Self {
        (0..k).fold(Self::point(1.0), |acc, _| acc.mul(self))
    }
}

impl Add for Interval {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { lo: down(self.lo + o.lo), hi: up(self.hi + o.hi) }
    }
}

impl Sub for Interval {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self { lo: down(self.lo - o.hi), hi: up(self.hi - o.lo) }
    }
}

impl Mul for Interval {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self { lo: down(lo), hi: up(hi) }
    }
}

impl Div for Interval {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.lo > 0.0 || o.hi < 0.0, "division by an interval containing 0");
        self * Self { lo: down(1.0 / o.hi), hi: up(1.0 / o.lo) }
    }
}

/// Parses `"p/q"`, an integer, or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let q = BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if neg { -q } else { q })
}

/// Exact rational as `f64`.
pub fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().expect("finite rational")
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        assert!(matches!(bisect(|x| x * x + 1.0, 0.0, 2.0), Err(Error::NoBracket { .. })));
        assert_eq!(bisect(|x| x - 1.0, 1.0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn intervals_enclose() {
        let third = Interval::from_ratio(&rat(1, 3));
        assert!(third.lo < 1.0 / 3.0 + 1e-17 && third.hi > 1.0 / 3.0 - 1e-17);
        let two = Interval::point(2.0).sqrt();
        assert!(two.contains(std::f64::consts::SQRT_2));
        let x = third.mul(Interval::point(3.0));
        assert!(x.contains(1.0));
        let y = Interval::point(1.0).div(Interval::point(3.0)).sub(third);
        assert!(y.contains(0.0) && y.width() < 1e-15);
        assert_eq!(Interval::from_ratio(&rat(1, 4)), Interval::point(0.25));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("2/9").unwrap(), rat(2, 9));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }
}
