//! Named lower and upper bounds on the cofilling profile.

use std::fmt;
use std::ops::{Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{bisect_bracket, rat, ratio_to_f64, Interval, BISECTION_TOL};

/// `K = 36^3`: the ratio `β/α` at which `24 (α/β)^{1/3}` drops to `2/3`.
const THM6_BETA_RATIO: i64 = 36 * 36 * 36;

/// Default quadratic constant for the `4/3 α - C α²` bound:
/// `C = 6K² + 4K`, from the `6β² + 4αβ` loss with `β = Kα`. Non-normative.
pub fn thm6_default_constant() -> BigRational {
    let k = BigInt::from(THM6_BETA_RATIO);
    BigRational::from_integer(BigInt::from(6) * &k * &k + BigInt::from(4) * &k)
}

/// A bound value: exact when the formula stays rational, otherwise an
/// enclosing interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(BigRational),
    Approx(Interval),
}

impl Value {
    pub fn exact(p: i64, q: i64) -> Self {
        Value::Exact(rat(p, q))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => ratio_to_f64(q),
            Value::Approx(iv) => iv.mid(),
        }
    }

    pub fn enclosure(&self) -> Interval {
        match self {
            Value::Exact(q) => Interval::from_ratio(q),
            Value::Approx(iv) => *iv,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Approx(_) => None,
        }
    }

    fn scale(&self, q: &BigRational) -> Value {
        match self {
            Value::Exact(x) => Value::Exact(x * q),
            Value::Approx(iv) => Value::Approx(iv.mul(Interval::from_ratio(q))),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Value::Exact(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Value::Approx(iv) => write!(f, "{:.15}", iv.mid()),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("value", &self.to_f64())?;
        match self {
            Value::Exact(q) => m.serialize_entry("exact", &format!("{}/{}", q.numer(), q.denom()))?,
            Value::Approx(iv) => m.serialize_entry("enclosure", &[iv.lo, iv.hi])?,
        }
        m.end()
    }
}

/// Exact square root of a rational if both parts are perfect squares.
fn exact_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundFunction {
    /// `2α(1-α)` on `[0, 1/2]`.
    Phi1,
    /// `α` on `[0, 1/2]`.
    Basic,
    /// `(3/4)(1 - √(1-4α))(1 - 4α)` on `[0, 1/4]`.
    Thm5,
    /// `(4/3)α - Cα²` on `[0, min(1/2, 2/(3C))]`.
    Thm6 { c: BigRational },
    /// `(9/7)α(1-α)` on `[0, 1/2]`.
    Kms,
    /// The multipartite upper bound `((d+1)/d) α (1-σ)` on `(0, 1/(d+1)]`.
    UpperProp7 { d: usize },
}

impl BoundFunction {
    pub fn thm6_default() -> Self {
        BoundFunction::Thm6 { c: thm6_default_constant() }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoundFunction::Phi1 => "phi1_exact",
            BoundFunction::Basic => "basic",
            BoundFunction::Thm5 => "thm5",
            BoundFunction::Thm6 { .. } => "thm6",
            BoundFunction::Kms => "kms",
            BoundFunction::UpperProp7 { .. } => "upper_prop7",
        }
    }

    /// Name with parameters, e.g. `upper_prop7(d=2)`.
    pub fn label(&self) -> String {
        match self {
            BoundFunction::Thm6 { c } => format!("thm6(C={c})"),
            BoundFunction::UpperProp7 { d } => format!("upper_prop7(d={d})"),
            b => b.name().to_string(),
        }
    }

    /// Parses `phi1`, `basic`, `thm5`, `thm6[:C]`, `kms`, `prop7[:d]`.
    /// A bare `prop7` takes `default_d`.
    pub fn parse(s: &str, default_d: usize) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let bad = || Error::Parse(format!("unknown bound {s:?}"));
        Ok(match (head, arg) {
            ("phi1" | "phi1_exact", None) => BoundFunction::Phi1,
            ("basic", None) => BoundFunction::Basic,
            ("thm5", None) => BoundFunction::Thm5,
            ("thm6", None) => BoundFunction::thm6_default(),
            ("thm6", Some(c)) => {
                let c = crate::numeric::parse_rational(c)?;
                if !c.is_positive() {
                    return Err(bad());
                }
                BoundFunction::Thm6 { c }
            }
            ("kms", None) => BoundFunction::Kms,
            ("prop7" | "upper_prop7", None) => BoundFunction::UpperProp7 { d: default_d },
            ("prop7" | "upper_prop7", Some(d)) => {
                BoundFunction::UpperProp7 { d: d.parse().ok().filter(|&d| d >= 1).ok_or_else(bad)? }
            }
            _ => return Err(bad()),
        })
    }

    /// Closed domain `[lo, hi]`; `upper_prop7` additionally excludes 0.
    pub fn domain(&self) -> (BigRational, BigRational) {
        let zero = BigRational::zero();
        match self {
            BoundFunction::Phi1 | BoundFunction::Basic | BoundFunction::Kms => (zero, rat(1, 2)),
            BoundFunction::Thm5 => (zero, rat(1, 4)),
            BoundFunction::Thm6 { c } => {
                let vertex = rat(2, 3) / c;
                (zero, vertex.min(rat(1, 2)))
            }
            BoundFunction::UpperProp7 { d } => (zero, rat(1, *d as i64 + 1)),
        }
    }

    fn check_domain(&self, alpha: &Value) -> Result<()> {
        let (lo, hi) = self.domain();
        let ok = match alpha {
            Value::Exact(a) => {
                &lo <= a && a <= &hi && !(matches!(self, BoundFunction::UpperProp7 { .. }) && a.is_zero())
            }
            Value::Approx(iv) => {
                let (l, h) = (Interval::from_ratio(&lo), Interval::from_ratio(&hi));
                l.lo <= iv.lo && iv.hi <= h.hi && !(matches!(self, BoundFunction::UpperProp7 { .. }) && iv.lo <= 0.0)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                name: self.label(),
                alpha: alpha.to_f64(),
                lo: ratio_to_f64(&lo),
                hi: ratio_to_f64(&hi),
            })
        }
    }

    pub fn eval(&self, alpha: &Value) -> Result<Value> {
        self.check_domain(alpha)?;
        let one = BigRational::one();
        Ok(match (self, alpha) {
            (BoundFunction::Basic, a) => a.clone(),
            (BoundFunction::Phi1, Value::Exact(a)) => Value::Exact(rat(2, 1) * a * (&one - a)),
            (BoundFunction::Kms, Value::Exact(a)) => Value::Exact(rat(9, 7) * a * (&one - a)),
            (BoundFunction::Thm6 { c }, Value::Exact(a)) => Value::Exact(rat(4, 3) * a - c * a * a),
            (BoundFunction::Thm5, Value::Exact(a)) => {
                let s = &one - rat(4, 1) * a;
                match exact_sqrt(&s) {
                    Some(root) => Value::Exact(rat(3, 4) * (&one - root) * s),
                    None => Value::Approx(thm5_interval(Interval::from_ratio(a))),
                }
            }
            (BoundFunction::Phi1, Value::Approx(a)) => Value::Approx(a.scale(2.0).mul(Interval::point(1.0).sub(*a))),
            (BoundFunction::Kms, Value::Approx(a)) => {
                Value::Approx(a.mul(Interval::point(1.0).sub(*a)).mul(Interval::point(9.0).div(Interval::point(7.0))))
            }
            (BoundFunction::Thm6 { c }, Value::Approx(a)) => Value::Approx(
                a.mul(Interval::point(4.0).div(Interval::point(3.0))).sub(a.mul(*a).mul(Interval::from_ratio(c))),
            ),
            (BoundFunction::Thm5, Value::Approx(a)) => Value::Approx(thm5_interval(*a)),
            (BoundFunction::UpperProp7 { d }, a) => upper_bound_prop7(*d, a)?.bound,
        })
    }

    pub fn eval_rational(&self, alpha: &BigRational) -> Result<Value> {
        self.eval(&Value::Exact(alpha.clone()))
    }

    /// Plain `f64` evaluation, for curves and crossovers.
    pub fn eval_f64(&self, alpha: f64) -> Result<f64> {
        let q = BigRational::from_float(alpha)
            .ok_or_else(|| Error::InvalidArgument(format!("alpha {alpha} is not finite")))?;
        Ok(self.eval(&Value::Exact(q))?.to_f64())
    }
}

impl fmt::Display for BoundFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn thm5_interval(a: Interval) -> Interval {
    let s = Interval::point(1.0).sub(a.scale(4.0));
    let s = Interval { lo: s.lo.max(0.0), hi: s.hi };
    Interval::point(1.0).sub(s.sqrt()).mul(s).scale(0.75)
}

/// Solution of the multipartite upper bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Prop7 {
    pub d: usize,
    /// Smallest `σ` with `α = d! σ ((1-σ)/d)^{d-1}`.
    pub sigma: Value,
    /// `((d+1)/d) α (1-σ)`.
    pub bound: Value,
    /// `((d+1)/d) α`.
    pub relaxed: Value,
}

/// `d! σ ((1-σ)/d)^{d-1}`, increasing on `[0, 1/d]`.
pub fn prop7_alpha_of_sigma(d: usize, sigma: &BigRational) -> BigRational {
    let base = (BigRational::one() - sigma) / BigRational::from_integer(BigInt::from(d));
    let pow = (1..d).fold(BigRational::one(), |acc, _| acc * &base);
    BigRational::from_integer(factorial(d)) * sigma * pow
}

fn prop7_alpha_interval(d: usize, sigma: f64) -> Interval {
    let fact = Interval::point(factorial(d).to_f64().expect("small d"));
    let base = Interval::point(1.0).sub(Interval::point(sigma)).div(Interval::point(d as f64));
    fact.mul(Interval::point(sigma)).mul(base.powi(d as u32 - 1))
}

/// Largest `α` reachable on the increasing branch, at `σ = 1/d`.
pub fn prop7_max_alpha(d: usize) -> BigRational {
    prop7_alpha_of_sigma(d, &rat(1, d as i64))
}

/// Solves for `σ` by bisection on `[0, 1/d]` and evaluates the upper bound.
///
/// The bracket is widened until interval evaluation certifies
/// `g(lo) <= α <= g(hi)`, so `sigma` encloses the true root.
pub fn upper_bound_prop7(d: usize, alpha: &Value) -> Result<Prop7> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be at least 1".into()));
    }
    BoundFunction::UpperProp7 { d }.check_domain(alpha)?;
    let max = prop7_max_alpha(d);
    let scale = rat(d as i64 + 1, d as i64);
    let relaxed = alpha.scale(&scale);
    let unreachable = || Error::OutOfDomain {
        name: format!("upper_prop7(d={d})"),
        alpha: alpha.to_f64(),
        lo: 0.0,
        hi: ratio_to_f64(&max),
    };
    if let Value::Exact(a) = alpha {
        if a > &max {
            return Err(unreachable());
        }
        if a == &max {
            let sigma = rat(1, d as i64);
            let bound = &scale * a * (BigRational::one() - &sigma);
            return Ok(Prop7 { d, sigma: Value::Exact(sigma), bound: Value::Exact(bound), relaxed });
        }
    }
    let a = alpha.enclosure();
    let max_iv = Interval::from_ratio(&max);
    if a.hi > max_iv.lo {
        return Err(unreachable());
    }
    let top = 1.0 / d as f64;
    let (mut lo, mut hi) = bisect_bracket(|s| prop7_alpha_interval(d, s).mid() - a.mid(), 0.0, top, BISECTION_TOL)?;
    let mut step = BISECTION_TOL / 16.0;
    while prop7_alpha_interval(d, lo).hi > a.lo {
        lo = (lo - step).max(0.0);
        step *= 2.0;
    }
    let mut step = BISECTION_TOL / 16.0;
    while hi < top && prop7_alpha_interval(d, hi).lo < a.hi {
        hi = (hi + step).min(top);
        step *= 2.0;
    }
    if let Value::Exact(a) = alpha {
        if let Some(sigma) = exact_root_in(d, a, lo, hi) {
            let bound = &scale * a * (BigRational::one() - &sigma);
            return Ok(Prop7 { d, sigma: Value::Exact(sigma), bound: Value::Exact(bound), relaxed });
        }
    }
    let sigma = Interval::new(lo, hi);
    let bound = Interval::from_ratio(&scale).mul(a).mul(Interval::point(1.0).sub(sigma));
    Ok(Prop7 { d, sigma: Value::Approx(sigma), bound: Value::Approx(bound), relaxed })
}

/// A small-denominator rational in `[lo, hi]` solving the equation exactly,
/// found among the continued-fraction convergents of the midpoint.
fn exact_root_in(d: usize, alpha: &BigRational, lo: f64, hi: f64) -> Option<BigRational> {
    let mut x = BigRational::from_float(0.5 * (lo + hi))?;
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    for _ in 0..40 {
        let a = x.floor().to_integer();
        let (p2, q2) = (&a * &p1 + &p0, &a * &q1 + &q0);
        if q2 > BigInt::from(1_000_000_000u64) {
            break;
        }
        let c = BigRational::new(p2.clone(), q2.clone());
        let f = ratio_to_f64(&c);
        if lo <= f && f <= hi && &prop7_alpha_of_sigma(d, &c) == alpha {
            return Some(c);
        }
        let frac = &x - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        x = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    None
}

/// Where `kms` overtakes `thm5`, bracketed by bisection on `[0.01, 0.1]`.
pub fn kms_thm5_crossover() -> Result<(f64, f64)> {
    let diff = |a: f64| {
        BoundFunction::Kms.eval_f64(a).expect("in domain") - BoundFunction::Thm5.eval_f64(a).expect("in domain")
    };
    bisect_bracket(diff, 0.01, 0.1, BISECTION_TOL)
}

/// Samples a bound on `samples + 1` equally spaced points of its domain.
pub fn bound_curve(b: &BoundFunction, samples: usize) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = b.domain();
    let hi = match b {
        BoundFunction::UpperProp7 { d } => hi.min(prop7_max_alpha(*d)),
        _ => hi,
    };
    let samples = samples.max(1);
    (0..=samples)
        .filter_map(|i| {
            let a = &lo + (&hi - &lo) * rat(i as i64, samples as i64);
            if a.is_zero() && matches!(b, BoundFunction::UpperProp7 { .. }) {
                return None;
            }
            Some(b.eval_rational(&a).map(|v| (ratio_to_f64(&a), v.to_f64())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn rational_bounds_are_exact() {
        assert_eq!(BoundFunction::Phi1.eval_rational(&rat(1, 4)).unwrap(), Value::exact(3, 8));
        assert_eq!(BoundFunction::Basic.eval_rational(&rat(1, 3)).unwrap(), Value::exact(1, 3));
        assert_eq!(BoundFunction::Kms.eval_rational(&rat(1, 8)).unwrap(), Value::exact(9, 64));
        assert_eq!(BoundFunction::Thm5.eval_rational(&rat(2, 9)).unwrap(), Value::exact(1, 18));
    }

    #[test]
    fn thm5_irrational_point() {
        // 1 - 4α = 1/2 at α = 1/8
        let v = BoundFunction::Thm5.eval_rational(&rat(1, 8)).unwrap();
        let expect = 0.75 * (1.0 - 0.5f64.sqrt()) * 0.5;
        assert!(v.enclosure().contains(expect) && v.enclosure().width() < 1e-14);
    }

    #[test]
    fn domains_are_enforced() {
        assert!(matches!(BoundFunction::Thm5.eval_rational(&rat(3, 10)), Err(Error::OutOfDomain { .. })));
        assert!(BoundFunction::Phi1.eval_rational(&rat(3, 5)).is_err());
        assert!(BoundFunction::Basic.eval_rational(&rat(-1, 5)).is_err());
        assert!(BoundFunction::UpperProp7 { d: 2 }.eval_rational(&rat(0, 1)).is_err());
        let t6 = BoundFunction::Thm6 { c: rat(10, 1) };
        assert_eq!(t6.domain().1, rat(1, 15));
        assert!(t6.eval_rational(&rat(1, 10)).is_err());
    }

    #[test]
    fn prop7_examples() {
        let p = upper_bound_prop7(2, &Value::exact(2, 9)).unwrap();
        assert_eq!(p.sigma, Value::exact(1, 3));
        assert_eq!(p.bound, Value::exact(2, 9));
        let p = upper_bound_prop7(2, &Value::exact(1, 8)).unwrap();
        let sigma = (1.0 - 0.5f64.sqrt()) / 2.0;
        assert!(p.sigma.enclosure().contains(sigma), "{:?}", p.sigma);
        assert!(p.sigma.enclosure().width() < 1e-11);
        assert!(close(p.bound.to_f64(), 0.160042, 1e-6));
        assert_eq!(p.relaxed, Value::exact(3, 16));
        // the increasing branch tops out at α = 1/4 < 1/3 for d = 2
        assert_eq!(prop7_max_alpha(2), rat(1, 4));
        assert!(upper_bound_prop7(2, &Value::exact(3, 10)).is_err());
    }

    #[test]
    fn prop7_small_alpha_slope() {
        let p = upper_bound_prop7(3, &Value::exact(1, 1_000_000)).unwrap();
        assert!(close(p.bound.to_f64() / 1e-6, 4.0 / 3.0, 1e-5));
    }

    #[test]
    fn prop7_d1_is_phi1() {
        let p = upper_bound_prop7(1, &Value::exact(1, 5)).unwrap();
        assert!(close(p.bound.to_f64(), 2.0 * 0.2 * 0.8, 1e-12));
    }

    #[test]
    fn crossover_location() {
        let (a, b) = kms_thm5_crossover().unwrap();
        assert!(b - a <= 1e-12);
        assert!(close(a, 0.0626, 5e-5), "{a}");
    }

    #[test]
    fn parsing() {
        assert_eq!(BoundFunction::parse("phi1", 1).unwrap(), BoundFunction::Phi1);
        assert_eq!(BoundFunction::parse("prop7", 3).unwrap(), BoundFunction::UpperProp7 { d: 3 });
        assert_eq!(BoundFunction::parse("prop7:2", 3).unwrap(), BoundFunction::UpperProp7 { d: 2 });
        assert_eq!(BoundFunction::parse("thm6:5", 3).unwrap(), BoundFunction::Thm6 { c: rat(5, 1) });
        assert!(BoundFunction::parse("foo", 1).is_err());
        assert!(BoundFunction::parse("prop7:0", 1).is_err());
    }

    #[test]
    fn curves_stay_in_range() {
        for b in [
            BoundFunction::Phi1,
            BoundFunction::Basic,
            BoundFunction::Thm5,
            BoundFunction::thm6_default(),
            BoundFunction::Kms,
            BoundFunction::UpperProp7 { d: 2 },
            BoundFunction::UpperProp7 { d: 3 },
        ] {
            for (a, v) in bound_curve(&b, 50).unwrap() {
                assert!(v.is_finite() && (0.0..=1.0).contains(&v), "{b} at {a}: {v}");
            }
        }
    }
}
