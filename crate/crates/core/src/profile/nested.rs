//! The nested evaluation `φ_d(½ φ_{d-1}(⅓ … (1/d) φ_1(1/(d+1))))`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::ops::Div;

use super::bounds::{BoundFunction, Value};
use crate::error::{Error, Result};
use crate::numeric::rat;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NestedStep {
    pub level: usize,
    pub bound: String,
    pub input: Value,
    pub output: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Nested {
    pub d: usize,
    pub value: Value,
    pub trace: Vec<NestedStep>,
}

/// Evaluates level 1 at `1/(d+1)` and feeds level `k`'s output, divided by
/// `d + 1 - k`, into level `k + 1`.
pub fn nested_gromov(d: usize, phis: &[BoundFunction]) -> Result<Nested> {
    if d == 0 || phis.len() != d {
        return Err(Error::InvalidArgument(format!("need one bound per level 1..={d}, got {}", phis.len())));
    }
    let mut x = Value::Exact(rat(1, d as i64 + 1));
    let mut trace = Vec::with_capacity(d);
    for (k, phi) in (1..=d).zip(phis) {
        let out = phi.eval(&x)?;
        trace.push(NestedStep { level: k, bound: phi.label(), input: x, output: out.clone() });
        let div = (d + 1 - k) as i64;
        x = match out {
            Value::Exact(q) => Value::Exact(q / rat(div, 1)),
            Value::Approx(iv) => Value::Approx(iv.div(crate::numeric::Interval::point(div as f64))),
        };
    }
    let value = trace.last().expect("d >= 1").output.clone();
    Ok(Nested { d, value, trace })
}

/// `2d / ((d+1)! (d+1))`, the all-basic chain in closed form.
pub fn basic_chain_closed_form(d: usize) -> BigRational {
    let fact: BigInt = (1..=d + 1).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    BigRational::new(BigInt::from(2 * d), fact * BigInt::from(d + 1))
}

/// `[phi1, basic, …, basic]` of length `d`.
pub fn basic_chain(d: usize) -> Vec<BoundFunction> {
    std::iter::once(BoundFunction::Phi1).chain(std::iter::repeat_n(BoundFunction::Basic, d.saturating_sub(1))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tight_planar_constant() {
        let r = nested_gromov(2, &[BoundFunction::Phi1, BoundFunction::Basic]).unwrap();
        assert_eq!(r.value, Value::exact(2, 9));
        assert_eq!(r.trace[0].output, Value::exact(4, 9));
        assert_eq!(r.trace[1].input, Value::exact(2, 9));
    }

    #[test]
    fn spatial_chains() {
        let r = nested_gromov(3, &basic_chain(3)).unwrap();
        assert_eq!(r.value, Value::exact(1, 16));
        let r = nested_gromov(3, &[BoundFunction::Phi1, BoundFunction::Kms, BoundFunction::Basic]).unwrap();
        assert_eq!(r.value, Value::exact(9, 128));
        let r = nested_gromov(
            3,
            &[BoundFunction::Phi1, BoundFunction::UpperProp7 { d: 2 }, BoundFunction::UpperProp7 { d: 3 }],
        )
        .unwrap();
        assert!((r.value.to_f64() - 0.0877695).abs() < 1e-6, "{}", r.value);
    }

    #[test]
    fn closed_form_matches_chain() {
        for d in 2..=8 {
            let r = nested_gromov(d, &basic_chain(d)).unwrap();
            assert_eq!(r.value, Value::Exact(basic_chain_closed_form(d)), "d={d}");
        }
    }

    #[test]
    fn rejects_wrong_length_and_domain() {
        assert!(nested_gromov(3, &basic_chain(2)).is_err());
        // thm5 at level 1 of d = 2 needs 1/3 <= 1/4
        assert!(matches!(
            nested_gromov(2, &[BoundFunction::Thm5, BoundFunction::Basic]),
            Err(Error::OutOfDomain { .. })
        ));
    }
}
