//! Coefficient arithmetic: the exact field Q(v) with q = v^2, a numeric mode
//! that evaluates at a fixed rational v0, and q-integers.

mod poly;
mod ratfunc;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub use poly::Poly;
pub use ratfunc::{parse_expression, parse_rational, ScalarQ};

/// Operations a coefficient type must support.
///
/// Method names avoid the std operator traits so both implementors can keep
/// their own operator impls without ambiguity.
pub trait Scalar: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn to_json(&self) -> Value;
    fn from_json(value: &Value) -> Result<Self>;

    /// A non-trivial common denominator of `xs`, if any. Multiplying every
    /// element by it yields values with cheap arithmetic.
    fn common_denominator(_xs: &[&Self]) -> Option<Self> {
        None
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.plus(other);
    }

    /// Rough size, used to pick cheap pivots during elimination.
    fn complexity(&self) -> usize {
        0
    }
}

impl Scalar for ScalarQ {
    fn zero() -> Self {
        ScalarQ::zero()
    }
    fn one() -> Self {
        ScalarQ::one()
    }
    fn from_i64(n: i64) -> Self {
        ScalarQ::from_int(n)
    }
    fn is_zero(&self) -> bool {
        ScalarQ::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn minus(&self, other: &Self) -> Self {
        self.sub(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
    fn to_json(&self) -> Value {
        ScalarQ::to_json(self)
    }
    fn from_json(value: &Value) -> Result<Self> {
        ScalarQ::from_json(value)
    }
    fn complexity(&self) -> usize {
        self.numerator().coeffs().len() + 4 * self.denominator().coeffs().len()
    }
    fn common_denominator(xs: &[&Self]) -> Option<Self> {
        let mut lcm = Poly::one();
        for x in xs {
            let d = x.denominator();
            if d.is_one() {
                continue;
            }
            let g = lcm.gcd(d);
            lcm = lcm.mul(&d.div_exact(&g));
        }
        if lcm.is_one() {
            None
        } else {
            ScalarQ::from_parts(0, lcm, Poly::one()).ok()
        }
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(value: &Value) -> Result<Self> {
        value
            .as_str()
            .ok_or_else(|| Error::Parse("numeric scalar must be a \"p/q\" string".into()))
            .and_then(parse_rational)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
}

/// The distinguished elements `v`, `q = v^2` of a coefficient type, with the
/// q-integer helpers built from them.
#[derive(Clone, Debug)]
pub struct QField<S: Scalar> {
    v: S,
    v_inv: S,
    q: S,
}

impl QField<ScalarQ> {
    pub fn exact() -> Self {
        QField {
            v: ScalarQ::v(),
            v_inv: ScalarQ::v_power(-1),
            q: ScalarQ::q(),
        }
    }
}

impl QField<BigRational> {
    /// Numeric mode at `v = v0`; requires `v0 > 0` and `v0 != 1`.
    pub fn numeric(v0: BigRational) -> Result<Self> {
        if !v0.is_positive() || v0.is_one() {
            return Err(Error::InvalidPoint(v0.to_string()));
        }
        Ok(QField {
            v_inv: v0.recip(),
            q: &v0 * &v0,
            v: v0,
        })
    }
}

impl<S: Scalar> QField<S> {
    pub fn v(&self) -> &S {
        &self.v
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn v_pow(&self, k: i64) -> S {
        let base = if k >= 0 { &self.v } else { &self.v_inv };
        pow(base, k.unsigned_abs())
    }

    pub fn q_pow(&self, k: i64) -> S {
        self.v_pow(2 * k)
    }

    /// `[n]_q = (q^n - 1)/(q - 1)`.
    pub fn q_int(&self, n: i64) -> S {
        if n == 0 {
            return S::zero();
        }
        let m = n.unsigned_abs();
        let mut acc = S::zero();
        let mut term = S::one();
        for _ in 0..m {
            acc = acc.plus(&term);
            term = term.times(&self.q);
        }
        if n > 0 {
            acc
        } else {
            // [-m] = -q^{-m} [m]
            acc.times(&self.q_pow(-(m as i64))).negated()
        }
    }

    /// `[n]_q! = [1][2]...[n]` and `[-n]_q! = [-1][-2]...[-n]`.
    pub fn q_factorial(&self, n: i64) -> S {
        let sign = n.signum();
        (1..=n.unsigned_abs() as i64).fold(S::one(), |acc, k| acc.times(&self.q_int(sign * k)))
    }
}

fn pow<S: Scalar>(base: &S, mut e: u64) -> S {
    let mut acc = S::one();
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.times(&b);
        }
        e >>= 1;
        if e > 0 {
            b = b.times(&b);
        }
    }
    acc
}

/// `[n]_q` in Q(v).
pub fn q_integer(n: i64) -> ScalarQ {
    QField::exact().q_int(n)
}

/// `[n]_q!` in Q(v); negative `n` gives `[-1][-2]...[n]`.
pub fn q_factorial(n: i64) -> ScalarQ {
    QField::exact().q_factorial(n)
}

/// Evaluate `x` at `v = v0`.
pub fn specialize(x: &ScalarQ, v0: &BigRational) -> Result<BigRational> {
    if !v0.is_positive() {
        return Err(Error::InvalidPoint(v0.to_string()));
    }
    let value = x
        .eval(v0)
        .ok_or_else(|| Error::DenominatorVanishes(v0.to_string()))?;
    if v0.is_one() {
        return Err(Error::InvalidPoint(v0.to_string()));
    }
    Ok(value)
}

/// A coefficient type together with its field context; lets algorithms be
/// written once for the exact and the numeric mode.
pub trait Mode: Scalar {
    fn lift(x: &ScalarQ, field: &QField<Self>) -> Result<Self>;
}

impl Mode for ScalarQ {
    fn lift(x: &ScalarQ, _field: &QField<Self>) -> Result<Self> {
        Ok(x.clone())
    }
}

impl Mode for BigRational {
    fn lift(x: &ScalarQ, field: &QField<Self>) -> Result<Self> {
        specialize(x, field.v())
    }
}
