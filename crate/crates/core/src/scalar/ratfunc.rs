//! The field of rational functions in `v`, where `q = v^2`.

use std::fmt;


use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::poly::{Coeff, Poly};
use crate::error::{Error, Result};

/// An element of Q(v) in canonical form.
///
/// The value is `v^low * num(v) / den(v)` where `num` has a non-zero constant
/// term (or is zero), `den` is monic with non-zero constant term, and the two
/// are coprime. Equal values therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    low: i64,
    num: Poly,
    den: Poly,
}

impl ScalarQ {
    pub fn zero() -> Self {
        ScalarQ {
            low: 0,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ScalarQ {
            low: 0,
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// `v^k`.
    pub fn v_power(k: i64) -> Self {
        ScalarQ {
            low: k,
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// `q^k = v^(2k)`.
    pub fn q_power(k: i64) -> Self {
        Self::v_power(2 * k)
    }

    pub fn v() -> Self {
        Self::v_power(1)
    }

    pub fn q() -> Self {
        Self::q_power(1)
    }

    /// Laurent polynomial `sum_i coeffs[i] v^(low + i)`.
    pub fn laurent(low: i64, coeffs: Vec<Coeff>) -> Self {
        Self::normalize(low, Poly::from_coeffs(coeffs), Poly::one())
    }

    /// Laurent polynomial in `q` with integer coefficients, lowest exponent first.
    pub fn q_laurent(low_q: i64, coeffs: &[i64]) -> Self {
        let mut spread = Vec::with_capacity(coeffs.len() * 2);
        for (i, &c) in coeffs.iter().enumerate() {
            if i > 0 {
                spread.push(0);
            }
            spread.push(c);
        }
        Self::normalize(2 * low_q, Poly::from_ints(&spread), Poly::one())
    }

    /// Build `v^low * num / den` and bring it to canonical form.
    pub fn from_parts(low: i64, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(low, num, den))
    }

    fn normalize(mut low: i64, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let nz = num.low_zeros();
        let num = num.drop_low(nz);
        low += nz as i64;
        let dz = den.low_zeros();
        let den = den.drop_low(dz);
        low -= dz as i64;
        if den.degree() == Some(0) {
            let scale = den.leading().unwrap().recip();
            return ScalarQ {
                low,
                num: num.scale(&scale),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading().unwrap().clone();
        if lead.is_one() {
            ScalarQ { low, num, den }
        } else {
            let inv = lead.recip();
            ScalarQ {
                low,
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial in `v`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        let other_num = if negate_other {
            other.num.neg()
        } else {
            other.num.clone()
        };
        if self.is_zero() {
            return ScalarQ {
                low: other.low,
                num: other_num,
                den: other.den.clone(),
            };
        }
        let low = self.low.min(other.low);
        let sa = (self.low - low) as usize;
        let sb = (other.low - low) as usize;
        if self.den.is_one() && other.den.is_one() {
            let num = self.num.shift(sa).add_shifted(&other_num, sb);
            return Self::normalize(low, num, Poly::one());
        }
        if self.den == other.den {
            let num = self.num.shift(sa).add_shifted(&other_num, sb);
            return Self::normalize(low, num, self.den.clone());
        }
        let num = self
            .num
            .mul(&other.den)
            .shift(sa)
            .add_shifted(&other_num.mul(&self.den), sb);
        Self::normalize(low, num, self.den.mul(&other.den))
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_impl(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_impl(other, true)
    }

    pub fn neg(&self) -> Self {
        ScalarQ {
            low: self.low,
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let low = self.low + other.low;
        // Multiplying by a pure power of v only moves the exponent.
        if other.num.is_one() && other.den.is_one() {
            return ScalarQ {
                low,
                num: self.num.clone(),
                den: self.den.clone(),
            };
        }
        if self.num.is_one() && self.den.is_one() {
            return ScalarQ {
                low,
                num: other.num.clone(),
                den: other.den.clone(),
            };
        }
        if self.den.is_one() && other.den.is_one() {
            return ScalarQ {
                low,
                num: self.num.mul(&other.num),
                den: Poly::one(),
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1);
        let d2 = other.den.div_exact(&g1);
        let n2 = other.num.div_exact(&g2);
        let d1 = self.den.div_exact(&g2);
        ScalarQ {
            low,
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let lead = self.num.leading().unwrap().recip();
        Some(ScalarQ {
            low: -self.low,
            num: self.den.scale(&lead),
            den: self.num.scale(&lead),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        other
            .inv()
            .map(|i| self.mul(&i))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at `v = v0`; `None` if the denominator vanishes there.
    pub fn eval(&self, v0: &Coeff) -> Option<Coeff> {
        if self.is_zero() {
            return Some(Coeff::zero());
        }
        let d = self.den.eval(v0);
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval(v0);
        if v0.is_zero() {
            return match self.low {
                0 => Some(n / d),
                l if l > 0 => Some(Coeff::zero()),
                _ => None,
            };
        }
        let vp = if self.low >= 0 {
            num_traits::pow(v0.clone(), self.low as usize)
        } else {
            num_traits::pow(v0.recip(), (-self.low) as usize)
        };
        Some(n * vp / d)
    }

    /// Substitute `v -> v^(-1)` (so `q -> q^(-1)`).
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // v^low N(v)/D(v) with N of degree a and D of degree b becomes
        // v^(-low - a + b) * rev(N)(v) / rev(D)(v).
        let a = self.num.degree().unwrap() as i64;
        let b = self.den.degree().unwrap() as i64;
        let rev = |p: &Poly| Poly::from_coeffs(p.coeffs().iter().rev().cloned().collect());
        Self::normalize(-self.low - a + b, rev(&self.num), rev(&self.den))
    }

    /// Exponents of `v` carrying non-zero coefficients in numerator and denominator.
    fn all_exponents_even(&self) -> bool {
        let num_even = self
            .num
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || (self.low + i as i64) % 2 == 0);
        let den_even = self
            .den
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || i % 2 == 0);
        num_even && den_even
    }

    pub fn to_json(&self) -> Value {
        json!({
            "num": laurent_json(self.low, &self.num),
            "den": laurent_json(0, &self.den),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let part = |key: &str| -> Result<(i64, Poly)> {
            let obj = value
                .get(key)
                .ok_or_else(|| Error::Parse(format!("scalar is missing \"{key}\"")))?;
            let low = obj
                .get("low")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse(format!("\"{key}.low\" must be an integer")))?;
            let coeffs = obj
                .get("coeffs")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("\"{key}.coeffs\" must be an array")))?
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| Error::Parse("coefficients must be strings".into()))
                        .and_then(parse_rational)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((low, Poly::from_coeffs(coeffs)))
        };
        if let Some(s) = value.as_str() {
            return parse_expression(s);
        }
        let (nl, num) = part("num")?;
        let (dl, den) = part("den")?;
        Self::from_parts(nl - dl, num, den)
    }
}

fn laurent_json(low: i64, p: &Poly) -> Value {
    json!({
        "low": low,
        "coeffs": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

/// Parse `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Coeff::new(n, d))
        }
        None => Ok(Coeff::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parse a Laurent expression such as `"q^-1 + 2*v - 1/2*q^3"`.
///
/// Accepted terms are `c`, `x`, `x^e`, `c*x` and `c*x^e` with `x` one of
/// `q`, `v`, joined by `+` or `-`. This is the inverse of the `Display`
/// output for Laurent values.
pub fn parse_expression(s: &str) -> Result<ScalarQ> {
    let bad = || Error::Parse(format!("cannot parse scalar expression {s:?}"));
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut current = String::new();
    for (i, ch) in compact.chars().enumerate() {
        let prev = current.chars().last();
        if (ch == '+' || ch == '-') && i > 0 && prev != Some('^') && prev != Some('*') {
            terms.push(std::mem::take(&mut current));
        }
        current.push(ch);
    }
    terms.push(current);
    let mut acc = ScalarQ::zero();
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let (coeff_str, var_str) = match body.find(['q', 'v']) {
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                (c, &body[pos..])
            }
            None => (body, ""),
        };
        let coeff = if coeff_str.is_empty() {
            Coeff::one()
        } else {
            parse_rational(coeff_str)?
        };
        let v_exp = if var_str.is_empty() {
            0
        } else {
            let scale = if var_str.starts_with('q') { 2 } else { 1 };
            let e: i64 = match var_str[1..].strip_prefix('^') {
                Some(e) => e.parse().map_err(|_| bad())?,
                None if var_str.len() == 1 => 1,
                None => return Err(bad()),
            };
            scale * e
        };
        let c = if sign < 0 { -coeff } else { coeff };
        acc = acc.add(&ScalarQ::laurent(v_exp, vec![c]));
    }
    Ok(acc)
}

fn write_laurent(
    f: &mut fmt::Formatter<'_>,
    low: i64,
    p: &Poly,
    var: &str,
    step: i64,
) -> fmt::Result {
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let e = (low + i as i64) / step;
        let negative = c.is_negative();
        let mag = c.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if negative { " - " } else { " + " })?;
        }
        first = false;
        if e == 0 {
            write!(f, "{mag}")?;
            continue;
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        if e == 1 {
            write!(f, "{var}")?;
        } else {
            write!(f, "{var}^{e}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for ScalarQ {
    /// Canonical printing: a Laurent expression in `q` when every exponent
    /// of `v` is even, otherwise in `v`; rational functions print as
    /// `(num)/(den)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (var, step) = if self.all_exponents_even() {
            ("q", 2)
        } else {
            ("v", 1)
        };
        if self.den.is_one() {
            return write_laurent(f, self.low, &self.num, var, step);
        }
        write!(f, "(")?;
        write_laurent(f, self.low, &self.num, var, step)?;
        write!(f, ")/(")?;
        write_laurent(f, 0, &self.den, var, step)?;
        write!(f, ")")
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Default for ScalarQ {
    fn default() -> Self {
        Self::zero()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> std::ops::$tr<&'a ScalarQ> for &'a ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: &'a ScalarQ) -> ScalarQ {
                $body(self, rhs)
            }
        }
        impl std::ops::$tr for ScalarQ {
            type Output = ScalarQ;
            fn $method(self, rhs: ScalarQ) -> ScalarQ {
                $body(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &ScalarQ, b: &ScalarQ| ScalarQ::add(a, b));
forward_binop!(Sub, sub, |a: &ScalarQ, b: &ScalarQ| ScalarQ::sub(a, b));
forward_binop!(Mul, mul, |a: &ScalarQ, b: &ScalarQ| ScalarQ::mul(a, b));
forward_binop!(Div, div, |a: &ScalarQ, b: &ScalarQ| ScalarQ::div(a, b)
    .expect("division by zero in ScalarQ"));

impl std::ops::Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ::neg(&self)
    }
}

impl std::ops::Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ::neg(self)
    }
}
