//! Primitive idempotents `E_{i,lambda}` from Murphy operators, minimal central
//! idempotents `F_lambda`, their traces and twist eigenvalues.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{Hecke, HeckeElement};
use crate::scalar::{q_integer, Scalar, ScalarQ};
use crate::symmetric;
use crate::tableaux::{standard_tableaux, Partition, StandardTableau};

const CACHE_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdempotentKey {
    pub shape: Partition,
    /// Position in the order of [`standard_tableaux`].
    pub index: usize,
}

impl IdempotentKey {
    pub fn new(shape: Partition, index: usize) -> Self {
        IdempotentKey { shape, index }
    }

    /// `E_lambda`, the idempotent of the first tableau.
    pub fn first(shape: Partition) -> Self {
        IdempotentKey { shape, index: 0 }
    }

    fn tableau(&self) -> Result<StandardTableau> {
        let list = standard_tableaux(&self.shape)?;
        list.get(self.index).cloned().ok_or(Error::IndexOutOfRange {
            index: self.index as i64,
            bound: list.len().saturating_sub(1),
        })
    }
}

/// Coefficient types that can tag on-disk cache entries.
pub trait CacheTag: Scalar {
    fn cache_suffix(h: &Hecke<Self>) -> String;
}

impl CacheTag for ScalarQ {
    fn cache_suffix(_h: &Hecke<Self>) -> String {
        String::new()
    }
}

impl CacheTag for BigRational {
    fn cache_suffix(h: &Hecke<Self>) -> String {
        let v = h.field().v();
        format!(".v{}_{}", v.numer(), v.denom())
    }
}

/// Which values of `c` enter the Murphy product for entry `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContentRange {
    /// `|c| <= m - 1`, the reduced product.
    Restricted,
    /// `|c| <= n - 1` for every `m`.
    Full,
}

/// `prod_{m, c != r(m)} (L_m - [c]) / ([r(m)] - [c])` for the tableau of `key`.
pub fn primitive_idempotent_with<S: Scalar>(
    h: &Hecke<S>,
    key: &IdempotentKey,
    range: ContentRange,
) -> Result<HeckeElement<S>> {
    let n = key.shape.size();
    h.check_degree(n)?;
    let t = key.tableau()?;
    let f = h.field();
    // Each block of factors for one m is accumulated as a Laurent numerator
    // and divided out before moving on, which keeps coefficients small.
    let mut acc = HeckeElement::<S>::identity(n);
    for m in 2..=n {
        let mut numerator = acc;
        let mut denominator = S::one();
        let rm = t.content(m)?;
        let bound = match range {
            ContentRange::Restricted => m as i64 - 1,
            ContentRange::Full => n as i64 - 1,
        };
        let lm = h.murphy(n, m)?;
        let qr = f.q_int(rm);
        for c in -bound..=bound {
            if c == rm {
                continue;
            }
            let qc = f.q_int(c);
            let factor = lm.sub(&HeckeElement::scalar(n, qc.clone()))?;
            numerator = h.mul(&numerator, &factor)?;
            denominator = denominator.times(&qr.minus(&qc));
        }
        let inv = denominator
            .inverse()
            .ok_or_else(|| Error::DenominatorVanishes(f.v().to_string()))?;
        acc = numerator.scale(&inv);
    }
    Ok(acc)
}

pub fn primitive_idempotent<S: Scalar>(
    h: &Hecke<S>,
    key: &IdempotentKey,
) -> Result<HeckeElement<S>> {
    primitive_idempotent_with(h, key, ContentRange::Restricted)
}

/// `tr(E_lambda)` from the closed product formula, evaluated with `r` rows
/// (`r >= l(lambda)`).
pub fn trace_of_primitive(shape: &Partition, r: usize) -> Result<ScalarQ> {
    if shape.length() > r {
        return Err(Error::LengthExceedsRank {
            length: shape.length(),
            rank: r,
        });
    }
    let exp: i64 = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| (l * i) as i64)
        .sum();
    let mut value = ScalarQ::q_power(exp);
    for (i, &row) in shape.parts().iter().enumerate() {
        for j in 0..row {
            let c = j as i64 - i as i64;
            value = value.div(&q_integer(c + r as i64))?;
        }
    }
    Ok(value.mul(&hook_content_product(shape, r)))
}

/// `prod_{1 <= i < j <= r} [lambda_i - lambda_j + j - i] / [j - i]` for a
/// sequence of `r` integers.
pub(crate) fn weyl_product(parts: &[i64]) -> ScalarQ {
    let r = parts.len();
    let mut value = ScalarQ::one();
    for i in 0..r {
        for j in i + 1..r {
            let d = (j - i) as i64;
            let num = q_integer(parts[i] - parts[j] + d);
            if num.is_zero() {
                return ScalarQ::zero();
            }
            value = value.mul(&num).div(&q_integer(d)).expect("[j-i] != 0");
        }
    }
    value
}

fn hook_content_product(shape: &Partition, r: usize) -> ScalarQ {
    let parts: Vec<i64> = (1..=r).map(|i| shape.part(i) as i64).collect();
    weyl_product(&parts)
}

/// Exponent `e` with `T_{w_n}^{-2} E_lambda = q^e E_lambda`.
pub fn twist_exponent(shape: &Partition) -> i64 {
    let n = shape.size() as i64;
    let s: i64 = shape
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let (l, i) = (l as i64, i as i64 + 1);
            l * (l - 2 * i + 1)
        })
        .sum();
    // s + n(n-1) is always even: it is twice (sum of contents + n(n-1)/2).
    -(s + n * (n - 1)) / 2
}

/// The scalar `c` with `T_{w_n}^{-2} E_lambda = c E_lambda`.
pub fn twist_eigenvalue(shape: &Partition) -> ScalarQ {
    ScalarQ::q_power(twist_exponent(shape))
}

/// `T_{w_n}^{-2}` as an element of `H_n`.
pub fn inverse_square_longest<S: Scalar>(h: &Hecke<S>, n: usize) -> Result<HeckeElement<S>> {
    let inv = h.t_inverse(&symmetric::longest_element(n))?;
    h.mul(&inv, &inv)
}

/// If `a = c * e` for a scalar `c`, return `c`.
pub fn scalar_ratio<S: Scalar>(a: &HeckeElement<S>, e: &HeckeElement<S>) -> Option<S> {
    let (w, ec) = e.terms().next()?;
    let c = a.coefficient(w).times(&ec.inverse()?);
    if e.scale(&c) == *a {
        Some(c)
    } else {
        None
    }
}

/// In-process memo (and optional on-disk cache) of idempotents for one
/// arithmetic mode.
pub struct Idempotents<S: CacheTag> {
    hecke: Hecke<S>,
    memo: Mutex<HashMap<IdempotentKey, Arc<HeckeElement<S>>>>,
    central: Mutex<HashMap<Partition, Arc<HeckeElement<S>>>>,
    disk: Option<PathBuf>,
}

impl<S: CacheTag> Idempotents<S> {
    pub fn new(hecke: Hecke<S>) -> Self {
        Idempotents {
            hecke,
            memo: Mutex::new(HashMap::new()),
            central: Mutex::new(HashMap::new()),
            disk: None,
        }
    }

    pub fn with_disk_cache(mut self, dir: impl Into<PathBuf>) -> Self {
        self.disk = Some(dir.into());
        self
    }

    pub fn hecke(&self) -> &Hecke<S> {
        &self.hecke
    }

    pub fn cache_path(&self, key: &IdempotentKey) -> Option<PathBuf> {
        let dir = self.disk.as_ref()?;
        let shape = key
            .shape
            .parts()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        Some(
            dir.join(format!("H{}", key.shape.size()))
                .join(if shape.is_empty() { "empty".into() } else { shape })
                .join(format!("{}{}.json", key.index, S::cache_suffix(&self.hecke))),
        )
    }

    /// `E_{i,lambda}`, memoized.
    pub fn primitive(&self, key: &IdempotentKey) -> Result<Arc<HeckeElement<S>>> {
        if let Some(hit) = self.memo.lock().unwrap().get(key) {
            return Ok(hit.clone());
        }
        let path = self.cache_path(key);
        let loaded = match &path {
            Some(p) => read_cache_file::<S>(p, key)?,
            None => None,
        };
        let e = match loaded {
            Some(e) => e,
            None => {
                let e = primitive_idempotent(&self.hecke, key)?;
                if let Some(p) = &path {
                    write_cache_file(p, key, &e)?;
                }
                e
            }
        };
        let e = Arc::new(e);
        self.memo.lock().unwrap().insert(key.clone(), e.clone());
        Ok(e)
    }

    /// `F_lambda = sum_i E_{i,lambda}`.
    pub fn central(&self, shape: &Partition) -> Result<Arc<HeckeElement<S>>> {
        if let Some(hit) = self.central.lock().unwrap().get(shape) {
            return Ok(hit.clone());
        }
        let count = standard_tableaux(shape)?.len();
        let mut f = HeckeElement::zero(shape.size());
        for index in 0..count {
            let e = self.primitive(&IdempotentKey::new(shape.clone(), index))?;
            f = f.add(&e)?;
        }
        let f = Arc::new(f);
        self.central
            .lock()
            .unwrap()
            .insert(shape.clone(), f.clone());
        Ok(f)
    }

    /// `F_lambda = tr(E_lambda) sum_w q^{-l(w)} T_w E_lambda T_{w^{-1}}`.
    pub fn central_by_averaging(&self, shape: &Partition) -> Result<HeckeElement<S>> {
        let n = shape.size();
        let h = &self.hecke;
        let t = h.check_degree(n)?;
        let e = self.primitive(&IdempotentKey::first(shape.clone()))?;
        let mut sum = HeckeElement::zero(n);
        for (idx, w) in t.perms.iter().enumerate() {
            let left = h.mul(&HeckeElement::basis(w), &e)?;
            let term = h.mul(&left, &HeckeElement::basis(&w.inverse()))?;
            let weight = h.field().q_pow(-(t.lengths[idx] as i64));
            sum = sum.add(&term.scale(&weight))?;
        }
        Ok(sum.scale(&e.trace()))
    }

    /// `T_{w_n}^{-2} E_lambda / E_lambda`, by multiplication.
    pub fn twist_eigenvalue_direct(&self, shape: &Partition) -> Result<S> {
        let e = self.primitive(&IdempotentKey::first(shape.clone()))?;
        let twisted = self
            .hecke
            .mul(&inverse_square_longest(&self.hecke, shape.size())?, &e)?;
        scalar_ratio(&twisted, &e)
            .ok_or_else(|| Error::Invalid(format!("E_{shape} is not an eigenvector")))
    }
}

fn read_cache_file<S: Scalar>(
    path: &Path,
    key: &IdempotentKey,
) -> Result<Option<HeckeElement<S>>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(_) => return Ok(None),
    };
    let value: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(_) => return Ok(None),
    };
    let matches = value.get("version").and_then(Value::as_u64) == Some(CACHE_VERSION)
        && value.get("shape").and_then(Value::as_str) == Some(&key.shape.to_string())
        && value.get("index").and_then(Value::as_u64) == Some(key.index as u64);
    if !matches {
        return Ok(None);
    }
    match value.get("element").map(HeckeElement::<S>::from_json) {
        Some(Ok(e)) if e.degree() == key.shape.size() => Ok(Some(e)),
        _ => Ok(None),
    }
}

fn write_cache_file<S: Scalar>(
    path: &Path,
    key: &IdempotentKey,
    e: &HeckeElement<S>,
) -> Result<()> {
    let io = |err: std::io::Error| Error::Io(format!("{}: {err}", path.display()));
    let dir = path.parent().expect("cache path has a parent");
    fs::create_dir_all(dir).map_err(io)?;
    let doc = json!({
        "version": CACHE_VERSION,
        "shape": key.shape.to_string(),
        "index": key.index,
        "element": e.to_json(),
    });
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(doc.to_string().as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// `T_{w_n}^2` via `T_{w_n}^2 = q^{n-1} (1 + (q-1) L_n) T_{w_{n-1}}^2`.
pub fn longest_square_recursive<S: Scalar>(h: &Hecke<S>, n: usize) -> Result<HeckeElement<S>> {
    let mut acc = HeckeElement::<S>::identity(if n == 0 { 0 } else { 1 });
    for m in 2..=n {
        acc = acc.embed();
        let lm = h.murphy(m, m)?;
        let qm1 = h.field().q().minus(&S::one());
        let factor = HeckeElement::identity(m)
            .add(&lm.scale(&qm1))?
            .scale(&h.field().q_pow(m as i64 - 1));
        acc = h.mul(&factor, &acc)?;
    }
    Ok(acc)
}

/// `T_w` for the longest element, squared directly.
pub fn longest_square<S: Scalar>(h: &Hecke<S>, n: usize) -> Result<HeckeElement<S>> {
    let t = HeckeElement::basis(&symmetric::longest_element(n));
    h.mul(&t, &t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn small_idempotents() {
        let h = Hecke::exact();
        let (x2, y2) = h.symmetrizers(2).unwrap();
        assert_eq!(
            primitive_idempotent(&h, &IdempotentKey::first(p("[2]"))).unwrap(),
            x2
        );
        assert_eq!(
            primitive_idempotent(&h, &IdempotentKey::first(p("[1,1]"))).unwrap(),
            y2
        );
        assert_eq!(
            primitive_idempotent(&h, &IdempotentKey::first(p("[1]"))).unwrap(),
            HeckeElement::identity(1)
        );
    }

    #[test]
    fn central_examples() {
        let ids = Idempotents::new(Hecke::exact());
        let (x2, y2) = ids.hecke().symmetrizers(2).unwrap();
        assert_eq!(*ids.central(&p("[2]")).unwrap(), x2);
        assert_eq!(*ids.central(&p("[1,1]")).unwrap(), y2);
        let f = ids.central(&p("[2,1]")).unwrap();
        assert_eq!(ids.hecke().mul(&f, &f).unwrap(), *f);
        assert_eq!(ids.central_by_averaging(&p("[2,1]")).unwrap(), *f);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(
            trace_of_primitive(&p("[2]"), 2).unwrap(),
            q_integer(2).inv().unwrap()
        );
        assert_eq!(
            trace_of_primitive(&p("[1,1]"), 2).unwrap(),
            ScalarQ::q().div(&q_integer(2)).unwrap()
        );
        assert!(trace_of_primitive(&p("[1]"), 3).unwrap().is_one());
    }

    #[test]
    fn twist_examples() {
        assert!(twist_eigenvalue(&p("[1,1]")).is_one());
        assert_eq!(twist_eigenvalue(&p("[2]")), ScalarQ::q_power(-2));
        assert!(twist_eigenvalue(&p("[1]")).is_one());
        let ids = Idempotents::new(Hecke::exact());
        for s in ["[2]", "[1,1]", "[2,1]"] {
            assert_eq!(
                ids.twist_eigenvalue_direct(&p(s)).unwrap(),
                twist_eigenvalue(&p(s))
            );
        }
    }

    #[test]
    fn disk_cache_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let key = IdempotentKey::new(p("[2,1]"), 1);
        let cold = Idempotents::new(Hecke::exact()).with_disk_cache(dir.path());
        let a = cold.primitive(&key).unwrap();
        let path = cold.cache_path(&key).unwrap();
        assert!(path.ends_with("H3/2,1/1.json"));
        assert!(path.exists());
        let warm = Idempotents::new(Hecke::exact()).with_disk_cache(dir.path());
        assert_eq!(*warm.primitive(&key).unwrap(), *a);
    }
}
