//! The Hecke algebra `H_n` with basis `T_w`, `w` in `S_n`, and relations
//! `T_i^2 = (q-1) T_i + q`, `T_v T_w = T_{vw}` when lengths add.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::{QField, Scalar, ScalarQ};
use crate::symmetric::{self, GroupTable, Permutation};

/// Default degree cap in exact mode.
pub const EXACT_DEGREE_CAP: usize = 6;
/// Default degree cap in numeric mode.
pub const NUMERIC_DEGREE_CAP: usize = 7;

/// A finite linear combination of basis elements `T_w` of `H_n`.
///
/// Terms are keyed by the lexicographic rank of `w`, so iteration order is
/// the lexicographic order of one-line notation. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq)]
pub struct HeckeElement<S: Scalar> {
    n: usize,
    terms: BTreeMap<u32, S>,
}

impl<S: Scalar> HeckeElement<S> {
    pub fn zero(n: usize) -> Self {
        HeckeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    /// `c * T_e`.
    pub fn scalar(n: usize, c: S) -> Self {
        let mut e = Self::zero(n);
        if !c.is_zero() {
            e.terms.insert(0, c);
        }
        e
    }

    pub fn basis(w: &Permutation) -> Self {
        let mut e = Self::zero(w.degree());
        e.terms.insert(w.lex_rank() as u32, S::one());
        e
    }

    /// `T_i = T_{v_i}`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        Ok(Self::basis(&Permutation::simple(n, i)?))
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, S)>) -> Result<Self> {
        let mut e = Self::zero(n);
        for (w, c) in terms {
            if w.degree() != n {
                return Err(Error::DegreeMismatch(w.degree(), n));
            }
            e.add_term(w.lex_rank() as u32, &c);
        }
        Ok(e)
    }

    fn add_term(&mut self, key: u32, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                x.add_assign_ref(c);
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of non-zero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn table(&self) -> &'static GroupTable {
        symmetric::table(self.n).expect("degree within table range")
    }

    /// Terms in lexicographic order of the permutations.
    pub fn terms(&self) -> impl Iterator<Item = (&'static Permutation, &S)> + '_ {
        let t = self.table();
        self.terms.iter().map(move |(&k, c)| (&t.perms[k as usize], c))
    }

    pub fn coefficient(&self, w: &Permutation) -> S {
        self.terms
            .get(&(w.lex_rank() as u32))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    /// Coefficient of `T_e`, i.e. `<a, T_e>`.
    pub fn trace(&self) -> S {
        self.terms.get(&0).cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        HeckeElement {
            n: self.n,
            terms: self.terms.iter().map(|(&k, c)| (k, c.negated())).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        HeckeElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(&k, x)| (k, x.times(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    /// Linear extension of `T_w -> T_{w^{-1}}`; an anti-automorphism.
    pub fn star(&self) -> Self {
        let t = self.table();
        HeckeElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (t.inverse[k as usize], c.clone()))
                .collect(),
        }
    }

    /// Image under `H_n -> H_{n+1}`, `T_w -> T_w`.
    pub fn embed(&self) -> Self {
        let t = self.table();
        HeckeElement {
            n: self.n + 1,
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (t.perms[k as usize].embed().lex_rank() as u32, c.clone()))
                .collect(),
        }
    }

    /// Apply `f` to every coefficient (e.g. to change arithmetic mode).
    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<HeckeElement<T>> {
        let mut terms = BTreeMap::new();
        for (&k, c) in &self.terms {
            let x = f(c)?;
            if !x.is_zero() {
                terms.insert(k, x);
            }
        }
        Ok(HeckeElement { n: self.n, terms })
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        Ok(())
    }

    fn to_dense(&self, size: usize) -> Vec<S> {
        let mut v = vec![S::zero(); size];
        for (&k, c) in &self.terms {
            v[k as usize] = c.clone();
        }
        v
    }

    fn from_dense(n: usize, v: Vec<S>) -> Self {
        HeckeElement {
            n,
            terms: v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as u32, c))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(w, c)| json!({"w": w.to_string(), "c": c.to_json()}))
            .collect();
        json!({"n": self.n, "terms": terms})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("Hecke element needs integer \"n\"".into()))?
            as usize;
        symmetric::table(n)?;
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("Hecke element needs array \"terms\"".into()))?;
        let mut out = Self::zero(n);
        for t in terms {
            let w = t
                .get("w")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term needs string \"w\"".into()))
                .and_then(Permutation::parse)?;
            if w.degree() != n {
                return Err(Error::DegreeMismatch(w.degree(), n));
            }
            let c = S::from_json(
                t.get("c")
                    .ok_or_else(|| Error::Parse("term needs \"c\"".into()))?,
            )?;
            out.add_term(w.lex_rank() as u32, &c);
        }
        Ok(out)
    }
}

impl<S: Scalar> std::fmt::Debug for HeckeElement<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(w, c)| format!("({c})T[{w}]"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Arithmetic context for `H_n` over a coefficient type: knows `q` and the
/// degree cap.
#[derive(Clone, Debug)]
pub struct Hecke<S: Scalar> {
    field: QField<S>,
    q: S,
    q_inv: S,
    max_degree: usize,
}

impl Hecke<ScalarQ> {
    pub fn exact() -> Self {
        Self::new(QField::exact(), EXACT_DEGREE_CAP)
    }
}

impl Hecke<BigRational> {
    pub fn numeric(v0: BigRational) -> Result<Self> {
        Ok(Self::new(QField::numeric(v0)?, NUMERIC_DEGREE_CAP))
    }
}

impl<S: Scalar> Hecke<S> {
    pub fn new(field: QField<S>, max_degree: usize) -> Self {
        let q = field.q().clone();
        Hecke {
            q_inv: q.inverse().expect("q is invertible"),
            q,
            field,
            max_degree: max_degree.min(symmetric::MAX_TABLE_DEGREE),
        }
    }

    pub fn with_max_degree(mut self, cap: usize) -> Self {
        self.max_degree = cap.min(symmetric::MAX_TABLE_DEGREE);
        self
    }

    pub fn field(&self) -> &QField<S> {
        &self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn check_degree(&self, n: usize) -> Result<&'static GroupTable> {
        if n > self.max_degree {
            return Err(Error::CapExceeded {
                what: "degree",
                value: n,
                cap: self.max_degree,
            });
        }
        symmetric::table(n)
    }

    /// In-place right multiplication of a dense vector by `T_i`.
    fn right_gen_dense(&self, t: &GroupTable, x: &mut [S], i: usize) {
        let right = &t.right[i - 1];
        for u in 0..x.len() {
            let us = right[u] as usize;
            if t.lengths[us] < t.lengths[u] {
                continue;
            }
            // Pair (u, u s) with u s longer: T_u T_i = T_us,
            // T_us T_i = (q-1) T_us + q T_u.
            let a = std::mem::replace(&mut x[u], S::zero());
            let b = std::mem::replace(&mut x[us], S::zero());
            if b.is_zero() {
                x[us] = a;
                continue;
            }
            let qb = b.times(&self.q);
            x[us] = a.plus(&qb).minus(&b);
            x[u] = qb;
        }
    }

    /// In-place left multiplication of a dense vector by `T_i`.
    fn left_gen_dense(&self, t: &GroupTable, x: &mut [S], i: usize) {
        let left = &t.left[i - 1];
        for u in 0..x.len() {
            let su = left[u] as usize;
            if t.lengths[su] < t.lengths[u] {
                continue;
            }
            let a = std::mem::replace(&mut x[u], S::zero());
            let b = std::mem::replace(&mut x[su], S::zero());
            if b.is_zero() {
                x[su] = a;
                continue;
            }
            let qb = b.times(&self.q);
            x[su] = a.plus(&qb).minus(&b);
            x[u] = qb;
        }
    }

    /// `a * T_i`.
    pub fn mul_gen_right(&self, a: &HeckeElement<S>, i: usize) -> Result<HeckeElement<S>> {
        let t = self.check_degree(a.n)?;
        Permutation::simple(a.n, i)?;
        let mut x = a.to_dense(t.size());
        self.right_gen_dense(t, &mut x, i);
        Ok(HeckeElement::from_dense(a.n, x))
    }

    /// `T_i * a`.
    pub fn mul_gen_left(&self, i: usize, a: &HeckeElement<S>) -> Result<HeckeElement<S>> {
        let t = self.check_degree(a.n)?;
        Permutation::simple(a.n, i)?;
        let mut x = a.to_dense(t.size());
        self.left_gen_dense(t, &mut x, i);
        Ok(HeckeElement::from_dense(a.n, x))
    }

    /// `T_{i_1} T_{i_2} ... T_{i_l} * a` for `word = [i_1, ..., i_l]`.
    pub fn mul_word_left(&self, word: &[usize], a: &HeckeElement<S>) -> Result<HeckeElement<S>> {
        let t = self.check_degree(a.n)?;
        if let Some(&bad) = word.iter().find(|&&i| i == 0 || i >= a.n) {
            return Err(Error::IndexOutOfRange {
                index: bad as i64,
                bound: a.n.saturating_sub(1),
            });
        }
        let mut x = a.to_dense(t.size());
        for &i in word.iter().rev() {
            self.left_gen_dense(t, &mut x, i);
        }
        Ok(HeckeElement::from_dense(a.n, x))
    }

    /// Bilinear product.
    ///
    /// `a * b = sum_w b_w (a T_w)`, with `a T_w` computed from `a T_parent`
    /// by one generator step while walking the tree of reduced words. Only
    /// branches leading to the support of `b` are visited. When `a` is the
    /// sparser factor the computation is mirrored through `star`.
    pub fn mul(&self, a: &HeckeElement<S>, b: &HeckeElement<S>) -> Result<HeckeElement<S>> {
        a.check(b)?;
        let t = self.check_degree(a.n)?;
        if a.is_zero() || b.is_zero() {
            return Ok(HeckeElement::zero(a.n));
        }
        let needed_b = needed_nodes(t, b);
        let cost_right = needed_b.iter().filter(|&&x| x).count() * a.len();
        let (sa, sb) = (a.star(), b.star());
        let needed_a = needed_nodes(t, &sa);
        let cost_left = needed_a.iter().filter(|&&x| x).count() * b.len();
        if cost_left < cost_right {
            Ok(self.mul_tree(t, &sb, &sa, &needed_a).star())
        } else {
            Ok(self.mul_tree(t, a, b, &needed_b))
        }
    }

    fn mul_tree(
        &self,
        t: &GroupTable,
        a: &HeckeElement<S>,
        b: &HeckeElement<S>,
        needed: &[bool],
    ) -> HeckeElement<S> {
        let da = S::common_denominator(&a.terms.values().collect::<Vec<_>>());
        let db = S::common_denominator(&b.terms.values().collect::<Vec<_>>());
        let a = match &da {
            Some(d) => a.scale(d),
            None => a.clone(),
        };
        let b_dense = match &db {
            Some(d) => b.scale(d),
            None => b.clone(),
        }
        .to_dense(t.size());
        let mut acc = vec![S::zero(); t.size()];
        let start = a.to_dense(t.size());
        self.walk(t, 0, start, &b_dense, needed, &mut acc);
        let mut out = HeckeElement::from_dense(a.n, acc);
        let mut denom = S::one();
        if let Some(d) = da {
            denom = denom.times(&d);
        }
        if let Some(d) = db {
            denom = denom.times(&d);
        }
        if denom != S::one() {
            out = out.scale(&denom.inverse().expect("non-zero denominator"));
        }
        out
    }

    fn walk(
        &self,
        t: &GroupTable,
        node: usize,
        x: Vec<S>,
        b: &[S],
        needed: &[bool],
        acc: &mut [S],
    ) {
        let c = &b[node];
        if !c.is_zero() {
            for (slot, xv) in acc.iter_mut().zip(x.iter()) {
                if !xv.is_zero() {
                    slot.add_assign_ref(&xv.times(c));
                }
            }
        }
        let kids: Vec<(u32, u8)> = t.children[node]
            .iter()
            .copied()
            .filter(|&(k, _)| needed[k as usize])
            .collect();
        let last = kids.len().saturating_sub(1);
        let mut x = Some(x);
        for (idx, (child, i)) in kids.into_iter().enumerate() {
            let mut y = if idx == last {
                x.take().unwrap()
            } else {
                x.as_ref().unwrap().clone()
            };
            self.right_gen_dense(t, &mut y, i as usize);
            self.walk(t, child as usize, y, b, needed, acc);
        }
    }

    /// Product of several elements, left to right.
    pub fn product<'a>(
        &self,
        n: usize,
        factors: impl IntoIterator<Item = &'a HeckeElement<S>>,
    ) -> Result<HeckeElement<S>> {
        let mut acc = HeckeElement::identity(n);
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `T_w^{-1}`, built from `T_i^{-1} = q^{-1} T_i - (1 - q^{-1})` along a
    /// reduced word.
    pub fn t_inverse(&self, w: &Permutation) -> Result<HeckeElement<S>> {
        let t = self.check_degree(w.degree())?;
        let word = &t.words[w.lex_rank()];
        // T_w = T_{i1} ... T_{il}; T_w^{-1} = T_{il}^{-1} ... T_{i1}^{-1}.
        let mut x = HeckeElement::<S>::identity(w.degree()).to_dense(t.size());
        let one_minus = S::one().minus(&self.q_inv);
        for &i in word.iter().rev() {
            let mut y = x.clone();
            self.right_gen_dense(t, &mut y, i as usize);
            for (yv, xv) in y.iter_mut().zip(x.iter()) {
                *yv = yv.times(&self.q_inv).minus(&xv.times(&one_minus));
            }
            x = y;
        }
        Ok(HeckeElement::from_dense(w.degree(), x))
    }

    /// `<a, b> = sum_w a_w b_w q^{l(w)}`.
    pub fn inner_product(&self, a: &HeckeElement<S>, b: &HeckeElement<S>) -> Result<S> {
        a.check(b)?;
        let t = symmetric::table(a.n)?;
        let mut acc = S::zero();
        for (k, x) in &a.terms {
            if let Some(y) = b.terms.get(k) {
                let l = t.lengths[*k as usize] as i64;
                acc = acc.plus(&x.times(y).times(&self.field.q_pow(l)));
            }
        }
        Ok(acc)
    }

    /// Murphy operator `L_m = sum_{k<m} q^{k-m} T_{(k,m)}`, with `L_1 = 0`.
    pub fn murphy(&self, n: usize, m: usize) -> Result<HeckeElement<S>> {
        self.check_degree(n)?;
        if m == 0 || m > n {
            return Err(Error::IndexOutOfRange {
                index: m as i64,
                bound: n,
            });
        }
        let terms = (1..m).map(|k| {
            (
                Permutation::transposition(n, k, m),
                self.field.q_pow(k as i64 - m as i64),
            )
        });
        HeckeElement::from_terms(n, terms)
    }

    /// `(X_n, Y_n)`: the idempotents affording the trivial and the sign
    /// representation, `T_i X_n = q X_n`, `T_i Y_n = -Y_n`.
    pub fn symmetrizers(&self, n: usize) -> Result<(HeckeElement<S>, HeckeElement<S>)> {
        let t = self.check_degree(n)?;
        let fx = self.field.q_factorial(n as i64).inverse().expect("[n]! != 0");
        // [n]_{1/q}! = prod_k q^{1-k} [k]_q
        let shift: i64 = (1..=n as i64).map(|k| 1 - k).sum();
        let fy = self
            .field
            .q_factorial(n as i64)
            .times(&self.field.q_pow(shift))
            .inverse()
            .expect("[n]_{1/q}! != 0");
        let mut x = HeckeElement::zero(n);
        let mut y = HeckeElement::zero(n);
        let minus_q_inv = self.q_inv.negated();
        let mut powers = vec![S::one()];
        for idx in 0..t.size() {
            let l = t.lengths[idx] as usize;
            while powers.len() <= l {
                let next = powers.last().unwrap().times(&minus_q_inv);
                powers.push(next);
            }
            x.terms.insert(idx as u32, fx.clone());
            y.terms.insert(idx as u32, powers[l].times(&fy));
        }
        Ok((x, y))
    }
}

/// `needed[w]` is true when `w` or a descendant of `w` in the reduced-word
/// tree carries a non-zero coefficient of `b`.
fn needed_nodes<S: Scalar>(t: &GroupTable, b: &HeckeElement<S>) -> Vec<bool> {
    let mut needed = vec![false; t.size()];
    for &k in b.terms.keys() {
        needed[k as usize] = true;
    }
    for &w in t.bfs.iter().rev() {
        if needed[w as usize] {
            if let Some((p, _)) = t.parent[w as usize] {
                needed[p as usize] = true;
            }
        }
    }
    needed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_integer;

    type H = HeckeElement<ScalarQ>;

    fn q(k: i64) -> ScalarQ {
        ScalarQ::q_power(k)
    }

    fn t(s: &str) -> H {
        H::basis(&Permutation::parse(s).unwrap())
    }

    #[test]
    fn quadratic_relation() {
        let h = Hecke::exact();
        let t1 = H::generator(2, 1).unwrap();
        let sq = h.mul(&t1, &t1).unwrap();
        let expect = t1
            .scale(&q(1).sub(&ScalarQ::one()))
            .add(&H::scalar(2, q(1)))
            .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn lengths_add() {
        let h = Hecke::exact();
        let t1 = H::generator(3, 1).unwrap();
        let t2 = H::generator(3, 2).unwrap();
        let v1v2 = Permutation::simple(3, 1)
            .unwrap()
            .mul(&Permutation::simple(3, 2).unwrap());
        assert_eq!(h.mul(&t1, &t2).unwrap(), H::basis(&v1v2));
    }

    #[test]
    fn x2_is_idempotent() {
        let h = Hecke::exact();
        let (x, y) = h.symmetrizers(2).unwrap();
        assert_eq!(h.mul(&x, &x).unwrap(), x);
        assert_eq!(h.mul(&y, &y).unwrap(), y);
        let expect = t("1 2")
            .add(&t("2 1"))
            .unwrap()
            .scale(&q_integer(2).inv().unwrap());
        assert_eq!(x, expect);
        let expect_y = t("1 2")
            .sub(&t("2 1").scale(&q(-1)))
            .unwrap()
            .scale(&ScalarQ::one().add(&q(-1)).inv().unwrap());
        assert_eq!(y, expect_y);
    }

    #[test]
    fn t_inverse_examples() {
        let h = Hecke::exact();
        assert_eq!(
            h.t_inverse(&Permutation::identity(3)).unwrap(),
            H::identity(3)
        );
        let v1 = Permutation::simple(2, 1).unwrap();
        let inv = h.t_inverse(&v1).unwrap();
        let expect = t("2 1")
            .scale(&q(-1))
            .sub(&H::scalar(2, ScalarQ::one().sub(&q(-1))))
            .unwrap();
        assert_eq!(inv, expect);
        let w0 = symmetric::longest_element(3);
        let prod = h.mul(&h.t_inverse(&w0).unwrap(), &H::basis(&w0)).unwrap();
        assert_eq!(prod, H::identity(3));
        // T_{w_2}^{-2} Y_2 = Y_2
        let (_, y2) = h.symmetrizers(2).unwrap();
        let sq = h.mul(&inv, &inv).unwrap();
        assert_eq!(h.mul(&sq, &y2).unwrap(), y2);
    }

    #[test]
    fn star_examples() {
        assert_eq!(t("2 1").star(), t("2 1"));
        let v1v2 = Permutation::simple(3, 1)
            .unwrap()
            .mul(&Permutation::simple(3, 2).unwrap());
        let v2v1 = Permutation::simple(3, 2)
            .unwrap()
            .mul(&Permutation::simple(3, 1).unwrap());
        assert_eq!(H::basis(&v1v2).star(), H::basis(&v2v1));
    }

    #[test]
    fn inner_product_examples() {
        let h = Hecke::exact();
        let t1 = t("2 1");
        assert_eq!(h.inner_product(&t1, &t1).unwrap(), q(1));
        assert!(h.inner_product(&t("1 2"), &t1).unwrap().is_zero());
        let (x2, _) = h.symmetrizers(2).unwrap();
        assert_eq!(
            h.inner_product(&x2, &H::identity(2)).unwrap(),
            q_integer(2).inv().unwrap()
        );
    }

    #[test]
    fn murphy_examples() {
        let h = Hecke::exact();
        assert!(h.murphy(4, 1).unwrap().is_zero());
        let l2 = h.murphy(2, 2).unwrap();
        let (x2, y2) = h.symmetrizers(2).unwrap();
        assert_eq!(h.mul(&l2, &x2).unwrap(), x2);
        assert_eq!(h.mul(&l2, &y2).unwrap(), y2.scale(&q_integer(-1)));
        assert!(matches!(h.murphy(3, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn symmetrizer_absorbs_generators() {
        let h = Hecke::exact();
        let (x, y) = h.symmetrizers(4).unwrap();
        for i in 1..4 {
            assert_eq!(h.mul_gen_left(i, &x).unwrap(), x.scale(&q(1)));
            assert_eq!(h.mul_gen_right(&y, i).unwrap(), y.neg());
        }
    }

    #[test]
    fn degree_mismatch_and_cap() {
        let h = Hecke::exact();
        assert!(matches!(
            h.mul(&H::identity(2), &H::identity(3)),
            Err(Error::DegreeMismatch(2, 3))
        ));
        assert!(matches!(
            h.symmetrizers(7),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let h = Hecke::exact();
        let (x, _) = h.symmetrizers(3).unwrap();
        assert_eq!(H::from_json(&x.to_json()).unwrap(), x);
    }
}
