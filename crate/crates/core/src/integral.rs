//! Haar integrals on the Hopf algebras `H_R` (generated by `z^j_i`, `t^j_i`)
//! and `SH_R` (quantum determinant set to 1) of an even Hecke symmetry.
//!
//! Monomials are `Z_I^J = z_{i_1}^{j_1} ... z_{i_n}^{j_n}` and
//! `T_K^L = t_{k_1}^{l_1} ... t_{k_n}^{l_n}`. Matrix products are read in
//! the right-action order of `TensorOperator::then`, and `A_I^J` is the
//! entry of `A` at `(out, in) = (J, I)`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::Hecke;
use crate::idempotents::Idempotents;
use crate::rmatrix::{span_rank, HeckeSymmetry, MultiIndex, TensorOperator};
use crate::scalar::{q_factorial, Scalar, ScalarQ};
use crate::symmetric;
use crate::tableaux::Partition;

/// Largest degree for the `H_R` formula (its cost is `n! d^{4n}`).
pub const MAX_HR_DEGREE: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralQuery {
    pub i: MultiIndex,
    pub j: MultiIndex,
    pub k: MultiIndex,
    pub l: MultiIndex,
}

impl IntegralQuery {
    /// Parse `I=..;J=..;K=..;L=..` (any order; `K`, `L` may be omitted for
    /// `SH_R` queries).
    pub fn parse(s: &str, d: usize) -> Result<Self> {
        let mut found: BTreeMap<char, MultiIndex> = BTreeMap::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected NAME=INDEX, got {part:?}")))?;
            let key = match key.trim() {
                "I" => 'I',
                "J" => 'J',
                "K" => 'K',
                "L" => 'L',
                other => return Err(Error::Parse(format!("unknown index name {other:?}"))),
            };
            found.insert(key, MultiIndex::parse(value, d)?);
        }
        let mut take = |c: char| found.remove(&c).unwrap_or_else(|| MultiIndex::decode(0, 0, d));
        let q = IntegralQuery {
            i: take('I'),
            j: take('J'),
            k: take('K'),
            l: take('L'),
        };
        if q.i.len() != q.j.len() || q.k.len() != q.l.len() {
            return Err(Error::Parse(
                "I and J (and K and L) must have equal lengths".into(),
            ));
        }
        Ok(q)
    }

    /// `deg(z) = 1`, `deg(t) = -1`.
    pub fn z_degree(&self) -> i64 {
        self.i.len() as i64 - self.k.len() as i64
    }
}

/// Values of an integral on all monomials of one degree; zero entries are
/// omitted.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralTable {
    pub group: &'static str,
    pub n: usize,
    pub values: BTreeMap<Vec<MultiIndex>, ScalarQ>,
}

impl IntegralTable {
    pub fn get(&self, key: &[MultiIndex]) -> ScalarQ {
        self.values.get(key).cloned().unwrap_or_else(ScalarQ::zero)
    }

    pub fn to_json(&self) -> Value {
        let names: &[&str] = if self.group == "hr" { &["I", "J", "K", "L"] } else { &["I", "J"] };
        let entries: Vec<Value> = self
            .values
            .iter()
            .map(|(key, v)| {
                let mut obj = serde_json::Map::new();
                for (name, idx) in names.iter().zip(key) {
                    obj.insert(name.to_string(), json!(idx.entries()));
                }
                obj.insert("value".into(), json!(v.to_string()));
                Value::Object(obj)
            })
            .collect();
        json!({"group": self.group, "n": self.n, "entries": entries})
    }
}

fn even_rank(sym: &HeckeSymmetry) -> Result<usize> {
    sym.even_rank()
}

fn tensor_power(a: &TensorOperator, k: usize) -> Result<TensorOperator> {
    let mut out = TensorOperator::identity(0, a.local_dim())?;
    for _ in 0..k {
        out = out.kron(a)?;
    }
    Ok(out)
}

/// The integral on `H_R` in degree `n`:
///
/// `int Z_I^J T_K^L = sum_w q^{-l(w)} (P_n^{-1} R_{w^{-1}} C^{(x)n})_I^{L'} (R_w)_{K'}^J`
/// with `P_n = prod_k (rho(L_k) - [-r])`.
pub struct HrIntegral<'a> {
    sym: &'a HeckeSymmetry,
    n: usize,
    r: usize,
    /// `(q^{-l(w)}, P^{-1} R_{w^{-1}} C^n, R_w)` per permutation.
    terms: Vec<(ScalarQ, TensorOperator, TensorOperator)>,
}

impl<'a> HrIntegral<'a> {
    pub fn new(sym: &'a HeckeSymmetry, h: &Hecke<ScalarQ>, n: usize) -> Result<Self> {
        let r = even_rank(sym)?;
        if n > MAX_HR_DEGREE {
            return Err(Error::CapExceeded {
                what: "H_R integral degree",
                value: n,
                cap: MAX_HR_DEGREE,
            });
        }
        let d = sym.dim();
        if n == 0 {
            let one = TensorOperator::identity(0, d)?;
            return Ok(HrIntegral {
                sym,
                n,
                r,
                terms: vec![(ScalarQ::one(), one.clone(), one)],
            });
        }
        let p = sym.murphy_product(h, n, r)?;
        let p_inv = p
            .inverse()?
            .ok_or_else(|| Error::Invalid("prod (L_k - [-r]) is singular on V^n".into()))?;
        let cn = tensor_power(sym.c(), n)?;
        let table = symmetric::table(n)?;
        let basis = sym.basis_images(n)?;
        let mut terms = Vec::with_capacity(table.size());
        for w in 0..table.size() {
            let weight = ScalarQ::q_power(-(table.lengths[w] as i64));
            let w_inv = table.inverse[w] as usize;
            let x = p_inv.then(&basis[w_inv])?.then(&cn)?;
            terms.push((weight, x, basis[w].clone()));
        }
        Ok(HrIntegral { sym, n, r, terms })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn value(&self, i: &MultiIndex, j: &MultiIndex, k: &MultiIndex, l: &MultiIndex) -> Result<ScalarQ> {
        let n = self.n;
        for idx in [i, j, k, l] {
            if idx.len() != n {
                return Err(Error::DegreeMismatch(idx.len(), n));
            }
        }
        let d = self.sym.dim();
        let (ic, jc) = (i.encode(d), j.encode(d));
        let lr = l.reversed().encode(d);
        let kr = k.reversed().encode(d);
        let mut acc = ScalarQ::zero();
        for (weight, x, rw) in &self.terms {
            let a = x.get(lr, ic);
            if a.is_zero() {
                continue;
            }
            let b = rw.get(jc, kr);
            if b.is_zero() {
                continue;
            }
            acc = acc.add(&weight.mul(&a.mul(b)));
        }
        Ok(acc)
    }

    /// Dense array indexed by `((i*D + j)*D + k)*D + l` with `D = d^n`.
    pub fn values(&self) -> Vec<ScalarQ> {
        let d = self.sym.dim();
        let dim = d.pow(self.n as u32);
        let rev: Vec<usize> = (0..dim)
            .map(|c| MultiIndex::decode(c, self.n, d).reversed().encode(d))
            .collect();
        let mut out = vec![ScalarQ::zero(); dim.pow(4)];
        for (weight, x, rw) in &self.terms {
            for (lr, ic, a) in x.nonzero() {
                let wa = weight.mul(a);
                for (jc, kr, b) in rw.nonzero() {
                    let idx = ((ic * dim + jc) * dim + rev[kr]) * dim + rev[lr];
                    out[idx].add_assign_ref(&wa.mul(b));
                }
            }
        }
        out
    }

    pub fn table(&self) -> IntegralTable {
        let d = self.sym.dim();
        let dim = d.pow(self.n as u32);
        let mut values = BTreeMap::new();
        for (idx, v) in self.values().into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let mut code = idx;
            let mut key = vec![MultiIndex::decode(0, 0, d); 4];
            for slot in key.iter_mut().rev() {
                *slot = MultiIndex::decode(code % dim, self.n, d);
                code /= dim;
            }
            values.insert(key, v);
        }
        IntegralTable {
            group: "hr",
            n: self.n,
            values,
        }
    }
}

/// `int Z_I^J T_K^L`, zero unless the monomial has degree 0.
pub fn hr_integral(sym: &HeckeSymmetry, h: &Hecke<ScalarQ>, q: &IntegralQuery) -> Result<ScalarQ> {
    even_rank(sym)?;
    if q.z_degree() != 0 {
        return Ok(ScalarQ::zero());
    }
    HrIntegral::new(sym, h, q.i.len())?.value(&q.i, &q.j, &q.k, &q.l)
}

/// `q^{kr(r-1)/2} [0]! ... [k-1]! / ([r]! ... [r+k-1]!)`, the trace of a
/// primitive idempotent of shape `(k^r)`.
pub fn rectangle_trace(k: usize, r: usize) -> ScalarQ {
    let mut v = ScalarQ::q_power((k * r * (r.saturating_sub(1)) / 2) as i64);
    for m in 0..k {
        v = v.mul(&q_factorial(m as i64));
        v = v.div(&q_factorial((r + m) as i64)).expect("[n]! != 0");
    }
    v
}

/// The integral on `SH_R`: `int Z_I^J = (Phi_k)_I^J` for `n = kr`, zero
/// for other lengths.
pub struct ShrIntegral<'a> {
    sym: &'a HeckeSymmetry,
    ids: &'a Idempotents<ScalarQ>,
    r: usize,
    phi: Mutex<BTreeMap<usize, Arc<TensorOperator>>>,
}

impl<'a> ShrIntegral<'a> {
    pub fn new(sym: &'a HeckeSymmetry, ids: &'a Idempotents<ScalarQ>) -> Result<Self> {
        let r = even_rank(sym)?;
        Ok(ShrIntegral {
            sym,
            ids,
            r,
            phi: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// `Phi_k = rho(F_{(k^r)})` from the central idempotent.
    pub fn phi(&self, k: usize) -> Result<Arc<TensorOperator>> {
        if let Some(hit) = self.phi.lock().unwrap().get(&k) {
            return Ok(hit.clone());
        }
        let op = if k == 0 {
            TensorOperator::identity(0, self.sym.dim())?
        } else {
            let f = self.ids.central(&Partition::rectangle(k, self.r))?;
            self.sym.rho(&f)?
        };
        let op = Arc::new(op);
        self.phi.lock().unwrap().insert(k, op.clone());
        Ok(op)
    }

    /// `Phi_k = tr(E_{(k^r)}) sum_w q^{-l(w)} R_w Y_r^{(x)k} R_{w^{-1}}`.
    pub fn phi_averaged(&self, k: usize) -> Result<TensorOperator> {
        let h = self.ids.hecke();
        let (_, y) = h.symmetrizers(self.r)?;
        let yk = tensor_power(&self.sym.rho(&y)?, k)?;
        let n = k * self.r;
        let table = symmetric::table(n)?;
        let basis = self.sym.basis_images(n)?;
        let mut sum = TensorOperator::zero(n, self.sym.dim())?;
        for w in 0..table.size() {
            let weight = ScalarQ::q_power(-(table.lengths[w] as i64));
            let term = basis[w].then(&yk)?.then(&basis[table.inverse[w] as usize])?;
            sum = sum.add(&term.scale(&weight))?;
        }
        Ok(sum.scale(&rectangle_trace(k, self.r)))
    }

    pub fn value(&self, i: &MultiIndex, j: &MultiIndex) -> Result<ScalarQ> {
        if i.len() != j.len() {
            return Err(Error::DegreeMismatch(i.len(), j.len()));
        }
        let n = i.len();
        if n % self.r != 0 {
            return Ok(ScalarQ::zero());
        }
        let d = self.sym.dim();
        Ok(self.phi(n / self.r)?.get(j.encode(d), i.encode(d)).clone())
    }

    pub fn table(&self, n: usize) -> Result<IntegralTable> {
        let d = self.sym.dim();
        let mut values = BTreeMap::new();
        if n % self.r == 0 {
            let phi = self.phi(n / self.r)?;
            for (o, i, c) in phi.nonzero() {
                values.insert(
                    vec![MultiIndex::decode(i, n, d), MultiIndex::decode(o, n, d)],
                    c.clone(),
                );
            }
        }
        Ok(IntegralTable {
            group: "shr",
            n,
            values,
        })
    }
}

pub fn shr_integral(
    sym: &HeckeSymmetry,
    ids: &Idempotents<ScalarQ>,
    i: &MultiIndex,
    j: &MultiIndex,
) -> Result<ScalarQ> {
    ShrIntegral::new(sym, ids)?.value(i, j)
}

/// `q^{r(r+1)/2} (B^{(x)r})_M^P (Y_r)^M_N`, the printed coefficients of the
/// inverse determinant `sum_{N,P} c_N^P T^N_P`, as an operator with entry
/// `(P, N)`.
pub fn inverse_determinant_coefficients(sym: &HeckeSymmetry, h: &Hecke<ScalarQ>) -> Result<TensorOperator> {
    let r = even_rank(sym)?;
    let (_, y) = h.symmetrizers(r)?;
    let yb = sym.rho(&y)?;
    let br = tensor_power(sym.b(), r)?;
    let scale = ScalarQ::q_power((r * (r + 1) / 2) as i64);
    Ok(yb.then(&br)?.scale(&scale))
}

/// `int_H (Z_I^J D^{-1})` for `|I| = |J| = r` with `D^{-1}` from
/// [`inverse_determinant_coefficients`], as an operator with entry `(J, I)`.
///
/// `D^{-1}` is the antipode of `D`, which reverses monomials, so the `T`
/// indices enter reversed. In `SH_R` the element is `Z_I^J`, so the result
/// must be `Phi_1`.
pub fn closing_consistency(sym: &HeckeSymmetry, h: &Hecke<ScalarQ>) -> Result<TensorOperator> {
    let r = even_rank(sym)?;
    let d = sym.dim();
    let coeff = inverse_determinant_coefficients(sym, h)?;
    let values = HrIntegral::new(sym, h, r)?.values();
    let dim = d.pow(r as u32);
    let rev: Vec<usize> = (0..dim)
        .map(|c| MultiIndex::decode(c, r, d).reversed().encode(d))
        .collect();
    TensorOperator::from_fn(r, d, |jc, ic| {
        let mut acc = ScalarQ::zero();
        for (p, nn, c) in coeff.nonzero() {
            let v = &values[((ic * dim + jc) * dim + rev[nn]) * dim + rev[p]];
            if !v.is_zero() {
                acc = acc.add(&c.mul(v));
            }
        }
        acc
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub n: usize,
    pub rank: usize,
    pub checks: Vec<InvarianceCheck>,
}

impl InvarianceReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&InvarianceCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "holds": c.holds, "detail": c.detail}))
            .collect();
        json!({"n": self.n, "rank": self.rank, "all_hold": self.all_hold(), "checks": checks})
    }
}

fn count_check(name: &'static str, bad: usize, total: usize) -> InvarianceCheck {
    InvarianceCheck {
        name,
        holds: bad == 0,
        detail: format!("{bad} of {total} entries differ"),
    }
}

/// Checks the integrals of degree `n` against the defining relations, the
/// projection property and the grading.
pub fn verify_invariance(
    sym: &HeckeSymmetry,
    ids: &Idempotents<ScalarQ>,
    n: usize,
) -> Result<InvarianceReport> {
    let h = ids.hecke();
    let r = even_rank(sym)?;
    let d = sym.dim();
    let mut checks = Vec::new();
    if n >= 1 && n <= MAX_HR_DEGREE {
        checks.extend(hr_checks(sym, h, n, r, d)?);
    }
    checks.extend(shr_checks(sym, ids, n, r)?);
    Ok(InvarianceReport { n, rank: r, checks })
}

fn hr_checks(
    sym: &HeckeSymmetry,
    h: &Hecke<ScalarQ>,
    n: usize,
    r: usize,
    d: usize,
) -> Result<Vec<InvarianceCheck>> {
    let mut checks = Vec::new();

    // the factors of P_n commute
    let murphy: Vec<TensorOperator> = (1..=n)
        .map(|k| h.murphy(n, k).and_then(|l| sym.rho(&l)))
        .collect::<Result<_>>()?;
    let mut bad = 0;
    for a in 0..n {
        for b in a + 1..n {
            if murphy[a].then(&murphy[b])? != murphy[b].then(&murphy[a])? {
                bad += 1;
            }
        }
    }
    checks.push(count_check("murphy_commute", bad, n * (n - 1) / 2));

    let top = HrIntegral::new(sym, h, n)?.values();
    let low = HrIntegral::new(sym, h, n - 1)?.values();
    let dim = d.pow(n as u32);
    let dl = dim / d;
    let at = |i: usize, j: usize, k: usize, l: usize| &top[((i * dim + j) * dim + k) * dim + l];
    let at_low = |i: usize, j: usize, k: usize, l: usize| &low[((i * dl + j) * dl + k) * dl + l];
    let c = sym.c();

    // z_{i_n}^{j_n} t_{k_1}^{l_1} with i_n = l_1 summed gives delta^{j_n}_{k_1}.
    let mut bad = 0;
    let mut total = 0;
    for i1 in 0..dl {
        for j in 0..dim {
            for k in 0..dim {
                for lr in 0..dl {
                    let mut lhs = ScalarQ::zero();
                    for m in 0..d {
                        lhs.add_assign_ref(at(i1 * d + m, j, k, m * dl + lr));
                    }
                    let (j1, jn) = (j / d, j % d);
                    let (k1, kr) = (k / dl, k % dl);
                    let rhs = if jn == k1 { at_low(i1, j1, kr, lr).clone() } else { ScalarQ::zero() };
                    total += 1;
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    checks.push(count_check("inverse_contraction", bad, total));

    // z_{i_n}^{j_n} C^{k_1}_{j_n} t_{k_1}^{l_1} = C^{l_1}_{i_n}.
    let mut bad = 0;
    let mut total = 0;
    for i in 0..dim {
        for j1 in 0..dl {
            for kr in 0..dl {
                for l in 0..dim {
                    let mut lhs = ScalarQ::zero();
                    for (b, a, cba) in c.nonzero() {
                        lhs = lhs.add(&cba.mul(at(i, j1 * d + a, b * dl + kr, l)));
                    }
                    let (i1, in_) = (i / d, i % d);
                    let (l1, lr) = (l / dl, l % dl);
                    let rhs = c.get(l1, in_).mul(at_low(i1, j1, kr, lr));
                    total += 1;
                    if lhs != rhs {
                        bad += 1;
                    }
                }
            }
        }
    }
    checks.push(count_check("twisted_contraction", bad, total));

    // R^{mn}_{ij} z^k_m z^l_n = z^p_i z^q_j R^{kl}_{pq}, on the z block.
    if n >= 2 {
        let mut bad = 0;
        let mut total = 0;
        for pos in 1..n {
            let rn = sym.r_at(n, pos)?;
            for k in 0..dim {
                for l in 0..dim {
                    for i in 0..dim {
                        for j in 0..dim {
                            let mut lhs = ScalarQ::zero();
                            for m in 0..dim {
                                let a = rn.get(m, i);
                                if !a.is_zero() {
                                    lhs = lhs.add(&a.mul(at(m, j, k, l)));
                                }
                            }
                            let mut rhs = ScalarQ::zero();
                            for p in 0..dim {
                                let a = rn.get(j, p);
                                if !a.is_zero() {
                                    rhs = rhs.add(&a.mul(at(i, p, k, l)));
                                }
                            }
                            total += 1;
                            if lhs != rhs {
                                bad += 1;
                            }
                        }
                    }
                }
            }
        }
        checks.push(count_check("rzz_compatibility", bad, total));
    }

    // m -> m_0 int(m_1) on V^n (x) V*^n is a projection whose rank is
    // dim End(V^n) = dim rho(H_n).
    let mut bad = 0;
    let mut trace = ScalarQ::zero();
    for i in 0..dim {
        for l in 0..dim {
            trace.add_assign_ref(at(i, i, l, l));
            for j in 0..dim {
                for k in 0..dim {
                    let mut acc = ScalarQ::zero();
                    for a in 0..dim {
                        for b in 0..dim {
                            let x = at(a, j, k, b);
                            if x.is_zero() {
                                continue;
                            }
                            let y = at(i, a, b, l);
                            if !y.is_zero() {
                                acc = acc.add(&x.mul(y));
                            }
                        }
                    }
                    if &acc != at(i, j, k, l) {
                        bad += 1;
                    }
                }
            }
        }
    }
    checks.push(count_check("projection_idempotent", bad, dim.pow(4)));
    let basis = sym.basis_images(n)?;
    let centralizer = span_rank(basis.iter().map(TensorOperator::flatten).collect());
    checks.push(InvarianceCheck {
        name: "projection_rank",
        holds: trace == ScalarQ::from_int(centralizer as i64),
        detail: format!("trace {trace}, dim rho(H_{n}) = {centralizer}"),
    });

    let unbalanced = IntegralQuery {
        i: MultiIndex::decode(0, n, d),
        j: MultiIndex::decode(0, n, d),
        k: MultiIndex::decode(0, n - 1, d),
        l: MultiIndex::decode(0, n - 1, d),
    };
    let v = hr_integral(sym, h, &unbalanced)?;
    checks.push(InvarianceCheck {
        name: "degree_vanishing",
        holds: v.is_zero(),
        detail: format!("int Z T of degree 1 = {v}"),
    });
    let _ = r;
    Ok(checks)
}

/// Only the `SH_R` part of [`verify_invariance`].
pub fn verify_shr(sym: &HeckeSymmetry, ids: &Idempotents<ScalarQ>, n: usize) -> Result<InvarianceReport> {
    let r = even_rank(sym)?;
    Ok(InvarianceReport {
        n,
        rank: r,
        checks: shr_checks(sym, ids, n, r)?,
    })
}

fn shr_checks(
    sym: &HeckeSymmetry,
    ids: &Idempotents<ScalarQ>,
    n: usize,
    r: usize,
) -> Result<Vec<InvarianceCheck>> {
    let mut checks = Vec::new();
    let shr = ShrIntegral::new(sym, ids)?;
    if n % r != 0 {
        // No (k^r) summand, so no coinvariants.
        let has_rectangle = Partition::all_of_size(n)
            .iter()
            .any(|p| p.length() == r && p.parts().iter().all(|&x| x == p.part(1)));
        checks.push(InvarianceCheck {
            name: "shr_grading",
            holds: !has_rectangle,
            detail: format!("n = {n} is not a multiple of r = {r}"),
        });
        return Ok(checks);
    }
    let k = n / r;
    let phi = shr.phi(k)?;
    let avg = shr.phi_averaged(k)?;
    checks.push(InvarianceCheck {
        name: "phi_routes_agree",
        holds: *phi == avg,
        detail: format!("Phi_{k}: central idempotent vs averaged rectangle"),
    });
    checks.push(InvarianceCheck {
        name: "phi_idempotent",
        holds: phi.then(&phi)? == *phi,
        detail: String::new(),
    });
    let mut commute = true;
    for i in 1..n {
        let ri = sym.r_at(n, i)?;
        commute &= phi.then(&ri)? == ri.then(&phi)?;
    }
    checks.push(InvarianceCheck {
        name: "phi_central",
        holds: commute,
        detail: String::new(),
    });
    // Coinvariants: the H_n-submodule generated by Im(Y_r^{(x)k}).
    let h = ids.hecke();
    let (_, y) = h.symmetrizers(r)?;
    let yk = tensor_power(&sym.rho(&y)?, k)?;
    let basis = sym.basis_images(n)?;
    let mut gens = Vec::new();
    for t in basis.iter() {
        gens.extend(yk.then(t)?.columns());
    }
    let coinv = span_rank(gens.clone());
    let phi_rank = phi.rank();
    gens.extend(phi.columns());
    let joint = span_rank(gens);
    checks.push(InvarianceCheck {
        name: "phi_coinvariants",
        holds: coinv == phi_rank && joint == phi_rank,
        detail: format!("rank Phi = {phi_rank}, coinvariants = {coinv}, joint = {joint}"),
    });
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(d: usize) -> (HeckeSymmetry, Hecke<ScalarQ>) {
        (HeckeSymmetry::drinfeld_jimbo(d).unwrap(), Hecke::exact())
    }

    fn mi(s: &str, d: usize) -> MultiIndex {
        MultiIndex::parse(s, d).unwrap()
    }

    #[test]
    fn degree_zero_is_one() {
        let (s, h) = setup(2);
        let e = mi("", 2);
        let q = IntegralQuery {
            i: e.clone(),
            j: e.clone(),
            k: e.clone(),
            l: e,
        };
        assert_eq!(hr_integral(&s, &h, &q).unwrap(), ScalarQ::one());
    }

    #[test]
    fn degree_one_closed_form() {
        for d in 2..=3 {
            let (s, h) = setup(d);
            let hr = HrIntegral::new(&s, &h, 1).unwrap();
            let qr = crate::scalar::q_integer(-(d as i64)).neg();
            for i in 1..=d {
                for j in 1..=d {
                    for k in 1..=d {
                        for l in 1..=d {
                            let got = hr
                                .value(&mi(&i.to_string(), d), &mi(&j.to_string(), d), &mi(&k.to_string(), d), &mi(&l.to_string(), d))
                                .unwrap();
                            let want = if j == k {
                                s.c().get(l - 1, i - 1).div(&qr).unwrap()
                            } else {
                                ScalarQ::zero()
                            };
                            assert_eq!(got, want);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn invariance_degree_one_and_two() {
        let (s, h) = setup(2);
        let ids = Idempotents::new(h);
        for n in 1..=2 {
            let report = verify_invariance(&s, &ids, n).unwrap();
            assert!(report.all_hold(), "n={n}: {:?}", report.checks);
        }
    }

    #[test]
    fn unbalanced_is_zero() {
        let (s, h) = setup(2);
        let q = IntegralQuery::parse("I=1,2;J=2,1;K=1;L=2", 2).unwrap();
        assert!(hr_integral(&s, &h, &q).unwrap().is_zero());
    }

    #[test]
    fn query_parse() {
        let q = IntegralQuery::parse("I=12;J=21;K=11;L=22", 2).unwrap();
        assert_eq!(q.j.entries(), &[2, 1]);
        assert_eq!(q.z_degree(), 0);
        assert!(IntegralQuery::parse("I=1;J=12", 2).is_err());
        assert!(IntegralQuery::parse("X=1", 2).is_err());
    }

    #[test]
    fn phi_one_is_determinant_projector() {
        let (s, h) = setup(2);
        let ids = Idempotents::new(h.clone());
        let shr = ShrIntegral::new(&s, &ids).unwrap();
        let phi = shr.phi(1).unwrap();
        let (_, y2) = h.symmetrizers(2).unwrap();
        assert!(*phi == s.rho(&y2).unwrap());
        assert_eq!(phi.rank(), 1);
        assert!(shr.value(&mi("1", 2), &mi("1", 2)).unwrap().is_zero());
        assert_eq!(shr.phi_averaged(1).unwrap(), *phi);
    }

    #[test]
    fn rectangle_trace_matches_algebra() {
        let ids = Idempotents::new(Hecke::<ScalarQ>::exact());
        for (k, r) in [(1, 2), (2, 2), (1, 3), (3, 1)] {
            let e = ids
                .primitive(&crate::idempotents::IdempotentKey::first(Partition::rectangle(k, r)))
                .unwrap();
            assert_eq!(e.trace(), rectangle_trace(k, r), "k={k} r={r}");
        }
    }

    #[test]
    fn closing_consistency_dj2() {
        let (s, h) = setup(2);
        let ids = Idempotents::new(h.clone());
        let phi = ShrIntegral::new(&s, &ids).unwrap().phi(1).unwrap();
        assert_eq!(closing_consistency(&s, &h).unwrap(), *phi);
    }

    #[test]
    fn phi_two_rank_two() {
        let (s, h) = setup(2);
        let ids = Idempotents::new(h);
        let report = verify_shr(&s, &ids, 4).unwrap();
        assert!(report.all_hold(), "{:?}", report.checks);
        let shr = ShrIntegral::new(&s, &ids).unwrap();
        // two standard tableaux of shape (2,2), each with a 1-dim image
        assert_eq!(shr.phi(2).unwrap().rank(), 2);
        let odd = verify_shr(&s, &ids, 3).unwrap();
        assert!(odd.all_hold());
        assert!(shr.value(&mi("121", 2), &mi("121", 2)).unwrap().is_zero());
    }

    #[test]
    fn phi_rank_three() {
        let (s, h) = setup(3);
        let ids = Idempotents::new(h);
        let report = verify_shr(&s, &ids, 3).unwrap();
        assert!(report.all_hold(), "{:?}", report.checks);
        assert_eq!(ShrIntegral::new(&s, &ids).unwrap().phi(1).unwrap().rank(), 1);
    }
}
