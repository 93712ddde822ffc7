//! Hecke symmetries: construction, certification, the derived operators
//! `P`, `Q`, `B`, `C`, the representation `rho_n` of `H_n` on `V^{(x)n}`,
//! rank detection and matrix-level categorical traces.

mod closure;
pub mod tensor;

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{Hecke, HeckeElement};
use crate::idempotents::{inverse_square_longest, IdempotentKey, Idempotents};
use crate::scalar::{q_integer, Scalar, ScalarQ};
use crate::symmetric;

pub use closure::{verify_closure_identities, ClosureReport, IdentityCheck};
pub use tensor::{span_rank, LocalOp, Matrix, MultiIndex, TensorOperator};

pub const DEFAULT_RANK_CUTOFF: usize = 6;

/// Outcome of rank detection. `exterior_dims[k-1] = dim Lambda^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankResult {
    Even {
        rank: usize,
        exterior_dims: Vec<usize>,
    },
    NotEvenUpTo {
        cutoff: usize,
        exterior_dims: Vec<usize>,
    },
}

impl RankResult {
    pub fn rank(&self) -> Option<usize> {
        match self {
            RankResult::Even { rank, .. } => Some(*rank),
            RankResult::NotEvenUpTo { .. } => None,
        }
    }

    pub fn exterior_dims(&self) -> &[usize] {
        match self {
            RankResult::Even { exterior_dims, .. } | RankResult::NotEvenUpTo { exterior_dims, .. } => {
                exterior_dims
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RankResult::Even {
                rank,
                exterior_dims,
            } => json!({"even": true, "rank": rank, "exterior_dims": exterior_dims}),
            RankResult::NotEvenUpTo {
                cutoff,
                exterior_dims,
            } => json!({"even": false, "not_even_up_to": cutoff, "exterior_dims": exterior_dims}),
        }
    }
}

/// A certified Hecke symmetry on a `d`-dimensional space.
pub struct HeckeSymmetry {
    name: String,
    d: usize,
    r: TensorOperator,
    r_inv: TensorOperator,
    p: TensorOperator,
    q: TensorOperator,
    b: TensorOperator,
    c: TensorOperator,
    local_r: LocalOp,
    rank: Mutex<HashMap<usize, RankResult>>,
    basis: Mutex<HashMap<usize, Arc<Vec<TensorOperator>>>>,
}

impl std::fmt::Debug for HeckeSymmetry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HeckeSymmetry({}, d={})", self.name, self.d)
    }
}

fn pair(a: usize, b: usize, d: usize) -> usize {
    a * d + b
}

/// The Drinfel'd-Jimbo matrix. On the diagonal `R^{ii}_{ii} = q`; for
/// `i != j`, `R^{ji}_{ij} = v` and `R^{ij}_{ij} = q - 1` when `i < j`, `0`
/// when `i > j`. The `i = j` terms of the textbook formula carry `1/2` twice
/// with opposite signs; this is the cancelled form.
pub fn dj_matrix(d: usize) -> Result<TensorOperator> {
    graded_matrix(&vec![false; d])
}

/// The `(m|n)` super matrix: first `m` basis vectors even, last `n` odd.
pub fn super_matrix(m: usize, n: usize) -> Result<TensorOperator> {
    let mut parity = vec![false; m];
    parity.extend(std::iter::repeat_n(true, n));
    graded_matrix(&parity)
}

fn graded_matrix(parity: &[bool]) -> Result<TensorOperator> {
    let d = parity.len();
    if d == 0 {
        return Err(Error::Invalid("dimension must be at least 1".into()));
    }
    let mut r = TensorOperator::zero(2, d)?;
    let q = ScalarQ::q();
    let v = ScalarQ::v();
    for i in 0..d {
        for j in 0..d {
            let col = pair(i, j, d);
            if i == j {
                let c = if parity[i] { ScalarQ::from_int(-1) } else { q.clone() };
                r.set(col, col, c);
                continue;
            }
            if i < j {
                r.set(col, col, q.sub(&ScalarQ::one()));
            }
            let sign = if parity[i] && parity[j] { v.neg() } else { v.clone() };
            r.set(pair(j, i, d), col, sign);
        }
    }
    Ok(r)
}

impl HeckeSymmetry {
    /// Certify `r` in the order Yang-Baxter, Hecke, closedness.
    pub fn from_matrix(name: impl Into<String>, r: TensorOperator) -> Result<Self> {
        if r.degree() != 2 {
            return Err(Error::DegreeMismatch(r.degree(), 2));
        }
        let d = r.local_dim();
        let local_r = LocalOp::new(&r)?;
        let ybe = yang_baxter_residual(&local_r, d)?;
        if !ybe.is_zero() {
            return Err(Error::NotYangBaxter(ybe.residuals(64)));
        }
        let hecke = hecke_residual(&r)?;
        if !hecke.is_zero() {
            return Err(Error::NotHecke(hecke.residuals(64)));
        }
        let r_inv = r
            .inverse()?
            .ok_or_else(|| Error::Invalid("R is not invertible".into()))?;
        let p = closing_witness(&r).ok_or_else(|| {
            Error::NotClosed("the contraction system R^{il}_{jk} P^{km}_{ln} = delta is singular".into())
        })?;
        let q = closing_witness(&r_inv).ok_or_else(|| {
            Error::NotClosed(
                "the contraction system (R^-1)^{il}_{jk} Q^{km}_{ln} = delta is singular".into(),
            )
        })?;
        let b = contract_b(&p)?;
        let c = contract_c(&p)?;
        Ok(HeckeSymmetry {
            name: name.into(),
            d,
            r,
            r_inv,
            p,
            q,
            b,
            c,
            local_r,
            rank: Mutex::new(HashMap::new()),
            basis: Mutex::new(HashMap::new()),
        })
    }

    pub fn drinfeld_jimbo(d: usize) -> Result<Self> {
        Self::from_matrix(format!("dj{d}"), dj_matrix(d)?)
    }

    pub fn super_symmetry(m: usize, n: usize) -> Result<Self> {
        Self::from_matrix(format!("super{m}_{n}"), super_matrix(m, n)?)
    }

    /// `{"d": d, "entries": [{"k","l","i","j","c"}]}`, indices 1-based,
    /// `c` a scalar (expression string or structured form).
    pub fn from_json(value: &Value) -> Result<Self> {
        let r = matrix_from_json(value)?;
        let name = value
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or("custom")
            .to_string();
        Self::from_matrix(name, r)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&value)
    }

    pub fn to_json(&self) -> Value {
        matrix_to_json(&self.r)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn r(&self) -> &TensorOperator {
        &self.r
    }

    pub fn r_inv(&self) -> &TensorOperator {
        &self.r_inv
    }

    /// `P` stored with `(out, in) = ((k,m), (l,n))` for `P^{km}_{ln}`.
    pub fn p(&self) -> &TensorOperator {
        &self.p
    }

    pub fn q_witness(&self) -> &TensorOperator {
        &self.q
    }

    /// `B^i_m = P^{li}_{lm}`.
    pub fn b(&self) -> &TensorOperator {
        &self.b
    }

    /// `C^i_j = P^{il}_{jl}`.
    pub fn c(&self) -> &TensorOperator {
        &self.c
    }

    pub fn local_r(&self) -> &LocalOp {
        &self.local_r
    }

    /// `tr(C)`, the quantum rank.
    pub fn quantum_rank(&self) -> ScalarQ {
        self.c.trace()
    }

    /// Rank detection with the default cutoff.
    pub fn rank(&self) -> Result<RankResult> {
        self.rank_of(DEFAULT_RANK_CUTOFF)
    }

    /// The rank, or `NotEven` when none is found within the default cutoff.
    pub fn even_rank(&self) -> Result<usize> {
        self.rank()?.rank().ok_or(Error::NotEven {
            cutoff: DEFAULT_RANK_CUTOFF,
        })
    }

    /// The largest `r <= cutoff` with `rho(Y_r) != 0 = rho(Y_{r+1})`.
    pub fn rank_of(&self, cutoff: usize) -> Result<RankResult> {
        if cutoff == 0 {
            return Err(Error::Invalid("cutoff must be at least 1".into()));
        }
        if let Some(hit) = self.rank.lock().unwrap().get(&cutoff) {
            return Ok(hit.clone());
        }
        let mut dims = Vec::new();
        let mut found = None;
        for k in 1..=cutoff {
            let y = self.antisymmetrizer(k)?;
            let rk = y.rank();
            if rk == 0 {
                found = Some(k - 1);
                break;
            }
            dims.push(rk);
        }
        let result = match found {
            Some(rank) => RankResult::Even {
                rank,
                exterior_dims: dims,
            },
            None => RankResult::NotEvenUpTo {
                cutoff,
                exterior_dims: dims,
            },
        };
        self.rank.lock().unwrap().insert(cutoff, result.clone());
        Ok(result)
    }

    /// `rho(sum_w (-q)^{-l(w)} T_w)` on `V^{(x)k}`, built from
    /// `Y_k = Y_{k-1} (1 + a T_{k-1} + a^2 T_{k-1} T_{k-2} + ...)`, `a = -1/q`.
    pub fn antisymmetrizer(&self, k: usize) -> Result<TensorOperator> {
        let mut y = TensorOperator::identity(1, self.d)?;
        let id1 = TensorOperator::identity(1, self.d)?;
        let a = ScalarQ::q_power(-1).neg();
        for m in 2..=k {
            let base = y.kron(&id1)?;
            let mut acc = base.clone();
            let mut t = base;
            let mut c = ScalarQ::one();
            for j in (1..m).rev() {
                t = t.then_local(&self.local_r, j)?;
                c = c.mul(&a);
                acc = acc.add(&t.scale(&c))?;
            }
            y = acc;
        }
        Ok(y)
    }

    /// `rho_n(T_w)` for every `w`, indexed by lexicographic rank.
    pub fn basis_images(&self, n: usize) -> Result<Arc<Vec<TensorOperator>>> {
        if let Some(hit) = self.basis.lock().unwrap().get(&n) {
            return Ok(hit.clone());
        }
        let t = symmetric::table(n)?;
        let mut ops: Vec<Option<TensorOperator>> = vec![None; t.size()];
        for &w in &t.bfs {
            let w = w as usize;
            let op = match t.parent[w] {
                None => TensorOperator::identity(n, self.d)?,
                Some((p, i)) => ops[p as usize]
                    .as_ref()
                    .expect("parents precede children")
                    .then_local(&self.local_r, i as usize)?,
            };
            ops[w] = Some(op);
        }
        let ops: Arc<Vec<TensorOperator>> = Arc::new(ops.into_iter().map(Option::unwrap).collect());
        self.basis.lock().unwrap().insert(n, ops.clone());
        Ok(ops)
    }

    /// `rho_n(a)`, with `rho_n(T_i) = R_i`.
    pub fn rho(&self, a: &HeckeElement<ScalarQ>) -> Result<TensorOperator> {
        let n = a.degree();
        let basis = self.basis_images(n)?;
        let mut out = TensorOperator::zero(n, self.d)?;
        for (w, c) in a.terms() {
            out = out.add(&basis[w.lex_rank()].scale(c))?;
        }
        Ok(out)
    }

    /// `R_i` on `V^{(x)n}`.
    pub fn r_at(&self, n: usize, i: usize) -> Result<TensorOperator> {
        TensorOperator::identity(n, self.d)?.then_local(&self.local_r, i)
    }

    /// `(8tr^n f)^J_I = sum_{a,b} f^{Jb}_{Ia} C^a_b`.
    pub fn etr(&self, f: &TensorOperator) -> Result<TensorOperator> {
        let n = f.degree();
        if n == 0 {
            return Err(Error::DegreeMismatch(0, 1));
        }
        if f.local_dim() != self.d {
            return Err(Error::Invalid("operator dimension differs from the symmetry".into()));
        }
        let d = self.d;
        let mut out = TensorOperator::zero(n - 1, d)?;
        for (o, i, x) in f.nonzero() {
            let (jj, b) = (o / d, o % d);
            let (ii, a) = (i / d, i % d);
            let c = self.c.get(a, b);
            if !c.is_zero() {
                out.add_to(jj, ii, &x.mul(c));
            }
        }
        Ok(out)
    }

    /// `8tr^1 o ... o 8tr^n (f)`.
    pub fn etr_chain(&self, f: &TensorOperator) -> Result<ScalarQ> {
        let mut x = f.clone();
        while x.degree() > 0 {
            x = self.etr(&x)?;
        }
        Ok(x.get(0, 0).clone())
    }

    /// `ev_M tau_{M,M*} (f (x) id_{M*}) db_M` for `M = V^{(x)n}`, with
    /// `M* = V*_n (x) ... (x) V*_1`, `tau_{M,M*}` assembled from the
    /// crossings `x_l (x) xi^k -> sum P^{kj}_{li} xi^i (x) x_j`.
    pub fn direct_categorical_trace(&self, f: &TensorOperator) -> Result<ScalarQ> {
        let n = f.degree();
        let d = self.d;
        let sites = 2 * n;
        let size = d.pow(sites as u32);
        let half = d.pow(n as u32);
        let crossing = LocalOp::new(&self.crossing_v_vdual()?)?;
        // db_M: sum_I x_I (x) xi^{I'}, then f on the first n sites.
        let mut state = vec![ScalarQ::zero(); size];
        for i in 0..half {
            let rev = MultiIndex::decode(i, n, d).reversed().encode(d);
            for j in 0..half {
                let c = f.get(j, i);
                if !c.is_zero() {
                    state[j * half + rev].add_assign_ref(c);
                }
            }
        }
        // Move x_n, then x_{n-1}, ..., each across the whole dual block.
        for s in (1..=n).rev() {
            for p in s..s + n {
                let mut next = vec![ScalarQ::zero(); size];
                for (k, x) in state.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (t, c) in crossing.targets(k, p, sites, d)? {
                        next[t].add_assign_ref(&c.mul(x));
                    }
                }
                state = next;
            }
        }
        // Nested evaluation: dual site n-t pairs with vector site n+1+t.
        let mut acc = ScalarQ::zero();
        for (k, x) in state.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let digits = MultiIndex::decode(k, sites, d);
            let e = digits.entries();
            if (0..n).all(|t| e[n - 1 - t] == e[n + t]) {
                acc.add_assign_ref(x);
            }
        }
        Ok(acc)
    }

    /// The crossing `V (x) V* -> V* (x) V` as a two-site operator:
    /// `(l,k) -> (i,j)` with coefficient `P^{kj}_{li}`.
    pub fn crossing_v_vdual(&self) -> Result<TensorOperator> {
        let d = self.d;
        TensorOperator::from_fn(2, d, |o, i| {
            let (ii, j) = (o / d, o % d);
            let (l, k) = (i / d, i % d);
            self.p.get(pair(k, j, d), pair(l, ii, d)).clone()
        })
    }

    /// The crossing `V* (x) V -> V (x) V*`: `(i,j) -> (l,k)` with
    /// coefficient `(R^-1)^{il}_{jk}`.
    pub fn crossing_vdual_v(&self) -> Result<TensorOperator> {
        let d = self.d;
        TensorOperator::from_fn(2, d, |o, i| {
            let (l, k) = (o / d, o % d);
            let (ii, j) = (i / d, i % d);
            self.r_inv.get(pair(ii, l, d), pair(j, k, d)).clone()
        })
    }

    /// Matrix rank of `rho(E_{i,lambda})`.
    pub fn comodule_dimension(
        &self,
        ids: &Idempotents<ScalarQ>,
        key: &IdempotentKey,
    ) -> Result<usize> {
        let e = ids.primitive(key)?;
        Ok(self.rho(&e)?.rank())
    }

    /// `rho_n(T_{w_n}^{-2})`.
    pub fn inverse_twist(&self, h: &Hecke<ScalarQ>, n: usize) -> Result<TensorOperator> {
        self.rho(&inverse_square_longest(h, n)?)
    }

    /// `prod_{k=1}^n (rho(L_k) - [-r]_q)`.
    pub fn murphy_product(&self, h: &Hecke<ScalarQ>, n: usize, r: usize) -> Result<TensorOperator> {
        let shift = q_integer(-(r as i64));
        let mut acc = TensorOperator::identity(n, self.d)?;
        for k in 1..=n {
            let l = self.rho(&h.murphy(n, k)?)?;
            let factor = l.sub(&TensorOperator::scalar(n, self.d, shift.clone())?)?;
            acc = acc.then(&factor)?;
        }
        Ok(acc)
    }
}

/// `R_1 R_2 R_1 - R_2 R_1 R_2` on `V^{(x)3}`.
fn yang_baxter_residual(r: &LocalOp, d: usize) -> Result<TensorOperator> {
    let id = TensorOperator::<ScalarQ>::identity(3, d)?;
    let lhs = id.then_local(r, 1)?.then_local(r, 2)?.then_local(r, 1)?;
    let rhs = id.then_local(r, 2)?.then_local(r, 1)?.then_local(r, 2)?;
    lhs.sub(&rhs)
}

/// `(R + 1)(R - q)`.
fn hecke_residual(r: &TensorOperator) -> Result<TensorOperator> {
    let d = r.local_dim();
    let one = TensorOperator::identity(2, d)?;
    let a = r.add(&one)?;
    let b = r.sub(&TensorOperator::scalar(2, d, ScalarQ::q())?)?;
    a.then(&b)
}

/// Solve `R^{il}_{jk} P^{km}_{ln} = delta^i_n delta^m_j` for `P`.
///
/// With `X[(i,j)][(l,k)] = R^{il}_{jk}` and `Y[(l,k)][(n,m)] = P^{km}_{ln}`
/// the system reads `XY = 1`.
fn closing_witness(r: &TensorOperator) -> Option<TensorOperator> {
    let d = r.local_dim();
    let x = TensorOperator::from_fn(2, d, |row, col| {
        let (i, j) = (row / d, row % d);
        let (l, k) = (col / d, col % d);
        r.get(pair(i, l, d), pair(j, k, d)).clone()
    })
    .ok()?;
    let y = x.inverse().ok()??;
    TensorOperator::from_fn(2, d, |o, i| {
        let (k, m) = (o / d, o % d);
        let (l, n) = (i / d, i % d);
        y.get(pair(l, k, d), pair(n, m, d)).clone()
    })
    .ok()
}

/// `B^i_m = sum_l W^{li}_{lm}`.
fn contract_b(w: &TensorOperator) -> Result<TensorOperator> {
    let d = w.local_dim();
    TensorOperator::from_fn(1, d, |i, m| {
        let mut acc = ScalarQ::zero();
        for l in 0..d {
            acc.add_assign_ref(w.get(pair(l, i, d), pair(l, m, d)));
        }
        acc
    })
}

/// `C^i_j = sum_l W^{il}_{jl}`.
fn contract_c(w: &TensorOperator) -> Result<TensorOperator> {
    let d = w.local_dim();
    TensorOperator::from_fn(1, d, |i, j| {
        let mut acc = ScalarQ::zero();
        for l in 0..d {
            acc.add_assign_ref(w.get(pair(i, l, d), pair(j, l, d)));
        }
        acc
    })
}

pub fn matrix_to_json(r: &TensorOperator) -> Value {
    let d = r.local_dim();
    let entries: Vec<Value> = r
        .nonzero()
        .map(|(o, i, c)| {
            json!({
                "k": o / d + 1, "l": o % d + 1,
                "i": i / d + 1, "j": i % d + 1,
                "c": c.to_string(),
            })
        })
        .collect();
    json!({"d": d, "entries": entries})
}

pub fn matrix_from_json(value: &Value) -> Result<TensorOperator> {
    let bad = |what: &str| Error::Parse(format!("R-matrix file: {what}"));
    let d = value
        .get("d")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing positive integer \"d\""))? as usize;
    if d == 0 {
        return Err(bad("\"d\" must be positive"));
    }
    let entries = value
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array \"entries\""))?;
    let mut r = TensorOperator::zero(2, d)?;
    for e in entries {
        let idx = |key: &str| -> Result<usize> {
            let x = e
                .get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| bad(&format!("entry lacks integer {key:?}")))? as usize;
            if x == 0 || x > d {
                return Err(Error::IndexOutOfRange {
                    index: x as i64,
                    bound: d,
                });
            }
            Ok(x - 1)
        };
        let (k, l, i, j) = (idx("k")?, idx("l")?, idx("i")?, idx("j")?);
        let c = ScalarQ::from_json(e.get("c").ok_or_else(|| bad("entry lacks \"c\""))?)?;
        r.add_to(pair(k, l, d), pair(i, j, d), &c);
    }
    Ok(r)
}

/// Resolve `builtin:dj{d}`, `builtin:super{m}_{n}` or a file path.
pub fn resolve_symmetry(symmetry: &str) -> Result<HeckeSymmetry> {
    let Some(name) = symmetry.strip_prefix("builtin:") else {
        return HeckeSymmetry::load(Path::new(symmetry));
    };
    let unknown = || Error::Parse(format!("unknown builtin symmetry {name:?}; use dj<d> or super<m>_<n>"));
    if let Some(d) = name.strip_prefix("dj") {
        let d: usize = d.parse().map_err(|_| unknown())?;
        return HeckeSymmetry::drinfeld_jimbo(d);
    }
    if let Some(rest) = name.strip_prefix("super") {
        let (m, n) = rest.split_once('_').ok_or_else(unknown)?;
        let m: usize = m.parse().map_err(|_| unknown())?;
        let n: usize = n.parse().map_err(|_| unknown())?;
        if m + n == 0 {
            return Err(Error::Invalid("super symmetry needs m + n >= 1".into()));
        }
        return HeckeSymmetry::super_symmetry(m, n);
    }
    Err(unknown())
}
