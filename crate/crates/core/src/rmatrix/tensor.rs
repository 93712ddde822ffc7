//! Dense operators on `V^{(x)n}` and exact linear algebra over them.
//!
//! Basis vectors of `V^{(x)n}` are multi-indices `(i_1, ..., i_n)` with
//! entries in `1..=d`, encoded base `d` with `i_1` most significant. An
//! operator stores `entry(out, in)`, the coefficient of `x_out` in the image
//! of `x_in`; for `R` on `V (x) V` that is `R^{kl}_{ij}` at
//! `(out, in) = ((k,l), (i,j))`.
//!
//! Composition follows the right action of the Hecke algebra: `a.then(b)`
//! applies `a` first, so `rho(xy) = rho(x).then(rho(y))`.

use std::fmt;

use crate::error::{Error, Result, Residual};
use crate::scalar::{Scalar, ScalarQ};

/// Largest number of stored entries (`d^{2n}`).
pub const MAX_ENTRIES: usize = 1 << 26;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    entries: Vec<usize>,
}

impl MultiIndex {
    pub fn new(entries: Vec<usize>, d: usize) -> Result<Self> {
        for &e in &entries {
            if e == 0 || e > d {
                return Err(Error::IndexOutOfRange {
                    index: e as i64,
                    bound: d,
                });
            }
        }
        Ok(MultiIndex { entries })
    }

    /// Accepts `1,2,1`, `[1,2,1]`, `121` (single digits) or the empty string.
    pub fn parse(s: &str, d: usize) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if t.is_empty() {
            return Ok(MultiIndex { entries: vec![] });
        }
        let parts: Vec<&str> = if t.contains(',') || t.contains(' ') {
            t.split([',', ' ']).filter(|x| !x.is_empty()).collect()
        } else {
            t.split("").filter(|x| !x.is_empty()).collect()
        };
        let entries = parts
            .iter()
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad multi-index entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries, d)
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `K' = (k_n, ..., k_1)`.
    pub fn reversed(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.reverse();
        MultiIndex { entries }
    }

    pub fn encode(&self, d: usize) -> usize {
        self.entries.iter().fold(0, |acc, &e| acc * d + (e - 1))
    }

    pub fn decode(mut code: usize, n: usize, d: usize) -> Self {
        let mut entries = vec![0; n];
        for slot in entries.iter_mut().rev() {
            *slot = code % d + 1;
            code /= d;
        }
        MultiIndex { entries }
    }

    /// Every multi-index of length `n`, in code order.
    pub fn all(n: usize, d: usize) -> impl Iterator<Item = MultiIndex> {
        (0..d.pow(n as u32)).map(move |c| Self::decode(c, n, d))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn checked_dim(n: usize, d: usize) -> Result<usize> {
    let dim = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let entries = dim.saturating_mul(dim);
    if entries > MAX_ENTRIES as u128 {
        return Err(Error::CapExceeded {
            what: "operator entries",
            value: usize::try_from(entries).unwrap_or(usize::MAX),
            cap: MAX_ENTRIES,
        });
    }
    Ok(dim as usize)
}

#[derive(Clone, PartialEq)]
pub struct TensorOperator<S: Scalar = ScalarQ> {
    n: usize,
    d: usize,
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> TensorOperator<S> {
    pub fn zero(n: usize, d: usize) -> Result<Self> {
        let dim = checked_dim(n, d)?;
        Ok(TensorOperator {
            n,
            d,
            dim,
            entries: vec![S::zero(); dim * dim],
        })
    }

    pub fn identity(n: usize, d: usize) -> Result<Self> {
        Self::scalar(n, d, S::one())
    }

    pub fn scalar(n: usize, d: usize, c: S) -> Result<Self> {
        let mut m = Self::zero(n, d)?;
        if !c.is_zero() {
            for i in 0..m.dim {
                m.entries[i * m.dim + i] = c.clone();
            }
        }
        Ok(m)
    }

    pub fn from_fn(n: usize, d: usize, mut f: impl FnMut(usize, usize) -> S) -> Result<Self> {
        let mut m = Self::zero(n, d)?;
        for out in 0..m.dim {
            for inp in 0..m.dim {
                m.entries[out * m.dim + inp] = f(out, inp);
            }
        }
        Ok(m)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    /// `d^n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, out: usize, inp: usize) -> &S {
        &self.entries[out * self.dim + inp]
    }

    pub fn set(&mut self, out: usize, inp: usize, c: S) {
        self.entries[out * self.dim + inp] = c;
    }

    pub fn add_to(&mut self, out: usize, inp: usize, c: &S) {
        self.entries[out * self.dim + inp].add_assign_ref(c);
    }

    pub fn entry(&self, out: &MultiIndex, inp: &MultiIndex) -> &S {
        self.get(out.encode(self.d), inp.encode(self.d))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(S::is_zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (k / self.dim, k % self.dim, c))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                a.add_assign_ref(b);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&S::one().negated()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = self.clone();
        for a in &mut out.entries {
            if !a.is_zero() {
                *a = a.times(c);
            }
        }
        out
    }

    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> Result<T>) -> Result<TensorOperator<T>> {
        let entries = self
            .entries
            .iter()
            .map(|c| if c.is_zero() { Ok(T::zero()) } else { f(c) })
            .collect::<Result<Vec<_>>>()?;
        Ok(TensorOperator {
            n: self.n,
            d: self.d,
            dim: self.dim,
            entries,
        })
    }

    pub fn trace(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.dim {
            acc.add_assign_ref(self.get(i, i));
        }
        acc
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.dim;
        let mut out = Self::zero(self.n, self.d)?;
        // out[j][i] = sum_k other[j][k] self[k][i]
        for k in 0..n {
            for i in 0..n {
                let a = &self.entries[k * n + i];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[j * n + k];
                    if !b.is_zero() {
                        out.entries[j * n + i].add_assign_ref(&b.times(a));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self (x) other` on `V^{(x)(n+m)}`.
    pub fn kron(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::Invalid("tensor factors have different dimensions".into()));
        }
        let mut out = Self::zero(self.n + other.n, self.d)?;
        let m = other.dim;
        for (o1, i1, a) in self.nonzero() {
            for (o2, i2, b) in other.nonzero() {
                out.set(o1 * m + o2, i1 * m + i2, a.times(b));
            }
        }
        Ok(out)
    }

    /// Apply `self`, then the two-site operator `local` on factors
    /// `pos, pos+1` (1-based).
    pub fn then_local(&self, local: &LocalOp<S>, pos: usize) -> Result<Self> {
        let mut out = Self::zero(self.n, self.d)?;
        let n = self.dim;
        for k in 0..n {
            let targets = local.targets(k, pos, self.n, self.d)?;
            for i in 0..n {
                let a = &self.entries[k * n + i];
                if a.is_zero() {
                    continue;
                }
                for (j, c) in &targets {
                    out.entries[j * n + i].add_assign_ref(&c.times(a));
                }
            }
        }
        Ok(out)
    }

    /// Apply the two-site operator `local` on factors `pos, pos+1`, then `self`.
    pub fn after_local(&self, local: &LocalOp<S>, pos: usize) -> Result<Self> {
        let mut out = Self::zero(self.n, self.d)?;
        let n = self.dim;
        for i in 0..n {
            for (k, c) in local.targets(i, pos, self.n, self.d)? {
                for j in 0..n {
                    let a = &self.entries[j * n + k];
                    if !a.is_zero() {
                        out.entries[j * n + i].add_assign_ref(&a.times(&c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Non-zero entries as residual records (1-based multi-indices), at most
    /// `limit` of them.
    pub fn residuals(&self, limit: usize) -> Vec<Residual> {
        self.nonzero()
            .take(limit)
            .map(|(o, i, c)| Residual {
                row: MultiIndex::decode(o, self.n, self.d).entries,
                col: MultiIndex::decode(i, self.n, self.d).entries,
                value: c.to_string(),
            })
            .collect()
    }

    /// Indices grouped into the connected components of the sparsity graph.
    /// The operator is block diagonal with respect to this partition.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (o, i, _) in self.nonzero() {
            let (a, b) = (find(&mut parent, o), find(&mut parent, i));
            if a != b {
                parent[a] = b;
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    fn block(&self, idx: &[usize]) -> Matrix<S> {
        let rows = idx
            .iter()
            .map(|&o| idx.iter().map(|&i| self.get(o, i).clone()).collect())
            .collect();
        Matrix { rows }
    }

    pub fn rank(&self) -> usize {
        self.blocks().iter().map(|b| self.block(b).rank()).sum()
    }

    pub fn determinant(&self) -> S {
        let mut det = S::one();
        for b in self.blocks() {
            det = det.times(&self.block(&b).determinant());
            if det.is_zero() {
                break;
            }
        }
        det
    }

    /// The inverse operator, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<Self>> {
        let mut out = Self::zero(self.n, self.d)?;
        for b in self.blocks() {
            let Some(inv) = self.block(&b).inverse() else {
                return Ok(None);
            };
            for (r, &o) in b.iter().enumerate() {
                for (c, &i) in b.iter().enumerate() {
                    out.set(o, i, inv.rows[r][c].clone());
                }
            }
        }
        Ok(Some(out))
    }

    /// `Some(c)` when `self = c * other` (with `other` non-zero).
    pub fn ratio_to(&self, other: &Self) -> Option<S> {
        let (k, _) = other
            .entries
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())?;
        let c = self.entries[k].times(&other.entries[k].inverse()?);
        if self.sub(&other.scale(&c)).ok()?.is_zero() {
            Some(c)
        } else {
            None
        }
    }

    /// Columns (images of basis vectors), each a dense vector.
    pub fn columns(&self) -> Vec<Vec<S>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|o| self.get(o, i).clone()).collect())
            .collect()
    }

    /// The entries as one flat vector, row-major.
    pub fn flatten(&self) -> Vec<S> {
        self.entries.clone()
    }
}

impl<S: Scalar> fmt::Debug for TensorOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TensorOperator(n={}, d={})", self.n, self.d)?;
        for (o, i, c) in self.nonzero() {
            writeln!(
                f,
                "  {} <- {}: {}",
                MultiIndex::decode(o, self.n, self.d),
                MultiIndex::decode(i, self.n, self.d),
                c
            )?;
        }
        Ok(())
    }
}

/// A two-site operator stored by columns, for cheap application at any
/// position of a longer tensor.
#[derive(Clone)]
pub struct LocalOp<S: Scalar = ScalarQ> {
    d: usize,
    /// `cols[(a,b)]` lists `((k,l), c)` with `c = op^{kl}_{ab} != 0`.
    cols: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> LocalOp<S> {
    pub fn new(op: &TensorOperator<S>) -> Result<Self> {
        if op.n != 2 {
            return Err(Error::DegreeMismatch(op.n, 2));
        }
        let mut cols = vec![Vec::new(); op.dim];
        for (o, i, c) in op.nonzero() {
            cols[i].push((o, c.clone()));
        }
        Ok(LocalOp { d: op.d, cols })
    }

    /// Images of basis vector `k` of `V^{(x)n}` under the operator placed
    /// at `pos, pos+1`.
    pub(crate) fn targets(&self, k: usize, pos: usize, n: usize, d: usize) -> Result<Vec<(usize, S)>> {
        if d != self.d {
            return Err(Error::Invalid("local operator has a different dimension".into()));
        }
        if pos == 0 || pos + 1 > n {
            return Err(Error::IndexOutOfRange {
                index: pos as i64,
                bound: n.saturating_sub(1),
            });
        }
        let low = d.pow((n - pos - 1) as u32);
        let a = (k / (low * d)) % d;
        let b = (k / low) % d;
        let base = k - (a * d + b) * low;
        Ok(self.cols[a * d + b]
            .iter()
            .map(|(o, c)| (base + o * low, c.clone()))
            .collect())
    }
}

/// A plain dense matrix for elimination.
#[derive(Clone, Debug)]
pub struct Matrix<S: Scalar> {
    pub rows: Vec<Vec<S>>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Self {
        Matrix { rows }
    }

    fn pick_pivot(rows: &[Vec<S>], col: usize, from: usize) -> Option<usize> {
        (from..rows.len())
            .filter(|&r| !rows[r][col].is_zero())
            .min_by_key(|&r| rows[r][col].complexity())
    }

    /// Row echelon form in place; returns pivot columns and the sign of the
    /// row permutation.
    fn echelon(rows: &mut [Vec<S>]) -> (Vec<usize>, bool) {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut odd = false;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = Self::pick_pivot(rows, c, r) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                odd = !odd;
            }
            let inv = rows[r][c].inverse().expect("pivot is non-zero");
            for below in r + 1..rows.len() {
                if rows[below][c].is_zero() {
                    continue;
                }
                let f = rows[below][c].times(&inv);
                let (top, bottom) = rows.split_at_mut(below);
                let pivot_row = &top[r];
                let row = &mut bottom[0];
                for k in c..ncols {
                    if !pivot_row[k].is_zero() {
                        row[k] = row[k].minus(&f.times(&pivot_row[k]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, odd)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        Self::echelon(&mut rows).0.len()
    }

    pub fn determinant(&self) -> S {
        let n = self.rows.len();
        let mut rows = self.rows.clone();
        let (pivots, odd) = Self::echelon(&mut rows);
        if pivots.len() < n {
            return S::zero();
        }
        let mut det = S::one();
        for (i, row) in rows.iter().enumerate() {
            det = det.times(&row[i]);
        }
        if odd {
            det.negated()
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows.len();
        let mut rows: Vec<Vec<S>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
                row
            })
            .collect();
        let (pivots, _) = Self::echelon(&mut rows);
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        for i in (0..n).rev() {
            let inv = rows[i][i].inverse()?;
            for k in 0..2 * n {
                if !rows[i][k].is_zero() {
                    rows[i][k] = rows[i][k].times(&inv);
                }
            }
            for above in 0..i {
                if rows[above][i].is_zero() {
                    continue;
                }
                let f = rows[above][i].clone();
                let (top, bottom) = rows.split_at_mut(i);
                for k in i..2 * n {
                    if !bottom[0][k].is_zero() {
                        top[above][k] = top[above][k].minus(&f.times(&bottom[0][k]));
                    }
                }
            }
        }
        Some(Matrix {
            rows: rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }
}

/// Rank of the span of a family of vectors.
pub fn span_rank<S: Scalar>(vectors: Vec<Vec<S>>) -> usize {
    let vectors: Vec<Vec<S>> = vectors
        .into_iter()
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    Matrix::new(vectors).rank()
}
