//! The conditional trace `tr_r^n : H_n -> H_{n-1}`, the quantum trace, and
//! the closed and determinantal dimension formulas.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hecke::{Hecke, HeckeElement};
use crate::idempotents::{inverse_square_longest, IdempotentKey, Idempotents};
use crate::idempotents::{weyl_product, CacheTag};
use crate::scalar::{q_factorial, Scalar, ScalarQ};
use crate::symmetric::{self, coset_decompose};
use crate::tableaux::{Partition, ZPartition};

/// The rank `r` of an even Hecke symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankContext {
    r: usize,
}

impl RankContext {
    pub fn new(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("rank must be at least 1".into()));
        }
        Ok(RankContext { r })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `-[-r]_q`, the quantum rank.
    pub fn quantum_rank<S: Scalar>(&self, h: &Hecke<S>) -> S {
        h.field().q_int(-(self.r as i64)).negated()
    }

    fn check_length(&self, len: usize) -> Result<()> {
        if len > self.r {
            return Err(Error::LengthExceedsRank {
                length: len,
                rank: self.r,
            });
        }
        Ok(())
    }
}

/// `tr_r^n`: with `w = v_k ... v_{n-1} w1`, `T_w` maps to
/// `T_{v_k} ... T_{v_{n-2}} T_{w1}` if `k < n` and to `-[-r]_q T_{w1}` if
/// `k = n`.
///
/// The image for `k < n` is the product in `H_{n-1}`, which need not be a
/// single basis element; this is what makes the map commute with the
/// representation on tensor powers.
pub fn conditional_trace<S: Scalar>(
    h: &Hecke<S>,
    a: &HeckeElement<S>,
    ctx: &RankContext,
) -> Result<HeckeElement<S>> {
    let n = a.degree();
    if n == 0 {
        return Err(Error::Invalid("conditional trace needs degree >= 1".into()));
    }
    h.check_degree(n)?;
    // Group the terms by k; each group is one element of H_{n-1}.
    let mut groups: BTreeMap<usize, Vec<(symmetric::Permutation, S)>> = BTreeMap::new();
    for (w, c) in a.terms() {
        let (k, w1) = coset_decompose(w);
        groups.entry(k).or_default().push((w1, c.clone()));
    }
    let mut out = HeckeElement::zero(n - 1);
    for (k, terms) in groups {
        let x = HeckeElement::from_terms(n - 1, terms)?;
        let image = if k == n {
            x.scale(&ctx.quantum_rank(h))
        } else {
            let word: Vec<usize> = (k..=n - 2).collect();
            h.mul_word_left(&word, &x)?
        };
        out = out.add(&image)?;
    }
    Ok(out)
}

/// `tr^1 o tr^2 o ... o tr^n (a)` as a scalar.
pub fn conditional_trace_chain<S: Scalar>(
    h: &Hecke<S>,
    a: &HeckeElement<S>,
    ctx: &RankContext,
) -> Result<S> {
    let mut x = a.clone();
    while x.degree() > 0 {
        x = conditional_trace(h, &x, ctx)?;
    }
    Ok(x.trace())
}

/// `tr_r(a) = tr^1 o ... o tr^n (T_{w_n}^{-2} a)`.
pub fn quantum_trace<S: Scalar>(h: &Hecke<S>, a: &HeckeElement<S>, ctx: &RankContext) -> Result<S> {
    let twist = inverse_square_longest(h, a.degree())?;
    conditional_trace_chain(h, &h.mul(&twist, a)?, ctx)
}

/// `rdim(M_lambda) = q^{n(r+1)/2} tr^1 o ... o tr^n (E_lambda)`.
pub fn rdim_combinatorial<S: CacheTag>(
    ids: &Idempotents<S>,
    shape: &Partition,
    ctx: &RankContext,
) -> Result<S> {
    let e = ids.primitive(&IdempotentKey::first(shape.clone()))?;
    let chain = conditional_trace_chain(ids.hecke(), &e, ctx)?;
    let n = shape.size() as i64;
    Ok(chain.times(&ids.hecke().field().v_pow(n * (ctx.r as i64 + 1))))
}

/// `8dim(M_lambda) = tr_r(E_lambda)`.
pub fn edim_combinatorial<S: CacheTag>(
    ids: &Idempotents<S>,
    shape: &Partition,
    ctx: &RankContext,
) -> Result<S> {
    let e = ids.primitive(&IdempotentKey::first(shape.clone()))?;
    quantum_trace(ids.hecke(), &e, ctx)
}

/// Exponent of `v` in the closed rdim formula.
fn rdim_v_exponent(parts: &[i64], r: usize) -> i64 {
    let size: i64 = parts.iter().sum();
    let weighted: i64 = parts
        .iter()
        .enumerate()
        .map(|(i, &l)| l * (r as i64 - i as i64))
        .sum();
    size * (r as i64 + 1) - 2 * weighted
}

/// Exponent of `v` in the closed 8dim formula.
fn edim_v_exponent(parts: &[i64], r: usize) -> i64 {
    let size: i64 = parts.iter().sum();
    let r = r as i64;
    let s: i64 = parts
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            let i = i as i64 + 1;
            l * (l + 2 * r - 4 * i + 2)
        })
        .sum();
    -(size * size + s)
}

fn padded(shape: &ZPartition, ctx: &RankContext) -> Result<ZPartition> {
    ctx.check_length(shape.rank())?;
    shape.padded(ctx.r)
}

/// `q^{|lambda|(r+1)/2 - sum lambda_i (r+1-i)} prod_{i<j} [lambda_i - lambda_j + j - i]/[j - i]`.
pub fn rdim_closed(shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
    let z = padded(shape, ctx)?;
    Ok(ScalarQ::v_power(rdim_v_exponent(z.parts(), ctx.r)).mul(&weyl_product(z.parts())))
}

/// `q^{-(|lambda|^2 + sum lambda_i (lambda_i + 2r - 4i + 2))/2} prod_{i<j} [...]/[j - i]`.
pub fn edim_closed(shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
    let z = padded(shape, ctx)?;
    Ok(ScalarQ::v_power(edim_v_exponent(z.parts(), ctx.r)).mul(&weyl_product(z.parts())))
}

/// `rdim(M_{(k)}) = q^{-k(r-1)/2} [k+r-1]! / ([r-1]! [k]!)`, zero for `k < 0`.
pub fn rdim_single_row(k: i64, ctx: &RankContext) -> ScalarQ {
    if k < 0 {
        return ScalarQ::zero();
    }
    let r = ctx.r as i64;
    let binom = q_factorial(k + r - 1)
        .div(&q_factorial(r - 1).mul(&q_factorial(k)))
        .expect("q-factorials are non-zero");
    ScalarQ::v_power(-k * (r - 1)).mul(&binom)
}

/// `det(rdim(M_{(lambda_i - i + j)}))_{i,j <= r}`; Z-partitions are first
/// shifted to partitions (rdim of the determinant line is 1).
pub fn rdim_determinantal(shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
    let z = padded(shape, ctx)?;
    let (lambda, _) = z.normalize();
    let r = ctx.r;
    let entry = |i: usize, j: usize| {
        rdim_single_row(lambda.part(i + 1) as i64 - i as i64 + j as i64, ctx)
    };
    let mut det = ScalarQ::zero();
    for sigma in symmetric::enumerate(r) {
        let mut term = if sigma.length() % 2 == 0 {
            ScalarQ::one()
        } else {
            ScalarQ::from_int(-1)
        };
        for i in 0..r {
            let e = entry(i, sigma.apply(i + 1) - 1);
            if e.is_zero() {
                term = ScalarQ::zero();
                break;
            }
            term = term.mul(&e);
        }
        det = det.add(&term);
    }
    Ok(det)
}

/// A value `v^{num/den} * value` with `0 <= num/den < 1`; the normalized
/// 8dim can carry a fractional power of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedDim {
    pub v_frac: (i64, i64),
    pub value: ScalarQ,
}

impl NormalizedDim {
    /// `x * v^{num/den}`.
    pub fn from_shift(x: &ScalarQ, num: i64, den: i64) -> Self {
        let (whole, rem) = num.div_mod_floor(&den);
        let g = rem.gcd(&den).max(1);
        let v_frac = if rem == 0 { (0, 1) } else { (rem / g, den / g) };
        NormalizedDim {
            v_frac,
            value: x.mul(&ScalarQ::v_power(whole)),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "v_shift": format!("{}/{}", self.v_frac.0, self.v_frac.1),
            "value": self.value.to_json(),
        })
    }
}

impl fmt::Display for NormalizedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v_frac.0 == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "v^({}/{}) * ({})", self.v_frac.0, self.v_frac.1, self.value)
        }
    }
}

/// `8dim` for the rescaled symmetry `q^{-(r+1)/(2r)} R`: the ordinary 8dim
/// times `q^{n^2 (r+1)/(2r)}`, `n = |lambda|`.
pub fn normalize_edim(edim: &ScalarQ, size: i64, ctx: &RankContext) -> NormalizedDim {
    let r = ctx.r as i64;
    NormalizedDim::from_shift(edim, size * size * (r + 1), r)
}

/// `8dim / rdim` as a power of `v` (both formulas share the Weyl product).
fn edim_over_rdim(z: &ZPartition, ctx: &RankContext) -> ScalarQ {
    ScalarQ::v_power(edim_v_exponent(z.parts(), ctx.r) - rdim_v_exponent(z.parts(), ctx.r))
}

/// Which dimension to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Rdim,
    Edim,
    Normalized,
}

impl Which {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rdim" => Ok(Which::Rdim),
            "edim" => Ok(Which::Edim),
            "normalized" => Ok(Which::Normalized),
            _ => Err(Error::Invalid(format!(
                "unknown dimension {s:?}; expected rdim, edim or normalized"
            ))),
        }
    }
}

/// Result of a dimension query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimValue {
    Plain(ScalarQ),
    Normalized(NormalizedDim),
}

impl DimValue {
    pub fn to_json(&self) -> Value {
        match self {
            DimValue::Plain(x) => x.to_json(),
            DimValue::Normalized(x) => x.to_json(),
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::Plain(x) => write!(f, "{x}"),
            DimValue::Normalized(x) => write!(f, "{x}"),
        }
    }
}

/// One way of computing the dimensions of simple comodules.
pub trait DimensionRoute: Send + Sync {
    fn name(&self) -> &'static str;
    fn rdim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ>;
    fn edim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ>;

    fn normalized(&self, shape: &ZPartition, ctx: &RankContext) -> Result<NormalizedDim> {
        let e = self.edim(shape, ctx)?;
        Ok(normalize_edim(&e, shape.size(), ctx))
    }

    fn evaluate(&self, which: Which, shape: &ZPartition, ctx: &RankContext) -> Result<DimValue> {
        Ok(match which {
            Which::Rdim => DimValue::Plain(self.rdim(shape, ctx)?),
            Which::Edim => DimValue::Plain(self.edim(shape, ctx)?),
            Which::Normalized => DimValue::Normalized(self.normalized(shape, ctx)?),
        })
    }
}

/// The product formulas.
pub struct ClosedRoute;

impl DimensionRoute for ClosedRoute {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn rdim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
        rdim_closed(shape, ctx)
    }
    fn edim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
        edim_closed(shape, ctx)
    }
}

/// Jacobi-Trudi style determinant of single-row dimensions; 8dim is obtained
/// from it with the closed twist factor.
pub struct DeterminantalRoute;

impl DimensionRoute for DeterminantalRoute {
    fn name(&self) -> &'static str {
        "det"
    }
    fn rdim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
        rdim_determinantal(shape, ctx)
    }
    fn edim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
        let z = padded(shape, ctx)?;
        Ok(rdim_determinantal(&z, ctx)?.mul(&edim_over_rdim(&z, ctx)))
    }
}

/// Traces of primitive idempotents in the Hecke algebra. Only partitions
/// (no negative parts) are accepted.
pub struct CombinatorialRoute {
    ids: Arc<Idempotents<ScalarQ>>,
}

impl CombinatorialRoute {
    pub fn new(ids: Arc<Idempotents<ScalarQ>>) -> Self {
        CombinatorialRoute { ids }
    }

    fn partition(shape: &ZPartition, ctx: &RankContext) -> Result<Partition> {
        padded(shape, ctx)?.as_partition().ok_or_else(|| {
            Error::Invalid(format!(
                "the combinatorial route needs a partition, got {shape}"
            ))
        })
    }
}

impl DimensionRoute for CombinatorialRoute {
    fn name(&self) -> &'static str {
        "combinatorial"
    }
    fn rdim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
        rdim_combinatorial(&self.ids, &Self::partition(shape, ctx)?, ctx)
    }
    fn edim(&self, shape: &ZPartition, ctx: &RankContext) -> Result<ScalarQ> {
        edim_combinatorial(&self.ids, &Self::partition(shape, ctx)?, ctx)
    }
}

/// Name-keyed collection of dimension routes.
pub struct RouteRegistry {
    routes: BTreeMap<&'static str, Box<dyn DimensionRoute>>,
}

impl RouteRegistry {
    pub fn empty() -> Self {
        RouteRegistry {
            routes: BTreeMap::new(),
        }
    }

    /// `closed`, `det` and `combinatorial`.
    pub fn with_defaults(ids: Arc<Idempotents<ScalarQ>>) -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(ClosedRoute));
        reg.register(Box::new(DeterminantalRoute));
        reg.register(Box::new(CombinatorialRoute::new(ids)));
        reg
    }

    pub fn register(&mut self, route: Box<dyn DimensionRoute>) {
        self.routes.insert(route.name(), route);
    }

    pub fn get(&self, name: &str) -> Result<&dyn DimensionRoute> {
        self.routes.get(name).map(|b| b.as_ref()).ok_or_else(|| {
            Error::Invalid(format!(
                "unknown route {name:?}; available: {}",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.keys().copied().collect()
    }
}

/// Both sides of
/// `sum_{w in S_n} q^{-l(w)} T_{w^{-1}} (x) tr_r^n(T_w)
///  = sum_{w in S_{n-1}} q^{-l(w)} (L_n - [-r]) T_{w^{-1}} (x) T_w`
/// as maps `(index in S_n, index in S_{n-1}) -> coefficient`.
pub type TensorHH<S> = BTreeMap<(usize, usize), S>;

pub fn technical_identity_sides<S: Scalar>(
    h: &Hecke<S>,
    n: usize,
    ctx: &RankContext,
) -> Result<(TensorHH<S>, TensorHH<S>)> {
    let t = h.check_degree(n)?;
    let t1 = symmetric::table(n - 1)?;
    let mut lhs: TensorHH<S> = BTreeMap::new();
    let add = |map: &mut TensorHH<S>, key: (usize, usize), c: S| {
        let slot = map.entry(key).or_insert_with(S::zero);
        slot.add_assign_ref(&c);
        if slot.is_zero() {
            map.remove(&key);
        }
    };
    for (idx, w) in t.perms.iter().enumerate() {
        let weight = h.field().q_pow(-(t.lengths[idx] as i64));
        let image = conditional_trace(h, &HeckeElement::basis(w), ctx)?;
        let left = t.inverse[idx] as usize;
        for (u, c) in image.terms() {
            add(&mut lhs, (left, u.lex_rank()), c.times(&weight));
        }
    }
    let mut rhs: TensorHH<S> = BTreeMap::new();
    let ln = h
        .murphy(n, n)?
        .sub(&HeckeElement::scalar(n, h.field().q_int(-(ctx.r as i64))))?;
    for (idx, w) in t1.perms.iter().enumerate() {
        let weight = h.field().q_pow(-(t1.lengths[idx] as i64));
        let left = h.mul(&ln, &HeckeElement::basis(&w.inverse().embed()))?;
        for (u, c) in left.terms() {
            add(&mut rhs, (u.lex_rank(), idx), c.times(&weight));
        }
    }
    Ok((lhs, rhs))
}
