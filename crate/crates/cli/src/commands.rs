use std::path::PathBuf;
use std::sync::Arc;

use num_rational::BigRational;
use serde_json::{json, Value};

use qhecke::hecke::{Hecke, HeckeElement};
use qhecke::idempotents::{CacheTag, IdempotentKey, Idempotents};
use qhecke::integral::{HrIntegral, IntegralQuery, ShrIntegral, MAX_HR_DEGREE};
use qhecke::rmatrix::{resolve_symmetry, verify_closure_identities, HeckeSymmetry};
use qhecke::scalar::{specialize, ScalarQ};
use qhecke::tableaux::{Partition, ZPartition};
use qhecke::trace::{conditional_trace, quantum_trace, RankContext, RouteRegistry, Which};
use qhecke::{Error, Result};

use crate::config::{Arithmetic, RunConfig};

fn exact_hecke(cfg: &RunConfig) -> Hecke<ScalarQ> {
    let h = Hecke::exact();
    match cfg.max_degree {
        Some(cap) => h.with_max_degree(cap),
        None => h,
    }
}

fn numeric_hecke(cfg: &RunConfig, v0: &BigRational) -> Result<Hecke<BigRational>> {
    let h = Hecke::numeric(v0.clone())?;
    Ok(match cfg.max_degree {
        Some(cap) => h.with_max_degree(cap),
        None => h,
    })
}

fn idempotents<S: CacheTag>(cfg: &RunConfig, h: Hecke<S>) -> Idempotents<S> {
    match &cfg.cache_dir {
        Some(dir) => Idempotents::new(h).with_disk_cache(dir.clone()),
        None => Idempotents::new(h),
    }
}

fn arithmetic_json(cfg: &RunConfig) -> Value {
    match &cfg.arithmetic {
        Arithmetic::Exact => json!("exact"),
        Arithmetic::Numeric(v0) => json!({"numeric": v0.to_string()}),
    }
}

/// Which element of `H_n` a command acts on.
pub enum ElementSource {
    Primitive { shape: Partition, index: usize },
    Central(Partition),
    File(PathBuf),
}

impl ElementSource {
    fn describe(&self) -> Value {
        match self {
            ElementSource::Primitive { shape, index } => json!({"primitive": shape.to_string(), "index": index}),
            ElementSource::Central(shape) => json!({"central": shape.to_string()}),
            ElementSource::File(p) => json!({"file": p.display().to_string()}),
        }
    }

    fn build<S: CacheTag>(&self, ids: &Idempotents<S>) -> Result<HeckeElement<S>> {
        match self {
            ElementSource::Primitive { shape, index } => {
                Ok((*ids.primitive(&IdempotentKey::new(shape.clone(), *index))?).clone())
            }
            ElementSource::Central(shape) => Ok((*ids.central(shape)?).clone()),
            ElementSource::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                let value: Value =
                    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                let x = HeckeElement::from_json(&value)?;
                ids.hecke().check_degree(x.degree())?;
                Ok(x)
            }
        }
    }
}

fn element_json<S: CacheTag>(cfg: &RunConfig, source: &ElementSource, ids: &Idempotents<S>) -> Result<Value> {
    let x = source.build(ids)?;
    Ok(json!({
        "arithmetic": arithmetic_json(cfg),
        "source": source.describe(),
        "element": x.to_json(),
        "trace": x.trace().to_string(),
        "terms": x.len(),
    }))
}

pub fn element(cfg: &RunConfig, source: &ElementSource) -> Result<Value> {
    match &cfg.arithmetic {
        Arithmetic::Exact => element_json(cfg, source, &idempotents(cfg, exact_hecke(cfg))),
        Arithmetic::Numeric(v0) => element_json(cfg, source, &idempotents(cfg, numeric_hecke(cfg, v0)?)),
    }
}

fn trace_json<S: CacheTag>(
    cfg: &RunConfig,
    source: &ElementSource,
    ids: &Idempotents<S>,
    ctx: &RankContext,
    steps: Option<usize>,
) -> Result<Value> {
    let h = ids.hecke();
    let x = source.build(ids)?;
    let n = x.degree();
    let mut out = json!({
        "arithmetic": arithmetic_json(cfg),
        "source": source.describe(),
        "rank": ctx.r(),
    });
    match steps {
        None => {
            out["quantum_trace"] = json!(quantum_trace(h, &x, ctx)?.to_string());
        }
        Some(k) if k > n => {
            return Err(Error::Invalid(format!("cannot take {k} conditional traces of an element of H_{n}")));
        }
        Some(k) => {
            let mut y = x;
            for _ in 0..k {
                y = conditional_trace(h, &y, ctx)?;
            }
            out["steps"] = json!(k);
            if y.degree() == 0 {
                out["value"] = json!(y.trace().to_string());
            } else {
                out["element"] = y.to_json();
            }
        }
    }
    Ok(out)
}

pub fn trace(cfg: &RunConfig, source: &ElementSource, rank: usize, steps: Option<usize>) -> Result<Value> {
    let ctx = RankContext::new(rank)?;
    match &cfg.arithmetic {
        Arithmetic::Exact => trace_json(cfg, source, &idempotents(cfg, exact_hecke(cfg)), &ctx, steps),
        Arithmetic::Numeric(v0) => {
            trace_json(cfg, source, &idempotents(cfg, numeric_hecke(cfg, v0)?), &ctx, steps)
        }
    }
}

fn numeric_value(cfg: &RunConfig, x: &ScalarQ) -> Result<Option<String>> {
    match &cfg.arithmetic {
        Arithmetic::Exact => Ok(None),
        Arithmetic::Numeric(v0) => Ok(Some(specialize(x, v0)?.to_string())),
    }
}

pub fn qdim(cfg: &RunConfig, shape: &str, rank: usize, which: &str, route: &str) -> Result<Value> {
    let ctx = RankContext::new(rank)?;
    let which_v = Which::parse(which)?;
    let shape = ZPartition::parse_with_rank(shape, rank)?;
    let ids = Arc::new(idempotents(cfg, exact_hecke(cfg)));
    let registry = RouteRegistry::with_defaults(ids);
    let value = registry.get(route)?.evaluate(which_v, &shape, &ctx)?;
    let mut out = json!({
        "shape": shape.to_string(),
        "rank": rank,
        "which": which,
        "route": route,
        "value": value.to_string(),
        "scalar": value.to_json(),
    });
    let plain = match &value {
        qhecke::trace::DimValue::Plain(x) => x.clone(),
        qhecke::trace::DimValue::Normalized(x) => x.value.clone(),
    };
    if let Some(num) = numeric_value(cfg, &plain)? {
        out["numeric"] = json!(num);
    }
    Ok(out)
}

pub fn fuse(a: &str, b: &str, rank: usize) -> Result<Value> {
    let ctx = RankContext::new(rank)?;
    let a = ZPartition::parse_with_rank(a, rank)?;
    let b = ZPartition::parse_with_rank(b, rank)?;
    let expansion = qhecke::fusion::fuse(&a, &b, &ctx)?;
    Ok(json!({
        "a": a.to_string(),
        "b": b.to_string(),
        "rank": rank,
        "expansion": expansion.to_string(),
        "terms": expansion.to_json()["terms"].clone(),
    }))
}

/// A symmetry that fails certification is reported by the loader as a
/// domain error carrying the offending residual entries.
pub fn certify(symmetry: &str) -> Result<Value> {
    let s = resolve_symmetry(symmetry)?;
    let report = verify_closure_identities(&s)?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "identity": c.name,
                "holds": c.holds(),
                "residual": if c.holds() { "0".to_string() } else { format!("{} nonzero entries", c.residual_entries) },
            })
        })
        .collect();
    Ok(json!({
        "symmetry": s.name(),
        "d": s.dim(),
        "yang_baxter": {"residual": "0"},
        "hecke": {"residual": "0"},
        "closed": true,
        "quantum_rank": s.quantum_rank().to_string(),
        "rank": report.rank,
        "identities": checks,
        "certified": report.all_hold(),
    }))
}

pub fn rank(symmetry: &str, cutoff: usize) -> Result<Value> {
    let s = resolve_symmetry(symmetry)?;
    let result = s.rank_of(cutoff)?;
    let mut out = result.to_json();
    out["symmetry"] = json!(s.name());
    out["cutoff"] = json!(cutoff);
    Ok(out)
}

fn check_entries(cfg: &RunConfig, s: &HeckeSymmetry, n: usize) -> Result<()> {
    let side = (s.dim() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    let entries = side.saturating_mul(side);
    if entries > cfg.max_entries as u128 {
        return Err(Error::CapExceeded {
            what: "tensor entries",
            value: usize::try_from(entries).unwrap_or(usize::MAX),
            cap: cfg.max_entries,
        });
    }
    Ok(())
}

pub enum IntegralRequest {
    Query(String),
    Table(usize),
}

pub fn integral(cfg: &RunConfig, group: &str, symmetry: &str, req: &IntegralRequest) -> Result<Value> {
    let s = resolve_symmetry(symmetry)?;
    let h = exact_hecke(cfg);
    let d = s.dim();
    match group {
        "hr" => match req {
            IntegralRequest::Query(text) => {
                let q = IntegralQuery::parse(text, d)?;
                let value = if q.z_degree() != 0 {
                    s.even_rank()?;
                    ScalarQ::zero()
                } else {
                    check_entries(cfg, &s, 2 * q.i.len())?;
                    HrIntegral::new(&s, &h, q.i.len())?.value(&q.i, &q.j, &q.k, &q.l)?
                };
                Ok(json!({
                    "group": "hr",
                    "symmetry": s.name(),
                    "I": q.i.entries(), "J": q.j.entries(), "K": q.k.entries(), "L": q.l.entries(),
                    "value": value.to_string(),
                }))
            }
            IntegralRequest::Table(n) => {
                if *n > MAX_HR_DEGREE {
                    return Err(Error::CapExceeded { what: "integral degree", value: *n, cap: MAX_HR_DEGREE });
                }
                check_entries(cfg, &s, 2 * n)?;
                let mut out = HrIntegral::new(&s, &h, *n)?.table().to_json();
                out["symmetry"] = json!(s.name());
                Ok(out)
            }
        },
        "shr" => {
            let ids = idempotents(cfg, h);
            let shr = ShrIntegral::new(&s, &ids)?;
            match req {
                IntegralRequest::Query(text) => {
                    let q = IntegralQuery::parse(text, d)?;
                    if !q.k.is_empty() {
                        return Err(Error::Invalid("the SH_R integral takes only I and J".into()));
                    }
                    check_entries(cfg, &s, q.i.len())?;
                    let value = shr.value(&q.i, &q.j)?;
                    Ok(json!({
                        "group": "shr",
                        "symmetry": s.name(),
                        "I": q.i.entries(), "J": q.j.entries(),
                        "value": value.to_string(),
                    }))
                }
                IntegralRequest::Table(n) => {
                    check_entries(cfg, &s, *n)?;
                    let mut out = shr.table(*n)?.to_json();
                    out["symmetry"] = json!(s.name());
                    Ok(out)
                }
            }
        }
        other => Err(Error::Invalid(format!("unknown group {other:?}; expected hr or shr"))),
    }
}

/// Cross-route checks small enough to run in a few seconds.
pub fn selftest(cfg: &RunConfig) -> Result<(Value, bool)> {
    let h = exact_hecke(cfg);
    let ids = Arc::new(idempotents(cfg, h.clone()));
    let registry = RouteRegistry::with_defaults(ids.clone());
    let mut checks = Vec::new();
    let mut record = |name: String, ok: bool| checks.push(json!({"check": name, "pass": ok}));

    for r in 1..=3 {
        let ctx = RankContext::new(r)?;
        for n in 1..=4 {
            for shape in Partition::all_of_size(n) {
                if shape.length() > r {
                    continue;
                }
                let z = shape.to_zpartition(r)?;
                let values: Vec<ScalarQ> = ["closed", "combinatorial", "det"]
                    .iter()
                    .map(|name| registry.get(name)?.rdim(&z, &ctx))
                    .collect::<Result<_>>()?;
                let edims: Vec<ScalarQ> = ["closed", "combinatorial", "det"]
                    .iter()
                    .map(|name| registry.get(name)?.edim(&z, &ctx))
                    .collect::<Result<_>>()?;
                let ok = values.windows(2).all(|w| w[0] == w[1]) && edims.windows(2).all(|w| w[0] == w[1]);
                record(format!("dimension routes agree for {shape}, r={r}"), ok);
            }
        }
    }

    for n in 1..=4 {
        let mut sum = HeckeElement::zero(n);
        for shape in Partition::all_of_size(n) {
            sum = sum.add(&*ids.central(&shape)?)?;
        }
        record(format!("central idempotents sum to 1 in H_{n}"), sum == HeckeElement::identity(n));
    }

    for symmetry in ["builtin:dj2", "builtin:dj3", "builtin:super1_1"] {
        let s = resolve_symmetry(symmetry)?;
        record(format!("closure identities for {symmetry}"), verify_closure_identities(&s)?.all_hold());
    }

    let s = resolve_symmetry("builtin:dj2")?;
    let ctx = RankContext::new(2)?;
    for n in 1..=3 {
        let mut ok = true;
        for w in qhecke::symmetric::enumerate(n) {
            let t = HeckeElement::basis(&w);
            ok &= s.rho(&conditional_trace(&h, &t, &ctx)?)? == s.etr(&s.rho(&t)?)?;
        }
        record(format!("conditional trace matches categorical trace on V^{n} (dj2)"), ok);
    }

    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    let total = checks.len();
    Ok((json!({"checks": checks, "total": total, "pass": pass}), pass))
}
