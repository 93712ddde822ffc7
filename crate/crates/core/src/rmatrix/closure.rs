//! Identities a closed Hecke symmetry must satisfy, each checked exactly.

use serde_json::{json, Value};

use crate::error::Result;
use crate::scalar::{q_integer, ScalarQ};

use super::tensor::{LocalOp, TensorOperator};
use super::{pair, HeckeSymmetry};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Number of non-zero entries of the residual.
    pub residual_entries: usize,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.residual_entries == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub rank: Option<usize>,
    pub checks: Vec<IdentityCheck>,
}

impl ClosureReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(IdentityCheck::holds)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "holds": c.holds(), "residual_entries": c.residual_entries}))
            .collect();
        json!({"rank": self.rank, "all_hold": self.all_hold(), "checks": checks})
    }
}

fn check(name: &'static str, residual: &TensorOperator) -> IdentityCheck {
    IdentityCheck {
        name,
        residual_entries: residual.nonzero().count(),
    }
}

/// `sum_{k,l} W^{il}_{jk} Z^{km}_{ln} - delta^i_n delta^m_j`, returned as an
/// operator with `out = (i,m)`, `in = (j,n)`.
fn defining_residual(w: &TensorOperator, z: &TensorOperator) -> Result<TensorOperator> {
    let d = w.local_dim();
    TensorOperator::from_fn(2, d, |o, inp| {
        let (i, m) = (o / d, o % d);
        let (j, n) = (inp / d, inp % d);
        let mut acc = ScalarQ::zero();
        for k in 0..d {
            for l in 0..d {
                let a = w.get(pair(i, l, d), pair(j, k, d));
                if a.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(z.get(pair(k, m, d), pair(l, n, d))));
            }
        }
        if i == n && m == j {
            acc = acc.sub(&ScalarQ::one());
        }
        acc
    })
}

/// Every identity below; the ones that need an even rank are skipped for
/// symmetries that are not even within the default cutoff.
pub fn verify_closure_identities(s: &HeckeSymmetry) -> Result<ClosureReport> {
    let d = s.dim();
    let id1 = TensorOperator::identity(1, d)?;
    let id2 = TensorOperator::identity(2, d)?;
    let q = ScalarQ::q();
    let qinv = ScalarQ::q_power(-1);
    let mut checks = Vec::new();

    // R^{-1} = q^{-1} R - (1 - q^{-1})
    let skein = s
        .r_inv()
        .sub(&s.r().scale(&qinv))?
        .add(&id2.scale(&ScalarQ::one().sub(&qinv)))?;
    checks.push(check("hecke_skein", &skein));

    checks.push(check("p_defining", &defining_residual(s.r(), s.p())?));
    checks.push(check("q_defining", &defining_residual(s.r_inv(), s.q_witness())?));

    // 8tr^2 R = 1
    checks.push(check("curl_positive", &s.etr(s.r())?.sub(&id1)?));

    // (C^{-1})^j_i = Q^{lj}_{li}, (B^{-1})^j_i = Q^{jl}_{il}
    let qw = s.q_witness();
    let c_inv = TensorOperator::from_fn(1, d, |j, i| {
        let mut acc = ScalarQ::zero();
        for l in 0..d {
            acc = acc.add(qw.get(pair(l, j, d), pair(l, i, d)));
        }
        acc
    })?;
    let b_inv = TensorOperator::from_fn(1, d, |j, i| {
        let mut acc = ScalarQ::zero();
        for l in 0..d {
            acc = acc.add(qw.get(pair(j, l, d), pair(i, l, d)));
        }
        acc
    })?;
    checks.push(check("c_inverse", &s.c().then(&c_inv)?.sub(&id1)?));
    checks.push(check("b_inverse", &s.b().then(&b_inv)?.sub(&id1)?));

    // A V* strand passes a crossing R of two V strands.
    let t = LocalOp::new(&s.crossing_v_vdual()?)?;
    let id3 = TensorOperator::identity(3, d)?;
    let lhs = id3
        .then_local(s.local_r(), 1)?
        .then_local(&t, 2)?
        .then_local(&t, 1)?;
    let rhs = id3
        .then_local(&t, 2)?
        .then_local(&t, 1)?
        .then_local(s.local_r(), 2)?;
    checks.push(check("braiding_naturality", &lhs.sub(&rhs)?));

    // X Y = 1 forces Y X = 1: P^{il}_{jk} R^{km}_{ln} = delta^i_n delta^m_j.
    checks.push(check("p_reversed", &defining_residual(s.p(), s.r())?));

    // The crossing V* (x) V -> V (x) V* is natural as well.
    let u = LocalOp::new(&s.crossing_vdual_v()?)?;
    let lhs = id3.then_local(&u, 1)?.then_local(&u, 2)?.then_local(s.local_r(), 1)?;
    let rhs = id3.then_local(s.local_r(), 2)?.then_local(&u, 1)?.then_local(&u, 2)?;
    checks.push(check("dual_braiding_naturality", &lhs.sub(&rhs)?));

    let rank = s.rank()?.rank();
    if let Some(r) = rank {
        let twist = ScalarQ::q_power(-(r as i64 + 1));
        checks.push(check("curl_negative", &s.etr(s.r_inv())?.sub(&id1.scale(&twist))?));
        checks.push(check("bc_scalar", &s.b().then(s.c())?.sub(&id1.scale(&twist))?));
        let want = q_integer(-(r as i64)).neg();
        let residual = TensorOperator::scalar(0, d, s.quantum_rank().sub(&want))?;
        checks.push(check("quantum_rank", &residual));

        // (Y_r (x) 1) R_r ... R_1 R_1 ... R_r = q^{r+1} (Y_r (x) 1)
        let y = s.antisymmetrizer(r)?.kron(&id1)?;
        let mut m = y.clone();
        for i in (1..=r).rev() {
            m = m.then_local(s.local_r(), i)?;
        }
        for i in 1..=r {
            m = m.then_local(s.local_r(), i)?;
        }
        let qr = (0..=r).fold(ScalarQ::one(), |acc, _| acc.mul(&q));
        checks.push(check("theta_v", &m.sub(&y.scale(&qr))?));
    }
    Ok(ClosureReport { rank, checks })
}
