//! Fusion rules in the truncated representation ring: tensor products of
//! simple comodules and duals, indexed by Z-partitions of length `r`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::Result;
use crate::tableaux::{lr_coefficient, Partition, ZPartition};
use crate::trace::RankContext;

/// `sum_gamma c_gamma [M_gamma]`, every key of length `rank`.
#[derive(Clone, PartialEq, Eq)]
pub struct FusionExpansion {
    terms: BTreeMap<ZPartition, u64>,
    rank: usize,
}

impl FusionExpansion {
    pub fn zero(rank: usize) -> Self {
        FusionExpansion {
            terms: BTreeMap::new(),
            rank,
        }
    }

    pub fn single(lambda: &ZPartition, ctx: &RankContext) -> Result<Self> {
        let mut e = Self::zero(ctx.r());
        e.terms.insert(lambda.padded(ctx.r())?, 1);
        Ok(e)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<ZPartition, u64> {
        &self.terms
    }

    pub fn multiplicity(&self, gamma: &ZPartition) -> u64 {
        gamma
            .padded(self.rank)
            .ok()
            .and_then(|g| self.terms.get(&g).copied())
            .unwrap_or(0)
    }

    /// Total number of simple summands counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    fn add_term(&mut self, gamma: ZPartition, c: u64) {
        if c > 0 {
            *self.terms.entry(gamma).or_insert(0) += c;
        }
    }

    /// Extend `fuse` bilinearly.
    pub fn fuse_with(&self, other: &FusionExpansion, ctx: &RankContext) -> Result<Self> {
        let mut out = Self::zero(ctx.r());
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                for (g, c) in fuse(a, b, ctx)?.terms {
                    out.add_term(g, c * ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(g, c)| json!({"shape": g.parts(), "multiplicity": c}))
            .collect();
        json!({"rank": self.rank, "terms": terms})
    }
}

impl fmt::Display for FusionExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, c)| if *c == 1 { format!("{g}") } else { format!("{c}*{g}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FusionExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `[M_lambda][M_mu]`: shift both to partitions, expand by the LR rule,
/// drop everything longer than `r`, shift back.
pub fn fuse(lambda: &ZPartition, mu: &ZPartition, ctx: &RankContext) -> Result<FusionExpansion> {
    let r = ctx.r();
    let (a, s) = lambda.padded(r)?.normalize();
    let (b, t) = mu.padded(r)?.normalize();
    let mut out = FusionExpansion::zero(r);
    for gamma in lr_candidates(&a, &b, r) {
        let c = lr_coefficient(&a, &b, &gamma)?;
        if c > 0 {
            out.add_term(gamma.to_zpartition(r)?.shift(s + t), c);
        }
    }
    Ok(out)
}

/// Same as [`fuse`] but shifting the inputs by extra multiples of `(1^r)`
/// first. The answer must not depend on `extra`.
pub fn fuse_shifted(
    lambda: &ZPartition,
    mu: &ZPartition,
    extra: (i64, i64),
    ctx: &RankContext,
) -> Result<FusionExpansion> {
    let r = ctx.r();
    let a = lambda.padded(r)?.shift(extra.0);
    let b = mu.padded(r)?.shift(extra.1);
    let mut out = FusionExpansion::zero(r);
    for (g, c) in fuse(&a, &b, ctx)?.terms {
        out.add_term(g.shift(-extra.0 - extra.1), c);
    }
    Ok(out)
}

pub fn dual(lambda: &ZPartition) -> ZPartition {
    lambda.dual()
}

/// Partitions gamma of |a|+|b| with at most `r` rows, containing `a` and
/// bounded by `a + b` row-wise in the first row.
fn lr_candidates(a: &Partition, b: &Partition, r: usize) -> Vec<Partition> {
    let n = a.size() + b.size();
    let max_len = r.min(a.length() + b.length());
    let first = a.part(1) + b.part(1);
    let mut out = Vec::new();
    let mut cur = Vec::new();
    candidates_rec(a, n, first, max_len, &mut cur, &mut out);
    out
}

fn candidates_rec(
    a: &Partition,
    rest: usize,
    max: usize,
    max_len: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    let row = cur.len() + 1;
    if rest == 0 {
        if row > a.length() {
            out.push(Partition::new(cur).expect("non-increasing by construction"));
        }
        return;
    }
    if row > max_len {
        return;
    }
    let lo = a.part(row).max(1);
    for p in (lo..=rest.min(max)).rev() {
        cur.push(p);
        candidates_rec(a, rest - p, p, max_len, cur, out);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::rdim_closed;

    fn z(s: &str, r: usize) -> ZPartition {
        ZPartition::parse_with_rank(s, r).unwrap()
    }

    fn ctx(r: usize) -> RankContext {
        RankContext::new(r).unwrap()
    }

    #[test]
    fn box_times_box() {
        let e = fuse(&z("[1]", 2), &z("[1]", 2), &ctx(2)).unwrap();
        assert_eq!(e.multiplicity(&z("[2]", 2)), 1);
        assert_eq!(e.multiplicity(&z("[1,1]", 2)), 1);
        assert_eq!(e.total(), 2);

        let e = fuse(&z("[1]", 1), &z("[1]", 1), &ctx(1)).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.multiplicity(&z("[2]", 1)), 1);
    }

    #[test]
    fn two_one_squared_rank_two() {
        let e = fuse(&z("[2,1]", 2), &z("[2,1]", 2), &ctx(2)).unwrap();
        // Full LR: 42 + 411 + 33 + 2*321 + 3111 + 222 + 2211. Keep l <= 2.
        let mut want = BTreeMap::new();
        want.insert(z("[4,2]", 2), 1);
        want.insert(z("[3,3]", 2), 1);
        assert_eq!(e.terms(), &want);
        let e3 = fuse(&z("[2,1]", 3), &z("[2,1]", 3), &ctx(3)).unwrap();
        assert_eq!(e3.multiplicity(&z("[3,2,1]", 3)), 2);
        assert_eq!(e3.total(), 6);
    }

    #[test]
    fn duals() {
        assert_eq!(dual(&z("[0,0,0]", 3)), z("[0,0,0]", 3));
        assert_eq!(dual(&z("[1,0]", 2)).parts(), &[0, -1]);
        assert_eq!(dual(&z("[2,1,0]", 3)).parts(), &[0, -1, -2]);
    }

    #[test]
    fn dual_pairing_contains_trivial_once() {
        for r in 1..=3 {
            for n in 0..=4 {
                for p in Partition::all_of_size(n) {
                    if p.length() > r {
                        continue;
                    }
                    let l = p.to_zpartition(r).unwrap();
                    let e = fuse(&l, &dual(&l), &ctx(r)).unwrap();
                    assert_eq!(e.multiplicity(&ZPartition::new(&vec![0; r]).unwrap()), 1, "{l}");
                }
            }
        }
    }

    #[test]
    fn determinant_shifts() {
        let r = 3;
        let det = z("[1,1,1]", r);
        for p in Partition::all_of_size(3) {
            let l = p.to_zpartition(r).unwrap();
            let e = fuse(&l, &det, &ctx(r)).unwrap();
            assert_eq!(e.terms().len(), 1);
            assert_eq!(e.multiplicity(&l.shift(1)), 1);
        }
    }

    #[test]
    fn shift_independent() {
        let r = 2;
        let a = z("[1,-1]", r);
        let b = z("[2,0]", r);
        let base = fuse(&a, &b, &ctx(r)).unwrap();
        for extra in [(0, 0), (3, 1), (-2, 5)] {
            assert_eq!(fuse_shifted(&a, &b, extra, &ctx(r)).unwrap(), base);
        }
    }

    #[test]
    fn rdim_is_multiplicative() {
        for r in 1..=3 {
            let c = ctx(r);
            let shapes: Vec<ZPartition> = (0..=3)
                .flat_map(Partition::all_of_size)
                .filter(|p| p.length() <= r)
                .map(|p| p.to_zpartition(r).unwrap())
                .collect();
            for a in &shapes {
                for b in &shapes {
                    let lhs = rdim_closed(a, &c).unwrap().mul(&rdim_closed(b, &c).unwrap());
                    let mut rhs = crate::ScalarQ::zero();
                    for (g, m) in fuse(a, b, &c).unwrap().terms() {
                        let d = rdim_closed(g, &c).unwrap();
                        rhs = rhs.add(&d.mul(&crate::ScalarQ::from_int(*m as i64)));
                    }
                    assert_eq!(lhs, rhs, "{a} x {b}, r={r}");
                }
            }
        }
    }
}
