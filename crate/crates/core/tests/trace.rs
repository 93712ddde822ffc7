use std::sync::Arc;

use proptest::prelude::*;

use qhecke::hecke::{Hecke, HeckeElement};
use qhecke::idempotents::Idempotents;
use qhecke::symmetric::{enumerate, Permutation};
use qhecke::tableaux::{Partition, ZPartition};
use qhecke::trace::{
    conditional_trace, edim_closed, quantum_trace, rdim_closed, rdim_determinantal, ClosedRoute,
    DimensionRoute, RankContext, RouteRegistry,
};
use qhecke::{q_integer, ScalarQ};

fn shapes_with_rank(max: usize, r: usize) -> Vec<ZPartition> {
    (1..=max)
        .flat_map(Partition::all_of_size)
        .filter(|p| p.length() <= r)
        .map(|p| p.to_zpartition(r).unwrap())
        .collect()
}

#[test]
fn determinant_shift_preserves_rdim_and_normalized_edim() {
    for r in 1..=3 {
        let ctx = RankContext::new(r).unwrap();
        for z in shapes_with_rank(4, r) {
            for k in [-2i64, -1, 1, 2] {
                let shifted = z.shift(k);
                assert_eq!(rdim_closed(&shifted, &ctx).unwrap(), rdim_closed(&z, &ctx).unwrap(), "{z} + {k}");
                assert_eq!(rdim_determinantal(&shifted, &ctx).unwrap(), rdim_closed(&z, &ctx).unwrap());
                assert_eq!(
                    ClosedRoute.normalized(&shifted, &ctx).unwrap(),
                    ClosedRoute.normalized(&z, &ctx).unwrap(),
                    "{z} + {k}"
                );
            }
        }
    }
}

#[test]
fn small_dimensions() {
    for r in 1..=4usize {
        let ctx = RankContext::new(r).unwrap();
        let vector = ZPartition::parse_with_rank("[1]", r).unwrap();
        // 8dim V = tr C = -[-r]
        assert_eq!(edim_closed(&vector, &ctx).unwrap(), q_integer(-(r as i64)).neg());
        let det = ZPartition::new(&vec![1; r]).unwrap();
        assert_eq!(rdim_closed(&det, &ctx).unwrap(), ScalarQ::one());
        let dual = ZPartition::parse_with_rank("[1]", r).unwrap().dual();
        assert_eq!(rdim_closed(&dual, &ctx).unwrap(), rdim_closed(&vector, &ctx).unwrap());
    }
}

#[test]
fn registry_lists_routes_and_rejects_unknown() {
    let ids = Arc::new(Idempotents::new(Hecke::exact()));
    let reg = RouteRegistry::with_defaults(ids);
    assert_eq!(reg.names(), vec!["closed", "combinatorial", "det"]);
    assert!(reg.get("spectral").is_err());
    let ctx = RankContext::new(2).unwrap();
    let neg = ZPartition::parse("[0,-1]").unwrap();
    assert!(reg.get("combinatorial").unwrap().rdim(&neg, &ctx).is_err());
    assert_eq!(
        reg.get("det").unwrap().edim(&neg, &ctx).unwrap(),
        reg.get("closed").unwrap().edim(&neg, &ctx).unwrap()
    );
}

#[test]
fn conditional_trace_of_basis_elements() {
    // tr^n T_w for w fixing n is [-r]-scaled; the identity of H_1 traces to tr C.
    let h = Hecke::<ScalarQ>::exact();
    let ctx = RankContext::new(2).unwrap();
    let qr = q_integer(-2).neg();
    let one = HeckeElement::<ScalarQ>::identity(1);
    assert_eq!(conditional_trace(&h, &one, &ctx).unwrap().trace(), qr);
    let t1 = HeckeElement::<ScalarQ>::generator(2, 1).unwrap();
    assert_eq!(conditional_trace(&h, &t1, &ctx).unwrap(), HeckeElement::identity(1));
}

fn element(n: usize) -> impl Strategy<Value = HeckeElement<ScalarQ>> {
    let perms = enumerate(n);
    let count = perms.len();
    prop::collection::vec((0..count, -2i64..=2, -1i64..=1), 1..=3).prop_map(move |terms| {
        let terms: Vec<(Permutation, ScalarQ)> = terms
            .into_iter()
            .map(|(w, c, e)| (perms[w].clone(), ScalarQ::q_laurent(e, &[c])))
            .collect();
        HeckeElement::from_terms(n, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quantum_trace_is_cyclic(
        (a, b) in (2usize..=4).prop_flat_map(|n| (element(n), element(n))),
        r in 1usize..=3,
    ) {
        let h = Hecke::<ScalarQ>::exact();
        let ctx = RankContext::new(r).unwrap();
        let ab = quantum_trace(&h, &h.mul(&a, &b).unwrap(), &ctx).unwrap();
        let ba = quantum_trace(&h, &h.mul(&b, &a).unwrap(), &ctx).unwrap();
        prop_assert_eq!(ab, ba);
    }
}
