use qhecke::hecke::Hecke;
use qhecke::idempotents::Idempotents;
use qhecke::integral::{
    closing_consistency, hr_integral, rectangle_trace, verify_shr, HrIntegral, IntegralQuery,
    ShrIntegral,
};
use qhecke::rmatrix::{HeckeSymmetry, MultiIndex};
use qhecke::ScalarQ;

fn dj(d: usize) -> HeckeSymmetry {
    HeckeSymmetry::drinfeld_jimbo(d).unwrap()
}

fn idx(s: &str, d: usize) -> MultiIndex {
    MultiIndex::parse(s, d).unwrap()
}

#[test]
fn integral_of_one_is_one() {
    let s = dj(2);
    let ids = Idempotents::new(Hecke::exact());
    let shr = ShrIntegral::new(&s, &ids).unwrap();
    let empty = MultiIndex::decode(0, 0, 2);
    assert_eq!(shr.value(&empty, &empty).unwrap(), ScalarQ::one());
    let q = IntegralQuery::parse("", 2).unwrap();
    assert_eq!(hr_integral(&s, ids.hecke(), &q).unwrap(), ScalarQ::one());
}

#[test]
fn phi_is_a_central_projection_and_routes_agree() {
    for (d, ks) in [(2usize, vec![1usize, 2]), (3, vec![1])] {
        let s = dj(d);
        let ids = Idempotents::new(Hecke::exact());
        let shr = ShrIntegral::new(&s, &ids).unwrap();
        for k in ks {
            let n = k * d;
            let phi = shr.phi(k).unwrap();
            assert_eq!(phi.then(&phi).unwrap(), *phi, "d={d}, k={k}");
            for i in 1..n {
                let r = s.r_at(n, i).unwrap();
                assert_eq!(phi.then(&r).unwrap(), r.then(&phi).unwrap(), "d={d}, k={k}, R_{i}");
            }
            assert_eq!(shr.phi_averaged(k).unwrap(), *phi, "d={d}, k={k}");
            // rank = number of standard tableaux of the rectangle, times one copy
            let expected = if (d, k) == (2, 2) { 2 } else { 1 };
            assert_eq!(phi.rank(), expected);
            assert!(verify_shr(&s, &ids, n).unwrap().all_hold());
        }
        // lengths off the grading integrate to zero
        let i = MultiIndex::decode(0, d + 1, d);
        assert!(shr.value(&i, &i).unwrap().is_zero());
        assert!(shr.table(d + 1).unwrap().values.is_empty());
    }
}

#[test]
fn rectangle_trace_at_small_shapes() {
    // one column of height r: q^{r(r-1)/2} / [r]!, with [2] = 1 + q
    assert_eq!(rectangle_trace(1, 1), ScalarQ::one());
    let q = ScalarQ::q_power(1);
    assert_eq!(rectangle_trace(1, 2), q.div(&ScalarQ::one().add(&q)).unwrap());
    // one row: [0]! / [1]! ... collapses to 1 / [k]!
    let two = ScalarQ::one().add(&q);
    assert_eq!(rectangle_trace(2, 1), ScalarQ::one().div(&two).unwrap());
}

#[test]
fn closing_the_determinant_reproduces_phi() {
    let s = dj(2);
    let ids = Idempotents::new(Hecke::exact());
    let shr = ShrIntegral::new(&s, &ids).unwrap();
    assert_eq!(closing_consistency(&s, ids.hecke()).unwrap(), *shr.phi(1).unwrap());
}

#[test]
fn antipode_contraction_in_degree_two() {
    // sum_m z_m^j t_k^m = delta^j_k nests to sum_M Z_M^J T_K^{rev M} = delta(J, rev K).
    let d = 2;
    let s = dj(d);
    let h = Hecke::exact();
    let hr = HrIntegral::new(&s, &h, 2).unwrap();
    let all: Vec<MultiIndex> = (0..d * d).map(|c| MultiIndex::decode(c, 2, d)).collect();
    for j in &all {
        for k in &all {
            let mut acc = ScalarQ::zero();
            for m in &all {
                acc = acc.add(&hr.value(m, j, k, &m.reversed()).unwrap());
            }
            let expected = if *j == k.reversed() { ScalarQ::one() } else { ScalarQ::zero() };
            assert_eq!(acc, expected, "J={j:?}, K={k:?}");
        }
    }
}

#[test]
fn queries_and_tables() {
    let s = dj(2);
    let h = Hecke::exact();
    let q = IntegralQuery::parse("I=1;J=1;K=1;L=1", 2).unwrap();
    assert_eq!(q.z_degree(), 0);
    let v = hr_integral(&s, &h, &q).unwrap();
    assert_eq!(v, HrIntegral::new(&s, &h, 1).unwrap().value(&idx("1", 2), &idx("1", 2), &idx("1", 2), &idx("1", 2)).unwrap());
    assert!(!v.is_zero());

    let unbalanced = IntegralQuery::parse("I=1,2;J=2,1;K=1;L=1", 2).unwrap();
    assert_eq!(unbalanced.z_degree(), 1);
    assert!(hr_integral(&s, &h, &unbalanced).unwrap().is_zero());

    assert!(IntegralQuery::parse("I=1;J=1,2", 2).is_err());
    assert!(IntegralQuery::parse("X=1", 2).is_err());
    assert!(IntegralQuery::parse("I=3;J=1", 2).is_err());

    let table = HrIntegral::new(&s, &h, 1).unwrap().table();
    let json = table.to_json();
    assert_eq!(json["group"], "hr");
    let entries = json["entries"].as_array().unwrap();
    assert_eq!(entries.len(), table.values.len());
    assert!(entries.iter().all(|e| e.get("L").is_some() && e.get("value").is_some()));
}

#[test]
fn non_even_symmetries_are_rejected() {
    let s = HeckeSymmetry::super_symmetry(1, 1).unwrap();
    let ids = Idempotents::new(Hecke::exact());
    assert!(ShrIntegral::new(&s, &ids).is_err());
    assert!(HrIntegral::new(&s, ids.hecke(), 1).is_err());
}
