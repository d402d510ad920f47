use std::collections::BTreeMap;

use fusionkit_core::condense::orbits;
use fusionkit_core::exactnum::CycNum;
use fusionkit_core::fusring::{verlinde, FusionRing};
use fusionkit_core::wzw::{self, AlgebraSpec, LevelWeight};
use proptest::prelude::*;

fn sparse_times(r: &FusionRing, v: &BTreeMap<usize, u64>, c: usize) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for (&m, &x) in v {
        for (d, n) in r.product(m, c) {
            *out.entry(d).or_insert(0) += x * u64::from(n);
        }
    }
    out
}

fn sparse_left(r: &FusionRing, a: usize, v: &BTreeMap<usize, u64>) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for (&m, &x) in v {
        for (d, n) in r.product(a, m) {
            *out.entry(d).or_insert(0) += x * u64::from(n);
        }
    }
    out
}

fn single(r: &FusionRing, a: usize, b: usize) -> BTreeMap<usize, u64> {
    r.product(a, b).into_iter().map(|(k, n)| (k, u64::from(n))).collect()
}

#[test]
fn sl3_level9_associativity_on_all_triples() {
    let r = wzw::fusion_ring(&AlgebraSpec::sl3(9).unwrap()).unwrap();
    let n = r.rank();
    assert_eq!(n, 55);
    for a in 0..n {
        for b in 0..n {
            let ab = single(&r, a, b);
            for c in 0..n {
                let left = sparse_times(&r, &ab, c);
                let right = sparse_left(&r, a, &single(&r, b, c));
                assert_eq!(left, right, "({}⊗{})⊗{}", r.label(a), r.label(b), r.label(c));
            }
        }
    }
}

#[test]
fn sl3_level9_dimensions_are_additive_on_all_pairs() {
    let spec = AlgebraSpec::sl3(9).unwrap();
    let alcove = wzw::alcove(&spec);
    let dims: Vec<CycNum> = alcove.iter().map(|w| wzw::qdim(&spec, w).unwrap()).collect();
    let index: BTreeMap<LevelWeight, usize> = alcove.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    for (i, a) in alcove.iter().enumerate() {
        for (j, b) in alcove.iter().enumerate().skip(i) {
            let sum: CycNum =
                wzw::fuse(&spec, a, b).unwrap().into_iter().map(|(w, m)| dims[index[&w]].scale_int(i64::from(m))).sum();
            assert_eq!(&dims[i] * &dims[j], sum, "{a}⊗{b}");
        }
    }
}

#[test]
fn twists_are_constant_on_local_orbits() {
    for k in [3, 6, 9, 12, 15] {
        let spec = AlgebraSpec::sl3(k).unwrap();
        let orb = orbits(&spec).unwrap();
        for orbit in &orb.free {
            let t: Vec<CycNum> = orbit.iter().map(|w| wzw::twist(&spec, w).unwrap()).collect();
            let local = orbit[0].in_root_lattice();
            assert_eq!(t.iter().all(|x| *x == t[0]), local, "level {k} orbit {orbit:?}");
        }
        for w in &orb.fixed {
            assert!(w.in_root_lattice());
        }
    }
}

fn spec_strategy() -> impl Strategy<Value = AlgebraSpec> {
    prop_oneof![
        (1u32..=16).prop_map(|k| AlgebraSpec::sl2(k).unwrap()),
        (1u32..=7).prop_map(|k| AlgebraSpec::sl3(k).unwrap())
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wzw_rings_satisfy_the_axioms(spec in spec_strategy()) {
        let r = wzw::fusion_ring(&spec).unwrap();
        prop_assert!(r.verify().passed());
        prop_assert!(r.is_commutative());
    }

    #[test]
    fn pair_products_obey_frobenius_reciprocity(spec in spec_strategy(), a in 0usize..64, b in 0usize..64) {
        let r = wzw::fusion_ring(&spec).unwrap();
        let (a, b) = (a % r.rank(), b % r.rank());
        for c in 0..r.rank() {
            prop_assert_eq!(r.get(a, b, c), r.get(r.dual(a), c, b));
            prop_assert_eq!(r.get(a, b, c), r.get(c, r.dual(b), a));
        }
        let dims: Vec<CycNum> = wzw::alcove(&spec).iter().map(|w| wzw::qdim(&spec, w).unwrap()).collect();
        let sum: CycNum = r.product(a, b).into_iter().map(|(c, m)| dims[c].scale_int(i64::from(m))).sum();
        prop_assert_eq!(&dims[a] * &dims[b], sum);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn verlinde_recovers_kac_walton(spec in prop_oneof![
        (1u32..=10).prop_map(|k| AlgebraSpec::sl2(k).unwrap()),
        (1u32..=4).prop_map(|k| AlgebraSpec::sl3(k).unwrap()),
    ]) {
        let md = wzw::modular_data(&spec).unwrap();
        prop_assert_eq!(verlinde(&md).unwrap(), md.ring().constants().to_vec());
    }
}
