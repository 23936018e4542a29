//! End-to-end runs through the public API on random marked regions.

use std::collections::BTreeSet;

use proptest::prelude::*;

use hecke2b::fixtures::{marked_params, MARKED_R1, MARKED_R2};
use hecke2b::hecke::{build_calibrated, verify_relations_with, Normalization, Status};
use hecke2b::par::Exec;
use hecke2b::regions::{
    is_skew, p_set, region_members, standard_tableaux, ContentVector, LocalRegion,
};
use hecke2b::Scalar;

const VALUES: [i64; 5] = [1, 3, 5, 13, 15];

fn region(picks: &[usize], mask: u32) -> Option<LocalRegion> {
    let mut c: Vec<i64> = picks.iter().map(|&i| VALUES[i % VALUES.len()]).collect();
    c.sort();
    let content = ContentVector::new(c, Some(MARKED_R1), Some(MARKED_R2)).ok()?;
    let j: BTreeSet<_> = p_set(&content)
        .into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, r)| r)
        .collect();
    let r = LocalRegion::new(content, j).ok()?;
    is_skew(&r).ok()?.then_some(r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn members_agree_with_the_brute_force_filter(picks in prop::collection::vec(0usize..5, 1..=3), mask in any::<u32>()) {
        let r = region(&picks, mask);
        prop_assume!(r.is_some());
        let r = r.unwrap();
        prop_assert_eq!(region_members(&r).unwrap(), standard_tableaux(&r).unwrap());
    }

    #[test]
    fn built_modules_satisfy_every_relation(
        picks in prop::collection::vec(0usize..5, 1..=3),
        mask in any::<u32>(),
        z in 2i64..9,
    ) {
        let r = region(&picks, mask);
        prop_assume!(r.is_some());
        let r = r.unwrap();
        let params = marked_params();
        let m = build_calibrated::<Scalar>(&Scalar::int(z), &r, &params, Normalization::TauBasis).unwrap().module;
        prop_assert_eq!(m.dim(), region_members(&r).unwrap().len());
        let par = verify_relations_with(&m, &params, Exec::Parallel).unwrap();
        let seq = verify_relations_with(&m, &params, Exec::Sequential).unwrap();
        prop_assert!(par.checks.iter().all(|c| c.status == Status::PassExact), "{:?}", par.failures());
        let names = |rep: &hecke2b::hecke::RelationReport| rep.checks.iter().map(|c| c.relation.clone()).collect::<Vec<_>>();
        prop_assert_eq!(names(&par), names(&seq));
    }
}
