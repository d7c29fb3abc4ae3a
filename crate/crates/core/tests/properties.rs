//! Cross-module properties that tie the exhaustive search to the closed-form
//! classification.

use picod_core::{
    classify, is_infeasible, max_search_ell, optimal_linear_length, CaseTag, Instance,
    OracleStatus,
};

fn inst(m: usize, s: usize, h: usize) -> Instance {
    Instance::new(m, s, h).unwrap()
}

#[test]
fn oracle_stays_inside_the_band_for_g1() {
    for m in 3..=10usize {
        for s in 1..m {
            if 2 * s >= m {
                continue;
            }
            let i = inst(m, s, 1);
            if is_infeasible(&i) {
                continue;
            }
            let report = classify(&i, i.nth().has_one_factor());
            assert_eq!(report.case_tag, CaseTag::LinearBand);
            let (lower, upper) = (report.lin_lower.unwrap(), report.lin_upper.unwrap());
            if upper > max_search_ell(m) {
                continue; // outside the documented search caps
            }
            let result = optimal_linear_length(&i, upper).unwrap();
            let OracleStatus::Found { ell_star, .. } = result.status else {
                panic!("no code within the proved upper bound at m={m} s={s}");
            };
            assert!(
                lower <= ell_star && ell_star <= upper,
                "ell*={ell_star} outside [{lower}, {upper}] at m={m} s={s}"
            );
        }
    }
}

#[test]
fn witness_is_independent_of_worker_count() {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| optimal_linear_length(&inst(8, 2, 1), 3).unwrap());
    let parallel = optimal_linear_length(&inst(8, 2, 1), 3).unwrap();
    assert_eq!(single.status, parallel.status);
    assert_eq!(single.subspaces_checked, parallel.subspaces_checked);
}
