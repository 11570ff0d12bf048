use ncfree_core::corpus;
use ncfree_core::freeprob::{self, NcPolynomial};
use ncfree_core::matrix::ScalarMatrix;
use ncfree_core::opvalued::{self, OpSpace};
use ncfree_core::oracle;
use ncfree_core::rational::{int, rat};
use ncfree_core::rcyclic::{self, entry_generator, Projected, RCyclicFamily};
use ncfree_core::series::Series;
use ncfree_core::{Error, Partition};

#[test]
fn circular_pair_is_not_free_from_its_adjoint() {
    let fam = corpus::circular_block(4);
    let model = fam.model();
    let c = NcPolynomial::generator(entry_generator(2, 1, 1, 2));
    let cs = NcPolynomial::generator(entry_generator(2, 1, 2, 1));
    let m = freeprob::moment_series(model, &[c, cs], 4).unwrap();
    let r = freeprob::r_transform(&m).unwrap();
    assert_eq!(oracle::series_text(&r), "1,2=1/1 2,1=1/1");
    let grouping: Partition = "{1}{2}".parse().unwrap();
    let report = freeprob::check_free(&r, &grouping).unwrap();
    assert!(!report.free);
    assert_eq!(report.witness.unwrap().0.letters(), &[1, 2]);
}

#[test]
fn constant_column_sums_give_semicircular_rtransform() {
    // radii chosen so that every column of squared radii sums to 5
    let mut m = corpus::EntryModel::new(2, 1, 4).unwrap();
    let radii = vec![vec![int(2), int(1)], vec![int(1), int(2)]];
    corpus::gaussian_block(&mut m, 1, &radii).unwrap();
    let f = rcyclic::determining_series(&m.family()).unwrap();
    let r = rcyclic::partial_sum_rtransform(&f, 2).unwrap();
    assert_eq!(oracle::series_text(&r), "1,1=5/4");
    assert_eq!(r, rcyclic::family_rtransform(&f, 2).unwrap());
}

#[test]
fn partial_sum_violation_names_the_last_index() {
    let f = Series::from_terms(2, 3, vec![(vec![1, 1], int(1))]).unwrap();
    match rcyclic::partial_sum_rtransform(&f, 2) {
        Err(Error::PartialSum(msg)) => assert!(msg.contains("1/1") && msg.contains("0/1"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn compression_keeps_the_rtransform() {
    let r_a = Series::from_terms(
        1,
        5,
        vec![
            (vec![1], rat(1, 2)),
            (vec![1, 1], int(3)),
            (vec![1, 1, 1], int(-1)),
        ],
    )
    .unwrap();
    for d in 1..=3 {
        let f = corpus::compression_series(d, &r_a);
        assert_eq!(rcyclic::family_rtransform(&f, d).unwrap(), r_a, "d={d}");
        let fam = RCyclicFamily::new(d, 1, f).unwrap();
        let brute = oracle::brute_force_family_moments(&fam.to_matrix_family(), 4).unwrap();
        assert_eq!(
            oracle::cumulants_by_inversion(&brute).unwrap(),
            r_a.truncate(4),
            "d={d}"
        );
    }
}

#[test]
fn zero_inputs_give_zero_outputs() {
    let f = Series::zero(4, 4);
    assert!(rcyclic::family_moments(&f, 2).unwrap().is_zero());
    assert!(rcyclic::family_rtransform(&f, 2).unwrap().is_zero());
    assert!(rcyclic::projected_series(&f, 2, Projected::Moments)
        .unwrap()
        .is_zero());
    assert!(rcyclic::projected_series(&f, 2, Projected::RTransform)
        .unwrap()
        .is_zero());
    let rebuilt =
        opvalued::rcyclic_witness_from_dcumulants(2, 1, 3, |_, _| Ok(ScalarMatrix::zero(2)))
            .unwrap();
    assert!(rebuilt.determining_series().is_zero());
}

#[test]
fn circular_block_dcumulants_rebuild_the_alternating_table() {
    let fam = corpus::circular_block(4);
    let mut space = OpSpace::new(fam.model());
    let rebuilt = opvalued::rcyclic_witness_from_dcumulants(2, 1, 4, |r, p| {
        opvalued::projected_dcumulant(&mut space, fam.matrices(), r, p)
    })
    .unwrap();
    // only (1:1)(1:2) and (1:2)(1:1): k_2(c, c*) and k_2(c*, c)
    assert_eq!(
        rebuilt.determining_series().to_tsv_pairs(2),
        "1:1,1:2\t1/1\n1:2,1:1\t1/1\n"
    );
}

#[test]
fn dvalued_formula_refuses_broken_chain_hypothesis() {
    let fam = corpus::off_diagonal_mean(3);
    let mut space = OpSpace::new(fam.model());
    let r = opvalued::dvalued_cumulant(
        &mut space,
        fam.matrices(),
        &[1, 1],
        &[ScalarMatrix::identity(2)],
    );
    assert!(matches!(r, Err(Error::ChainHypothesis(_))), "{r:?}");
}

#[test]
fn remark_family_pair_is_free_over_scalars() {
    let fam = corpus::uniform_radius_blocks(2, 4);
    let f = rcyclic::determining_series(&fam).unwrap();
    let r = rcyclic::family_rtransform(&f, 2).unwrap();
    let brute = oracle::brute_force_family_moments(&fam, 4).unwrap();
    assert_eq!(oracle::cumulants_by_inversion(&brute).unwrap(), r);
    assert_eq!(oracle::series_text(&r), "1,1=2/1 2,2=2/1");
}
