use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use tgf::fixtures;
use tgf::moments::{
    brute_force_sequences, build_ladder, cogrowth_diagnostics, eta_direct, group_ring_check, m_free, moebius_verify,
    GeneratorSet, LadderOptions, LadderRun, SequenceTable, DEFAULT_BRUTE_BUDGET,
};

fn pipeline(gen: &GeneratorSet, n: usize) -> SequenceTable {
    SequenceTable::compute(gen, n, &LadderOptions::default()).unwrap()
}

fn same_counts(a: &SequenceTable, b: &SequenceTable) {
    assert_eq!(a.m, b.m);
    assert_eq!(a.eta, b.eta);
    assert_eq!(a.zeta, b.zeta);
    assert_eq!(a, b);
}

#[test]
fn brute_force_matches_pipeline_on_every_backend() {
    let sets = [
        (GeneratorSet::case1(), 5),
        (GeneratorSet::case2(), 4),
        (GeneratorSet::free(2).unwrap(), 5),
        (GeneratorSet::free(3).unwrap(), 4),
        (GeneratorSet::lattice(2).unwrap(), 5),
        (GeneratorSet::lattice(3).unwrap(), 4),
    ];
    for (gen, n) in sets {
        let brute = brute_force_sequences(&gen, n, DEFAULT_BRUTE_BUDGET).unwrap();
        same_counts(&brute, &pipeline(&gen, n));
    }
}

#[test]
fn free_sets_have_no_returns() {
    for q in [2usize, 3] {
        let gen = GeneratorSet::free(q).unwrap();
        let t = brute_force_sequences(&gen, 4, DEFAULT_BRUTE_BUDGET).unwrap();
        assert!(t.eta.iter().chain(&t.zeta).all(Zero::is_zero));
        for (i, m) in t.m.iter().enumerate() {
            assert_eq!(m, &m_free(q as u64, i + 1));
        }
    }
}

#[test]
fn computed_prefixes_match_bundled_tables() {
    assert_eq!(pipeline(&GeneratorSet::case1(), 12), fixtures::table1().truncated(12));
    assert_eq!(pipeline(&GeneratorSet::case2(), 9), fixtures::table2().truncated(9));
}

#[test]
fn identity_coefficients_give_eta() {
    for gen in [GeneratorSet::case1(), GeneratorSet::case2(), GeneratorSet::lattice(2).unwrap()] {
        let t = pipeline(&gen, 10);
        let mut run = LadderRun::new(&gen, &LadderOptions::default()).unwrap();
        while run.current().level() < 10 {
            let v = run.advance().unwrap();
            if v.level() % 2 == 0 {
                assert_eq!(eta_direct(v).unwrap(), t.eta[v.level() / 2 - 1]);
            }
        }
    }
}

#[test]
fn group_ring_identities_hold() {
    group_ring_check(&GeneratorSet::case1(), 4).unwrap();
    group_ring_check(&GeneratorSet::case2(), 3).unwrap();
    group_ring_check(&GeneratorSet::custom(tgf::group::GroupBackend::Thompson, "A,B,ab").unwrap(), 3).unwrap();
}

#[test]
fn level_sums_and_support() {
    let gen = GeneratorSet::case2();
    for l in build_ladder(&gen, 9, &LadderOptions::default()).unwrap() {
        assert_eq!(l.coefficient_sum, BigInt::from(4) * num_traits::pow(BigInt::from(3), l.n - 1));
        assert!(l.support > 0);
    }
}

#[test]
fn integrality_checks_pass_on_computed_tables() {
    for (gen, n) in [
        (GeneratorSet::case1(), 14),
        (GeneratorSet::case2(), 10),
        (GeneratorSet::free(2).unwrap(), 8),
        (GeneratorSet::lattice(2).unwrap(), 10),
    ] {
        moebius_verify(&pipeline(&gen, n), gen.backend().is_torsion_free()).unwrap();
    }
    moebius_verify(&fixtures::table1(), true).unwrap();
    moebius_verify(&fixtures::table2(), true).unwrap();
}

#[test]
fn cogrowth_trends() {
    let free = cogrowth_diagnostics(&pipeline(&GeneratorSet::free(2).unwrap(), 10));
    assert!(free.iter().all(|r| r.zeta_root == 0.0));
    let last = free.last().unwrap();
    assert!((last.h_root - 2f64.sqrt()).abs() < 0.1);

    let lattice = cogrowth_diagnostics(&pipeline(&GeneratorSet::lattice(2).unwrap(), 12));
    assert!(lattice.windows(2).all(|w| w[1].m_root > w[0].m_root));
    assert!(lattice.last().unwrap().m_root < 3.0);

    let case1 = cogrowth_diagnostics(&fixtures::table1());
    assert!((case1[36].m_root - 2.66702).abs() < 5e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nonnegative_cyclic_numbers_give_ordered_columns(raw in proptest::collection::vec(0u64..1000, 1..12), q in 2u64..5) {
        let zeta: Vec<BigInt> = raw.iter().map(|&z| BigInt::from(z)).collect();
        let t = SequenceTable::from_zeta(q, zeta.clone());
        prop_assert_eq!(&t.zeta, &zeta);
        for i in 0..t.len() {
            prop_assert!(t.zeta[i] <= t.eta[i] && t.eta[i] <= t.xi[i]);
            prop_assert!(t.m[i] >= m_free(q, i + 1));
        }
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let gen = GeneratorSet::case1();
    let a = SequenceTable::compute(&gen, 13, &LadderOptions::default()).unwrap();
    let b = SequenceTable::compute(&gen, 13, &LadderOptions { threads: 3, checkpoint_dir: None }).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
}
