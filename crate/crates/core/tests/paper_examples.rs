//! The two worked examples: S3 regular in S6, and S3 x D8 in S24.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use tracecert::boundsearch::{select_subset, Strategy};
use tracecert::fixtures;
use tracecert::jaccert::{
    certify_nonvanishing, jacobian, reverify, symbolic_determinant, CertStatus, CertifyOptions,
};
use tracecert::permgroup::{build_group, CosetSystem, Permutation};
use tracecert::polyring::SparsePolynomial;
use tracecert::tracefam::{build_family, check_linear_independence, trace_rows, ExponentVector};

fn system(spec: tracecert::permgroup::GroupSpec) -> CosetSystem {
    let built = build_group(&spec).unwrap();
    CosetSystem::with_ordering(built.group, built.ordering.as_deref()).unwrap()
}

const S3_PI: [[usize; 6]; 6] = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 6, 5, 4, 3],
    [3, 5, 1, 6, 2, 4],
    [4, 6, 5, 1, 3, 2],
    [5, 3, 4, 2, 6, 1],
    [6, 4, 2, 3, 1, 5],
];

#[test]
fn s3_regular_structure() {
    let cs = system(fixtures::s3_regular());
    assert_eq!(cs.n(), 6);
    assert_eq!(cs.r(), 6);
    assert_eq!(cs.stabilizer().order(), 1);
    assert_eq!(cs.normalizer().order(), 6);
    for (j, expected) in S3_PI.iter().enumerate() {
        assert_eq!(cs.pi(j + 1).unwrap().images(), expected.to_vec(), "pi_{}", j + 1);
    }
    assert_eq!(cs.group().malle_constant().unwrap().to_string(), "1/3");
}

/// Rebuilds pi_j from the multiplication table of S3 directly: with the
/// points labelled by elements h_1..h_6, pi_j(i) = index of h_i h_j.
#[test]
fn s3_pi_tables_match_multiplication_table() {
    let hs: Vec<Permutation> = fixtures::S3_ORDER
        .iter()
        .map(|s| Permutation::parse(s, 3).unwrap())
        .collect();
    let cs = system(fixtures::s3_regular());
    for j in 0..6 {
        for i in 0..6 {
            let prod = hs[i].compose(&hs[j]);
            let k = hs.iter().position(|h| *h == prod).unwrap() + 1;
            assert_eq!(cs.pi(j + 1).unwrap().image(i + 1), k);
        }
    }
}

#[test]
fn s3_family_vectors() {
    let cs = system(fixtures::s3_regular());
    let (vf, _) = build_family(&cs, 3, 2).unwrap();
    let expected: [[u32; 6]; 10] = [
        [2, 1, 1, 0, 0, 0],
        [2, 1, 0, 1, 0, 0],
        [2, 1, 0, 0, 1, 0],
        [2, 1, 0, 0, 0, 1],
        [2, 0, 1, 1, 0, 0],
        [2, 0, 1, 0, 1, 0],
        [2, 0, 1, 0, 0, 1],
        [2, 0, 0, 1, 1, 0],
        [2, 0, 0, 1, 0, 1],
        [2, 0, 0, 0, 1, 1],
    ];
    let got: Vec<Vec<u32>> = vf.vectors.iter().map(|v| v.entries().to_vec()).collect();
    assert_eq!(got, expected.iter().map(|v| v.to_vec()).collect::<Vec<_>>());
}

/// The generic six-row expansion of Tr_a for the S3 system, transcribed as
/// the variable that carries a_j in each row.
#[test]
fn s3_generic_trace_expansion() {
    let rows_vars: [[usize; 6]; 6] = [
        [1, 2, 3, 4, 5, 6],
        [2, 1, 5, 6, 3, 4],
        [3, 6, 1, 5, 4, 2],
        [4, 5, 6, 1, 2, 3],
        [5, 4, 2, 3, 6, 1],
        [6, 3, 4, 2, 1, 5],
    ];
    let cs = system(fixtures::s3_regular());
    for j in 0..6 {
        let mut a = vec![0u32; 6];
        a[j] = 1;
        let rows = trace_rows(&cs, &ExponentVector::new(a)).unwrap();
        for (i, row) in rows.iter().enumerate() {
            let var = row.iter().position(|&e| e == 1).unwrap() + 1;
            assert_eq!(var, rows_vars[i][j], "row {} slot {}", i + 1, j + 1);
        }
    }
}

/// Row-sum oracle: Σ_i Π_j x_{π_j(i)}^{a_j} evaluated directly from the tables.
#[test]
fn s3_trace_evaluation_matches_row_sum() {
    let cs = system(fixtures::s3_regular());
    let a = ExponentVector::new(vec![2, 1, 1, 0, 0, 0]);
    let f = tracecert::tracefam::trace_polynomial(&cs, &a).unwrap();
    let x: Vec<BigInt> = (1..=6).map(BigInt::from).collect();
    let mut oracle = BigInt::zero();
    for i in 0..6 {
        let mut t = BigInt::from(1);
        for j in 0..6 {
            t *= x[S3_PI[j][i] - 1].pow(a.entries()[j]);
        }
        oracle += t;
    }
    assert_eq!(f.evaluate(&x).unwrap(), oracle);
    // 1^2*2*3 + 2^2*1*5 + 3^2*1*6 + 4^2*5*6 + 5^2*2*4 + 6^2*3*4 (expansion by hand)
    assert_eq!(oracle, BigInt::from(6 + 20 + 54 + 480 + 200 + 432));
}

#[test]
fn s3_family_is_linearly_independent() {
    let cs = system(fixtures::s3_regular());
    let (_, tf) = build_family(&cs, 3, 2).unwrap();
    let w = check_linear_independence(&tf).unwrap();
    assert_eq!(w.rank, 10);
    assert!(w.kernel.is_none());
}

/// Term-wise differentiation oracle for entry (1,1) of the Jacobian.
#[test]
fn s3_jacobian_entry_oracle() {
    let cs = system(fixtures::s3_regular());
    let (_, tf) = build_family(&cs, 3, 2).unwrap();
    let m = jacobian(&tf.polys[..6]).unwrap();
    let mut oracle = SparsePolynomial::zero(6);
    for row in trace_rows(&cs, &tf.vectors[0]).unwrap() {
        if row[0] > 0 {
            let mut e = row.clone();
            e[0] -= 1;
            oracle = &oracle + &SparsePolynomial::from_terms(6, [(e, BigInt::from(row[0]))]);
        }
    }
    assert_eq!(m.entry(0, 0), &oracle);
    // f_1 = x1^2x2x3 + x1x2^2x5 + x1x3^2x6 + ...: three rows contain x1.
    assert_eq!(oracle.len(), 3);
    for i in 0..6 {
        for j in 0..6 {
            assert!(m.entry(i, j).total_degree().unwrap_or(0) <= 3);
        }
    }
}

#[test]
fn s3_certificate_and_symbolic_cross_check() {
    let cs = system(fixtures::s3_regular());
    let (_, tf) = build_family(&cs, 3, 2).unwrap();
    let m = jacobian(&tf.polys[..6]).unwrap();
    let cert = certify_nonvanishing(&m, &CertifyOptions::new(2024)).unwrap();
    assert_eq!(cert.status, CertStatus::CertifiedNonzero);
    assert!(reverify(&cert, &m).unwrap());

    let det = symbolic_determinant(&m, 8).unwrap();
    assert!(!det.is_zero());
    assert!(det.total_degree().unwrap() <= 18);
    assert_eq!(det.evaluate(&cert.witness).unwrap(), cert.det_value);

    let mut tampered = cert.clone();
    tampered.det_value += 1;
    assert!(!reverify(&tampered, &m).unwrap());
}

#[test]
fn s3_first_n_selection() {
    let cs = system(fixtures::s3_regular());
    let (_, tf) = build_family(&cs, 3, 2).unwrap();
    let opts = CertifyOptions::new(1);
    let sel = select_subset(&tf, Strategy::FirstN, &opts, 4).unwrap();
    assert_eq!(sel.chosen_indices, vec![1, 2, 3, 4, 5, 6]);
    assert!(sel.is_certified());
    let other_seed = select_subset(&tf, Strategy::FirstN, &CertifyOptions::new(77), 4).unwrap();
    assert_eq!(other_seed.chosen_indices, sel.chosen_indices);

    let greedy = select_subset(&tf, Strategy::GreedyRank, &CertifyOptions::new(42), 4).unwrap();
    assert!(greedy.is_certified());
    assert!(reverify(&greedy.certificate, &greedy.matrix).unwrap());
    let rr = select_subset(&tf, Strategy::RandomRestart, &CertifyOptions::new(42), 4).unwrap();
    assert!(rr.is_certified());
    assert!(reverify(&rr.certificate, &rr.matrix).unwrap());
}

#[test]
fn s3_times_d8_structure_and_family() {
    let cs = system(fixtures::s3_times_d8());
    assert_eq!(cs.n(), 24);
    assert_eq!(cs.r(), 8);
    assert_eq!(cs.group().order(), 48);
    assert!(cs.relabel().is_identity());

    // The eight u-rows of the displayed Tr_a: the variable carrying a_j.
    let u_rows: [[usize; 8]; 8] = [
        [1, 2, 3, 4, 5, 6, 7, 8],
        [2, 3, 4, 1, 6, 7, 8, 5],
        [3, 4, 1, 2, 7, 8, 5, 6],
        [4, 1, 2, 3, 8, 5, 6, 7],
        [5, 8, 7, 6, 1, 4, 3, 2],
        [6, 5, 8, 7, 2, 1, 4, 3],
        [7, 6, 5, 8, 3, 2, 1, 4],
        [8, 7, 6, 5, 4, 3, 2, 1],
    ];
    for (block, offset) in [0usize, 8, 16].iter().enumerate() {
        for (i, row) in u_rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let point = block * 8 + i + 1;
                assert_eq!(cs.pi(j + 1).unwrap().image(point), v + offset);
            }
        }
    }

    let (vf, tf) = build_family(&cs, 4, 2).unwrap();
    assert_eq!(vf.len(), 35);
    let listed: [[u32; 8]; 24] = [
        [2, 1, 1, 1, 0, 0, 0, 0],
        [2, 1, 1, 0, 1, 0, 0, 0],
        [2, 1, 1, 0, 0, 1, 0, 0],
        [2, 1, 1, 0, 0, 0, 1, 0],
        [2, 1, 1, 0, 0, 0, 0, 1],
        [2, 1, 0, 1, 1, 0, 0, 0],
        [2, 1, 0, 1, 0, 1, 0, 0],
        [2, 1, 0, 1, 0, 0, 1, 0],
        [2, 1, 0, 1, 0, 0, 0, 1],
        [2, 1, 0, 0, 1, 1, 0, 0],
        [2, 1, 0, 0, 1, 0, 1, 0],
        [2, 1, 0, 0, 1, 0, 0, 1],
        [2, 1, 0, 0, 0, 1, 1, 0],
        [2, 1, 0, 0, 0, 1, 0, 1],
        [2, 1, 0, 0, 0, 0, 1, 1],
        [2, 0, 1, 1, 1, 0, 0, 0],
        [2, 0, 1, 1, 0, 1, 0, 0],
        [2, 0, 1, 1, 0, 0, 1, 0],
        [2, 0, 1, 1, 0, 0, 0, 1],
        [2, 0, 1, 0, 1, 1, 0, 0],
        [2, 0, 1, 0, 1, 0, 1, 0],
        [2, 0, 1, 0, 1, 0, 0, 1],
        [2, 0, 1, 0, 0, 1, 1, 0],
        [2, 0, 1, 0, 0, 1, 0, 1],
    ];
    for (i, v) in listed.iter().enumerate() {
        assert_eq!(vf.vectors[i].entries(), v, "a_{}", i + 1);
    }

    let first24 = tracecert::tracefam::TraceFamily {
        n: 24,
        vectors: tf.vectors[..24].to_vec(),
        polys: tf.polys[..24].to_vec(),
    };
    let w = check_linear_independence(&first24).unwrap();
    assert_eq!(w.rank, 24);
}

#[test]
fn s3_times_d8_first_24_certify() {
    let cs = system(fixtures::s3_times_d8());
    let (_, tf) = build_family(&cs, 4, 2).unwrap();
    let m = jacobian(&tf.polys[..24]).unwrap();
    assert_eq!(m.degree_bound(), 24 * 4);
    let mut opts = CertifyOptions::new(11);
    opts.bound = BigUint::from(1u64 << 31);
    let cert = certify_nonvanishing(&m, &opts).unwrap();
    assert_eq!(cert.status, CertStatus::CertifiedNonzero);
    assert!(reverify(&cert, &m).unwrap());
}
