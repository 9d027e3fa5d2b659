//! Randomized invariants over small transitive groups and small polynomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use proptest::prelude::*;
use tracecert::boundsearch::feasibility;
use tracecert::fixtures;
use tracecert::jaccert::{symbolic_determinant, symbolic_determinant_bareiss, JacobianMatrix};
use tracecert::linalg::integer_determinant;
use tracecert::permgroup::{build_group, CosetSystem, GroupSpec, Permutation, PermutationGroup};
use tracecert::polyring::SparsePolynomial;
use tracecert::tracefam::{
    build_family, subsets_containing_one, trace_polynomial, vector_from_subset, ExponentVector,
};

const CASES: u32 = 256;

fn pool() -> Vec<GroupSpec> {
    let mut v = vec![
        fixtures::s3_natural(),
        fixtures::s3_regular(),
        fixtures::c3_regular(),
        fixtures::d8_regular(),
        fixtures::s3_times_d8(),
        GroupSpec::symmetric(4),
        GroupSpec::generators("A4", 4, &["(1 2 3)", "(2 3 4)"]),
        GroupSpec::generators("D8-natural", 4, &["(1 2 3 4)", "(1 3)"]),
        GroupSpec::symmetric_product(&[2, 3]).unwrap(),
        GroupSpec::regular("C2xC2", 4, &["(1 2)", "(3 4)"], None),
        GroupSpec::regular("Q8", 8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], None),
        GroupSpec::direct_product_regular(
            "C3xC4",
            fixtures::c3_regular(),
            GroupSpec::regular("C4", 4, &["(1 2 3 4)"], None),
        ),
    ];
    for m in 3..=8 {
        let cyc: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
        let c = format!("({})", cyc.join(" "));
        v.push(GroupSpec::regular(&format!("C{m}"), m, &[c.as_str()], None));
    }
    v
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

/// Random transitive groups of order at most 48 on 3..=6 points.
fn random_group() -> impl Strategy<Value = PermutationGroup> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..=2)))
        .prop_filter_map("needs transitive group of order <= 48", |(n, gens)| {
            let g = PermutationGroup::close(n, &gens, 48).ok()?;
            g.is_transitive().then_some(g)
        })
}

fn any_group() -> impl Strategy<Value = PermutationGroup> {
    let fixed: Vec<PermutationGroup> = pool()
        .iter()
        .map(|s| build_group(s).unwrap().group)
        .collect();
    prop_oneof![prop::sample::select(fixed), random_group()]
}

fn any_system() -> impl Strategy<Value = CosetSystem> {
    any_group().prop_map(|g| CosetSystem::new(g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, max_global_rejects: 100_000, ..ProptestConfig::default() })]

    #[test]
    fn pi_is_an_anti_homomorphism(cs in any_system(), seed in any::<u64>()) {
        let r = cs.r();
        let j = (seed % r as u64) as usize;
        let jj = ((seed >> 20) % r as u64) as usize;
        let reps = cs.reps();
        let m = cs.coset_index(&reps[j].compose(&reps[jj]));
        prop_assert!(m <= r, "block is closed under products");
        let lhs = cs.pi(m).unwrap();
        let rhs = cs.pi(jj + 1).unwrap().compose(cs.pi(j + 1).unwrap());
        prop_assert_eq!(lhs, &rhs);
    }

    #[test]
    fn pi_is_fixed_point_free_off_identity(cs in any_system()) {
        prop_assert!(cs.pi(1).unwrap().is_identity());
        for j in 2..=cs.r() {
            let p = cs.pi(j).unwrap();
            for i in 1..=cs.n() {
                prop_assert_ne!(p.image(i), i);
            }
        }
    }

    #[test]
    fn lambda_commutes_with_pi(cs in any_system(), pick in any::<prop::sample::Index>()) {
        let g = pick.get(cs.group().elements());
        let lam = cs.lambda(g).unwrap();
        for pi in cs.pis() {
            prop_assert_eq!(lam.compose(pi), pi.compose(&lam));
        }
    }

    #[test]
    fn lambda_is_a_homomorphism(cs in any_system(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let els = cs.group().elements();
        let (g, h) = (a.get(els), b.get(els));
        let lhs = cs.lambda(&g.compose(h)).unwrap();
        let rhs = cs.lambda(g).unwrap().compose(&cs.lambda(h).unwrap());
        prop_assert_eq!(lhs, rhs);
        if cs.relabel().is_identity() {
            prop_assert_eq!(&cs.lambda(g).unwrap(), g);
        }
    }

    #[test]
    fn index_identities(cs in any_system()) {
        let g = cs.group();
        prop_assert_eq!(g.order(), cs.n() * cs.stabilizer().order());
        prop_assert_eq!(cs.r() * cs.stabilizer().order(), cs.normalizer().order());
        prop_assert!(cs.reps()[0].is_identity());
        prop_assert!(cs.block_reps_normalize_h());
        for (j, rep) in cs.reps().iter().enumerate() {
            prop_assert_eq!(j < cs.r(), cs.normalizer().contains(rep));
        }
        let lambdas: BTreeSet<Permutation> =
            g.elements().iter().map(|x| cs.lambda(x).unwrap()).collect();
        prop_assert_eq!(lambdas.len(), g.order());
    }

    #[test]
    fn normalizer_matches_brute_force(g in any_group()) {
        let h = g.point_stabilizer();
        let hs: BTreeSet<&Permutation> = h.elements().iter().collect();
        let brute: BTreeSet<Permutation> = g
            .elements()
            .iter()
            .filter(|x| {
                let inv = x.inverse();
                let conj: BTreeSet<Permutation> =
                    h.elements().iter().map(|y| x.compose(y).compose(&inv)).collect();
                conj.iter().collect::<BTreeSet<_>>() == hs
            })
            .cloned()
            .collect();
        let fast: BTreeSet<Permutation> = g.normalizer(&h).unwrap().elements().iter().cloned().collect();
        prop_assert_eq!(fast, brute);
    }

    #[test]
    fn closure_ignores_generator_order(gens in prop::collection::vec(perm_strategy(6), 1..=3)) {
        let mut rev = gens.clone();
        rev.reverse();
        let a = PermutationGroup::close(6, &gens, 720).unwrap();
        let b = PermutationGroup::close(6, &rev, 720).unwrap();
        let sa: BTreeSet<_> = a.elements().iter().collect();
        let sb: BTreeSet<_> = b.elements().iter().collect();
        prop_assert_eq!(sa, sb);
        prop_assert_eq!(720 % a.order(), 0);
    }

    #[test]
    fn trace_is_invariant_under_left_action(
        cs in any_system(),
        raw in prop::collection::vec(0u32..=3, 24),
        pick in any::<prop::sample::Index>(),
    ) {
        // clip to total degree <= 6
        let mut budget = 6u32;
        let a: Vec<u32> = raw.iter().take(cs.r()).map(|&x| { let y = x.min(budget); budget -= y; y }).collect();
        let a = ExponentVector::new(a);
        let f = trace_polynomial(&cs, &a).unwrap();
        let g = pick.get(cs.group().elements());
        let lam = cs.lambda(g).unwrap().images();
        prop_assert_eq!(f.substitute_permutation(&lam).unwrap(), f.clone());
        let ones = vec![BigInt::from(1); cs.n()];
        prop_assert_eq!(f.evaluate(&ones).unwrap(), BigInt::from(cs.n()));
        if a.height() > 0 {
            prop_assert_eq!(f.total_degree(), Some(a.height() as u32));
        }
    }

    #[test]
    fn family_support_monomials_are_private(cs in any_system(), t in 2u32..=3) {
        let r = cs.r();
        prop_assume!(r >= 3);
        let k = 2 + (r % 2).min(r - 3);
        let subsets = subsets_containing_one(r, k).unwrap();
        let (vf, tf) = build_family(&cs, k, t).unwrap();
        prop_assert_eq!(vf.len(), subsets.len());
        for (i, b) in subsets.iter().enumerate() {
            let mut e = vec![0u32; cs.n()];
            for &x in b {
                e[x - 1] = if x == 1 { t } else { 1 };
            }
            // x_1^t times the product of x_b over b in B
            prop_assert!(!tf.polys[i].coefficient(&e).is_zero());
            for (j, p) in tf.polys.iter().enumerate() {
                if j != i {
                    prop_assert!(p.coefficient(&e).is_zero());
                }
            }
            prop_assert_eq!(vf.vectors[i].height(), (k as u64) + t as u64 - 1);
        }
    }
}

// ---------------------------------------------------------------------------
// polynomials

fn small_poly(nvars: usize, max_deg: u32) -> impl Strategy<Value = SparsePolynomial> {
    prop::collection::vec(
        (prop::collection::vec(0u32..=max_deg, nvars), -9i64..=9),
        0..=6,
    )
    .prop_map(move |terms| {
        SparsePolynomial::from_terms(
            nvars,
            terms.into_iter().map(|(mut e, c)| {
                // keep total degree <= max_deg
                let mut budget = max_deg;
                for x in e.iter_mut() {
                    *x = (*x).min(budget);
                    budget -= *x;
                }
                (e, BigInt::from(c))
            }),
        )
    })
}

fn point(nvars: usize) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-20i64..=20, nvars).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn ring_axioms(p in small_poly(3, 3), q in small_poly(3, 3), s in small_poly(3, 3)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        prop_assert_eq!(&p * &(&q + &s), &(&p * &q) + &(&p * &s));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn degree_is_additive(p in small_poly(3, 3), q in small_poly(3, 3)) {
        let prod = &p * &q;
        match (p.total_degree(), q.total_degree()) {
            (Some(a), Some(b)) => prop_assert_eq!(prod.total_degree(), Some(a + b)),
            _ => prop_assert!(prod.is_zero()),
        }
    }

    #[test]
    fn restriction_gives_the_derivative(p in small_poly(4, 6), base in point(4), v in 1usize..=4) {
        let coeffs = p.univariate_restriction(&base, v).unwrap();
        let slope = coeffs.get(1).cloned().unwrap_or_default();
        let d = p.partial_derivative(v).unwrap().evaluate(&base).unwrap();
        prop_assert_eq!(slope, d);
        prop_assert_eq!(coeffs[0].clone(), p.evaluate(&base).unwrap());
    }

    #[test]
    fn modular_evaluation_agrees(p in small_poly(3, 6), x in point(3), pick in 0usize..4) {
        let primes = [2u64, 101, 65_537, (1u64 << 61) - 1];
        let m = primes[pick];
        let exact = p.evaluate(&x).unwrap();
        let reduced = p.evaluate_mod(&x, m).unwrap();
        prop_assert_eq!(BigInt::from(reduced), exact.mod_floor(&BigInt::from(m)));
    }

    #[test]
    fn bareiss_matches_cofactor(n in 0usize..=6, entries in prop::collection::vec(-9i64..=9, 36)) {
        let m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(entries[i * 6 + j])).collect())
            .collect();
        prop_assert_eq!(integer_determinant(&m).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn symbolic_backends_agree(
        n in 1usize..=3,
        polys in prop::collection::vec(small_poly(3, 2), 9),
        w in point(3),
    ) {
        // n x n matrices over n variables, built from the first n*n polynomials
        // restricted to the first n variables.
        let entries: Vec<Vec<SparsePolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| restrict(&polys[i * 3 + j], n))
                    .collect()
            })
            .collect();
        let m = JacobianMatrix::from_entries(entries, (1..=n).collect()).unwrap();
        let minors = symbolic_determinant(&m, 8).unwrap();
        let bareiss = symbolic_determinant_bareiss(&m, 8).unwrap();
        prop_assert_eq!(&minors, &bareiss);
        let point = &w[..n];
        prop_assert_eq!(minors.evaluate(point).unwrap(), m.determinant_at(point).unwrap());

        let mut swapped = m.clone();
        if n >= 2 {
            swapped.swap_rows(0, 1);
            prop_assert_eq!(swapped.determinant_at(point).unwrap(), -m.determinant_at(point).unwrap());
        }
    }

    #[test]
    fn feasibility_is_monotone_in_n(n in 1usize..=60, r in 1usize..=12) {
        let big = feasibility(n, r);
        for n2 in 1..=n {
            let small = feasibility(n2, r);
            for (k, _) in &big.feasible_pairs {
                prop_assert!(small.feasible_pairs.iter().any(|(k2, _)| k2 == k));
            }
        }
    }

    #[test]
    fn subset_vectors_have_uniform_height(r in 3usize..=9, kk in 0usize..8, t in 2u32..=5) {
        let k = 2 + kk % (r - 2);
        for b in subsets_containing_one(r, k).unwrap() {
            let a = vector_from_subset(&b, t, r).unwrap();
            prop_assert_eq!(a.height(), (k as u64) + t as u64 - 1);
            prop_assert_eq!(a.entries()[0], t);
        }
    }
}

/// Drops all but the first `n` variables (they are set to zero first).
fn restrict(p: &SparsePolynomial, n: usize) -> SparsePolynomial {
    SparsePolynomial::from_terms(
        n,
        p.terms()
            .filter(|(m, _)| m.exponents()[n..].iter().all(|&e| e == 0))
            .map(|(m, c)| (m.exponents()[..n].to_vec(), c.clone())),
    )
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut acc = BigInt::zero();
    for c in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][c] * cofactor_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}
