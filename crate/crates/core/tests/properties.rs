use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_pcg::Pcg32;

use dgalab::gallery::{generate, ExampleDescriptor};
use dgalab::homology::{bass_numbers, growth_report, GrowthReport, ResolutionCache};
use dgalab::hypersurface::{change_of_rings_check, residue_witness};
use dgalab::skew::{
    build_class, check_dagger, classify, is_valid_witness, random_graded_conjugation, ClassKind,
};
use dgalab::sparse::SparseVec;
use dgalab::{DenseMatrix, FModule, Field, FiniteCommutativeAlgebra, MultiPoly};

fn square_zero_plane() -> Arc<FiniteCommutativeAlgebra> {
    generate(Field::Rational, &ExampleDescriptor::PowerOfM { e: 2, s: 2 })
        .unwrap()
        .ring()
        .unwrap()
        .clone()
}

fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, cols), rows)
}

fn poly_terms() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec((prop::collection::vec(0u32..3, 2), -4i64..=4), 0..5)
}

fn poly(field: Field, terms: &[(Vec<u32>, i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        field,
        2,
        terms
            .iter()
            .map(|(e, c)| (e.clone(), field.from_i64(*c)))
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity_and_kernel(rows in small_matrix(4, 5), p in prop::sample::select(vec![0u64, 2, 7])) {
        let field = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
        let m = DenseMatrix::from_i64(field, &rows).unwrap();
        let (rank, kernel) = m.rank_kernel().unwrap();
        prop_assert_eq!(rank, m.transpose().rank());
        prop_assert_eq!(rank + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn prime_field_inverses(a in 1i64..10_000, p in prop::sample::select(vec![2u64, 3, 101, 32003])) {
        let f = Field::prime(p).unwrap();
        let x = f.from_i64(a);
        match x.inv() {
            Some(y) => prop_assert!((&x * &y).is_one()),
            None => prop_assert_eq!(a as u64 % p, 0),
        }
    }

    #[test]
    fn polynomial_ring_axioms(f in poly_terms(), g in poly_terms(), h in poly_terms()) {
        let field = Field::Rational;
        let (f, g, h) = (poly(field, &f), poly(field, &g), poly(field, &h));
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        let lhs = f.add(&g).unwrap().mul(&h).unwrap();
        let rhs = f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn polynomial_display_round_trips(f in poly_terms()) {
        let f = poly(Field::Rational, &f);
        let text = f.to_string();
        prop_assert_eq!(MultiPoly::parse(Field::Rational, 2, &text).unwrap(), f);
    }

    #[test]
    fn syzygies_of_random_cokernels(entries in prop::collection::vec(-2i64..=2, 12), gens in 1usize..=2, rels in 1usize..=3) {
        // Over k[x,y]/(x,y)^2 every first syzygy of a module presented
        // inside m is killed by m, so beta_{i+1} = 2 beta_i from i = 1.
        let alg = square_zero_plane();
        let field = alg.field();
        let mut it = entries.iter().cycle();
        let columns: Vec<Vec<SparseVec>> = (0..rels)
            .map(|_| {
                (0..gens)
                    .map(|_| {
                        let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
                        SparseVec::from_entries(vec![(1, field.from_i64(a)), (2, field.from_i64(b))])
                    })
                    .collect()
            })
            .collect();
        let m = FModule::cokernel(alg.clone(), gens, &columns).unwrap();
        let cache = ResolutionCache::new();
        let r = cache.resolve(&m, 6).unwrap();
        let (betti, syz) = (r.betti(), r.syzygy_dims());
        prop_assert_eq!(betti[0], m.num_generators());
        for i in 0..6 {
            prop_assert_eq!(betti[i] * alg.dim(), syz[i] + syz[i + 1]);
        }
        for i in 1..6 {
            prop_assert_eq!(betti[i + 1], 2 * betti[i]);
        }
        prop_assert_eq!(bass_numbers(&cache, &m.matlis_dual(), 6).unwrap(), betti.to_vec());
    }

    #[test]
    fn classification_is_conjugation_invariant(
        kind in prop::sample::select(vec![ClassKind::TE, ClassKind::B, ClassKind::G(2), ClassKind::H(1, 1), ClassKind::H(0, 0)]),
        seed in any::<u64>(),
    ) {
        let s = build_class(kind, 4, 2, false).unwrap();
        let conj = random_graded_conjugation(&s, &mut Pcg32::seed_from_u64(seed)).unwrap();
        prop_assert!(conj.check_axioms().all_passed());
        prop_assert!(classify(&conj).kind.same_class(&kind));
        let w = check_dagger(&conj).unwrap();
        prop_assert_eq!(w.is_some(), s.provenance().unwrap().dagger_expected());
        if let Some(w) = w {
            prop_assert!(is_valid_witness(&conj, &w.u, &w.v));
        }
    }

    #[test]
    fn geometric_sequences_double_from_the_start(c in 1u64..50, len in 2usize..20) {
        let seq: Vec<u64> = (0..len).map(|i| c << i).collect();
        match growth_report(&seq) {
            GrowthReport::Growing { ratio_threshold, unbounded_flag, .. } => {
                prop_assert_eq!(ratio_threshold, Some(1));
                prop_assert!(unbounded_flag);
            }
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn residue_split_for_random_summands(n in 2usize..=9, raw in prop::collection::vec(0usize..=9, 1..=3)) {
        let summands: Vec<usize> = raw.iter().map(|a| a % (n + 1)).collect();
        let has_proper = summands.iter().any(|&a| a > 0 && a < n);
        match residue_witness(Field::Rational, n, &summands) {
            Ok(w) => {
                prop_assert!(has_proper);
                prop_assert!(w.verified);
                prop_assert_eq!(w.h0_dim, w.h1_dim);
            }
            Err(e) => prop_assert!(!has_proper, "{}", e),
        }
    }

    #[test]
    fn consecutive_vanishing_never_misfires(n in 2usize..=7, a in 1usize..=7, b in 1usize..=7) {
        let (a, b) = (a.min(n), b.min(n));
        prop_assert!(change_of_rings_check(Field::Rational, n, a, b, 12).unwrap().passed);
    }
}
