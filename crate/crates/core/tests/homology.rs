use std::sync::Arc;

use dgalab::gallery::{generate, ExampleDescriptor};
use dgalab::homology::{
    bass_numbers, betti_numbers, ext_dims, golod_series, hom_dim_direct, koszul_homology,
    tensor_dim_direct, tor_dims, ResolutionCache,
};
use dgalab::hypersurface::{cyclic_module, truncated_line};
use dgalab::{FModule, Field, FiniteCommutativeAlgebra};

fn q() -> Field {
    Field::Rational
}

fn ring(d: ExampleDescriptor) -> Arc<FiniteCommutativeAlgebra> {
    generate(q(), &d).unwrap().ring().unwrap().clone()
}

// Multiplication by x^c on k[x]/(x^b).
fn mult_kernel(c: usize, b: usize) -> usize {
    c.min(b)
}
fn mult_image(c: usize, b: usize) -> usize {
    b.saturating_sub(c)
}

/// Homology of `… → A/x^b --x^{n−a}--> A/x^b --x^a--> A/x^b`, the periodic
/// resolution of `A/x^a` tensored with `A/x^b`.
fn tor_oracle(n: usize, a: usize, b: usize, i: usize) -> usize {
    if a == n {
        return if i == 0 { b } else { 0 };
    }
    match i {
        0 => a.min(b),
        i if i % 2 == 1 => mult_kernel(a, b) - mult_image(n - a, b),
        _ => mult_kernel(n - a, b) - mult_image(a, b),
    }
}

fn ext_oracle(n: usize, a: usize, b: usize, i: usize) -> usize {
    if a == n {
        return if i == 0 { b } else { 0 };
    }
    match i {
        0 => mult_kernel(a, b),
        i if i % 2 == 1 => mult_kernel(n - a, b) - mult_image(a, b),
        _ => mult_kernel(a, b) - mult_image(n - a, b),
    }
}

#[test]
fn tor_and_ext_over_truncated_line_match_periodic_complex() {
    let cache = ResolutionCache::new();
    for n in 2..=5 {
        let alg = truncated_line(q(), n).unwrap();
        for a in 1..=n {
            let m = cyclic_module(&alg, a).unwrap();
            for b in 1..=n {
                let nm = cyclic_module(&alg, b).unwrap();
                let tor = tor_dims(&cache, &m, &nm, 7).unwrap();
                let ext = ext_dims(&cache, &m, &nm, 7).unwrap();
                for i in 0..=7 {
                    assert_eq!(tor[i], tor_oracle(n, a, b, i), "Tor_{i} n={n} a={a} b={b}");
                    assert_eq!(ext[i], ext_oracle(n, a, b, i), "Ext^{i} n={n} a={a} b={b}");
                }
            }
        }
    }
}

#[test]
fn degree_zero_agrees_with_direct_hom_and_tensor() {
    let alg = ring(ExampleDescriptor::PowerOfM { e: 2, s: 3 });
    let cache = ResolutionCache::new();
    let modules = [
        FModule::residue_field(alg.clone()),
        FModule::maximal_ideal(alg.clone()).unwrap(),
        FModule::free(alg.clone(), 1).unwrap(),
    ];
    for m in &modules {
        for n in &modules {
            assert_eq!(
                ext_dims(&cache, m, n, 0).unwrap()[0],
                hom_dim_direct(m, n).unwrap()
            );
            assert_eq!(
                tor_dims(&cache, m, n, 0).unwrap()[0],
                tensor_dim_direct(m, n).unwrap()
            );
        }
    }
}

#[test]
fn residue_field_over_square_zero_rings_has_geometric_betti_numbers() {
    for e in 1..=3usize {
        let alg = ring(ExampleDescriptor::PowerOfM { e, s: 2 });
        let betti = betti_numbers(&FModule::residue_field(alg.clone()), 8).unwrap();
        let expected: Vec<usize> = (0..=8u32).map(|i| e.pow(i)).collect();
        assert_eq!(betti, expected);
        let series: Vec<String> = golod_series(&alg, 8)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        let expected: Vec<String> = expected.iter().map(ToString::to_string).collect();
        assert_eq!(series, expected);
    }
}

#[test]
fn koszul_homology_of_square_zero_ring() {
    // H_0 = A/m, H_2 = (0 : m) = m, and the Euler characteristic
    // 3 - 6 + 3 = 0 forces H_1 = 3.
    let alg = ring(ExampleDescriptor::PowerOfM { e: 2, s: 2 });
    assert_eq!(koszul_homology(&alg).unwrap(), vec![1, 3, 2]);
}

#[test]
fn hypersurface_ring_is_periodic_of_period_one_on_k() {
    let alg = truncated_line(q(), 4).unwrap();
    let betti = betti_numbers(&FModule::residue_field(alg), 10).unwrap();
    assert!(betti.iter().all(|&b| b == 1));
}

#[test]
fn bass_numbers_of_dual_are_betti_numbers() {
    let alg = ring(ExampleDescriptor::PowerOfRegseq { e: 2, d: 2, s: 2 });
    let cache = ResolutionCache::new();
    let m = FModule::maximal_ideal(alg.clone()).unwrap();
    let betti = cache.resolve(&m, 6).unwrap().betti().to_vec();
    assert_eq!(bass_numbers(&cache, &m.matlis_dual(), 6).unwrap(), betti);
}

#[test]
fn injective_hull_has_no_higher_bass_numbers() {
    let alg = ring(ExampleDescriptor::PowerOfM { e: 2, s: 3 });
    let cache = ResolutionCache::new();
    let omega = FModule::free(alg.clone(), 1).unwrap().matlis_dual();
    let mu = bass_numbers(&cache, &omega, 5).unwrap();
    assert_eq!(mu, vec![1, 0, 0, 0, 0, 0]);
}

#[test]
fn monomial_quotient_dimension_by_counting_standard_monomials() {
    // (x^2, xy^3, y^4): standard monomials x^i y^j with i < 2, j < 4 and
    // not (i >= 1 and j >= 3).
    let ideal = FiniteCommutativeAlgebra::parse_monomials(
        2,
        &["x1^2".into(), "x1*x2^3".into(), "x2^4".into()],
    )
    .unwrap();
    let alg = FiniteCommutativeAlgebra::from_monomial_ideal(q(), 2, &ideal).unwrap();
    let count = (0..2)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i >= 1 && j >= 3))
        .count();
    assert_eq!(count, 7);
    assert_eq!(alg.dim(), count);
}

#[test]
fn resolution_cache_reuses_longer_resolutions() {
    let alg = ring(ExampleDescriptor::PowerOfM { e: 2, s: 2 });
    let cache = ResolutionCache::new();
    let k = FModule::residue_field(alg);
    let long = cache.resolve(&k, 6).unwrap();
    let short = cache.resolve(&k, 3).unwrap();
    assert_eq!(&long.betti()[..=3], short.betti());
    assert_eq!(cache.len(), 1);
}

#[test]
fn prime_field_agrees_with_rationals_on_small_rings() {
    let desc = ExampleDescriptor::PowerOfRegseq { e: 2, d: 2, s: 2 };
    let over_q = generate(q(), &desc).unwrap().ring().unwrap().clone();
    let over_p = generate(Field::prime(32003).unwrap(), &desc)
        .unwrap()
        .ring()
        .unwrap()
        .clone();
    let bq = betti_numbers(&FModule::residue_field(over_q), 6).unwrap();
    let bp = betti_numbers(&FModule::residue_field(over_p), 6).unwrap();
    assert_eq!(bq, bp);
}
