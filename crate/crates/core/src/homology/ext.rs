//! Ext and Tor dimensions from minimal resolutions, plus direct oracles for
//! `Hom_A` and `⊗_A`.

use crate::error::{Error, Result};
use crate::homology::resolution::{FreeResolution, ResolutionCache};
use crate::matrix::DenseMatrix;
use crate::module::FModule;
use crate::scalar::Scalar;
use crate::sparse::{sparse_kernel, sparse_rank, SparseEchelon, SparseVec};

fn check_same(m: &FModule, n: &FModule) -> Result<()> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// Columns of `δ^i : Hom(F_{i-1}, N) → Hom(F_i, N)`, coordinates `gen * d + t`.
fn coboundary_columns(res: &FreeResolution, target: &FModule, i: usize) -> Vec<SparseVec> {
    let n = res.algebra().dim();
    let d = target.dim();
    let field = target.field();
    let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); res.betti()[i - 1] * d];
    for (j, w) in res.differential(i).iter().enumerate() {
        for (idx, c) in w.iter() {
            let (gen, s) = (idx / n, idx % n);
            for t in 0..d {
                let img = target.act_basis(s, &SparseVec::unit(t, field));
                for (u, val) in img.iter() {
                    cols[gen * d + t].push((j * d + u, c * val));
                }
            }
        }
    }
    cols.into_iter().map(SparseVec::from_entries).collect()
}

/// Columns of `∂_i : F_i ⊗ N → F_{i-1} ⊗ N`.
fn boundary_columns(res: &FreeResolution, target: &FModule, i: usize) -> Vec<SparseVec> {
    let n = res.algebra().dim();
    let d = target.dim();
    let field = target.field();
    let mut cols = Vec::with_capacity(res.betti()[i] * d);
    for w in res.differential(i) {
        for t in 0..d {
            let mut raw = Vec::new();
            for (idx, c) in w.iter() {
                let (gen, s) = (idx / n, idx % n);
                let img = target.act_basis(s, &SparseVec::unit(t, field));
                raw.extend(img.iter().map(|(u, val)| (gen * d + u, c * val)));
            }
            cols.push(SparseVec::from_entries(raw));
        }
    }
    cols
}

/// `dim Ext^i_A(M, N)` for `0 ≤ i ≤ range`.
pub fn ext_dims(
    cache: &ResolutionCache,
    m: &FModule,
    n: &FModule,
    range: usize,
) -> Result<Vec<usize>> {
    check_same(m, n)?;
    let res = cache.resolve(m, range + 1)?;
    let field = n.field();
    let ranks: Vec<usize> = (1..=range + 1)
        .map(|i| sparse_rank(field, coboundary_columns(&res, n, i)))
        .collect();
    Ok((0..=range)
        .map(|i| {
            let before = if i == 0 { 0 } else { ranks[i - 1] };
            res.betti()[i] * n.dim() - ranks[i] - before
        })
        .collect())
}

/// `dim Tor_i^A(M, N)` for `0 ≤ i ≤ range`.
pub fn tor_dims(
    cache: &ResolutionCache,
    m: &FModule,
    n: &FModule,
    range: usize,
) -> Result<Vec<usize>> {
    check_same(m, n)?;
    let res = cache.resolve(m, range + 1)?;
    let field = n.field();
    let ranks: Vec<usize> = (1..=range + 1)
        .map(|i| sparse_rank(field, boundary_columns(&res, n, i)))
        .collect();
    Ok((0..=range)
        .map(|i| {
            let before = if i == 0 { 0 } else { ranks[i - 1] };
            res.betti()[i] * n.dim() - ranks[i] - before
        })
        .collect())
}

/// Bass numbers `μ_i(M) = dim Ext^i_A(k, M)`.
pub fn bass_numbers(cache: &ResolutionCache, m: &FModule, range: usize) -> Result<Vec<usize>> {
    let k = FModule::residue_field(m.algebra().clone());
    ext_dims(cache, &k, m, range)
}

/// Minimal number of generators of `Ext^j_A(M, N)` as an A-module, for
/// `0 ≤ j ≤ range`: `dim Z^j − dim(m Z^j + B^j)`.
pub fn ext_generator_counts(
    cache: &ResolutionCache,
    m: &FModule,
    n: &FModule,
    range: usize,
) -> Result<Vec<usize>> {
    check_same(m, n)?;
    let res = cache.resolve(m, range + 1)?;
    let field = n.field();
    let d = n.dim();
    let alg = m.algebra();
    let mut out = Vec::with_capacity(range + 1);
    for j in 0..=range {
        let (_, cycles) = sparse_kernel(field, coboundary_columns(&res, n, j + 1));
        let mut span = SparseEchelon::new(field);
        if j > 0 {
            for col in coboundary_columns(&res, n, j) {
                span.insert(&col);
            }
        }
        for z in &cycles {
            for &g in alg.generators() {
                // post-composition with the action of g, summand by summand
                let mut raw = Vec::new();
                for (idx, c) in z.iter() {
                    let (gen, t) = (idx / d, idx % d);
                    let img = n.act_basis(g, &SparseVec::unit(t, field));
                    raw.extend(img.iter().map(|(u, v)| (gen * d + u, c * v)));
                }
                span.insert(&SparseVec::from_entries(raw));
            }
        }
        let before = span.rank();
        let mut total = span;
        for z in &cycles {
            total.insert(z);
        }
        out.push(total.rank() - before);
    }
    Ok(out)
}

/// `dim Hom_A(M, N)` by solving `X ρ_M(g) = ρ_N(g) X` for the generators.
pub fn hom_dim_direct(m: &FModule, n: &FModule) -> Result<usize> {
    check_same(m, n)?;
    let (dm, dn) = (m.dim(), n.dim());
    let field = m.field();
    let gens = m.algebra().generators();
    let unknowns = dm * dn;
    if unknowns == 0 {
        return Ok(0);
    }
    let mut sys = DenseMatrix::zeros(field, gens.len() * unknowns, unknowns);
    for (k, &g) in gens.iter().enumerate() {
        let (am, an) = (m.action_matrix(g), n.action_matrix(g));
        // entry (r, c) of X ρ_M(g) − ρ_N(g) X; X[p][q] is unknown p * dm + q
        for r in 0..dn {
            for c in 0..dm {
                let row = k * unknowns + r * dm + c;
                for q in 0..dm {
                    let v = am.get(q, c);
                    if !v.is_zero() {
                        let cur = sys.get(row, r * dm + q) + v;
                        sys.set(row, r * dm + q, cur);
                    }
                }
                for p in 0..dn {
                    let v = an.get(r, p);
                    if !v.is_zero() {
                        let cur = sys.get(row, p * dm + c) - v;
                        sys.set(row, p * dm + c, cur);
                    }
                }
            }
        }
    }
    Ok(unknowns - sys.rank())
}

/// `dim M ⊗_A N` as `M ⊗_k N` modulo the balancing relations.
pub fn tensor_dim_direct(m: &FModule, n: &FModule) -> Result<usize> {
    check_same(m, n)?;
    let (dm, dn) = (m.dim(), n.dim());
    let field = m.field();
    let mut rels = Vec::new();
    for &g in m.algebra().generators() {
        for a in 0..dm {
            for b in 0..dn {
                let left = m.act_basis(g, &SparseVec::unit(a, field));
                let right = n.act_basis(g, &SparseVec::unit(b, field));
                let mut raw: Vec<(usize, Scalar)> =
                    left.iter().map(|(x, c)| (x * dn + b, c.clone())).collect();
                raw.extend(right.iter().map(|(y, c)| (a * dn + y, -c)));
                rels.push(SparseVec::from_entries(raw));
            }
        }
    }
    Ok(dm * dn - sparse_rank(field, rels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::FiniteCommutativeAlgebra;
    use crate::scalar::Field;
    use std::sync::Arc;

    fn alg(vars: usize, gens: &[&str]) -> Arc<FiniteCommutativeAlgebra> {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let ideal = FiniteCommutativeAlgebra::parse_monomials(vars, &gens).unwrap();
        Arc::new(
            FiniteCommutativeAlgebra::from_monomial_ideal(Field::Rational, vars, &ideal).unwrap(),
        )
    }

    #[test]
    fn ext_and_tor_of_residue_field_are_betti() {
        let a = alg(2, &["x1^2", "x1*x2", "x2^3"]);
        let k = FModule::residue_field(a);
        let cache = ResolutionCache::new();
        let betti = cache.resolve(&k, 6).unwrap().betti().to_vec();
        assert_eq!(ext_dims(&cache, &k, &k, 5).unwrap(), betti[..6]);
        assert_eq!(tor_dims(&cache, &k, &k, 5).unwrap(), betti[..6]);
    }

    #[test]
    fn free_module_is_projective_and_flat() {
        let a = alg(1, &["x1^3"]);
        let cache = ResolutionCache::new();
        let free = FModule::free(a.clone(), 1).unwrap();
        let k = FModule::residue_field(a);
        assert_eq!(ext_dims(&cache, &free, &k, 4).unwrap(), vec![1, 0, 0, 0, 0]);
        assert_eq!(tor_dims(&cache, &k, &free, 4).unwrap(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn hom_into_algebra_is_socle() {
        // k ⋉ k^2: Hom(k, A) = soc A, which is m, of dimension 2
        let base = alg(0, &[]);
        let a = Arc::new(base.trivial_extension(2).unwrap());
        let k = FModule::residue_field(a.clone());
        let free = FModule::free(a, 1).unwrap();
        let cache = ResolutionCache::new();
        assert_eq!(ext_dims(&cache, &k, &free, 0).unwrap()[0], 2);
        assert_eq!(hom_dim_direct(&k, &free).unwrap(), 2);
    }

    #[test]
    fn tor_of_cyclic_modules_over_truncated_line() {
        // periodic resolution ... -x^3-> A -x-> A -> A/(x): Tor_i(A/(x), A/(x)) = k in every degree
        let a = alg(1, &["x1^4"]);
        let x = SparseVec::unit(1, Field::Rational);
        let m = FModule::cokernel(a, 1, &[vec![x]]).unwrap();
        let cache = ResolutionCache::new();
        assert_eq!(tor_dims(&cache, &m, &m, 6).unwrap(), vec![1; 7]);
    }

    #[test]
    fn degree_zero_matches_oracles() {
        let a = alg(2, &["x1^2", "x2^2"]);
        let f = Field::Rational;
        let x = SparseVec::unit(a.index_of("x1").unwrap(), f);
        let m = FModule::cokernel(a.clone(), 1, &[vec![x]]).unwrap();
        let free = FModule::free(a.clone(), 1).unwrap();
        let k = FModule::residue_field(a);
        let cache = ResolutionCache::new();
        for (p, q) in [(&m, &free), (&m, &k), (&k, &m), (&free, &m), (&m, &m)] {
            assert_eq!(
                ext_dims(&cache, p, q, 0).unwrap()[0],
                hom_dim_direct(p, q).unwrap()
            );
            assert_eq!(
                tor_dims(&cache, p, q, 0).unwrap()[0],
                tensor_dim_direct(p, q).unwrap()
            );
        }
    }

    #[test]
    fn generator_counts_of_ext_over_dual_numbers() {
        // Ext^j(k, A) over k[x]/(x^2): A is self-injective, so only j = 0 survives
        let a = alg(1, &["x1^2"]);
        let k = FModule::residue_field(a.clone());
        let free = FModule::free(a, 1).unwrap();
        let cache = ResolutionCache::new();
        assert_eq!(ext_dims(&cache, &k, &free, 3).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(
            ext_generator_counts(&cache, &k, &free, 3).unwrap(),
            vec![1, 0, 0, 0]
        );
        // Ext^j(k, k) = k, one generator each
        assert_eq!(
            ext_generator_counts(&cache, &k, &k, 3).unwrap(),
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn algebra_mismatch() {
        let a = alg(1, &["x1^2"]);
        let b = alg(1, &["x1^3"]);
        let cache = ResolutionCache::new();
        let r = ext_dims(
            &cache,
            &FModule::residue_field(a),
            &FModule::residue_field(b),
            1,
        );
        assert!(matches!(r, Err(Error::AlgebraMismatch)));
    }
}
